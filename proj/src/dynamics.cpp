#include "dephase/dynamics.hpp"

#include <cmath>
#include <string>

#include "dephase/error.hpp"
#include "dephase/hermitian_eigen.hpp"

namespace dephase {

namespace {

int label_sum(int i) {
    const auto m = basis_labels(i);
    return m[0] + m[1];
}

void check_angle(double v, double lo, double hi, bool hi_open, const char* name) {
    const bool ok = std::isfinite(v) && v >= lo && (hi_open ? v < hi : v <= hi);
    if (!ok) {
        throw ConfigError(std::string(name) + " is out of range");
    }
}

}  // namespace

std::array<int, 2> basis_labels(int i) {
    return {(i & 2) ? -1 : 1, (i & 1) ? -1 : 1};
}

void InitialProductState::validate() const {
    check_angle(theta1, 0.0, M_PI, false, "init.theta1");
    check_angle(theta2, 0.0, M_PI, false, "init.theta2");
    check_angle(phi1, 0.0, 2.0 * M_PI, true, "init.phi1");
    check_angle(phi2, 0.0, 2.0 * M_PI, true, "init.phi2");
}

void GeneralInitialState::validate() const {
    double norm = 0.0;
    for (const auto& v : c) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw InvalidStateError("initial amplitudes must be finite");
        }
        norm += std::norm(v);
    }
    if (std::abs(norm - 1.0) > 1e-12) {
        throw InvalidStateError("initial amplitudes are not normalized (sum |c|^2 = " + std::to_string(norm) + ")");
    }
}

GeneralInitialState bloch_product_to_general(const InitialProductState& init) {
    init.validate();
    const std::array<cdouble, 2> a{cdouble(std::cos(init.theta1 / 2)),
                                   std::polar(std::sin(init.theta1 / 2), init.phi1)};
    const std::array<cdouble, 2> b{cdouble(std::cos(init.theta2 / 2)),
                                   std::polar(std::sin(init.theta2 / 2), init.phi2)};
    GeneralInitialState out;
    for (int i = 0; i < 4; ++i) {
        out.c[i] = a[(i >> 1) & 1] * b[i & 1];
    }
    return out;
}

GeneralInitialState x_projected_state() {
    GeneralInitialState out;
    out.c.fill(cdouble(0.5));
    return out;
}

TwoSpinState evolve(const GeneralInitialState& init, const DecoherenceFactors& df,
                    const FieldConfig& field, double t) {
    init.validate();
    if (!std::isfinite(t) || t < 0.0) {
        throw ConfigError("time must be finite and >= 0");
    }
    if (!std::isfinite(field.h)) {
        throw ConfigError("h must be finite");
    }
    if (!std::isfinite(df.delta) || (!df.gamma_divergent && !(std::isfinite(df.gamma) && df.gamma >= 0.0))) {
        throw InvalidStateError("decoherence factors must be finite with gamma >= 0");
    }
    TwoSpinState out;
    for (int m = 0; m < 4; ++m) {
        const int ms = label_sum(m);
        for (int n = 0; n < 4; ++n) {
            const int ns = label_sum(n);
            const int d = ms - ns;
            if (d != 0 && df.gamma_divergent) {
                out.rho(m, n) = 0.0;
                continue;
            }
            cdouble v = init.c[m] * std::conj(init.c[n]);
            if (d != 0) {
                const double phase = -0.5 * field.h * t * d - static_cast<double>(ms * ms - ns * ns) * df.delta;
                v *= std::polar(std::exp(-static_cast<double>(d * d) * df.gamma), phase);
            }
            out.rho(m, n) = v;
        }
    }
    return out;
}

TwoSpinState evolve_ideal(const GeneralInitialState& init, double delta) {
    init.validate();
    if (!std::isfinite(delta)) {
        throw InvalidStateError("Delta must be finite");
    }
    Eigen::Vector4cd psi;
    const cdouble u = std::polar(1.0, -4.0 * delta);
    for (int i = 0; i < 4; ++i) {
        psi(i) = (i == 0 || i == 3) ? u * init.c[i] : init.c[i];
    }
    return {psi * psi.adjoint()};
}

double purity(const TwoSpinState& state) {
    // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho.
    return state.rho.cwiseAbs2().sum();
}

void validate_state(const TwoSpinState& state) {
    const Eigen::Matrix4cd& r = state.rho;
    if (!r.allFinite()) {
        throw InvalidStateError("density matrix has non-finite entries");
    }
    const double herm = (r - r.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol) {
        throw InvalidStateError("density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    const cdouble tr = r.trace();
    if (std::abs(tr - 1.0) > kTraceTol) {
        throw InvalidStateError("density matrix trace differs from 1");
    }
    const auto ev = hermitian_eigenvalues(r);
    if (ev[0] < -kPsdTol) {
        throw InvalidStateError("density matrix has a negative eigenvalue " + std::to_string(ev[0]));
    }
}

}  // namespace dephase
