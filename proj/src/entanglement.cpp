#include "dephase/entanglement.hpp"

#include <cmath>

#include "dephase/error.hpp"
#include "dephase/hermitian_eigen.hpp"

namespace dephase {

namespace {

// Beyond this, e^{-16 gamma} is replaced by exact zero.
constexpr double kMaxExponent = 750.0;

void check_gamma(double gamma) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw ConfigError("gamma must be finite and >= 0");
    }
}

}  // namespace

std::string_view method_name(NegativityMethod method) {
    switch (method) {
        case NegativityMethod::ClosedForm:
            return "closed_form";
        case NegativityMethod::XStateSpectrum:
            return "x_state_spectrum";
        case NegativityMethod::NumericPT:
            return "numeric_pt";
    }
    return "unknown";
}

std::array<double, 4> x_state_pt_eigenvalues(double gamma, double delta) {
    check_gamma(gamma);
    const double a = 16.0 * gamma > kMaxExponent ? 0.0 : std::exp(-16.0 * gamma);
    const double one_minus_a = 16.0 * gamma > kMaxExponent ? 1.0 : -std::expm1(-16.0 * gamma);
    const double e8 = 8.0 * gamma > kMaxExponent ? 0.0 : std::exp(-8.0 * gamma);
    const double sn = std::sin(4.0 * delta);
    const double cs = std::cos(4.0 * delta);
    const double r12 = std::sqrt(one_minus_a * one_minus_a + 16.0 * e8 * sn * sn);
    const double b = 3.0 + a;
    const double disc = std::max(0.0, b * b + 16.0 * e8 * cs * cs - 8.0 * (1.0 + a));
    const double r34 = std::sqrt(disc);
    return {(one_minus_a + r12) / 8.0, (one_minus_a - r12) / 8.0, (b + r34) / 8.0, (b - r34) / 8.0};
}

NegativityResult x_state_negativity(double gamma, double delta, bool gamma_divergent) {
    NegativityResult out;
    out.method = NegativityMethod::ClosedForm;
    if (gamma_divergent) {
        // gamma -> inf limit: rho^{T_B} has 1/4 on the diagonal and the two
        // surviving coherences moved to the corners.
        out.eigenvalues = {0.25, 0.0, 0.5, 0.25};
        return out;
    }
    out.eigenvalues = x_state_pt_eigenvalues(gamma, delta);
    const double l2 = out.eigenvalues[1];
    out.value = l2 < -kZeroEigenvalue ? -l2 : 0.0;
    return out;
}

NegativityResult x_state_negativity(const DecoherenceFactors& df) {
    return x_state_negativity(df.gamma, df.delta, df.gamma_divergent);
}

Eigen::Matrix4cd partial_transpose(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix4cd out;
    for (int m1 = 0; m1 < 2; ++m1) {
        for (int m2 = 0; m2 < 2; ++m2) {
            for (int n1 = 0; n1 < 2; ++n1) {
                for (int n2 = 0; n2 < 2; ++n2) {
                    out(2 * m1 + m2, 2 * n1 + n2) = rho(2 * m1 + n2, 2 * n1 + m2);
                }
            }
        }
    }
    return out;
}

double negativity_from_spectrum(const std::array<double, 4>& eigenvalues) {
    double n = 0.0;
    for (double l : eigenvalues) {
        if (l < -kZeroEigenvalue) {
            n -= l;
        }
    }
    return n;
}

NegativityResult negativity(const TwoSpinState& state) {
    validate_state(state);
    NegativityResult out;
    out.method = NegativityMethod::NumericPT;
    out.eigenvalues = hermitian_eigenvalues(partial_transpose(state.rho));
    out.value = negativity_from_spectrum(out.eigenvalues);
    return out;
}

}  // namespace dephase
