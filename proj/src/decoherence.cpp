#include "dephase/decoherence.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "dephase/error.hpp"
#include "dephase/kernels.hpp"
#include "parallel.hpp"

namespace dephase {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxHeadDoublings = 48;

std::string describe_failure(const char* what, double t, const quad::IntegrationResult& r) {
    char buf[192];
    std::snprintf(buf, sizeof buf, "%s quadrature did not converge at t=%.17g (error estimate %.3g after %lld evaluations)",
                  what, t, r.error_estimate, static_cast<long long>(r.evals));
    return buf;
}

void require_converged(const char* what, double t, const quad::IntegrationResult& r) {
    if (!r.converged || r.diverged || !std::isfinite(r.value)) {
        throw QuadratureFailure(describe_failure(what, t, r), t);
    }
}

void validate_time(double t) {
    if (!std::isfinite(t) || t < 0.0) {
        throw ConfigError("time must be finite and >= 0");
    }
}

quad::IntegrationRequest base_request(quad::Integrand f, double t, double cutoff,
                                      const QuadratureSettings& qs) {
    quad::IntegrationRequest req;
    req.integrand = std::move(f);
    req.t_scale = t;
    req.cutoff_scale = cutoff;
    req.rel_tol = qs.rel_tol;
    req.abs_tol = qs.abs_tol;
    req.max_evals = qs.max_evals;
    return req;
}

double ohmic_shape(double s, double omega_c, double omega) {
    const double x = omega / omega_c;
    return omega_c * std::exp(s * std::log(x) - x);
}

// Gamma(s) * omega_c = Int_0^inf shape(w) / w dw
double ohmic_linear_coefficient(double s, double omega_c, double t, const QuadratureSettings& qs) {
    const double r = std::round(s);
    if (r == s && s >= 1.0 && s <= 20.0) {
        double fact = 1.0;
        for (int k = 2; k < static_cast<int>(r); ++k) {
            fact *= k;
        }
        return omega_c * fact;
    }
    auto req = base_request([s, omega_c](double w) { return ohmic_shape(s, omega_c, w) / w; }, 0.0,
                            omega_c, qs);
    auto res = quad::integrate_semi_infinite(req);
    require_converged("Ohmic linear coefficient", t, res);
    return res.value;
}

struct OhmicParts {
    double gamma_shape;  // 4 gamma / lambda
    double delta_shape;  // 4 Delta / lambda
};

double ohmic_gamma_shape(const Ohmic& p, double beta, double t, const QuadratureSettings& qs) {
    const double s = p.s;
    const double wc = p.omega_c;
    auto req = base_request(
        [s, wc, beta, t](double w) {
            return ohmic_shape(s, wc, w) * kernels::one_minus_cos_over_sq(w, t) *
                   kernels::coth_half(beta, w);
        },
        t, wc, qs);
    auto res = quad::integrate_semi_infinite(req);
    require_converged("gamma", t, res);
    return res.value;
}

double ohmic_delta_shape(const Ohmic& p, double t, const QuadratureSettings& qs) {
    const double s = p.s;
    const double wc = p.omega_c;
    if (wc * t >= 1.0) {
        // Separate the linear drift so the oscillatory part decays like J / w^2.
        auto req = base_request(
            [s, wc, t](double w) { return ohmic_shape(s, wc, w) * std::sin(w * t) / (w * w); }, t,
            wc, qs);
        auto res = quad::integrate_semi_infinite(req);
        require_converged("Delta", t, res);
        return res.value - t * ohmic_linear_coefficient(s, wc, t, qs);
    }
    auto req = base_request(
        [s, wc, t](double w) {
            return ohmic_shape(s, wc, w) * kernels::sin_minus_x(w * t) / (w * w);
        },
        t, wc, qs);
    auto res = quad::integrate_semi_infinite(req);
    require_converged("Delta", t, res);
    return std::min(res.value, 0.0);
}

// Int_0^inf of an oscillatory kernel whose smooth part is `smooth` and
// whose oscillating part is bounded by envelope(w) * |cos or sin|. The
// integral over [0, W] is taken in full; beyond W only the smooth part is
// kept, with W grown until the Dirichlet bound 2 envelope(W) / t on the
// dropped oscillation is below the tolerance.
double lorentz_component(const char* what, const quad::Integrand& kernel,
                         const quad::Integrand& envelope, const quad::Integrand& smooth,
                         double smooth_factor, const Lorentzian& p, double t,
                         const QuadratureSettings& qs) {
    const double w0 = std::max(8.0 * p.omega_c, p.omega_c + 16.0 * p.q);
    auto req = base_request(kernel, t, p.omega_c, qs);
    req.upper = w0;
    req.peak = quad::Peak{p.omega_c, p.q};
    auto head = quad::integrate_semi_infinite(req);
    require_converged(what, t, head);
    double value = head.value;
    double w = w0;
    for (int k = 0;; ++k) {
        const double tol = quad::tolerance_for(value, qs.rel_tol, qs.abs_tol);
        if (2.0 * envelope(w) / t <= 0.1 * tol) {
            break;
        }
        if (k == kMaxHeadDoublings) {
            throw QuadratureFailure(std::string(what) + " oscillatory tail did not decay", t);
        }
        auto ext = base_request(kernel, t, p.omega_c, qs);
        ext.lower = w;
        ext.upper = 2.0 * w;
        auto piece = quad::integrate_semi_infinite(ext);
        require_converged(what, t, piece);
        value += piece.value;
        w *= 2.0;
    }
    auto tail = quad::integrate_algebraic_tail(smooth, w, qs.rel_tol, qs.abs_tol, qs.max_evals);
    require_converged(what, t, tail);
    return value + smooth_factor * tail.value;
}

double lorentz_shape(const Lorentzian& p, double w) {
    const double a = (w - p.omega_c) * (w + p.omega_c);
    const double wn = p.n == 0 ? 1.0 : (p.n == 1 ? w : w * w);
    return p.q * wn / (M_PI * a * a + M_PI * p.q * p.q * w * w);
}

double lorentz_gamma_shape(const Lorentzian& p, double beta, double t, const QuadratureSettings& qs) {
    auto kernel = [p, beta, t](double w) {
        return lorentz_shape(p, w) * kernels::one_minus_cos_over_sq(w, t) * kernels::coth_half(beta, w);
    };
    auto envelope = [p, beta](double w) {
        return lorentz_shape(p, w) * kernels::coth_half(beta, w) / (w * w);
    };
    return lorentz_component("gamma", kernel, envelope, envelope, 1.0, p, t, qs);
}

double lorentz_delta_shape(const Lorentzian& p, double t, const QuadratureSettings& qs) {
    auto kernel = [p, t](double w) {
        return lorentz_shape(p, w) * kernels::sin_minus_x(w * t) / (w * w);
    };
    auto envelope = [p](double w) { return lorentz_shape(p, w) / (w * w); };
    auto smooth = [p](double w) { return lorentz_shape(p, w) / w; };
    return std::min(lorentz_component("Delta", kernel, envelope, smooth, -t, p, t, qs), 0.0);
}

DecoherenceFactors quadrature_factors(const SpectralDensity& j, const BathConditions& bc, double t,
                                      const QuadratureSettings& qs, bool allow_reduction) {
    DecoherenceFactors out;
    out.method = FactorMethod::Quadrature;
    if (const auto* o = std::get_if<Ohmic>(&j.params())) {
        if (allow_reduction && o->s == 2.0) {
            out.method = FactorMethod::AnalyticReduction;
        }
        if (t == 0.0) {
            return out;
        }
        out.gamma = 0.25 * ohmic_gamma_shape(*o, bc.beta, t, qs) * o->lambda;
        out.delta = out.method == FactorMethod::AnalyticReduction
                        ? ohmic_s2_delta(o->lambda, o->omega_c, t)
                        : 0.25 * ohmic_delta_shape(*o, t, qs) * o->lambda;
        return out;
    }
    const auto& l = std::get<Lorentzian>(j.params());
    if (t == 0.0) {
        return out;
    }
    out.gamma_divergent = gamma_diverges(j);
    out.gamma = out.gamma_divergent ? kInf : 0.25 * lorentz_gamma_shape(l, bc.beta, t, qs) * l.lambda;
    out.delta = 0.25 * lorentz_delta_shape(l, t, qs) * l.lambda;
    return out;
}

}  // namespace

void BathConditions::validate() const {
    if (!std::isfinite(beta) || beta <= 0.0) {
        throw ConfigError("beta must be finite and > 0");
    }
}

void QuadratureSettings::validate() const {
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
        throw ConfigError("quad.rel_tol must be finite and > 0");
    }
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
        throw ConfigError("quad.abs_tol must be finite and > 0");
    }
    if (max_evals <= 0) {
        throw ConfigError("quad.max_evals must be > 0");
    }
}

std::string_view method_name(FactorMethod method) {
    switch (method) {
        case FactorMethod::ClosedForm:
            return "closed_form";
        case FactorMethod::AnalyticReduction:
            return "analytic_reduction";
        case FactorMethod::Quadrature:
            return "quadrature";
    }
    return "unknown";
}

bool gamma_diverges(const SpectralDensity& j) {
    if (j.family() == SpectralFamily::SingleMode) {
        return false;
    }
    return ir_exponent(j) <= 0.0;
}

DecoherenceFactors closed_form_single_mode(double lambda, double omega_c, double beta, double t) {
    if (!std::isfinite(lambda) || lambda < 0.0) {
        throw ConfigError("bath.lambda must be finite and >= 0");
    }
    if (!std::isfinite(omega_c) || omega_c <= 0.0) {
        throw ConfigError("bath.omega_c must be finite and > 0");
    }
    BathConditions{beta}.validate();
    validate_time(t);
    DecoherenceFactors out;
    out.method = FactorMethod::ClosedForm;
    if (t == 0.0) {
        return out;
    }
    const double w2 = omega_c * omega_c;
    out.gamma = 0.25 * kernels::one_minus_cos_over_sq(omega_c, t) * kernels::coth_half(beta, omega_c) * lambda;
    out.delta = 0.25 * kernels::sin_minus_x(omega_c * t) / w2 * lambda;
    return out;
}

double ohmic_s2_delta(double lambda, double omega_c, double t) {
    if (!std::isfinite(omega_c) || omega_c <= 0.0) {
        throw ConfigError("bath.omega_c must be finite and > 0");
    }
    validate_time(t);
    // t / (t^2 + wc^-2) - wc^2 t = -wc^4 t^3 / (1 + wc^2 t^2), without cancellation.
    const double x = omega_c * t;
    const double shape = -omega_c * omega_c * x * x * t / (1.0 + x * x);
    return 0.25 * shape / omega_c * lambda;
}

DecoherenceFactors factors(const SpectralDensity& j, const BathConditions& bc, double t,
                           const QuadratureSettings& qs) {
    bc.validate();
    qs.validate();
    validate_time(t);
    if (const auto* sm = std::get_if<SingleMode>(&j.params())) {
        return closed_form_single_mode(sm->lambda, sm->omega_c, bc.beta, t);
    }
    return quadrature_factors(j, bc, t, qs, true);
}

DecoherenceFactors factors_by_quadrature(const SpectralDensity& j, const BathConditions& bc,
                                         double t, const QuadratureSettings& qs) {
    bc.validate();
    qs.validate();
    validate_time(t);
    if (j.family() == SpectralFamily::SingleMode) {
        throw NotPointwiseError("the single-mode bath has no pointwise spectral density to integrate");
    }
    return quadrature_factors(j, bc, t, qs, false);
}

std::vector<DecoherenceFactors> factors_series(const SpectralDensity& j, const BathConditions& bc,
                                               std::span<const double> times,
                                               const QuadratureSettings& qs, unsigned threads) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        validate_time(times[i]);
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw ConfigError("time grid must be strictly ascending");
        }
    }
    std::vector<DecoherenceFactors> out(times.size());
    detail::parallel_for(times.size(), threads, [&](std::size_t i) { out[i] = factors(j, bc, times[i], qs); });
    return out;
}

}  // namespace dephase
