#pragma once

// Adaptive Gauss-Kronrod integration over finite intervals and over [0, inf)
// for integrands that oscillate like cos(w t) / sin(w t) and may carry an
// integrable singularity at w = 0.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>

namespace dephase::quad {

using Integrand = std::function<double(double)>;

inline constexpr double kDefaultRelTol = 1e-8;
inline constexpr double kDefaultAbsTol = 1e-12;
inline constexpr std::int64_t kDefaultMaxEvals = 20'000'000;

/// A narrow feature (resonance) the panelling must resolve.
struct Peak {
    double center;
    double width;
};

struct IntegrationRequest {
    Integrand integrand;
    double t_scale = 0.0;       ///< oscillation frequency of the integrand in w (the time t)
    double cutoff_scale = 1.0;  ///< decay scale of the integrand envelope
    double rel_tol = kDefaultRelTol;
    double abs_tol = kDefaultAbsTol;
    std::int64_t max_evals = kDefaultMaxEvals;

    /// Integration range. lower == 0 enables the origin probe (w = 0 is never
    /// sampled); upper == inf enables tail truncation.
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();

    std::optional<Peak> peak;

    /// Throws ConfigError when a field is out of range.
    void validate() const;
};

struct IntegrationResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::int64_t evals = 0;
    bool converged = false;
    bool diverged = false;

    double tolerance(double rel_tol, double abs_tol) const;
};

/// Combined tolerance max(abs_tol, rel_tol * |value|).
double tolerance_for(double value, double rel_tol, double abs_tol);

/// Globally adaptive 7/15-point Gauss-Kronrod integration over [a, b].
/// The rule is open, so endpoint singularities are never evaluated.
IntegrationResult integrate_on_interval(const Integrand& f, double a, double b,
                                        double rel_tol = kDefaultRelTol,
                                        double abs_tol = kDefaultAbsTol,
                                        std::int64_t max_evals = kDefaultMaxEvals);

/// Integrates over [req.lower, req.upper] (default [0, inf)).
///
/// Panels are at most pi / t_scale wide, so every half period of the
/// oscillation gets its own Gauss-Kronrod panel. Near w = 0 the range is
/// covered by dyadic panels [a/2^(k+1), a/2^k]; if six successive panel
/// contributions fail to shrink the result is flagged `diverged`. Beyond
/// 8 * cutoff_scale the range grows in doubling blocks aligned to whole
/// periods until a block contributes less than the tolerance; six
/// non-shrinking blocks also flag divergence.
IntegrationResult integrate_semi_infinite(const IntegrationRequest& req);

/// Non-oscillatory tail integral over [a, inf) through the substitution
/// w = a / u, for integrands that decay at least like w^(-1-eps).
IntegrationResult integrate_algebraic_tail(const Integrand& f, double a,
                                           double rel_tol = kDefaultRelTol,
                                           double abs_tol = kDefaultAbsTol,
                                           std::int64_t max_evals = kDefaultMaxEvals);

}  // namespace dephase::quad
