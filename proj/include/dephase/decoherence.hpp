#pragma once

// Decoherence factors gamma(t) (dephasing exponent) and Delta(t) (bath-induced
// Ising phase) of two spins coupled to a common bosonic bath:
//
//   gamma(t) = 1/4 Int_0^inf J(w) (1 - cos wt) / w^2 coth(beta w / 2) dw
//   Delta(t) = 1/4 Int_0^inf J(w) (sin wt - wt) / w^2 dw

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "dephase/quadrature.hpp"
#include "dephase/spectral.hpp"

namespace dephase {

struct BathConditions {
    double beta;  ///< inverse temperature

    void validate() const;
};

enum class FactorMethod { ClosedForm, AnalyticReduction, Quadrature };

std::string_view method_name(FactorMethod method);

struct DecoherenceFactors {
    double gamma = 0.0;  ///< >= 0; +inf when gamma_divergent
    double delta = 0.0;  ///< <= 0
    bool gamma_divergent = false;
    FactorMethod method = FactorMethod::Quadrature;
};

/// Tolerances applied to the coupling-free integrals (J / lambda), so the
/// factors are exactly linear in lambda.
struct QuadratureSettings {
    double rel_tol = quad::kDefaultRelTol;
    double abs_tol = quad::kDefaultAbsTol;
    std::int64_t max_evals = quad::kDefaultMaxEvals;

    void validate() const;
};

/// True when the small-w power law of J makes gamma(t > 0) infinite.
bool gamma_diverges(const SpectralDensity& j);

/// Closed forms for the single-mode bath. lambda >= 0 is accepted here.
DecoherenceFactors closed_form_single_mode(double lambda, double omega_c, double beta, double t);

/// Elementary Delta(t) for the Ohmic bath with s = 2:
/// lambda / (4 omega_c) * [t / (t^2 + omega_c^-2) - omega_c^2 t].
double ohmic_s2_delta(double lambda, double omega_c, double t);

/// Dispatching evaluation: closed form for the single mode, elementary Delta
/// for Ohmic s = 2, divergence flag for J ~ w^0 at the origin, quadrature
/// otherwise. Throws QuadratureFailure if an integral does not converge.
DecoherenceFactors factors(const SpectralDensity& j, const BathConditions& bc, double t,
                           const QuadratureSettings& qs = {});

/// Same as factors() but never takes the Ohmic s = 2 shortcut. Throws
/// NotPointwiseError for the single mode.
DecoherenceFactors factors_by_quadrature(const SpectralDensity& j, const BathConditions& bc,
                                         double t, const QuadratureSettings& qs = {});

/// factors() over an ascending time grid. Each point is computed on its own,
/// so results do not depend on the grid or on `threads` (0 = hardware).
std::vector<DecoherenceFactors> factors_series(const SpectralDensity& j, const BathConditions& bc,
                                               std::span<const double> times,
                                               const QuadratureSettings& qs = {},
                                               unsigned threads = 1);

}  // namespace dephase
