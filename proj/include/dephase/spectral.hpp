#pragma once

// Bath spectral densities J(w). Frequencies are in natural units
// (hbar = k_B = 1).

#include <string_view>
#include <variant>

namespace dephase {

/// All bath weight sits in a single mode: J(w) = lambda * delta(w - omega_c).
struct SingleMode {
    double lambda;
    double omega_c;
    bool operator==(const SingleMode&) const = default;
};

/// J(w) = lambda * w^s * omega_c^(1-s) * exp(-w / omega_c).
struct Ohmic {
    double lambda;
    double s;
    double omega_c;
    bool operator==(const Ohmic&) const = default;
};

/// J(w) = (lambda / pi) * q * w^n / ((w^2 - omega_c^2)^2 + q^2 w^2), n in {0, 1, 2}.
struct Lorentzian {
    double lambda;
    double q;
    double omega_c;
    int n;
    bool operator==(const Lorentzian&) const = default;
};

enum class SpectralFamily { SingleMode, Ohmic, Lorentzian };

/// Immutable, validated spectral density.
class SpectralDensity {
public:
    using Variant = std::variant<SingleMode, Ohmic, Lorentzian>;

    SpectralDensity(SingleMode p);
    SpectralDensity(Ohmic p);
    SpectralDensity(Lorentzian p);

    static SpectralDensity single_mode(double lambda, double omega_c);
    static SpectralDensity ohmic(double lambda, double s, double omega_c);
    static SpectralDensity lorentzian(double lambda, double q, double omega_c, int n);

    SpectralFamily family() const;
    const Variant& params() const { return params_; }
    double lambda() const;
    double omega_c() const;

    /// Same shape with a different coupling strength.
    SpectralDensity with_lambda(double lambda) const;

    bool operator==(const SpectralDensity&) const = default;

private:
    Variant params_;
};

/// "single_mode" | "ohmic" | "lorentzian"
std::string_view family_tag(SpectralFamily family);
SpectralFamily family_from_tag(std::string_view tag);

/// J(w) for w > 0. Throws NotPointwiseError for the single mode.
double evaluate(const SpectralDensity& j, double omega);

/// J(w) / lambda: the coupling-free shape.
double evaluate_shape(const SpectralDensity& j, double omega);

/// Exponent p of the small-w power law J(w) ~ C w^p (s for Ohmic, n for
/// Lorentzian). Throws NotPointwiseError for the single mode.
double ir_exponent(const SpectralDensity& j);

}  // namespace dephase
