#include "dephase/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dephase/error.hpp"

namespace dephase {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(std::string("bath.") + name + " must be finite and > 0");
    }
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

SpectralDensity::SpectralDensity(SingleMode p) : params_(p) {
    require_positive(p.lambda, "lambda");
    require_positive(p.omega_c, "omega_c");
}

SpectralDensity::SpectralDensity(Ohmic p) : params_(p) {
    require_positive(p.lambda, "lambda");
    require_positive(p.s, "s");
    require_positive(p.omega_c, "omega_c");
}

SpectralDensity::SpectralDensity(Lorentzian p) : params_(p) {
    require_positive(p.lambda, "lambda");
    require_positive(p.q, "q");
    require_positive(p.omega_c, "omega_c");
    if (p.n < 0 || p.n > 2) {
        throw ConfigError("bath.n must be 0, 1 or 2");
    }
}

SpectralDensity SpectralDensity::single_mode(double lambda, double omega_c) {
    return SpectralDensity(SingleMode{lambda, omega_c});
}

SpectralDensity SpectralDensity::ohmic(double lambda, double s, double omega_c) {
    return SpectralDensity(Ohmic{lambda, s, omega_c});
}

SpectralDensity SpectralDensity::lorentzian(double lambda, double q, double omega_c, int n) {
    return SpectralDensity(Lorentzian{lambda, q, omega_c, n});
}

SpectralFamily SpectralDensity::family() const {
    return std::visit(Overloaded{
                          [](const SingleMode&) { return SpectralFamily::SingleMode; },
                          [](const Ohmic&) { return SpectralFamily::Ohmic; },
                          [](const Lorentzian&) { return SpectralFamily::Lorentzian; },
                      },
                      params_);
}

double SpectralDensity::lambda() const {
    return std::visit([](const auto& p) { return p.lambda; }, params_);
}

double SpectralDensity::omega_c() const {
    return std::visit([](const auto& p) { return p.omega_c; }, params_);
}

SpectralDensity SpectralDensity::with_lambda(double lambda) const {
    return std::visit(
        [lambda](auto p) {
            p.lambda = lambda;
            return SpectralDensity(p);
        },
        params_);
}

std::string_view family_tag(SpectralFamily family) {
    switch (family) {
        case SpectralFamily::SingleMode:
            return "single_mode";
        case SpectralFamily::Ohmic:
            return "ohmic";
        case SpectralFamily::Lorentzian:
            return "lorentzian";
    }
    return "unknown";
}

SpectralFamily family_from_tag(std::string_view tag) {
    if (tag == "single_mode") {
        return SpectralFamily::SingleMode;
    }
    if (tag == "ohmic") {
        return SpectralFamily::Ohmic;
    }
    if (tag == "lorentzian") {
        return SpectralFamily::Lorentzian;
    }
    throw ConfigError("bath.family must be single_mode, ohmic or lorentzian (got '" +
                      std::string(tag) + "')");
}

double evaluate_shape(const SpectralDensity& j, double omega) {
    if (!(omega > 0.0)) {
        throw ConfigError("spectral density is evaluated only at w > 0");
    }
    return std::visit(
        Overloaded{
            [](const SingleMode&) -> double {
                throw NotPointwiseError("single_mode spectral density is a delta function");
            },
            [omega](const Ohmic& p) {
                const double x = omega / p.omega_c;
                // w^s omega_c^(1-s) e^(-w/omega_c) = omega_c * x^s * e^(-x)
                return p.omega_c * std::exp(p.s * std::log(x) - x);
            },
            [omega](const Lorentzian& p) {
                const double detune = (omega - p.omega_c) * (omega + p.omega_c);
                const double den = detune * detune + p.q * p.q * omega * omega;
                return p.q * std::pow(omega, p.n) / (std::numbers::pi * den);
            },
        },
        j.params());
}

double evaluate(const SpectralDensity& j, double omega) {
    return j.lambda() * evaluate_shape(j, omega);
}

double ir_exponent(const SpectralDensity& j) {
    return std::visit(Overloaded{
                          [](const SingleMode&) -> double {
                              throw NotPointwiseError(
                                  "single_mode spectral density has no power law at w -> 0");
                          },
                          [](const Ohmic& p) { return p.s; },
                          [](const Lorentzian& p) { return static_cast<double>(p.n); },
                      },
                      j.params());
}

}  // namespace dephase
