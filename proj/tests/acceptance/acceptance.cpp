// Acceptance checks. One line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dephase/decoherence.hpp"
#include "dephase/dynamics.hpp"
#include "dephase/entanglement.hpp"
#include "dephase/hermitian_eigen.hpp"
#include "dephase/record_io.hpp"
#include "dephase/scenario.hpp"

using namespace dephase;

namespace {

constexpr double kNegativityTol = 1e-10;
constexpr double kSpectrumTol = 1e-10;
constexpr double kIdealTol = 1e-12;
constexpr double kPeakTime = 10 * M_PI;
constexpr double kPeakWindow = 0.5;
constexpr double kPeakMin = 0.49;
constexpr double kS2RelTol = 1e-8;
constexpr double kLorentzMaxMin = 0.45;
constexpr double kOrderingTol = 1e-10;
constexpr double kLinearityTol = 1e-10;
constexpr double kFieldTol = 1e-10;
constexpr double kAc1Seconds = 5.0;
constexpr double kAc4Seconds = 1.0;
constexpr double kAc10Seconds = 30.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("AC%d %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) {
        ++failures;
    }
}

void guarded(int id, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(id, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::vector<std::pair<double, double>> random_factors(std::uint64_t seed, int n) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> g(0.0, 2.0);
    std::uniform_real_distribution<double> d(-2.0, 0.0);
    std::vector<std::pair<double, double>> out(n);
    for (auto& p : out) {
        p = {g(gen), d(gen)};
    }
    return out;
}

TwoSpinState x_state_at(double gamma, double delta) {
    DecoherenceFactors f;
    f.gamma = gamma;
    f.delta = delta;
    return evolve(x_projected_state(), f, FieldConfig{}, 0.0);
}

double max_negativity(const RunRecord& rec) {
    double m = 0.0;
    for (const auto& p : rec.points) {
        m = std::max(m, p.negativity);
    }
    return m;
}

// Index of the largest negativity before the first lobe closes (the curve
// has passed 0.25 and fallen back under 0.05).
std::size_t first_peak(const RunRecord& rec) {
    std::size_t best = 0;
    bool risen = false;
    for (std::size_t i = 0; i < rec.points.size(); ++i) {
        const double n = rec.points[i].negativity;
        if (n > rec.points[best].negativity) {
            best = i;
        }
        risen = risen || n > 0.25;
        if (risen && n < 0.05) {
            break;
        }
    }
    return best;
}

void ac1() {
    const auto start = Clock::now();
    double worst = 0.0;
    for (const auto& [g, d] : random_factors(11, 10000)) {
        const double closed = x_state_negativity(g, d).value;
        const double numeric = negativity(x_state_at(g, d)).value;
        worst = std::max(worst, std::abs(closed - numeric));
    }
    const double secs = seconds_since(start);
    report(1, worst <= kNegativityTol && secs < kAc1Seconds,
           fmt("max |closed - numeric| = %.3g", worst) + fmt(", %.2f s", secs));
}

void ac2() {
    double worst = 0.0;
    int other_negative = 0;
    for (const auto& [g, d] : random_factors(11, 10000)) {
        auto closed = x_state_pt_eigenvalues(g, d);
        for (int k = 0; k < 4; ++k) {
            if (k != 1 && closed[k] < -kSpectrumTol) {
                ++other_negative;
            }
        }
        const auto numeric = hermitian_eigenvalues(partial_transpose(x_state_at(g, d).rho));
        std::array<double, 4> a = closed;
        std::array<double, 4> b{numeric[0], numeric[1], numeric[2], numeric[3]};
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        for (int k = 0; k < 4; ++k) {
            worst = std::max(worst, std::abs(a[k] - b[k]));
        }
    }
    report(2, worst <= kSpectrumTol && other_negative == 0,
           fmt("max multiset gap = %.3g", worst) + ", negative non-L2 eigenvalues = " +
               std::to_string(other_negative));
}

void ac3() {
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> d(-5.0, 0.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double delta = d(gen);
        DecoherenceFactors f;
        f.delta = delta;
        const auto state = evolve(x_projected_state(), f, FieldConfig{}, 1.0);
        const double n = negativity(state).value;
        worst = std::max(worst, std::abs(n - 0.5 * std::abs(std::sin(4 * delta))));
    }
    report(3, worst <= kIdealTol, fmt("max deviation = %.3g", worst));
}

void ac4() {
    const auto start = Clock::now();
    const RunRecord main = run(find_preset("fig1_lambda1").config, 1);
    const auto& peak = main.points[first_peak(main)];
    bool ok = std::abs(peak.t - kPeakTime) <= kPeakWindow && peak.negativity >= kPeakMin;
    std::string detail = fmt("lambda=1 peak t = %.4f", peak.t) + fmt(", N = %.5f", peak.negativity);

    double prev = INFINITY;
    detail += "; peak times";
    for (const char* name : {"fig1_lambda0p01", "fig1_lambda0p05", "fig1_lambda0p5", "fig1_lambda1",
                             "fig1_lambda2", "fig1_lambda5"}) {
        const RunRecord rec = run(find_preset(name).config, 1);
        const double t = rec.points[first_peak(rec)].t;
        detail += fmt(" %.4g", t);
        ok = ok && t < prev;
        prev = t;
    }
    const double secs = seconds_since(start);
    ok = ok && secs < kAc4Seconds;
    report(4, ok, detail + fmt(", %.2f s", secs));
}

void ac5() {
    const double lambda = 0.01;
    const double omega_c = 10.0;
    const auto j = SpectralDensity::ohmic(lambda, 2.0, omega_c);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double t = 0.1 + (50.0 - 0.1) * i / 99.0;
        const double numeric = factors_by_quadrature(j, {1.0}, t).delta;
        const double exact = (lambda / (4 * omega_c)) * (t / (t * t + 1 / (omega_c * omega_c)) - omega_c * omega_c * t);
        worst = std::max(worst, std::abs(numeric - exact) / std::abs(exact));
    }
    report(5, worst <= kS2RelTol, fmt("max relative error = %.3g", worst));
}

void ac6() {
    const RunRecord rec = run(find_preset("lorentz_n0").config);
    bool ok = !rec.points.empty();
    for (const auto& p : rec.points) {
        ok = ok && p.gamma_divergent && p.negativity == 0.0;
    }
    report(6, ok, std::to_string(rec.points.size()) + " points checked");
}

void ac7() {
    bool ok = true;
    std::string detail = "n=2 max N";
    for (const char* name : {"fig5b_q0p05", "fig5b_q0p5", "fig5b_q5"}) {
        const double m = max_negativity(run(find_preset(name).config));
        detail += fmt(" %.4f", m);
        ok = ok && m >= kLorentzMaxMin;
    }
    detail += "; n=1 max N";
    double prev = INFINITY;
    for (const char* name : {"fig5a_q0p05", "fig5a_q0p5", "fig5a_q5"}) {
        const double m = max_negativity(run(find_preset(name).config));
        detail += fmt(" %.4f", m);
        ok = ok && m < prev;
        prev = m;
    }
    report(7, ok, detail);
}

void ac8() {
    const double super = max_negativity(run(find_preset("fig3_s3").config));
    const double sub = max_negativity(run(find_preset("fig3_s0p5").config));
    report(8, super > sub, fmt("s=3 max N = %.4f", super) + fmt(", s=0.5 max N = %.4f", sub));
}

void ac9() {
    bool ok = true;
    std::string detail;
    for (const char* family : {"delta", "ohmic", "lorentz"}) {
        const std::string stem = std::string("fig6_") + family + "_theta_";
        const RunRecord a = run(find_preset(stem + "pi8").config);
        const RunRecord b = run(find_preset(stem + "pi4").config);
        const RunRecord c = run(find_preset(stem + "pi2").config);
        double worst = -INFINITY;
        for (std::size_t i = 0; i < a.points.size(); ++i) {
            worst = std::max(worst, a.points[i].negativity - b.points[i].negativity);
            worst = std::max(worst, b.points[i].negativity - c.points[i].negativity);
        }
        ok = ok && worst <= kOrderingTol && a.points.size() == c.points.size();
        detail += std::string(detail.empty() ? "" : "; ") + family + fmt(" worst violation %.3g", worst);
    }
    report(9, ok, detail);
}

SpectralDensity random_bath(std::mt19937_64& gen) {
    auto u = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); };
    switch (std::uniform_int_distribution<int>(0, 2)(gen)) {
        case 0:
            return SpectralDensity::single_mode(u(0.01, 5), u(1, 30));
        case 1:
            return SpectralDensity::ohmic(u(0.01, 2), u(0.5, 5), u(1, 20));
        default:
            return SpectralDensity::lorentzian(u(0.1, 2), u(0.05, 5), u(5, 25),
                                               std::uniform_int_distribution<int>(1, 2)(gen));
    }
}

void ac10() {
    const auto start = Clock::now();
    std::mt19937_64 gen(17);
    auto u = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); };
    int state_bad = 0, sign_bad = 0, linear_bad = 0, field_bad = 0, range_bad = 0;
    constexpr int kCases = 1000;

    for (int i = 0; i < kCases; ++i) {
        const InitialProductState p{u(0, M_PI), u(0, M_PI), u(0, 6.28), u(0, 6.28)};
        const auto init = bloch_product_to_general(p);
        DecoherenceFactors f;
        f.gamma = u(0, 2);
        f.delta = u(-2, 0);
        const double t = u(0, 50);
        const auto s0 = evolve(init, f, FieldConfig{0.0}, t);
        const auto s1 = evolve(init, f, FieldConfig{u(-10, 10)}, t);
        try {
            validate_state(s0);
            validate_state(s1);
        } catch (const std::exception&) {
            ++state_bad;
        }
        const double n0 = negativity(s0).value;
        const double n1 = negativity(s1).value;
        field_bad += std::abs(n0 - n1) > kFieldTol;
        range_bad += !(n0 >= 0.0 && n0 <= 0.5);
    }

    for (int i = 0; i < kCases; ++i) {
        const auto j = random_bath(gen);
        const BathConditions bc{u(0.1, 5)};
        const double t = u(0, 6);
        const auto a = factors(j, bc, t);
        const auto b = factors(j.with_lambda(3 * j.lambda()), bc, t);
        sign_bad += !(a.gamma >= 0.0 && a.delta <= 0.0);
        linear_bad += std::abs(b.gamma - 3 * a.gamma) > kLinearityTol * std::max(1.0, std::abs(b.gamma));
        linear_bad += std::abs(b.delta - 3 * a.delta) > kLinearityTol * std::max(1.0, std::abs(b.delta));
    }
    const double secs = seconds_since(start);
    const bool ok = state_bad + sign_bad + linear_bad + field_bad + range_bad == 0 && secs < kAc10Seconds;
    std::ostringstream d;
    d << "violations: state " << state_bad << ", sign " << sign_bad << ", linearity " << linear_bad
      << ", field " << field_bad << ", range " << range_bad << fmt(" (%.1f s)", secs);
    report(10, ok, d.str());
}

std::string preset_csv(const Preset& p, unsigned threads) {
    std::ostringstream out;
    if (p.sweep) {
        write_sweep_csv(out, sweep(p.config, *p.sweep, threads));
    } else {
        write_csv(out, run(p.config, threads));
    }
    return out.str();
}

void ac11() {
    int differing = 0;
    std::string first;
    for (const auto& p : builtin_presets()) {
        if (preset_csv(p, 1) != preset_csv(p, 4)) {
            ++differing;
            if (first.empty()) {
                first = p.name;
            }
        }
    }
    report(11, differing == 0,
           std::to_string(builtin_presets().size()) + " presets, " + std::to_string(differing) +
               " differ" + (first.empty() ? "" : " (first: " + first + ")"));
}

}  // namespace

int main() {
    guarded(1, ac1);
    guarded(2, ac2);
    guarded(3, ac3);
    guarded(4, ac4);
    guarded(5, ac5);
    guarded(6, ac6);
    guarded(7, ac7);
    guarded(8, ac8);
    guarded(9, ac9);
    guarded(10, ac10);
    guarded(11, ac11);
    std::printf("%s: %d failing\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
