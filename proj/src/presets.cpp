#include <cmath>
#include <string>

#include "dephase/error.hpp"
#include "dephase/scenario.hpp"

namespace dephase {

namespace {

ScenarioConfig make(SpectralDensity bath, double beta, double t_start, double t_end, std::int64_t n) {
    ScenarioConfig cfg;
    cfg.bath = bath;
    cfg.beta = beta;
    cfg.time = {t_start, t_end, n};
    return cfg;
}

ScenarioConfig single_mode_lambda(double lambda) {
    return make(SpectralDensity::single_mode(lambda, 20.0), 1.0, 0.0, 40.0 / lambda, 2001);
}

ScenarioConfig single_mode_beta(double beta) {
    return make(SpectralDensity::single_mode(1.0, 20.0), beta, 0.0, 40.0, 2001);
}

ScenarioConfig ohmic_s(double s) {
    return make(SpectralDensity::ohmic(0.01, s, 10.0), 1.0, 0.0, 20.0, 401);
}

ScenarioConfig lorentz_n1(double q) {
    return make(SpectralDensity::lorentzian(1.0, q, 20.0, 1), 1.0, 0.0, 2000.0, 101);
}

ScenarioConfig lorentz_n2(double q) {
    return make(SpectralDensity::lorentzian(1.0, q, 20.0, 2), 1.0, 0.0, 150.0, 301);
}

ScenarioConfig with_theta(ScenarioConfig cfg, double theta) {
    cfg.init.theta1 = theta;
    cfg.init.theta2 = theta;
    return cfg;
}

std::vector<Preset> build() {
    std::vector<Preset> out;
    auto add = [&](std::string name, std::string desc, ScenarioConfig cfg,
                   std::optional<SweepSpec> sw = std::nullopt) {
        cfg.validate();
        out.push_back({std::move(name), std::move(desc), std::move(cfg), std::move(sw)});
    };

    const std::pair<const char*, double> lambdas[] = {{"0p01", 0.01}, {"0p05", 0.05}, {"0p5", 0.5},
                                                      {"1", 1.0},     {"2", 2.0},     {"5", 5.0}};
    for (auto [tag, l] : lambdas) {
        add(std::string("fig1_lambda") + tag, "single mode, omega_c=20, beta=1, lambda=" + std::string(tag),
            single_mode_lambda(l));
    }

    const std::pair<const char*, double> betas[] = {{"1", 1.0}, {"0p1", 0.1}, {"0p01", 0.01}};
    for (auto [tag, b] : betas) {
        add(std::string("fig2_beta") + tag, "single mode, lambda=1, omega_c=20, beta=" + std::string(tag),
            single_mode_beta(b));
    }
    add("fig2", "single mode, lambda=1, omega_c=20, sweep beta", single_mode_beta(1.0),
        SweepSpec{"beta", {1.0, 0.1, 0.01}});

    const std::pair<const char*, double> ohmic_all[] = {{"0p5", 0.5}, {"1", 1.0}, {"2", 2.0},
                                                        {"3", 3.0},   {"4", 4.0}, {"6", 6.0}};
    for (auto [tag, s] : ohmic_all) {
        add(std::string("fig3_s") + tag, "Ohmic, lambda=0.01, omega_c=10, beta=1, s=" + std::string(tag),
            ohmic_s(s));
    }
    add("fig3", "Ohmic, lambda=0.01, omega_c=10, beta=1, sweep s", ohmic_s(0.5),
        SweepSpec{"bath.s", {0.5, 1.0, 2.0, 3.0, 4.0, 6.0}});

    const std::pair<const char*, double> ohmic_best[] = {
        {"2", 2.0}, {"2p5", 2.5}, {"3", 3.0}, {"3p5", 3.5}, {"4", 4.0}};
    for (auto [tag, s] : ohmic_best) {
        add(std::string("fig4_s") + tag, "Ohmic, lambda=0.01, omega_c=10, beta=1, s=" + std::string(tag),
            ohmic_s(s));
    }
    add("fig4", "Ohmic, lambda=0.01, omega_c=10, beta=1, sweep s over [2, 4]", ohmic_s(2.0),
        SweepSpec{"bath.s", {2.0, 2.5, 3.0, 3.5, 4.0}});

    const std::pair<const char*, double> qs[] = {{"0p05", 0.05}, {"0p5", 0.5}, {"5", 5.0}};
    for (auto [tag, q] : qs) {
        add(std::string("fig5a_q") + tag, "Lorentzian n=1, lambda=1, omega_c=20, beta=1, q=" + std::string(tag),
            lorentz_n1(q));
    }
    add("fig5a", "Lorentzian n=1, lambda=1, omega_c=20, beta=1, sweep q", lorentz_n1(0.05),
        SweepSpec{"bath.q", {0.05, 0.5, 5.0}});
    for (auto [tag, q] : qs) {
        add(std::string("fig5b_q") + tag, "Lorentzian n=2, lambda=1, omega_c=20, beta=1, q=" + std::string(tag),
            lorentz_n2(q));
    }
    add("fig5b", "Lorentzian n=2, lambda=1, omega_c=20, beta=1, sweep q", lorentz_n2(0.05),
        SweepSpec{"bath.q", {0.05, 0.5, 5.0}});

    const std::pair<const char*, double> thetas[] = {{"pi8", M_PI / 8}, {"pi4", M_PI / 4}, {"pi2", M_PI / 2}};
    const std::pair<const char*, ScenarioConfig> fig6_bases[] = {
        {"delta", single_mode_lambda(1.0)}, {"ohmic", ohmic_s(3.0)}, {"lorentz", lorentz_n2(0.5)}};
    for (const auto& [family, base] : fig6_bases) {
        for (auto [tag, th] : thetas) {
            add(std::string("fig6_") + family + "_theta_" + tag,
                std::string(family) + " bath, both spins at polar angle " + tag, with_theta(base, th));
        }
        add(std::string("fig6_") + family + "_theta",
            std::string(family) + " bath, sweep polar angle over {pi/8, pi/4, pi/2}",
            with_theta(base, M_PI / 8), SweepSpec{"init.theta", {M_PI / 8, M_PI / 4, M_PI / 2}});
    }

    for (auto [tag, l] : {std::pair{"0p01", 0.01}, std::pair{"0p5", 0.5}, std::pair{"1", 1.0}}) {
        add(std::string("fig7_delta_lambda") + tag, "ideal comparison, single mode, lambda=" + std::string(tag),
            single_mode_lambda(l));
    }
    for (auto [tag, s] : {std::pair{"2", 2.0}, std::pair{"3", 3.0}, std::pair{"4", 4.0}}) {
        add(std::string("fig7_ohmic_s") + tag, "ideal comparison, Ohmic, s=" + std::string(tag), ohmic_s(s));
    }
    for (auto [tag, q] : qs) {
        add(std::string("fig7_lorentz_q") + tag, "ideal comparison, Lorentzian n=2, q=" + std::string(tag),
            lorentz_n2(q));
    }

    add("lorentz_n0", "Lorentzian n=0, lambda=1, omega_c=20, q=0.5, beta=1 (divergent dephasing)",
        make(SpectralDensity::lorentzian(1.0, 0.5, 20.0, 0), 1.0, 0.1, 150.0, 301));
    return out;
}

}  // namespace

const std::vector<Preset>& builtin_presets() {
    static const std::vector<Preset> presets = build();
    return presets;
}

const Preset& find_preset(std::string_view name) {
    for (const auto& p : builtin_presets()) {
        if (p.name == name) {
            return p;
        }
    }
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

}  // namespace dephase
