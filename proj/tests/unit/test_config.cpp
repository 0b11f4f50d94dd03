#include <doctest.h>

#include <cmath>

#include "dephase/config.hpp"
#include "dephase/error.hpp"

using namespace dephase;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("numbers and pi expressions") {
    CHECK(parse_number("0.5", "k") == 0.5);
    CHECK(parse_number(" -1e-3 ", "k") == -1e-3);
    CHECK(parse_number("pi", "k") == M_PI);
    CHECK(parse_number("pi/8", "k") == M_PI / 8);
    CHECK(parse_number("3*pi/4", "k") == 3 * M_PI / 4);
    CHECK(parse_number("2pi", "k") == 2 * M_PI);
    CHECK(parse_number("1/3", "k") == 1.0 / 3.0);
    CHECK(parse_number("-pi/2", "k") == -M_PI / 2);
    CHECK_THROWS_AS(parse_number("abc", "k"), ConfigError);
    CHECK_THROWS_AS(parse_number("1/0", "k"), ConfigError);
    CHECK_THROWS_AS(parse_number("pix", "k"), ConfigError);
    CHECK_THROWS_AS(parse_number("", "k"), ConfigError);
    CHECK_THROWS_AS(parse_number("inf", "k"), ConfigError);
}

TEST_CASE("sections, comments and dotted keys") {
    const auto cfg = parse_config(R"(
# an Ohmic run
[bath]
family = ohmic
lambda = 0.01
s = 3      # super-Ohmic
omega_c = 10

[time]
start = 0
end = 20
points = 401
spacing = linear

[]
beta = 1
init.theta = pi/4
outputs = negativity, gamma
quad.rel_tol = 1e-9
)");
    CHECK(cfg.bath.family() == SpectralFamily::Ohmic);
    CHECK(std::get<Ohmic>(cfg.bath.params()).s == 3.0);
    CHECK(cfg.bath.lambda() == 0.01);
    CHECK(cfg.time.n_points == 401);
    CHECK(cfg.time.t_end == 20.0);
    CHECK(cfg.init.theta1 == M_PI / 4);
    CHECK(cfg.init.theta2 == M_PI / 4);
    CHECK(cfg.outputs == std::set<OutputField>{OutputField::Negativity, OutputField::Gamma});
    CHECK(cfg.quad.rel_tol == 1e-9);
}

TEST_CASE("family may come after its parameters") {
    const auto cfg = parse_config("bath.q = 0.5\nbath.n = 1\nbath.family = lorentzian\nbath.omega_c = 20\n");
    const auto& l = std::get<Lorentzian>(cfg.bath.params());
    CHECK(l.q == 0.5);
    CHECK(l.n == 1);
}

TEST_CASE("errors name the key") {
    CHECK(error_of("bath.colour = red").find("bath.colour") != std::string::npos);
    CHECK(error_of("beta = -1").find("beta") != std::string::npos);
    CHECK(error_of("bath.s = 2").find("bath.s") != std::string::npos);
    CHECK(error_of("bath.family = ohmic\nbath.q = 2").find("bath.q") != std::string::npos);
    CHECK(error_of("time.points = 2.5").find("time.points") != std::string::npos);
    CHECK(error_of("time.spacing = log").find("time.spacing") != std::string::npos);
    CHECK(error_of("init.theta1 = 4").find("init.theta1") != std::string::npos);
    CHECK(error_of("outputs = colour").find("outputs") != std::string::npos);
    CHECK(error_of("beta = 1\nbeta = 2").find("duplicate") != std::string::npos);
    CHECK(error_of("just words").find("line 1") != std::string::npos);
    CHECK(error_of("[bath\nfamily = ohmic").find("section") != std::string::npos);
    CHECK(error_of("time.start = 5\ntime.end = 5").find("time.end") != std::string::npos);
}

TEST_CASE("text round trip") {
    ScenarioConfig cfg = find_preset("fig6_lorentz_theta_pi8").config;
    cfg.h = 0.3;
    cfg.init.phi2 = 1.25;
    cfg.quad.abs_tol = 1e-13;
    const auto back = parse_config(to_config_text(cfg));
    CHECK(back.bath == cfg.bath);
    CHECK(back.beta == cfg.beta);
    CHECK(back.h == cfg.h);
    CHECK(back.init.theta1 == cfg.init.theta1);
    CHECK(back.init.phi2 == cfg.init.phi2);
    CHECK(back.time.t_end == cfg.time.t_end);
    CHECK(back.time.n_points == cfg.time.n_points);
    CHECK(back.outputs == cfg.outputs);
    CHECK(back.quad.abs_tol == cfg.quad.abs_tol);
}

TEST_CASE("overrides") {
    ScenarioConfig cfg = find_preset("fig5a").config;
    apply_override(cfg, "bath.q=0.5");
    CHECK(std::get<Lorentzian>(cfg.bath.params()).q == 0.5);
    apply_override(cfg, "init.theta = pi/8");
    CHECK(cfg.init.theta1 == M_PI / 8);
    CHECK_THROWS_AS(apply_override(cfg, "bath.q"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "=3"), ConfigError);
    // a failed override leaves the config untouched
    CHECK_THROWS_AS(apply_override(cfg, "bath.q=-1"), ConfigError);
    CHECK(std::get<Lorentzian>(cfg.bath.params()).q == 0.5);
    apply_override(cfg, "bath.family=ohmic");
    CHECK(cfg.bath.family() == SpectralFamily::Ohmic);
    set_numeric_field(cfg, "bath.s", 2.5);
    CHECK(std::get<Ohmic>(cfg.bath.params()).s == 2.5);
}

TEST_CASE("missing file") {
    CHECK_THROWS_AS(load_config_file("/nonexistent/cfg.toml"), IoError);
}

}
