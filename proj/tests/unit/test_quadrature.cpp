#include <doctest.h>

#include <cmath>

#include "dephase/error.hpp"
#include "dephase/quadrature.hpp"

using namespace dephase;
using namespace dephase::quad;

TEST_SUITE("quadrature") {

TEST_CASE("polynomial on a finite interval is exact") {
    const auto r = integrate_on_interval([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("integrable endpoint singularity") {
    const auto r = integrate_on_interval([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10, 1e-14);
    CHECK(r.converged);
    CHECK(std::abs(r.value - 2.0) < 1e-9);
}

TEST_CASE("non-oscillatory semi-infinite integrals") {
    IntegrationRequest req;
    req.integrand = [](double w) { return std::exp(-w); };
    req.rel_tol = 1e-12;
    auto r = integrate_semi_infinite(req);
    CHECK(r.converged);
    CHECK(std::abs(r.value - 1.0) < 1e-11);

    // Int w^(-1/2) e^(-w) = sqrt(pi): singular at the origin.
    req.integrand = [](double w) { return std::exp(-w) / std::sqrt(w); };
    r = integrate_semi_infinite(req);
    CHECK(r.converged);
    CHECK(std::abs(r.value - std::sqrt(M_PI)) < 1e-8 * std::sqrt(M_PI));
}

TEST_CASE("oscillatory integrals with known values") {
    for (double t : {0.5, 5.0, 50.0, 400.0}) {
        CAPTURE(t);
        IntegrationRequest req;
        req.t_scale = t;
        req.integrand = [t](double w) { return std::exp(-w) * std::sin(w * t) / w; };
        auto r = integrate_semi_infinite(req);
        CHECK(r.converged);
        CHECK(std::abs(r.value - std::atan(t)) <= 1e-8 * std::atan(t) + 1e-12);

        // Int (1 - cos wt) e^-w / w^2 = t atan t - log(1 + t^2) / 2
        req.integrand = [t](double w) {
            const double s = std::sin(0.5 * w * t);
            return std::exp(-w) * 2.0 * s * s / (w * w);
        };
        r = integrate_semi_infinite(req);
        const double exact = t * std::atan(t) - 0.5 * std::log1p(t * t);
        CHECK(r.converged);
        CHECK(std::abs(r.value - exact) <= 1e-8 * exact);
    }
}

TEST_CASE("slow algebraic oscillatory tail") {
    // Int sin(wt) / (1 + w^2) has no elementary form; compare against the
    // exponential-integral identity at t = 1: (e^-1 Ei(1) - e Ei(-1)) / 2.
    IntegrationRequest req;
    req.t_scale = 1.0;
    req.integrand = [](double w) { return std::sin(w) / (1.0 + w * w); };
    const auto r = integrate_semi_infinite(req);
    CHECK(r.converged);
    CHECK(std::abs(r.value - 0.64676112277913007) < 1e-9);
}

TEST_CASE("narrow resonance with a peak hint") {
    const double q = 1e-3;
    const double c = 20.0;
    IntegrationRequest req;
    req.cutoff_scale = c;
    req.peak = Peak{c, q};
    req.integrand = [=](double w) { return q / M_PI / ((w - c) * (w - c) + q * q); };
    const auto r = integrate_semi_infinite(req);
    const double exact = 0.5 + std::atan(c / q) / M_PI;
    CHECK(r.converged);
    CHECK(std::abs(r.value - exact) < 1e-8);
}

TEST_CASE("finite sub-range") {
    IntegrationRequest req;
    req.lower = 2.0;
    req.upper = 5.0;
    req.t_scale = 3.0;
    req.integrand = [](double w) { return std::exp(-w) * std::cos(3.0 * w); };
    const auto r = integrate_semi_infinite(req);
    // antiderivative e^-w (3 sin 3w - cos 3w) / 10
    auto F = [](double w) { return std::exp(-w) * (3.0 * std::sin(3.0 * w) - std::cos(3.0 * w)) / 10.0; };
    CHECK(r.converged);
    CHECK(std::abs(r.value - (F(5.0) - F(2.0))) < 1e-12);
}

TEST_CASE("divergence at the origin is flagged") {
    IntegrationRequest req;
    req.integrand = [](double w) { return std::exp(-w) / w; };
    const auto r = integrate_semi_infinite(req);
    CHECK(r.diverged);
    CHECK_FALSE(r.converged);

    req.integrand = [](double w) { return 1.0 / (w * std::sqrt(w)); };
    CHECK(integrate_semi_infinite(req).diverged);
}

TEST_CASE("divergent tail is flagged") {
    IntegrationRequest req;
    req.integrand = [](double w) { return 1.0 / (1.0 + w); };
    const auto r = integrate_semi_infinite(req);
    CHECK(r.diverged);
    CHECK_FALSE(r.converged);
}

TEST_CASE("evaluation budget") {
    IntegrationRequest req;
    req.t_scale = 100.0;
    req.max_evals = 200;
    req.integrand = [](double w) { return std::exp(-w) * std::sin(100.0 * w); };
    const auto r = integrate_semi_infinite(req);
    CHECK_FALSE(r.converged);
    CHECK(r.evals <= 200);
}

TEST_CASE("algebraic tail map") {
    const auto r = integrate_algebraic_tail([](double w) { return 1.0 / (w * w); }, 1.0);
    CHECK(r.converged);
    CHECK(std::abs(r.value - 1.0) < 1e-13);
    const auto r2 = integrate_algebraic_tail([](double w) { return 1.0 / (w * w * w * w); }, 160.0);
    CHECK(std::abs(r2.value - 1.0 / (3.0 * 160.0 * 160.0 * 160.0)) < 1e-20);
}

TEST_CASE("request validation") {
    IntegrationRequest req;
    CHECK_THROWS_AS(integrate_semi_infinite(req), ConfigError);
    req.integrand = [](double w) { return std::exp(-w); };
    req.rel_tol = 0.0;
    CHECK_THROWS_AS(integrate_semi_infinite(req), ConfigError);
    req.rel_tol = 1e-8;
    req.t_scale = -1.0;
    CHECK_THROWS_AS(integrate_semi_infinite(req), ConfigError);
    req.t_scale = 0.0;
    req.cutoff_scale = 0.0;
    CHECK_THROWS_AS(integrate_semi_infinite(req), ConfigError);
    req.cutoff_scale = 1.0;
    req.upper = 0.0;
    CHECK_THROWS_AS(integrate_semi_infinite(req), ConfigError);
    CHECK_THROWS_AS(integrate_on_interval([](double) { return 1.0; }, 1.0, 0.0), ConfigError);
}

TEST_CASE("non-finite integrand values are reported") {
    IntegrationRequest req;
    req.integrand = [](double w) { return w > 1.0 ? std::nan("") : 1.0; };
    CHECK_THROWS_AS(integrate_semi_infinite(req), ComputeError);
}

TEST_CASE("tolerance rule") {
    CHECK(tolerance_for(2.0, 1e-8, 1e-12) == doctest::Approx(2e-8));
    CHECK(tolerance_for(1e-6, 1e-8, 1e-12) == 1e-12);
}

}
