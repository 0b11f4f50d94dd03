#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dephase/entanglement.hpp"
#include "dephase/error.hpp"

using namespace dephase;

namespace {

DecoherenceFactors df(double g, double d) {
    DecoherenceFactors f;
    f.gamma = g;
    f.delta = d;
    return f;
}

}  // namespace

TEST_SUITE("entanglement") {

TEST_CASE("closed form reference values") {
    CHECK(x_state_negativity(0.0, -M_PI / 8).value == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(x_state_negativity(0.0, 0.0).value == 0.0);
    CHECK(x_state_negativity(1e6, -0.3).value == 0.0);
    CHECK(x_state_negativity(0.0, 0.0, true).value == 0.0);
    // high-precision evaluation
    CHECK(std::abs(x_state_negativity(0.01, -0.1).value - 0.16950323791816861) < 1e-16);
}

TEST_CASE("x-state spectrum") {
    auto l = x_state_pt_eigenvalues(0.0, 0.0);
    CHECK(l[0] == 0.0);
    CHECK(l[1] == 0.0);
    CHECK(l[2] == doctest::Approx(1.0));
    CHECK(std::abs(l[3]) < 1e-16);

    l = x_state_pt_eigenvalues(0.0, -M_PI / 8);
    CHECK(l[1] == doctest::Approx(-0.5).epsilon(1e-15));

    l = x_state_pt_eigenvalues(0.01, -0.1);
    CHECK(std::abs(l[0] - 0.20646729067661578) < 1e-16);
    CHECK(std::abs(l[1] + 0.16950323791816861) < 1e-16);
    CHECK(std::abs(l[2] - 0.92437663911335000) < 1e-15);
    CHECK(std::abs(l[3] - 0.038659308128202838) < 1e-16);

    CHECK_THROWS_AS(x_state_pt_eigenvalues(-1.0, 0.0), ConfigError);
}

TEST_CASE("divergent limit spectrum") {
    const auto r = x_state_negativity(0.0, -0.4, true);
    const auto far = x_state_pt_eigenvalues(1e4, -0.4);
    for (int i = 0; i < 4; ++i) {
        CHECK(r.eigenvalues[i] == doctest::Approx(far[i]));
    }
}

TEST_CASE("partial transpose indexing") {
    Eigen::Matrix4cd m;
    for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < 4; ++k) {
            m(i, k) = {static_cast<double>(10 * i + k), 0.0};
        }
    }
    const auto pt = partial_transpose(m);
    // |1,1><1,-1| <-> |1,-1><1,1|
    CHECK(pt(0, 1) == m(1, 0));
    // |1,1><-1,-1| <-> |1,-1><-1,1|
    CHECK(pt(0, 3) == m(1, 2));
    CHECK(pt(1, 2) == m(0, 3));
    CHECK(pt(0, 2) == m(0, 2));
    CHECK(partial_transpose(pt) == m);
}

TEST_CASE("numeric negativity") {
    const auto product = evolve_ideal(bloch_product_to_general({0.7, 2.1, 1.0, 3.0}), 0.0);
    CHECK(negativity(product).value == 0.0);

    const auto bell = evolve_ideal(x_projected_state(), -M_PI / 8);
    CHECK(negativity(bell).value == doctest::Approx(0.5).epsilon(1e-13));

    const auto s = evolve(x_projected_state(), df(0.01, -0.1), FieldConfig{}, 1.0);
    const auto n = negativity(s);
    CHECK(n.method == NegativityMethod::NumericPT);
    CHECK(std::abs(n.value - x_state_negativity(0.01, -0.1).value) < 1e-10);
    double sum = 0.0;
    for (double v : n.eigenvalues) {
        sum += v;
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);

    TwoSpinState bad{Eigen::Matrix4cd::Identity()};
    CHECK_THROWS_AS(negativity(bad), InvalidStateError);
}

TEST_CASE("near-zero eigenvalues do not count") {
    CHECK(negativity_from_spectrum({-1e-14, 0.5, 0.25, 0.25}) == 0.0);
    CHECK(negativity_from_spectrum({-0.2, 0.7, 0.25, 0.25}) == doctest::Approx(0.2));
}

}
