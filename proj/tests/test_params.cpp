#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sle/params.hpp"

using namespace sle;

TEST_CASE("derived exponents") {
    const auto p = make_params(8.0 / 3.0);
    CHECK(p.d == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(p.a == doctest::Approx(0.75).epsilon(1e-15));

    const auto q = make_params(2.0);
    CHECK(q.d == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(q.a == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(q.zeta_lt4 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q.zeta_main == doctest::Approx(4.0 / 2.0 - 3.0 * 2.0 / 16.0 - 1.0).epsilon(1e-15));
}

TEST_CASE("exact relations hold on a kappa sweep") {
    for (double kappa = 0.25; kappa < 8.0; kappa += 0.25) {
        const auto p = make_params(kappa);
        CHECK(p.a == 2.0 / kappa);
        CHECK(p.d == 1.0 + kappa / 8.0);
        CHECK(p.d > 1.0);
        CHECK(p.d < 2.0);
    }
}

TEST_CASE("goodness threshold 4(7 - sqrt 33)") {
    CHECK(make_params(5.0).is_good);
    CHECK_FALSE(make_params(5.1).is_good);
    const auto p = make_params(1.0);
    CHECK(p.kappa0 == doctest::Approx(5.0217494138478845).epsilon(1e-12));
}

TEST_CASE("16/kappa + kappa/16 > 7/2 below kappa0") {
    for (double kappa = 0.05; kappa < make_params(1.0).kappa0; kappa += 0.05) {
        CHECK(16.0 / kappa + kappa / 16.0 > 3.5);
    }
}

TEST_CASE("out-of-range kappa rejected") {
    CHECK_THROWS_AS(make_params(0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_params(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_params(8.0), std::invalid_argument);
    CHECK_THROWS_AS(make_params(9.0), std::invalid_argument);
}
