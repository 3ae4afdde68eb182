#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "betaspec/special_functions.hpp"
#include "support/oracles.hpp"

using namespace betaspec;

TEST_CASE("log_gamma at exact points") {
    CHECK(std::fabs(log_gamma(1.0)) < 1e-13);
    CHECK(std::fabs(log_gamma(2.0)) < 1e-13);
    // Gamma(1/2) = sqrt(pi)
    CHECK(log_gamma(0.5) == doctest::Approx(0.57236494292470008707).epsilon(1e-14));
}

TEST_CASE("log_gamma(50.5) against the product-recurrence oracle") {
    const long double want = oracle::lgamma_by_recurrence(50.5);
    // frozen external anchor for the oracle itself
    CHECK(static_cast<double>(want) == doctest::Approx(146.51925549072062722).epsilon(1e-15));
    CHECK(std::fabs(log_gamma(50.5) - static_cast<double>(want)) <
          1e-13 * std::fabs(static_cast<double>(want)));
}

TEST_CASE("log_gamma functional equation on a grid") {
    for (double x : {0.1, 0.5, 1.0, 3.0, 10.0}) {
        CHECK(std::fabs(log_gamma(x + 1.0) - log_gamma(x) - std::log(x)) < 1e-12);
    }
}

TEST_CASE("log_gamma domain errors") {
    CHECK_THROWS_AS((void)log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS((void)log_gamma(-3.0), std::domain_error);
    CHECK_THROWS_AS((void)log_gamma(std::nan("")), std::domain_error);
}

TEST_CASE("digamma at exact points") {
    const double euler = 0.57721566490153286061;
    CHECK(digamma(1.0) == doctest::Approx(-euler).epsilon(1e-13));
    CHECK(digamma(2.0) == doctest::Approx(1.0 - euler).epsilon(1e-13));
}

TEST_CASE("digamma(0.3) against the series oracle") {
    const double want = static_cast<double>(oracle::digamma_series(0.3));
    CHECK(want == doctest::Approx(-3.5025242222001329890).epsilon(1e-13));
    CHECK(std::fabs(digamma(0.3) - want) < 1e-12);
}

TEST_CASE("digamma recurrence identity") {
    for (double x : {0.1, 0.5, 1.0, 3.0, 10.0}) {
        CHECK(std::fabs(digamma(x + 1.0) - digamma(x) - 1.0 / x) < 1e-12);
    }
}

TEST_CASE("digamma reflection at 0.3") {
    const double pi = std::acos(-1.0);
    const double lhs = digamma(0.7) - digamma(0.3);
    const double rhs = pi / std::tan(0.3 * pi);
    CHECK(std::fabs(lhs - rhs) < 1e-12);
}

TEST_CASE("digamma domain errors") {
    CHECK_THROWS_AS((void)digamma(0.0), std::domain_error);
    CHECK_THROWS_AS((void)digamma(-1.5), std::domain_error);
}
