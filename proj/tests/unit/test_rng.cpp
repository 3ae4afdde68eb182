#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "betaspec/rng.hpp"
#include "betaspec/special_functions.hpp"
#include "betaspec/stats.hpp"
#include "support/oracles.hpp"

using namespace betaspec;

TEST_CASE("derive_stream is deterministic and id-sensitive") {
    RngStream a = derive_stream(42, 0);
    RngStream b = derive_stream(42, 0);
    RngStream c = derive_stream(42, 1);
    bool all_equal = true, any_differ = false;
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next_u64();
        if (va != b.next_u64()) all_equal = false;
        if (va != c.next_u64()) any_differ = true;
    }
    CHECK(all_equal);
    CHECK(any_differ);
}

TEST_CASE("gaussian moments over 1e6 draws") {
    RngStream rng(20260810, 3);
    const std::size_t n = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = sample_gaussian(rng);
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = sum2 / static_cast<double>(n) - mean * mean;
    CHECK(std::fabs(mean) < 0.004);
    CHECK(std::fabs(var - 1.0) < 0.01);
}

TEST_CASE("gaussian stream from derive_stream(42, 7) has zero mean") {
    RngStream rng = derive_stream(42, 7);
    const std::size_t n = 1000000;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += sample_gaussian(rng);
    CHECK(std::fabs(sum / static_cast<double>(n)) < 0.004);
}

TEST_CASE("gaussian sample passes one-sample KS at 1%") {
    RngStream rng(555, 0);
    std::vector<double> xs(100000);
    for (auto& x : xs) x = sample_gaussian(rng);
    std::sort(xs.begin(), xs.end());
    const double d = ks_one_sample(xs, oracle::normal_cdf);
    CHECK(d < ks_one_sample_critical(0.01, xs.size()));
}

TEST_CASE("chi-type coupling mean matches the Gamma ratio") {
    // E b = Gamma((k+1)/2) / Gamma(k/2); four standard errors over 1e6.
    RngStream rng(7, 11);
    for (double k : {1.0, 2.0, 5.0, 40.0, 400.0}) {
        const std::size_t n = 1000000;
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double b = sample_chi_scaled(rng, ChiParam(k));
            sum += b;
            sum2 += b * b;
        }
        const double mean = sum / static_cast<double>(n);
        const double m2 = sum2 / static_cast<double>(n);
        const double var = m2 - mean * mean;
        const double se = std::sqrt(var / static_cast<double>(n));
        const double expect = std::exp(log_gamma(0.5 * (k + 1.0)) - log_gamma(0.5 * k));
        CHECK(std::fabs(mean - expect) < 4.0 * se);

        // E b^2 = k/2 exactly (Gamma representation)
        const double var_b2 = [&] {
            // crude bound: Var(b^2) = Var(Gamma(k/2)) = k/2
            return 0.5 * k;
        }();
        const double se2 = std::sqrt(var_b2 / static_cast<double>(n));
        CHECK(std::fabs(m2 - 0.5 * k) < 4.0 * se2);
    }
}

TEST_CASE("chi-type coupling special values") {
    RngStream rng(99, 0);
    const std::size_t n = 1000000;
    double mean_k2 = 0.0, mean_k1 = 0.0, sum_k100 = 0.0, sum2_k100 = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean_k2 += sample_chi_scaled(rng, ChiParam(2.0));
    for (std::size_t i = 0; i < n; ++i) mean_k1 += sample_chi_scaled(rng, ChiParam(1.0));
    for (std::size_t i = 0; i < n; ++i) {
        const double b = sample_chi_scaled(rng, ChiParam(100.0));
        sum_k100 += b;
        sum2_k100 += b * b;
    }
    mean_k2 /= static_cast<double>(n);
    mean_k1 /= static_cast<double>(n);
    const double sqrt_pi = std::sqrt(std::acos(-1.0));
    CHECK(std::fabs(mean_k2 - 0.5 * sqrt_pi) < 0.002);       // Gamma(3/2)/Gamma(1)
    CHECK(std::fabs(mean_k1 - 1.0 / sqrt_pi) < 0.002);       // Gamma(1)/Gamma(1/2)
    const double m = sum_k100 / static_cast<double>(n);
    const double var = sum2_k100 / static_cast<double>(n) - m * m;
    CHECK(std::fabs(var - 0.25) < 0.01);                     // variance 1/4 + O(1/k)
}

TEST_CASE("gamma sampler argument validation") {
    RngStream rng(1, 0);
    CHECK_THROWS_AS((void)sample_gamma(rng, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ChiParam(-1.0), std::invalid_argument);
}
