#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "betaspec/eigensolve.hpp"
#include "betaspec/ensemble.hpp"
#include "betaspec/errors.hpp"
#include "betaspec/parallel.hpp"
#include "betaspec/rng.hpp"
#include "support/oracles.hpp"

using namespace betaspec;

TEST_CASE("two-site free chain has eigenvalues -1, +1") {
    const TridiagonalOperator op({0.0, 0.0}, {1.0});
    const auto eigs = eigenvalues(op);
    REQUIRE(eigs.size() == 2);
    CHECK(eigs[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(eigs[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mean operator beta=2 N=5: sqrt(2) times Hermite zeros") {
    const auto op = mean_operator(2.0, 5, MeanMode::leading_order);
    const auto eigs = eigenvalues(op);
    // frozen zeros of H_5 (bisection+Newton on the recurrence)
    const double r1 = 0.95857246461381850711;
    const double r2 = 2.02018287045608563293;
    const double s = std::sqrt(2.0);
    REQUIRE(eigs.size() == 5);
    CHECK(std::fabs(eigs[0] + s * r2) < 1e-10);
    CHECK(std::fabs(eigs[1] + s * r1) < 1e-10);
    CHECK(std::fabs(eigs[2]) < 1e-10);
    CHECK(std::fabs(eigs[3] - s * r1) < 1e-10);
    CHECK(std::fabs(eigs[4] - s * r2) < 1e-10);
}

TEST_CASE("window queries are Sturm-certified (beta=1, N=512)") {
    RngStream rng = derive_stream(51, 0);
    const auto op = sample_gbe(1.0, 512, rng);
    const auto all = eigenvalues(op);
    REQUIRE(all.size() == 512);
    RngStream wrng = derive_stream(51, 1);
    for (int rep = 0; rep < 10; ++rep) {
        const double a = 50.0 * (wrng.uniform01() - 0.5);
        const double b = a + 10.0 * wrng.uniform01();
        const auto in_window = eigenvalues(op, std::make_pair(a, b));
        std::size_t want = 0;
        for (double l : all) {
            if (l >= a && l < b) ++want;
        }
        // window counts derive from Sturm counts at the edges
        CHECK(in_window.size() == want);
        CHECK(in_window.size() ==
              eigenvalue_count_below(op, b) - eigenvalue_count_below(op, a));
    }
    CHECK(eigenvalues(op, std::make_pair(3.0, 3.0)).empty());
    CHECK(eigenvalues(op, std::make_pair(5.0, 2.0)).empty());
}

TEST_CASE("eigenvalue_by_index walks the whole spectrum") {
    RngStream rng = derive_stream(51, 2);
    const auto op = sample_gbe(2.0, 64, rng);
    const auto all = eigenvalues(op);
    for (std::size_t k : {std::size_t{0}, std::size_t{13}, std::size_t{63}}) {
        CHECK(eigenvalue_by_index(op, k) == doctest::Approx(all[k]).epsilon(1e-10));
    }
    CHECK_THROWS_AS((void)eigenvalue_by_index(op, 64), std::invalid_argument);
}

TEST_CASE("eigenvector of the two-site chain") {
    const TridiagonalOperator op({0.0, 0.0}, {1.0});
    const auto v = eigenvector(op, 1.0);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(v[0] == doctest::Approx(r).epsilon(1e-10));
    CHECK(v[1] == doctest::Approx(r).epsilon(1e-10));
}

TEST_CASE("all eigenpairs of a random operator satisfy the residual contract") {
    RngStream rng = derive_stream(52, 0);
    const auto op = sample_gbe(1.0, 200, rng);
    const auto eigs = eigenvalues(op);
    const double bound = 1e-10 * op.norm_bound();
    std::vector<double> hv;
    for (double l : eigs) {
        const auto v = eigenvector(op, l);
        op.apply(v, hv);
        double resid = 0.0, norm = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double r = hv[i] - l * v[i];
            resid += r * r;
            norm += v[i] * v[i];
        }
        CHECK(std::sqrt(resid) <= bound);
        CHECK(std::fabs(std::sqrt(norm) - 1.0) < 1e-12);

        // components satisfy the three-term recursion site by site
        for (std::size_t n = 2; n + 1 <= v.size() - 1; ++n) {
            const double lhs = op.b(n - 1) * v[n - 2] + (op.a(n) - l) * v[n - 1] +
                               op.b(n) * v[n];
            const double scale = std::fabs(op.b(n - 1) * v[n - 2]) +
                                 std::fabs((op.a(n) - l) * v[n - 1]) +
                                 std::fabs(op.b(n) * v[n]) + 1e-300;
            CHECK(std::fabs(lhs) / scale < 1e-7);
        }
    }
}

TEST_CASE("eigenvector sign convention and error path") {
    const TridiagonalOperator op({1.0, -1.0}, {0.5});
    for (double l : eigenvalues(op)) {
        const auto v = eigenvector(op, l);
        for (double c : v) {
            if (c != 0.0) {
                CHECK(c > 0.0);
                break;
            }
        }
    }
    // a shift far from the spectrum cannot converge
    CHECK_THROWS_AS((void)eigenvector(op, 50.0), SolverError);
}

TEST_CASE("spectral measure of small operators") {
    const TridiagonalOperator two({0.0, 0.0}, {1.0});
    const auto m = spectral_measure(two);
    REQUIRE(m.weights.size() == 2);
    CHECK(m.weights[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(m.weights[1] == doctest::Approx(0.5).epsilon(1e-10));

    const TridiagonalOperator one({0.7}, {});
    const auto m1 = spectral_measure(one);
    REQUIRE(m1.weights.size() == 1);
    CHECK(m1.weights[0] == 1.0);
    CHECK(m1.lambdas[0] == 0.7);
}

TEST_CASE("spectral measure weights sum to one") {
    for (auto [beta, n] : {std::pair{1.0, 64}, std::pair{4.0, 128}, std::pair{1.0, 400}}) {
        RngStream rng = derive_stream(53, static_cast<std::uint64_t>(n));
        const auto op = sample_gbe(beta, static_cast<std::size_t>(n), rng);
        const auto m = spectral_measure(op);
        double sum = 0.0;
        for (double w : m.weights) {
            CHECK(w >= 0.0);
            sum += w;
        }
        CHECK(std::fabs(sum - 1.0) < 1e-10);
        for (std::size_t k = 0; k + 1 < m.lambdas.size(); ++k) {
            CHECK(m.lambdas[k] < m.lambdas[k + 1]);
        }
    }
}

TEST_CASE("localization proxy: max spectral weight concentrates for small beta") {
    const std::size_t n = 400, reals = 100;
    std::vector<double> max_w1(reals), max_w4(reals);
    parallel_for_index(reals, 0, [&](std::size_t r) {
        {
            RngStream rng = derive_stream(54, r);
            const auto m = spectral_measure(sample_gbe(1.0, n, rng));
            max_w1[r] = *std::max_element(m.weights.begin(), m.weights.end());
        }
        {
            RngStream rng = derive_stream(54, reals + r);
            const auto m = spectral_measure(sample_gbe(4.0, n, rng));
            max_w4[r] = *std::max_element(m.weights.begin(), m.weights.end());
        }
    });
    std::sort(max_w1.begin(), max_w1.end());
    std::sort(max_w4.begin(), max_w4.end());
    CHECK(max_w1[reals / 2] > max_w4[reals / 2]);
}

TEST_CASE("eigenvalues agree with the dense Jacobi oracle (N=24)") {
    RngStream rng = derive_stream(55, 0);
    const auto op = sample_gbe(2.0, 24, rng);
    std::vector<double> dense(24 * 24, 0.0);
    for (std::size_t i = 0; i < 24; ++i) {
        dense[i * 24 + i] = op.diag()[i];
        if (i + 1 < 24) {
            dense[i * 24 + (i + 1)] = op.offdiag()[i];
            dense[(i + 1) * 24 + i] = op.offdiag()[i];
        }
    }
    const auto want = oracle::jacobi_eigenvalues(dense, 24);
    const auto got = eigenvalues(op);
    for (std::size_t k = 0; k < 24; ++k) {
        CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-10));
    }
}
