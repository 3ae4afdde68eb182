#include "betaspec/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace betaspec {

namespace {

// Stirling series coefficients B_{2k} / (2k (2k-1)).
constexpr double kStirling[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
};

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error("log_gamma: x must be positive and finite");
    }
    // Shift into x >= 12 where the truncated series is below 1e-17.
    double shift = 0.0;
    while (x < 12.0) {
        shift -= std::log(x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double p = inv;
    for (double c : kStirling) {
        series += c * p;
        p *= inv2;
    }
    return shift + (x - 0.5) * std::log(x) - x + kHalfLog2Pi + series;
}

double digamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error("digamma: x must be positive and finite");
    }
    // psi(x) = psi(x+1) - 1/x; shift until the asymptotic tail converges.
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double u = 1.0 / (x * x);
    // psi(x) ~ ln x - 1/(2x) - sum B_{2k} / (2k x^{2k})
    const double tail = u * (1.0 / 12.0 -
                        u * (1.0 / 120.0 -
                        u * (1.0 / 252.0 -
                        u * (1.0 / 240.0 -
                        u * (1.0 / 132.0 -
                        u * (691.0 / 32760.0))))));
    return acc + std::log(x) - 0.5 / x - tail;
}

} // namespace betaspec
