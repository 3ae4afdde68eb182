// Least-squares line fits used by the exponent estimators.
#ifndef BETASPEC_FIT_HPP
#define BETASPEC_FIT_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <cmath>

namespace betaspec {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    std::size_t points = 0;
};

/// Ordinary least squares y = intercept + slope x; stderr_slope is the
/// residual-based standard error (zero for an exact line or - by
/// convention - for a two-point fit).
inline FitResult linear_fit(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) {
        throw std::invalid_argument("linear_fit: need at least 2 matched points");
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        sxx += dx * dx;
        sxy += dx * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissa");
    FitResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    r.points = n;
    if (n > 2) {
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = y[i] - (r.intercept + r.slope * x[i]);
            ss += e * e;
        }
        r.stderr_slope = std::sqrt(ss / (static_cast<double>(n - 2) * sxx));
    }
    return r;
}

} // namespace betaspec

#endif // BETASPEC_FIT_HPP
