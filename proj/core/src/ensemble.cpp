#include "betaspec/ensemble.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "betaspec/special_functions.hpp"

namespace betaspec {

CoefficientStream::CoefficientStream(double beta, RngStream rng)
    : beta_(beta), rng_(rng), next_index_(1) {
    if (!(beta > 0.0)) throw std::invalid_argument("CoefficientStream: beta must be positive");
}

std::pair<double, double> CoefficientStream::next() {
    const double a = sample_gaussian(rng_);
    const double b = sample_chi_scaled(rng_, ChiParam(beta_ * static_cast<double>(next_index_)));
    ++next_index_;
    return {a, b};
}

TridiagonalOperator sample_gbe(double beta, std::size_t n, RngStream& rng,
                               Orientation orientation, bool scaled) {
    if (!(beta > 0.0)) throw std::invalid_argument("sample_gbe: beta must be positive");
    if (n == 0) throw std::invalid_argument("sample_gbe: N must be at least 1");

    std::vector<double> diag(n), offdiag(n > 0 ? n - 1 : 0);
    // Interleaved draw order a_1, b_1, a_2, b_2, ... matches the
    // half-line stream, so a truncated stream reproduces these values.
    for (std::size_t i = 1; i <= n; ++i) {
        diag[i - 1] = sample_gaussian(rng);
        if (i < n) {
            const double k = beta * static_cast<double>(
                orientation == Orientation::paper ? i : n - i);
            offdiag[i - 1] = sample_chi_scaled(rng, ChiParam(k));
        }
    }
    if (scaled) {
        const double s = std::sqrt(2.0 / (beta * static_cast<double>(n)));
        for (auto& v : diag) v *= s;
        for (auto& v : offdiag) v *= s;
    }
    return TridiagonalOperator(std::move(diag), std::move(offdiag), beta);
}

CoefficientStream stream_gbe(double beta, RngStream rng) {
    return CoefficientStream(beta, rng);
}

TridiagonalOperator mean_operator(double beta, std::size_t n, MeanMode mode) {
    if (!(beta > 0.0)) throw std::invalid_argument("mean_operator: beta must be positive");
    if (n == 0) throw std::invalid_argument("mean_operator: N must be at least 1");
    std::vector<double> diag(n, 0.0), offdiag(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        const double k = beta * static_cast<double>(i);
        if (mode == MeanMode::exact_mean) {
            offdiag[i - 1] = std::exp(log_gamma(0.5 * (k + 1.0)) - log_gamma(0.5 * k));
        } else {
            offdiag[i - 1] = std::sqrt(0.5 * k);
        }
    }
    return TridiagonalOperator(std::move(diag), std::move(offdiag), beta);
}

TridiagonalOperator sample_goe_dense_tridiagonalized(std::size_t n, RngStream& rng) {
    if (n < 2) throw std::invalid_argument("sample_goe_dense_tridiagonalized: N must be >= 2");

    // Dense symmetric draw, row-major upper triangle mirrored.
    std::vector<double> m(n * n);
    const double off_sigma = std::sqrt(0.5);
    for (std::size_t i = 0; i < n; ++i) {
        m[i * n + i] = sample_gaussian(rng);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = off_sigma * sample_gaussian(rng);
            m[i * n + j] = v;
            m[j * n + i] = v;
        }
    }

    // Householder reduction to symmetric tridiagonal (in place).
    std::vector<double> diag(n), sub(n - 1);
    std::vector<double> v(n), p(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double scale = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) scale += std::fabs(m[i * n + k]);
        if (scale == 0.0) {
            sub[k] = 0.0;
            continue;
        }
        double sigma = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            const double t = m[i * n + k] / scale;
            v[i] = t;
            sigma += t * t;
        }
        double alpha = std::sqrt(sigma);
        if (v[k + 1] < 0.0) alpha = -alpha;
        sub[k] = -alpha * scale;  // sign fixed below
        v[k + 1] += alpha;
        const double h = alpha * v[k + 1];  // = |v|^2 / 2

        // p = A v / h over the trailing block, then rank-2 update
        // A <- A - v p^T - p v^T + (v^T p / h) v v^T (folded into p).
        double vp = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += m[i * n + j] * v[j];
            p[i] = s / h;
            vp += v[i] * p[i];
        }
        const double kk = vp / (2.0 * h);
        for (std::size_t i = k + 1; i < n; ++i) p[i] -= kk * v[i];
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i * n + j] -= v[i] * p[j] + p[i] * v[j];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) diag[i] = m[i * n + i];
    sub[n - 2] = m[(n - 1) * n + (n - 2)];

    // Diagonal similarity absorbs the reflection signs: flip so b >= 0.
    double s_prev = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double s_next = (sub[i] * s_prev < 0.0) ? -s_prev : s_prev;
        sub[i] = std::fabs(sub[i]);
        s_prev = s_next;
    }
    // Exact zeros are measure-zero; nudge so the operator invariant holds.
    for (auto& b : sub) {
        if (b == 0.0) b = std::numeric_limits<double>::min();
    }
    return TridiagonalOperator(std::move(diag), std::move(sub), 1.0);
}

double log_joint_eigenvalue_density(const std::vector<double>& lambdas, double beta) {
    if (lambdas.empty()) {
        throw std::invalid_argument("log_joint_eigenvalue_density: empty input");
    }
    if (!(beta > 0.0)) {
        throw std::invalid_argument("log_joint_eigenvalue_density: beta must be positive");
    }
    double gauss = 0.0, coulomb = 0.0;
    for (double l : lambdas) gauss += l * l;
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        for (std::size_t k = j + 1; k < lambdas.size(); ++k) {
            const double d = std::fabs(lambdas[j] - lambdas[k]);
            if (d == 0.0) return -std::numeric_limits<double>::infinity();
            coulomb += std::log(d);
        }
    }
    return -0.5 * gauss + beta * coulomb;
}

} // namespace betaspec
