#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle {

long double lgamma_by_recurrence(double x) {
    const long double half_log_pi = 0.5L * std::log(std::acos(-1.0L));
    long double base;
    double frac;
    if (x == std::floor(x)) {
        base = 0.0L;  // ln Gamma(1)
        frac = 1.0;
    } else if (x - 0.5 == std::floor(x - 0.5)) {
        base = half_log_pi;  // ln Gamma(0.5)
        frac = 0.5;
    } else {
        throw std::invalid_argument("lgamma_by_recurrence: integer or half-integer only");
    }
    long double acc = base;
    for (long double t = frac; t < (long double)x - 0.25L; t += 1.0L) {
        acc += std::log(t);
    }
    return acc;
}

long double digamma_series(double x) {
    const long double gamma_e = 0.57721566490153286060651209008240L;
    const std::size_t terms = 10000;
    long double sum = 0.0L;
    for (std::size_t k = 0; k < terms; ++k) {
        const long double kk = static_cast<long double>(k);
        sum += 1.0L / (kk + 1.0L) - 1.0L / (kk + (long double)x);
    }
    // Euler-Maclaurin tail of sum_{k>=K} f(k), f(k) = 1/(k+1) - 1/(k+x):
    // integral + f(K)/2 - f'(K)/12 + f'''(K)/720
    const long double K = static_cast<long double>(terms);
    const long double xl = (long double)x;
    const long double integral = std::log((K + xl) / (K + 1.0L));
    const long double fK = 1.0L / (K + 1.0L) - 1.0L / (K + xl);
    const long double fpK = -1.0L / ((K + 1.0L) * (K + 1.0L)) + 1.0L / ((K + xl) * (K + xl));
    auto quad4 = [](long double v) { return (v * v) * (v * v); };
    const long double fpppK = -6.0L / quad4(K + 1.0L) + 6.0L / quad4(K + xl);
    const long double tail = integral + fK / 2.0L - fpK / 12.0L + fpppK / 720.0L;
    return -gamma_e + sum + tail;
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

namespace {

// Normalized oscillator function u_n(x) and its derivative, recurrence only.
std::pair<double, double> u_and_derivative(std::size_t n, double x) {
    const double u0 = std::pow(std::acos(-1.0), -0.25) * std::exp(-0.5 * x * x);
    double up = 0.0, u = u0;
    for (std::size_t m = 0; m < n; ++m) {
        const double mm = static_cast<double>(m);
        const double un = x * std::sqrt(2.0 / (mm + 1.0)) * u -
                          std::sqrt(mm / (mm + 1.0)) * up;
        up = u;
        u = un;
    }
    // u_n'(x) = sqrt(2n) u_{n-1}(x) - x u_n(x)
    const double du = (n == 0) ? -x * u
                               : std::sqrt(2.0 * static_cast<double>(n)) * up - x * u;
    return {u, du};
}

} // namespace

std::vector<double> hermite_zeros_newton(std::size_t n) {
    std::vector<double> zeros{0.0};  // H_1
    if (n == 0) return {};
    for (std::size_t m = 2; m <= n; ++m) {
        const double outer = std::sqrt(2.0 * static_cast<double>(m) + 1.0);
        std::vector<double> brackets;
        brackets.push_back(-outer);
        brackets.insert(brackets.end(), zeros.begin(), zeros.end());
        brackets.push_back(outer);
        std::vector<double> next;
        for (std::size_t i = 0; i + 1 < brackets.size(); ++i) {
            double lo = brackets[i], hi = brackets[i + 1];
            double flo = u_and_derivative(m, lo).first;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fmid = u_and_derivative(m, mid).first;
                if ((flo <= 0.0) == (fmid <= 0.0)) {
                    lo = mid;
                    flo = fmid;
                } else {
                    hi = mid;
                }
            }
            double r = 0.5 * (lo + hi);
            for (int it = 0; it < 6; ++it) {  // Newton polish
                const auto [f, df] = u_and_derivative(m, r);
                if (df == 0.0) break;
                const double step = f / df;
                r -= step;
                if (std::fabs(step) < 1e-15 * std::max(1.0, std::fabs(r))) break;
            }
            next.push_back(r);
        }
        zeros = std::move(next);
    }
    return zeros;
}

std::pair<std::vector<double>, std::vector<double>> gauss_hermite(std::size_t n) {
    const auto nodes = hermite_zeros_newton(n);
    std::vector<double> weights(nodes.size());
    // w_i = 1 / (n * p_{n-1}(x_i)^2) with p_m the orthonormal Hermite
    // polynomial (oscillator function without the Gaussian factor).
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double x = nodes[i];
        double pp = 0.0, p = std::pow(std::acos(-1.0), -0.25);
        for (std::size_t m = 0; m + 1 < n; ++m) {
            const double mm = static_cast<double>(m);
            const double pn = x * std::sqrt(2.0 / (mm + 1.0)) * p -
                              std::sqrt(mm / (mm + 1.0)) * pp;
            pp = p;
            p = pn;
        }
        weights[i] = 1.0 / (static_cast<double>(n) * p * p);
    }
    return {nodes, weights};
}

std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) off += a[i * n + j] * a[i * n + j];
        }
        if (off < 1e-28 * static_cast<double>(n * n)) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eigs(n);
    for (std::size_t i = 0; i < n; ++i) eigs[i] = a[i * n + i];
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

double wigner2_inverse_cdf(double u) {
    const double sqrt_pi = std::sqrt(std::acos(-1.0));
    auto cdf = [&](double s) {
        return std::erf(s) - (2.0 * s / sqrt_pi) * std::exp(-s * s);
    };
    double lo = 0.0, hi = 8.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < u) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double simpson(double (*f)(double, const void*), const void* ctx, double a,
               double b, std::size_t panels) {
    if (panels % 2 != 0) ++panels;
    const double h = (b - a) / static_cast<double>(panels);
    double sum = f(a, ctx) + f(b, ctx);
    for (std::size_t i = 1; i < panels; ++i) {
        const double x = a + h * static_cast<double>(i);
        sum += f(x, ctx) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

} // namespace oracle
