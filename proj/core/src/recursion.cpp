#include "betaspec/recursion.hpp"

#include <cmath>
#include <stdexcept>

namespace betaspec {

namespace {

// Shared body: advances D_n given per-site (a_n, b_{n-1}).
template <typename CoeffAt>
LogSignedSequence char_poly_impl(double lambda, std::size_t n_max, CoeffAt&& coeff) {
    LogSignedSequence seq(-1);
    SignedLog d_prev2 = SignedLog::zero();  // D_{-1}
    SignedLog d_prev = SignedLog::one();    // D_0
    seq.push_back(d_prev2);
    seq.push_back(d_prev);
    for (std::size_t n = 1; n <= n_max; ++n) {
        const auto [a_n, b_prev] = coeff(n);
        const SignedLog t1 = SignedLog::from_value(lambda - a_n) * d_prev;
        SignedLog d_n = t1;
        if (n >= 2) {
            const SignedLog b2 = SignedLog::from_log(1, 2.0 * std::log(b_prev));
            d_n = t1 - b2 * d_prev2;
        }
        seq.push_back(d_n);
        d_prev2 = d_prev;
        d_prev = d_n;
    }
    return seq;
}

template <typename CoeffAt>
LogSignedSequence forward_impl(double lambda, std::size_t n_max, CoeffAt&& coeff) {
    LogSignedSequence seq(0);
    SignedLog x_prev = SignedLog::zero();  // x_0
    SignedLog x_cur = SignedLog::one();    // x_1
    seq.push_back(x_prev);
    seq.push_back(x_cur);
    double b_prev = 1.0;  // b_0 boundary convention
    for (std::size_t n = 1; n <= n_max; ++n) {
        const auto [a_n, b_n] = coeff(n);
        // x_{n+1} = ((lambda - a_n) x_n - b_{n-1} x_{n-1}) / b_n
        const SignedLog num = SignedLog::from_value(lambda - a_n) * x_cur -
                              SignedLog::from_value(b_prev) * x_prev;
        const SignedLog x_next = num / SignedLog::from_value(b_n);
        seq.push_back(x_next);
        x_prev = x_cur;
        x_cur = x_next;
        b_prev = b_n;
    }
    return seq;
}

} // namespace

LogSignedSequence char_poly_sequence(const TridiagonalOperator& op, double lambda) {
    return char_poly_impl(lambda, op.size(), [&](std::size_t n) {
        return std::pair<double, double>(op.a(n), n >= 2 ? op.b(n - 1) : 1.0);
    });
}

LogSignedSequence char_poly_sequence(CoefficientStream stream, double lambda,
                                     std::size_t n_max) {
    double b_prev = 1.0;
    return char_poly_impl(lambda, n_max, [&](std::size_t) {
        const auto [a, b] = stream.next();
        const double bp = b_prev;
        b_prev = b;
        return std::pair<double, double>(a, bp);
    });
}

LogSignedSequence forward_solution(const TridiagonalOperator& op, double lambda,
                                   std::size_t n_max) {
    if (n_max > op.size()) {
        throw std::invalid_argument("forward_solution: n_max exceeds operator size");
    }
    return forward_impl(lambda, n_max, [&](std::size_t n) {
        return std::pair<double, double>(op.a(n), op.b_bc(n));
    });
}

LogSignedSequence forward_solution(CoefficientStream stream, double lambda,
                                   std::size_t n_max) {
    return forward_impl(lambda, n_max, [&](std::size_t) {
        return stream.next();
    });
}

LogSignedSequence backward_solution(const TridiagonalOperator& op, double lambda) {
    const std::size_t n = op.size();
    if (n < 2) throw std::invalid_argument("backward_solution: N must be >= 2");

    std::vector<SignedLog> y(n + 2);
    y[n + 1] = SignedLog::zero();
    y[n] = SignedLog::one();
    for (std::size_t site = n; site >= 1; --site) {
        // y_{site-1} = ((lambda - a_site) y_site - b_site y_{site+1}) / b_{site-1}
        const SignedLog num = SignedLog::from_value(lambda - op.a(site)) * y[site] -
                              SignedLog::from_value(op.b_bc(site)) * y[site + 1];
        y[site - 1] = num / SignedLog::from_value(op.b_bc(site - 1));
    }
    LogSignedSequence seq(0);
    for (const auto& v : y) seq.push_back(v);
    return seq;
}

SignedLog wronskian(const TridiagonalOperator& op, const LogSignedSequence& x,
                    const LogSignedSequence& y, std::size_t n) {
    const SignedLog b = SignedLog::from_value(op.b_bc(n));
    const int ni = static_cast<int>(n);
    return b * (x.at(ni + 1) * y.at(ni) - x.at(ni) * y.at(ni + 1));
}

} // namespace betaspec
