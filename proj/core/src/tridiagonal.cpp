#include "betaspec/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "betaspec/csv.hpp"

namespace betaspec {

TridiagonalOperator::TridiagonalOperator(std::vector<double> diag,
                                         std::vector<double> offdiag,
                                         double beta)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)), beta_(beta) {
    if (diag_.empty()) {
        throw std::invalid_argument("TridiagonalOperator: empty diagonal");
    }
    if (offdiag_.size() + 1 != diag_.size()) {
        throw std::invalid_argument("TridiagonalOperator: need len(offdiag) = len(diag) - 1");
    }
    for (double b : offdiag_) {
        if (!(b > 0.0)) {
            throw std::invalid_argument("TridiagonalOperator: couplings must be positive");
        }
    }
    if (!(beta_ > 0.0)) {
        throw std::invalid_argument("TridiagonalOperator: beta must be positive");
    }
}

TridiagonalOperator TridiagonalOperator::reversed() const {
    std::vector<double> d(diag_.rbegin(), diag_.rend());
    std::vector<double> e(offdiag_.rbegin(), offdiag_.rend());
    return TridiagonalOperator(std::move(d), std::move(e), beta_);
}

std::pair<double, double> TridiagonalOperator::gershgorin() const {
    const std::size_t n = size();
    double lo = diag_[0], hi = diag_[0];
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += offdiag_[i - 1];
        if (i + 1 < n) r += offdiag_[i];
        lo = std::min(lo, diag_[i] - r);
        hi = std::max(hi, diag_[i] + r);
    }
    return {lo, hi};
}

double TridiagonalOperator::norm_bound() const {
    const std::size_t n = size();
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = std::fabs(diag_[i]);
        if (i > 0) r += offdiag_[i - 1];
        if (i + 1 < n) r += offdiag_[i];
        m = std::max(m, r);
    }
    return m;
}

void TridiagonalOperator::apply(const std::vector<double>& x, std::vector<double>& y) const {
    const std::size_t n = size();
    y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = diag_[i] * x[i];
        if (i > 0) s += offdiag_[i - 1] * x[i - 1];
        if (i + 1 < n) s += offdiag_[i] * x[i + 1];
        y[i] = s;
    }
}

void TridiagonalOperator::write_csv(std::ostream& os) const {
    csv::Writer w(os);
    w.row("n", "a", "b");
    const std::size_t n = size();
    for (std::size_t i = 1; i <= n; ++i) {
        if (i < n) {
            w.row(i, diag_[i - 1], offdiag_[i - 1]);
        } else {
            w.row(i, diag_[i - 1], "");
        }
    }
}

TridiagonalOperator TridiagonalOperator::read_csv(std::istream& is, double beta) {
    std::string line;
    if (!std::getline(is, line)) {
        throw std::invalid_argument("operator csv: empty input");
    }
    std::vector<double> d, e;
    while (std::getline(is, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string n_s, a_s, b_s;
        std::getline(ss, n_s, ',');
        std::getline(ss, a_s, ',');
        std::getline(ss, b_s, ',');
        d.push_back(std::stod(a_s));
        if (!b_s.empty()) e.push_back(std::stod(b_s));
    }
    return TridiagonalOperator(std::move(d), std::move(e), beta);
}

} // namespace betaspec
