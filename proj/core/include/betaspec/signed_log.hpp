// Sign + log-magnitude representation for linear recurrences whose terms
// grow factorially: the determinant and eigenvector sequences overflow
// plain doubles near n ~ 150, but their logs stay small.
#ifndef BETASPEC_SIGNED_LOG_HPP
#define BETASPEC_SIGNED_LOG_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace betaspec {

/// value = sign * exp(logmag); sign == 0 encodes exact zero.
struct SignedLog {
    int sign = 0;       // -1, 0, +1
    double logmag = -std::numeric_limits<double>::infinity();

    static SignedLog zero() { return SignedLog{}; }
    static SignedLog one() { return SignedLog{1, 0.0}; }

    static SignedLog from_value(double v) {
        if (v == 0.0) return zero();
        return SignedLog{v > 0.0 ? 1 : -1, std::log(std::fabs(v))};
    }
    static SignedLog from_log(int sign, double logmag) {
        if (sign == 0) return zero();
        return SignedLog{sign, logmag};
    }

    /// May overflow to +-inf or underflow to 0 when out of double range.
    double value() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(logmag);
    }

    bool is_zero() const { return sign == 0; }

    SignedLog operator-() const { return SignedLog{-sign, logmag}; }

    friend SignedLog operator*(SignedLog a, SignedLog b) {
        if (a.sign == 0 || b.sign == 0) return zero();
        return SignedLog{a.sign * b.sign, a.logmag + b.logmag};
    }
    friend SignedLog operator/(SignedLog a, SignedLog b) {
        // b must be nonzero
        return SignedLog{a.sign * b.sign, a.logmag - b.logmag};
    }
    friend SignedLog operator+(SignedLog a, SignedLog b) {
        if (a.sign == 0) return b;
        if (b.sign == 0) return a;
        if (a.sign == b.sign) {
            const double hi = std::fmax(a.logmag, b.logmag);
            const double lo = std::fmin(a.logmag, b.logmag);
            return SignedLog{a.sign, hi + std::log1p(std::exp(lo - hi))};
        }
        if (a.logmag == b.logmag) return zero();
        const SignedLog& big = (a.logmag > b.logmag) ? a : b;
        const SignedLog& small = (a.logmag > b.logmag) ? b : a;
        return SignedLog{big.sign,
                         big.logmag + std::log1p(-std::exp(small.logmag - big.logmag))};
    }
    friend SignedLog operator-(SignedLog a, SignedLog b) { return a + (-b); }
};

/// A recursion trace indexed from start_index: entry n lives at slot
/// n - start_index.  sign(n) == 0 marks an exact zero, logmag ignored.
class LogSignedSequence {
public:
    explicit LogSignedSequence(int start_index = 0) : start_(start_index) {}

    void push_back(SignedLog v) {
        signs_.push_back(static_cast<std::int8_t>(v.sign));
        logmags_.push_back(v.logmag);
    }

    int start_index() const { return start_; }
    int max_index() const { return start_ + static_cast<int>(signs_.size()) - 1; }
    std::size_t size() const { return signs_.size(); }

    SignedLog at(int n) const {
        const std::size_t i = static_cast<std::size_t>(n - start_);
        return SignedLog{signs_[i], logmags_[i]};
    }
    int sign(int n) const { return signs_[static_cast<std::size_t>(n - start_)]; }
    double log_abs(int n) const { return logmags_[static_cast<std::size_t>(n - start_)]; }

private:
    int start_;
    std::vector<std::int8_t> signs_;
    std::vector<double> logmags_;
};

} // namespace betaspec

#endif // BETASPEC_SIGNED_LOG_HPP
