#include "betaspec/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "betaspec/special_functions.hpp"

namespace betaspec {

double Mat2::norm2() const {
    // sigma_max^2 = (p + sqrt(p^2 - 4 det^2)) / 2 with p the squared
    // Frobenius norm.
    const double p = m00 * m00 + m01 * m01 + m10 * m10 + m11 * m11;
    const double d = det();
    const double disc = std::fmax(p * p - 4.0 * d * d, 0.0);
    return std::sqrt(0.5 * (p + std::sqrt(disc)));
}

Mat2 step_matrix(double a_n, double b_n, double b_prev, double lambda) {
    if (!(b_n > 0.0) || !(b_prev > 0.0)) {
        throw std::invalid_argument("step_matrix: couplings must be positive");
    }
    return Mat2{(lambda - a_n) / b_n, -b_prev / b_n, 1.0, 0.0};
}

void TransferAccumulator::step(const Mat2& s) {
    m = s * m;
    const double nrm = m.norm2();
    m.m00 /= nrm;
    m.m01 /= nrm;
    m.m10 /= nrm;
    m.m11 /= nrm;
    log_norm += std::log(nrm);
    ++steps;
}

double TransferAccumulator::log_product_norm() const {
    return log_norm + std::log(m.norm2());
}

double TransferAccumulator::log_abs_det() const {
    return 2.0 * log_norm + std::log(std::fabs(m.det()));
}

std::vector<std::pair<std::size_t, double>> transfer_log_norms(
    CoefficientStream stream, double lambda, std::span<const std::size_t> checkpoints) {
    if (checkpoints.empty()) return {};
    for (std::size_t i = 0; i + 1 < checkpoints.size(); ++i) {
        if (checkpoints[i] >= checkpoints[i + 1]) {
            throw std::invalid_argument("transfer_log_norms: checkpoints must increase");
        }
    }
    if (checkpoints.front() == 0) {
        throw std::invalid_argument("transfer_log_norms: checkpoints must be positive");
    }

    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(checkpoints.size());
    TransferAccumulator acc;
    double b_prev = 1.0;
    std::size_t next_cp = 0;
    const std::size_t n_max = checkpoints.back();
    for (std::size_t n = 1; n <= n_max; ++n) {
        const auto [a_n, b_n] = stream.next();
        acc.step(step_matrix(a_n, b_n, b_prev, lambda));
        b_prev = b_n;
        if (n == checkpoints[next_cp]) {
            out.emplace_back(n, acc.log_product_norm());
            ++next_cp;
        }
    }
    return out;
}

FitResult growth_exponent(
    const std::vector<std::vector<std::pair<std::size_t, double>>>& samples,
    std::size_t fit_lo, std::size_t fit_hi) {
    std::vector<double> slopes, intercepts;
    std::size_t points = 0;
    std::vector<double> xs, ys;
    for (const auto& run : samples) {
        xs.clear();
        ys.clear();
        for (const auto& [n, log_norm] : run) {
            if (n >= fit_lo && n <= fit_hi) {
                xs.push_back(std::log(static_cast<double>(n)));
                ys.push_back(2.0 * log_norm);
            }
        }
        if (xs.size() < 3) {
            throw std::invalid_argument("growth_exponent: need >= 3 checkpoints in window");
        }
        const FitResult f = linear_fit(xs, ys);
        slopes.push_back(f.slope);
        intercepts.push_back(f.intercept);
        points = xs.size();
    }
    if (slopes.empty()) {
        throw std::invalid_argument("growth_exponent: no realizations");
    }
    FitResult r;
    const double rn = static_cast<double>(slopes.size());
    for (double s : slopes) r.slope += s;
    for (double c : intercepts) r.intercept += c;
    r.slope /= rn;
    r.intercept /= rn;
    if (slopes.size() > 1) {
        double ss = 0.0;
        for (double s : slopes) ss += (s - r.slope) * (s - r.slope);
        r.stderr_slope = std::sqrt(ss / (rn * (rn - 1.0)));
    }
    r.points = points;
    return r;
}

double mean_log_coupling_theory(double beta, std::size_t n, TheoryMode mode) {
    if (!(beta > 0.0)) throw std::invalid_argument("mean_log_coupling_theory: beta > 0");
    if (n == 0) throw std::invalid_argument("mean_log_coupling_theory: n >= 1");
    const double nd = static_cast<double>(n);
    if (mode == TheoryMode::exact) {
        double s = 0.0;
        for (std::size_t m = 1; m <= n; ++m) {
            s += 0.5 * digamma(0.5 * beta * static_cast<double>(m));
        }
        return s / nd;
    }
    return 0.5 * (std::log(nd * beta / 2.0) - 1.0 +
                  (0.5 - 1.0 / beta) * std::log(nd) / nd);
}

double mean_log_charpoly_theory(double beta, std::size_t n) {
    if (!(beta > 0.0)) throw std::invalid_argument("mean_log_charpoly_theory: beta > 0");
    if (n == 0) throw std::invalid_argument("mean_log_charpoly_theory: n >= 1");
    return 0.5 * (std::log(static_cast<double>(n) * beta / 2.0) - 1.0);
}

double lyapunov_theory(double beta, std::size_t n) {
    if (!(beta > 0.0)) throw std::invalid_argument("lyapunov_theory: beta > 0");
    if (n < 2) throw std::invalid_argument("lyapunov_theory: n >= 2");
    const double nd = static_cast<double>(n);
    return 0.5 * (0.5 - 1.0 / beta) * std::log(nd) / nd;
}

namespace {

FitResult envelope_fit(const std::vector<std::pair<double, double>>& log_n_and_log_v2,
                       std::size_t fit_lo, std::size_t fit_hi, std::size_t bins) {
    if (fit_lo == 0 || fit_hi <= fit_lo) {
        throw std::invalid_argument("decay_exponent: bad fit window");
    }
    if (bins < 3) throw std::invalid_argument("decay_exponent: need >= 3 bins");
    const double llo = std::log(static_cast<double>(fit_lo));
    const double lhi = std::log(static_cast<double>(fit_hi) + 0.5);
    std::vector<double> best_x(bins), best_y(bins);
    std::vector<bool> seen(bins, false);
    for (const auto& [ln, lv2] : log_n_and_log_v2) {
        if (ln < llo || ln >= lhi) continue;
        auto k = static_cast<std::size_t>((ln - llo) / (lhi - llo) * static_cast<double>(bins));
        if (k >= bins) k = bins - 1;
        if (!seen[k] || lv2 > best_y[k]) {
            seen[k] = true;
            best_y[k] = lv2;
            best_x[k] = ln;
        }
    }
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < bins; ++k) {
        if (seen[k]) {
            xs.push_back(best_x[k]);
            ys.push_back(best_y[k]);
        }
    }
    if (xs.size() < 3) {
        throw std::invalid_argument("decay_exponent: window has no usable points");
    }
    return linear_fit(xs, ys);
}

} // namespace

FitResult decay_exponent(const LogSignedSequence& trace, std::size_t fit_lo,
                         std::size_t fit_hi, std::size_t bins) {
    std::vector<std::pair<double, double>> pts;
    const int lo = std::max(trace.start_index(), 1);
    for (int n = lo; n <= trace.max_index(); ++n) {
        if (trace.sign(n) == 0) continue;  // oscillatory zeros carry no envelope
        pts.emplace_back(std::log(static_cast<double>(n)), 2.0 * trace.log_abs(n));
    }
    return envelope_fit(pts, fit_lo, fit_hi, bins);
}

FitResult decay_exponent(std::span<const double> unit_vector, std::size_t fit_lo,
                         std::size_t fit_hi, std::size_t bins) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < unit_vector.size(); ++i) {
        const double v = unit_vector[i];
        if (v == 0.0) continue;
        pts.emplace_back(std::log(static_cast<double>(i + 1)),
                         2.0 * std::log(std::fabs(v)));
    }
    return envelope_fit(pts, fit_lo, fit_hi, bins);
}

} // namespace betaspec
