#include "betaspec/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "betaspec/meanfield.hpp"
#include "betaspec/quadrature.hpp"

namespace betaspec {

Histogram::Histogram(double lo, double hi, std::size_t bins) {
    if (!(lo < hi) || bins == 0) throw std::invalid_argument("Histogram: bad layout");
    edges_.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
        edges_[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
    }
    counts_.assign(bins, 0);
}

void Histogram::add(double x) {
    ++total_;
    if (x < edges_.front() || x >= edges_.back()) return;
    const double w = (edges_.back() - edges_.front()) / static_cast<double>(counts_.size());
    auto k = static_cast<std::size_t>((x - edges_.front()) / w);
    if (k >= counts_.size()) k = counts_.size() - 1;
    ++counts_[k];
}

void Histogram::add(std::span<const double> xs) {
    for (double x : xs) add(x);
}

double Histogram::mass(std::size_t bin) const {
    if (total_ == 0) return 0.0;
    return static_cast<double>(counts_[bin]) / static_cast<double>(total_);
}

double Histogram::density(std::size_t bin) const {
    const double w = edges_[bin + 1] - edges_[bin];
    return mass(bin) / w;
}

std::pair<Histogram, double> density_compare(
    const std::vector<std::vector<double>>& eigenvalue_batches, double beta,
    std::size_t n, std::size_t bins) {
    if (eigenvalue_batches.empty()) {
        throw std::invalid_argument("density_compare: need at least one batch");
    }
    if (!(beta > 0.0) || n == 0 || bins == 0) {
        throw std::invalid_argument("density_compare: bad parameters");
    }
    const double scale = std::sqrt(2.0 * beta * static_cast<double>(n));
    Histogram h(-1.1, 1.1, bins);
    for (const auto& batch : eigenvalue_batches) {
        for (double l : batch) h.add(l / scale);
    }
    double l1 = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
        const double theory = integrated_semicircle(h.edge(b + 1)) -
                              integrated_semicircle(h.edge(b));
        l1 += std::fabs(h.mass(b) - theory);
    }
    return {std::move(h), l1};
}

std::vector<double> unfold_and_spacings(std::span<const double> sorted_eigs,
                                        double beta, std::size_t n,
                                        double central_fraction) {
    if (sorted_eigs.size() < 4) {
        throw std::invalid_argument("unfold_and_spacings: need at least 4 eigenvalues");
    }
    if (!(central_fraction > 0.0) || central_fraction > 1.0) {
        throw std::invalid_argument("unfold_and_spacings: central_fraction in (0,1]");
    }
    const double nd = static_cast<double>(n);
    const double scale = std::sqrt(2.0 * beta * nd);
    std::vector<double> unfolded(sorted_eigs.size());
    for (std::size_t i = 0; i < sorted_eigs.size(); ++i) {
        if (i > 0 && sorted_eigs[i] < sorted_eigs[i - 1]) {
            throw std::invalid_argument("unfold_and_spacings: input must be sorted");
        }
        unfolded[i] = nd * integrated_semicircle(sorted_eigs[i] / scale);
    }
    // keep spacings whose endpoint ranks both lie in the central fraction
    const double m = static_cast<double>(sorted_eigs.size());
    const double lo_rank = 0.5 * m * (1.0 - central_fraction);
    const double hi_rank = 0.5 * m * (1.0 + central_fraction);
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < unfolded.size(); ++i) {
        const double r0 = static_cast<double>(i);
        const double r1 = static_cast<double>(i + 1);
        if (r0 >= lo_rank && r1 <= hi_rank) {
            out.push_back(unfolded[i + 1] - unfolded[i]);
        }
    }
    return out;
}

FitResult repulsion_exponent(std::vector<double> spacings, double quantile_cut) {
    if (spacings.size() < 10000) {
        throw std::invalid_argument("repulsion_exponent: need >= 1e4 spacings");
    }
    if (!(quantile_cut > 0.0) || quantile_cut >= 1.0) {
        throw std::invalid_argument("repulsion_exponent: quantile_cut in (0,1)");
    }
    std::sort(spacings.begin(), spacings.end());
    const double total = static_cast<double>(spacings.size());
    const auto k_cut = static_cast<std::size_t>(quantile_cut * total);
    std::vector<double> xs, ys;
    xs.reserve(k_cut);
    ys.reserve(k_cut);
    for (std::size_t i = 0; i < k_cut; ++i) {
        if (spacings[i] <= 0.0) continue;
        xs.push_back(std::log(spacings[i]));
        ys.push_back(std::log(static_cast<double>(i + 1) / total));
    }
    if (xs.size() < 100) {
        throw std::invalid_argument("repulsion_exponent: too few small spacings");
    }
    FitResult f = linear_fit(xs, ys);
    f.slope -= 1.0;  // CDF ~ s^{p+1} for density ~ s^p
    return f;
}

double ipr(std::span<const double> unit_vector) {
    double n2 = 0.0, n4 = 0.0;
    for (double v : unit_vector) {
        const double v2 = v * v;
        n2 += v2;
        n4 += v2 * v2;
    }
    if (std::fabs(std::sqrt(n2) - 1.0) > 1e-8) {
        throw std::invalid_argument("ipr: input vector is not unit norm");
    }
    return n4;
}

namespace {

// int_0^inf e^{-(lam + u)^2 / 2} u^beta du with u = t^2, which removes
// the |u|^beta kink at the origin for every beta > 0.
double half_line_integral(double lam, double beta, double tol) {
    const double t_max = std::sqrt(std::fabs(lam) + 14.0);
    return integrate(
        [lam, beta](double t) {
            const double u = t * t;
            const double w = lam + u;
            return 2.0 * std::exp(-0.5 * w * w) * std::pow(t, 2.0 * beta + 1.0);
        },
        0.0, t_max, tol);
}

// Unnormalized marginal m(lam) = e^{-lam^2/2} [I_+(lam) + I_-(lam)];
// the two half-line pieces mirror exactly, so m(-lam) == m(lam) in
// floating point as well.
double n2_unnormalized(double lam, double beta, double tol) {
    return std::exp(-0.5 * lam * lam) *
           (half_line_integral(lam, beta, tol) + half_line_integral(-lam, beta, tol));
}

} // namespace

std::vector<double> n2_eigenvalue_marginal(double beta, std::span<const double> grid) {
    if (!(beta > 0.0)) throw std::invalid_argument("n2_eigenvalue_marginal: beta > 0");
    if (grid.size() < 200 || grid.front() > -4.0 || grid.back() < 4.0) {
        throw std::invalid_argument(
            "n2_eigenvalue_marginal: grid must cover [-4,4] with >= 200 points");
    }
    const double quad_tol = 1e-11;
    // normalization by the iterated 2-D integral
    const double z = integrate(
        [beta, quad_tol](double lam) { return n2_unnormalized(lam, beta, quad_tol); },
        -14.0, 14.0, 1e-10);
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i] = n2_unnormalized(grid[i], beta, quad_tol) / z;
    }
    return out;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_two_sample_critical(double alpha, std::size_t m, std::size_t n) {
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    const double md = static_cast<double>(m), nd = static_cast<double>(n);
    return c * std::sqrt((md + nd) / (md * nd));
}

double ks_one_sample(std::span<const double> sorted, double (*cdf)(double)) {
    if (sorted.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    }
    return d;
}

double ks_one_sample_critical(double alpha, std::size_t n) {
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    return c / std::sqrt(static_cast<double>(n));
}

} // namespace betaspec
