// Ensemble-level statistics: density comparison against the semicircle,
// spectral unfolding and nearest-neighbour spacings, the small-spacing
// repulsion exponent, inverse participation ratio, the N=2 marginal by
// quadrature, and Kolmogorov-Smirnov helpers.
#ifndef BETASPEC_STATS_HPP
#define BETASPEC_STATS_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "betaspec/fit.hpp"

namespace betaspec {

class Histogram {
public:
    /// Equal-width bins over [lo, hi).
    Histogram(double lo, double hi, std::size_t bins);

    void add(double x);
    void add(std::span<const double> xs);

    std::size_t bins() const { return counts_.size(); }
    std::size_t total() const { return total_; }
    std::size_t count(std::size_t bin) const { return counts_[bin]; }
    double edge(std::size_t i) const { return edges_[i]; }
    const std::vector<double>& edges() const { return edges_; }

    /// Fraction of all added samples inside a bin.
    double mass(std::size_t bin) const;
    /// Normalized density value of a bin (mass / width).
    double density(std::size_t bin) const;

private:
    std::vector<double> edges_;
    std::vector<std::size_t> counts_;
    std::size_t total_ = 0;
};

/// Rescales eigenvalue batches by sqrt(2 beta N), bins them on
/// [-1.1, 1.1], and returns the histogram together with the L1 distance
/// between per-bin empirical mass and the integrated semicircle.
std::pair<Histogram, double> density_compare(
    const std::vector<std::vector<double>>& eigenvalue_batches, double beta,
    std::size_t n, std::size_t bins);

/// Unfolds a sorted single-realization spectrum through
/// N * integrated_semicircle(lambda / sqrt(2 beta N)) and returns the
/// consecutive spacings whose endpoints lie in the central fraction of
/// the rank order.  Output mean is ~1 by construction.
std::vector<double> unfold_and_spacings(std::span<const double> sorted_eigs,
                                        double beta, std::size_t n,
                                        double central_fraction);

/// Small-spacing repulsion exponent: fits log empirical CDF against
/// log s below the quantile_cut quantile and returns slope - 1 in
/// FitResult::slope (the CDF of a density ~ s^p grows like s^{p+1}).
FitResult repulsion_exponent(std::vector<double> spacings, double quantile_cut);

/// Sum of fourth powers of a unit vector: 1 for a delta state, 1/N for a
/// uniform one.  Rejects inputs whose norm is off unity by > 1e-8.
double ipr(std::span<const double> unit_vector);

/// Single-eigenvalue marginal of the N=2 joint density
/// exp(-(l^2+m^2)/2) |l-m|^beta, evaluated on `grid` by adaptive
/// quadrature and normalized by the iterated 2-D integral.  Grid must
/// cover [-4, 4] with at least 200 points.
std::vector<double> n2_eigenvalue_marginal(double beta, std::span<const double> grid);

/// Two-sample Kolmogorov-Smirnov statistic (inputs sorted ascending).
double ks_two_sample(std::span<const double> a_sorted, std::span<const double> b_sorted);

/// Asymptotic two-sample critical value c(alpha) sqrt((m+n)/(m n)).
double ks_two_sample_critical(double alpha, std::size_t m, std::size_t n);

/// One-sample statistic against a callable CDF, and its critical value.
double ks_one_sample(std::span<const double> sorted, double (*cdf)(double));
double ks_one_sample_critical(double alpha, std::size_t n);

} // namespace betaspec

#endif // BETASPEC_STATS_HPP
