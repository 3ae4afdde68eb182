// Renormalized 2x2 transfer-matrix products, the digamma-based theory
// for the mean log coupling / log determinant / Lyapunov exponent, and
// the power-law exponent estimators.
#ifndef BETASPEC_TRANSFER_HPP
#define BETASPEC_TRANSFER_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "betaspec/ensemble.hpp"
#include "betaspec/fit.hpp"
#include "betaspec/signed_log.hpp"

namespace betaspec {

struct Mat2 {
    double m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;

    static Mat2 identity() { return Mat2{}; }
    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return Mat2{a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
                    a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
    }
    double det() const { return m00 * m11 - m01 * m10; }
    /// Exact spectral norm from the closed-form 2x2 singular values.
    double norm2() const;
};

/// One-site step [[ (lambda - a_n)/b_n, -b_{n-1}/b_n ], [1, 0]]; it maps
/// (x_n, x_{n-1}) to (x_{n+1}, x_n).  b_prev = 1 at the first site.
Mat2 step_matrix(double a_n, double b_n, double b_prev, double lambda);

/// Product kept at unit norm: T_n = e^{log_norm} * m.
struct TransferAccumulator {
    Mat2 m = Mat2::identity();
    double log_norm = 0.0;
    std::size_t steps = 0;

    void step(const Mat2& s);
    double log_product_norm() const;
    /// log |det T_n|, reconstructed from the normalized factor.
    double log_abs_det() const;
};

/// Single pass over the coefficient stream, recording log ||T_n|| at each
/// checkpoint (sorted, positive).  Deterministic for a fixed stream.
std::vector<std::pair<std::size_t, double>> transfer_log_norms(
    CoefficientStream stream, double lambda, std::span<const std::size_t> checkpoints);

/// Ensemble growth exponent: per realization, least-squares slope of
/// log ||T_n||^2 against log n inside [fit_lo, fit_hi]; slope/intercept
/// averaged over realizations, stderr from realization scatter.
FitResult growth_exponent(
    const std::vector<std::vector<std::pair<std::size_t, double>>>& samples,
    std::size_t fit_lo, std::size_t fit_hi);

enum class TheoryMode { exact, asymptotic };

/// (1/n) sum_{m<=n} <log b_m>: exact digamma sum, or the asymptotic form
/// (1/2)(log(n beta/2) - 1 + (1/2 - 1/beta) log(n)/n).
double mean_log_coupling_theory(double beta, std::size_t n, TheoryMode mode);

/// (1/n) <log |D_n(lambda)|> at |lambda| << sqrt(2 n beta):
/// (1/2)(log(n beta / 2) - 1), the semicircle log-potential at the center.
double mean_log_charpoly_theory(double beta, std::size_t n);

/// Mean Lyapunov exponent (1/2)(1/2 - 1/beta) log(n)/n; equals the
/// difference of the two expressions above by construction.
double lyapunov_theory(double beta, std::size_t n);

/// Envelope decay/growth exponent of component^2 against n: block maxima
/// of 2 log|v_n| over logarithmically spaced bins inside [fit_lo, fit_hi]
/// (abscissa = position of each maximum), then a line fit.  Zero entries
/// are skipped; an all-zero window is an error.
FitResult decay_exponent(const LogSignedSequence& trace, std::size_t fit_lo,
                         std::size_t fit_hi, std::size_t bins = 14);
FitResult decay_exponent(std::span<const double> unit_vector, std::size_t fit_lo,
                         std::size_t fit_hi, std::size_t bins = 14);

} // namespace betaspec

#endif // BETASPEC_TRANSFER_HPP
