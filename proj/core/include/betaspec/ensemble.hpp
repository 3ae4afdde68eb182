// Tridiagonal random operator ensembles: Gaussian on-site potentials,
// chi-type couplings whose exponent parameter grows linearly down the
// band, plus the deterministic mean operators and the dense-GOE
// cross-validation route.
#ifndef BETASPEC_ENSEMBLE_HPP
#define BETASPEC_ENSEMBLE_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "betaspec/rng.hpp"
#include "betaspec/tridiagonal.hpp"

namespace betaspec {

/// Which end of the band carries the small coupling parameters.
/// `paper`: b_n has parameter beta*n, growing down the band.
/// `reversed`: b_n has parameter beta*(N-n); same spectrum law.
enum class Orientation { paper, reversed };

enum class MeanMode { exact_mean, leading_order };

/// Lazy half-line coefficient source: pair n is (a_n, b_n) with a_n
/// standard normal and b_n chi-type with parameter beta*n.  Replays
/// identically for an identical starting stream.
class CoefficientStream {
public:
    CoefficientStream(double beta, RngStream rng);

    std::pair<double, double> next();

    double beta() const { return beta_; }
    std::size_t next_index() const { return next_index_; }

private:
    double beta_;
    RngStream rng_;
    std::size_t next_index_;
};

/// Finite N-site draw: a_n ~ N(0,1), b_n chi-type with parameter
/// beta*n (paper orientation) for n = 1..N-1.  `scaled` multiplies all
/// elements by sqrt(2 / (beta N)), mapping the bulk spectrum to [-1,1].
TridiagonalOperator sample_gbe(double beta, std::size_t n, RngStream& rng,
                               Orientation orientation = Orientation::paper,
                               bool scaled = false);

CoefficientStream stream_gbe(double beta, RngStream rng);

/// Deterministic operator with a_n = 0 and couplings set to their
/// ensemble mean (exact Gamma ratio) or its leading order sqrt(beta n / 2).
TridiagonalOperator mean_operator(double beta, std::size_t n, MeanMode mode);

/// Samples a dense symmetric matrix with Gaussian weights (diagonal
/// variance 1, off-diagonal 1/2), reduces it to tridiagonal form by
/// Householder reflections, absorbing signs so all couplings come out
/// non-negative.  Spectrum equals the dense matrix's.
TridiagonalOperator sample_goe_dense_tridiagonalized(std::size_t n, RngStream& rng);

/// Unnormalized log joint eigenvalue density:
/// -1/2 sum lambda_j^2 + beta * sum_{j<k} log|lambda_j - lambda_k|.
/// Coincident eigenvalues give -infinity.
double log_joint_eigenvalue_density(const std::vector<double>& lambdas, double beta);

} // namespace betaspec

#endif // BETASPEC_ENSEMBLE_HPP
