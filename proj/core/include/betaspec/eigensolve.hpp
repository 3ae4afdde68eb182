// Sturm-count bisection eigensolver for symmetric tridiagonal operators,
// inverse-iteration eigenvectors, and the spectral measure relative to
// the first basis vector.
#ifndef BETASPEC_EIGENSOLVE_HPP
#define BETASPEC_EIGENSOLVE_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "betaspec/tridiagonal.hpp"

namespace betaspec {

/// Number of eigenvalues of H strictly below x: count of negative pivots
/// in the LDL^T factorization of H - xI.
std::size_t eigenvalue_count_below(const TridiagonalOperator& op, double x);

/// All eigenvalues, or those inside `window`, sorted ascending.  Each is
/// bracketed by bisection to width <= tol * max(1, spectral scale), with
/// counts certified by the Sturm property.
std::vector<double> eigenvalues(const TridiagonalOperator& op,
                                std::optional<std::pair<double, double>> window = std::nullopt,
                                double tol = 1e-12);

/// The k-th eigenvalue (0-based, ascending).
double eigenvalue_by_index(const TridiagonalOperator& op, std::size_t k,
                           double tol = 1e-12);

/// Unit eigenvector for an eigenvalue estimate, by inverse iteration with
/// a partially pivoted tridiagonal factorization (at most 4 iterations,
/// one re-randomized restart).  Sign fixed so the first nonzero component
/// is positive.  Throws SolverError on non-convergence.
std::vector<double> eigenvector(const TridiagonalOperator& op, double lambda_hat);

/// Finite-volume spectral measure of delta_1: weight_k is the squared
/// first component of the k-th normalized eigenvector.
struct SpectralMeasure {
    std::vector<double> lambdas;  // strictly increasing
    std::vector<double> weights;  // non-negative, sum to 1
};

SpectralMeasure spectral_measure(const TridiagonalOperator& op);

} // namespace betaspec

#endif // BETASPEC_EIGENSOLVE_HPP
