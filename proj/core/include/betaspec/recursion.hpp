// Overflow-safe evaluation of the three-term recursions attached to a
// tridiagonal operator: leading principal minors of (lambda I - H), the
// forward solution with x_0 = 0, x_1 = 1, and the backward solution with
// y_{N+1} = 0, y_N = 1.  Boundary couplings follow b_0 = b_N = 1.
#ifndef BETASPEC_RECURSION_HPP
#define BETASPEC_RECURSION_HPP

#include <cstddef>

#include "betaspec/ensemble.hpp"
#include "betaspec/signed_log.hpp"
#include "betaspec/tridiagonal.hpp"

namespace betaspec {

/// D_{-1} = 0, D_0 = 1, D_n = (lambda - a_n) D_{n-1} - b_{n-1}^2 D_{n-2}.
/// Entry N is det(lambda I - H); sign changes along the sequence count
/// eigenvalues below lambda (Sturm property).
LogSignedSequence char_poly_sequence(const TridiagonalOperator& op, double lambda);

/// Same recursion driven by a coefficient stream, up to index n_max.
LogSignedSequence char_poly_sequence(CoefficientStream stream, double lambda,
                                     std::size_t n_max);

/// x_0 = 0, x_1 = 1, b_{n-1} x_{n-1} + (a_n - lambda) x_n + b_n x_{n+1} = 0.
/// Returns x_0 .. x_{n_max+1}; requires n_max <= N for operator sources.
LogSignedSequence forward_solution(const TridiagonalOperator& op, double lambda,
                                   std::size_t n_max);
LogSignedSequence forward_solution(CoefficientStream stream, double lambda,
                                   std::size_t n_max);

/// y_{N+1} = 0, y_N = 1, recursion run downward to y_0.
/// Returns y_0 .. y_{N+1}.
LogSignedSequence backward_solution(const TridiagonalOperator& op, double lambda);

/// W = b_n (x_{n+1} y_n - x_n y_{n+1}) at site n, b extended by the
/// boundary convention; constant in n for solutions of the same lambda.
SignedLog wronskian(const TridiagonalOperator& op, const LogSignedSequence& x,
                    const LogSignedSequence& y, std::size_t n);

} // namespace betaspec

#endif // BETASPEC_RECURSION_HPP
