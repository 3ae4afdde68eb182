#ifndef BETASPEC_QUADRATURE_HPP
#define BETASPEC_QUADRATURE_HPP

#include <functional>

namespace betaspec {

/// Adaptive Simpson integration of f over [a, b] to absolute tolerance
/// `tol`.  Throws NumericError when the recursion depth is exhausted
/// before the local error estimate converges.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_depth = 60);

} // namespace betaspec

#endif // BETASPEC_QUADRATURE_HPP
