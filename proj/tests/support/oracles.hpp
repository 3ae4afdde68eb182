// Independent reference computations for the test suite.  Everything in
// here deliberately avoids the library's own code paths: recurrences in
// long double, series with Euler-Maclaurin tails, bisection root finding
// on raw polynomial recurrences, and a dense Jacobi eigensolver.
#ifndef BETASPEC_TEST_ORACLES_HPP
#define BETASPEC_TEST_ORACLES_HPP

#include <cstddef>
#include <utility>
#include <vector>

namespace oracle {

/// ln Gamma(x) for half-integer or integer x, by exact product recurrence
/// from ln Gamma(0.5) = ln sqrt(pi) or ln Gamma(1) = 0 in long double.
long double lgamma_by_recurrence(double x);

/// psi(x) from the series psi(x) = -gamma + sum_{k>=0} (1/(k+1) - 1/(k+x)),
/// 10,000 explicit terms plus an Euler-Maclaurin tail.
long double digamma_series(double x);

/// Standard normal CDF via erfc (libm only).
double normal_cdf(double x);

/// Zeros of the Hermite polynomial H_n, ascending: interlacing bisection
/// brackets refined by Newton steps on the normalized recurrence.
std::vector<double> hermite_zeros_newton(std::size_t n);

/// Gauss-Hermite nodes/weights for weight e^{-x^2} (sum w = sqrt(pi)).
std::pair<std::vector<double>, std::vector<double>> gauss_hermite(std::size_t n);

/// All eigenvalues of a dense symmetric matrix (row-major n x n) by
/// cyclic Jacobi rotations, ascending.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n);

/// Inverse-CDF sampler for the density ~ s^2 e^{-s^2} on [0, inf):
/// CDF(s) = erf(s) - (2 s / sqrt(pi)) e^{-s^2}, inverted by bisection.
double wigner2_inverse_cdf(double u);

/// Composite Simpson on [a,b] with n panels (n even).
double simpson(double (*f)(double, const void*), const void* ctx, double a,
               double b, std::size_t panels);

} // namespace oracle

#endif // BETASPEC_TEST_ORACLES_HPP
