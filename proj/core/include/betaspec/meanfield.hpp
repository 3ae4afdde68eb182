// Deterministic mean-operator theory: normalized harmonic-oscillator
// eigenfunctions via the stable three-term recurrence, and the
// semicircle density with its closed-form antiderivative.
#ifndef BETASPEC_MEANFIELD_HPP
#define BETASPEC_MEANFIELD_HPP

#include <cstddef>

namespace betaspec {

/// u_n(x) = (sqrt(pi) n! 2^n)^{-1/2} e^{-x^2/2} H_n(x), computed by
/// u_{m+1} = x sqrt(2/(m+1)) u_m - sqrt(m/(m+1)) u_{m-1}.  Bounded for
/// every n, so no overflow at any order.
double hermite_u(std::size_t n, double x);

/// Partial completeness kernel sum_{m<M} u_m(x) u_m(y).
double oscillator_kernel(std::size_t m_terms, double x, double y);

/// (2/pi) sqrt(1 - mu^2) on [-1,1], zero outside.
double semicircle_density(double mu);

/// Antiderivative of the semicircle density, clamped to [0,1]:
/// (1/pi)(mu sqrt(1-mu^2) + asin(mu)) + 1/2.
double integrated_semicircle(double mu);

} // namespace betaspec

#endif // BETASPEC_MEANFIELD_HPP
