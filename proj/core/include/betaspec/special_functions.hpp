// Log-gamma and digamma to near machine accuracy, via recurrence shift
// into the asymptotic (Stirling / de Moivre) regime.
#ifndef BETASPEC_SPECIAL_FUNCTIONS_HPP
#define BETASPEC_SPECIAL_FUNCTIONS_HPP

namespace betaspec {

/// ln Gamma(x) for x > 0.  Relative error below 1e-13 away from the
/// zeros at x = 1, 2 (absolute ~1e-14 there).
double log_gamma(double x);

/// psi(x) = Gamma'(x)/Gamma(x) for x > 0, absolute error below 1e-12.
double digamma(double x);

} // namespace betaspec

#endif // BETASPEC_SPECIAL_FUNCTIONS_HPP
