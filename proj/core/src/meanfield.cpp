#include "betaspec/meanfield.hpp"

#include <cmath>

namespace betaspec {

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kU0 = std::pow(kPi, -0.25);
} // namespace

double hermite_u(std::size_t n, double x) {
    double u_prev = 0.0;                      // u_{-1}
    double u = kU0 * std::exp(-0.5 * x * x);  // u_0
    for (std::size_t m = 0; m < n; ++m) {
        const double mm = static_cast<double>(m);
        const double u_next = x * std::sqrt(2.0 / (mm + 1.0)) * u -
                              std::sqrt(mm / (mm + 1.0)) * u_prev;
        u_prev = u;
        u = u_next;
    }
    return u;
}

double oscillator_kernel(std::size_t m_terms, double x, double y) {
    double ux_prev = 0.0, ux = kU0 * std::exp(-0.5 * x * x);
    double uy_prev = 0.0, uy = kU0 * std::exp(-0.5 * y * y);
    double sum = 0.0;
    for (std::size_t m = 0; m < m_terms; ++m) {
        sum += ux * uy;
        const double mm = static_cast<double>(m);
        const double cx = std::sqrt(2.0 / (mm + 1.0));
        const double cm = std::sqrt(mm / (mm + 1.0));
        const double ux_next = x * cx * ux - cm * ux_prev;
        const double uy_next = y * cx * uy - cm * uy_prev;
        ux_prev = ux; ux = ux_next;
        uy_prev = uy; uy = uy_next;
    }
    return sum;
}

double semicircle_density(double mu) {
    if (mu < -1.0 || mu > 1.0) return 0.0;
    return (2.0 / kPi) * std::sqrt(1.0 - mu * mu);
}

double integrated_semicircle(double mu) {
    if (mu <= -1.0) return 0.0;
    if (mu >= 1.0) return 1.0;
    return 0.5 + (mu * std::sqrt(1.0 - mu * mu) + std::asin(mu)) / kPi;
}

} // namespace betaspec
