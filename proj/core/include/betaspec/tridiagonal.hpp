// Finite symmetric tridiagonal operator: on-site potentials a_1..a_N on
// the diagonal, positive hopping amplitudes b_1..b_{N-1} off it.
#ifndef BETASPEC_TRIDIAGONAL_HPP
#define BETASPEC_TRIDIAGONAL_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace betaspec {

class TridiagonalOperator {
public:
    /// diag = a_1..a_N, offdiag = b_1..b_{N-1} (all strictly positive).
    TridiagonalOperator(std::vector<double> diag, std::vector<double> offdiag,
                        double beta = 1.0);

    std::size_t size() const { return diag_.size(); }
    double beta() const { return beta_; }

    const std::vector<double>& diag() const { return diag_; }
    const std::vector<double>& offdiag() const { return offdiag_; }

    /// 1-based site access: a(n) for n in [1,N], b(n) for n in [1,N-1].
    double a(std::size_t n) const { return diag_[n - 1]; }
    double b(std::size_t n) const { return offdiag_[n - 1]; }

    /// b(n) extended with the half-line boundary convention b_0 = b_N = 1.
    double b_bc(std::size_t n) const {
        return (n == 0 || n == size()) ? 1.0 : offdiag_[n - 1];
    }

    /// Same spectrum: similarity by the index-reversing permutation.
    TridiagonalOperator reversed() const;

    /// Gershgorin enclosure of the spectrum.
    std::pair<double, double> gershgorin() const;

    /// Row-sum bound on the operator norm (max_i |b_{i-1}|+|a_i|+|b_i|).
    double norm_bound() const;

    /// y = H x (no boundary terms).
    void apply(const std::vector<double>& x, std::vector<double>& y) const;

    /// CSV layout "n,a,b" with b empty on the last row, 17 significant digits.
    void write_csv(std::ostream& os) const;
    static TridiagonalOperator read_csv(std::istream& is, double beta = 1.0);

private:
    std::vector<double> diag_;
    std::vector<double> offdiag_;
    double beta_;
};

} // namespace betaspec

#endif // BETASPEC_TRIDIAGONAL_HPP
