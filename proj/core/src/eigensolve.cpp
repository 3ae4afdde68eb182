#include "betaspec/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "betaspec/errors.hpp"
#include "betaspec/rng.hpp"

namespace betaspec {

namespace {

struct SturmContext {
    const std::vector<double>& a;
    const std::vector<double>& b;
    double pivmin;
};

// Negative-pivot count of the LDL^T factorization of H - xI; pivots
// clamped away from zero so the count stays exact next to an eigenvalue.
std::size_t sturm_count(const SturmContext& ctx, double x) {
    const std::size_t n = ctx.a.size();
    std::size_t count = 0;
    double d = ctx.a[0] - x;
    if (std::fabs(d) < ctx.pivmin) d = -ctx.pivmin;
    if (d < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        d = (ctx.a[i] - x) - ctx.b[i - 1] * ctx.b[i - 1] / d;
        if (std::fabs(d) < ctx.pivmin) d = -ctx.pivmin;
        if (d < 0.0) ++count;
    }
    return count;
}

SturmContext make_context(const TridiagonalOperator& op) {
    double bmax2 = 1.0;
    for (double b : op.offdiag()) bmax2 = std::max(bmax2, b * b);
    const double safmin = std::numeric_limits<double>::min() /
                          std::numeric_limits<double>::epsilon();
    return SturmContext{op.diag(), op.offdiag(), safmin * bmax2};
}

// Tridiagonal LU with partial pivoting (one extra superdiagonal of
// fill-in), then solve.  Near-singular pivots are clamped, which is
// exactly what inverse iteration wants.
struct PivotedTridiagonal {
    std::vector<double> dl, d, du, du2;
    std::vector<int> piv;

    PivotedTridiagonal(const TridiagonalOperator& op, double shift) {
        const std::size_t n = op.size();
        d.resize(n);
        dl.assign(n > 1 ? n - 1 : 0, 0.0);
        du.assign(n > 1 ? n - 1 : 0, 0.0);
        du2.assign(n > 2 ? n - 2 : 0, 0.0);
        piv.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) d[i] = op.diag()[i] - shift;
        for (std::size_t i = 0; i + 1 < n; ++i) dl[i] = du[i] = op.offdiag()[i];

        const double tiny = std::numeric_limits<double>::min() * 4.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::fabs(d[i]) >= std::fabs(dl[i])) {
                piv[i] = 0;
                if (std::fabs(d[i]) < tiny) d[i] = (d[i] < 0.0 ? -tiny : tiny);
                const double m = dl[i] / d[i];
                dl[i] = m;
                d[i + 1] -= m * du[i];
                if (i + 2 < n) du2[i] = 0.0;
            } else {
                piv[i] = 1;
                const double m = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = m;
                const double t = du[i];
                du[i] = d[i + 1];
                d[i + 1] = t - m * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -m * du[i + 1];
                }
            }
        }
        if (std::fabs(d[n - 1]) < tiny) d[n - 1] = (d[n - 1] < 0.0 ? -tiny : tiny);
    }

    void solve(std::vector<double>& x) const {
        const std::size_t n = d.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (piv[i] == 0) {
                x[i + 1] -= dl[i] * x[i];
            } else {
                const double t = x[i];
                x[i] = x[i + 1];
                x[i + 1] = t - dl[i] * x[i];
            }
        }
        x[n - 1] /= d[n - 1];
        if (n >= 2) x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
        for (std::size_t i = n; i-- > 2;) {
            const std::size_t j = i - 2;
            x[j] = (x[j] - du[j] * x[j + 1] - du2[j] * x[j + 2]) / d[j];
        }
    }
};

double vec_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace

std::size_t eigenvalue_count_below(const TridiagonalOperator& op, double x) {
    return sturm_count(make_context(op), x);
}

std::vector<double> eigenvalues(const TridiagonalOperator& op,
                                std::optional<std::pair<double, double>> window,
                                double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("eigenvalues: tol must be positive");
    const auto ctx = make_context(op);
    auto [glo, ghi] = op.gershgorin();
    const double scale = std::max({1.0, std::fabs(glo), std::fabs(ghi)});
    const double atol = tol * scale;
    glo -= 2.0 * atol + 1e-3 * scale * std::numeric_limits<double>::epsilon();
    ghi += 2.0 * atol + 1e-3 * scale * std::numeric_limits<double>::epsilon();

    double lo = glo, hi = ghi;
    if (window) {
        lo = std::max(lo, window->first);
        hi = std::min(hi, window->second);
        if (!(lo < hi)) return {};
    }

    struct Bracket {
        double lo, hi;
        std::size_t clo, chi;
    };
    const std::size_t clo0 = sturm_count(ctx, lo);
    const std::size_t chi0 = sturm_count(ctx, hi);
    if (chi0 == clo0) return {};

    std::vector<double> out;
    out.reserve(chi0 - clo0);
    std::vector<Bracket> stack{{lo, hi, clo0, chi0}};
    while (!stack.empty()) {
        Bracket br = stack.back();
        stack.pop_back();
        const std::size_t inside = br.chi - br.clo;
        if (inside == 0) continue;
        if (br.hi - br.lo <= atol) {
            const double mid = 0.5 * (br.lo + br.hi);
            for (std::size_t i = 0; i < inside; ++i) out.push_back(mid);
            continue;
        }
        const double mid = 0.5 * (br.lo + br.hi);
        const std::size_t cmid = sturm_count(ctx, mid);
        if (cmid > br.clo) stack.push_back({br.lo, mid, br.clo, cmid});
        if (br.chi > cmid) stack.push_back({mid, br.hi, cmid, br.chi});
    }
    std::sort(out.begin(), out.end());
    return out;
}

double eigenvalue_by_index(const TridiagonalOperator& op, std::size_t k, double tol) {
    if (k >= op.size()) throw std::invalid_argument("eigenvalue_by_index: k out of range");
    if (!(tol > 0.0)) throw std::invalid_argument("eigenvalue_by_index: tol must be positive");
    const auto ctx = make_context(op);
    auto [lo, hi] = op.gershgorin();
    const double scale = std::max({1.0, std::fabs(lo), std::fabs(hi)});
    const double atol = tol * scale;
    lo -= 2.0 * atol;
    hi += 2.0 * atol;
    while (hi - lo > atol) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(ctx, mid) > k) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> eigenvector(const TridiagonalOperator& op, double lambda_hat) {
    const std::size_t n = op.size();
    const PivotedTridiagonal lu(op, lambda_hat);
    const double resid_target = 1e-10 * std::max(1.0, op.norm_bound());

    // Deterministic start vector; restart draws continue the stream.
    RngStream rng(0x9bce5f1du, static_cast<std::uint64_t>(n));
    std::vector<double> v(n), hv;
    for (int attempt = 0; attempt < 2; ++attempt) {
        for (auto& x : v) x = sample_gaussian(rng);
        double nv = vec_norm(v);
        for (auto& x : v) x /= nv;

        for (int iter = 0; iter < 4; ++iter) {
            lu.solve(v);
            nv = vec_norm(v);
            if (!(nv > 0.0) || !std::isfinite(nv)) break;
            for (auto& x : v) x /= nv;

            op.apply(v, hv);
            double resid = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double r = hv[i] - lambda_hat * v[i];
                resid += r * r;
            }
            if (std::sqrt(resid) <= resid_target) {
                for (double x : v) {
                    if (x != 0.0) {
                        if (x < 0.0) {
                            for (auto& y : v) y = -y;
                        }
                        break;
                    }
                }
                return v;
            }
        }
    }
    throw SolverError("eigenvector: inverse iteration did not converge");
}

SpectralMeasure spectral_measure(const TridiagonalOperator& op) {
    SpectralMeasure m;
    if (op.size() == 1) {
        m.lambdas = {op.diag()[0]};
        m.weights = {1.0};
        return m;
    }
    // Tight brackets keep the completeness defect of the weights small.
    m.lambdas = eigenvalues(op, std::nullopt, 1e-14);
    m.weights.reserve(m.lambdas.size());
    for (double l : m.lambdas) {
        const auto v = eigenvector(op, l);
        m.weights.push_back(v[0] * v[0]);
    }
    return m;
}

} // namespace betaspec
