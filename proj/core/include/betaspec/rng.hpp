// Deterministic splittable random streams and the samplers used by the
// ensemble constructions.  Engine: xoshiro256++ seeded through SplitMix64
// so that (master_seed, stream_id) fully determines the draw sequence,
// independent of how work is distributed over threads.
#ifndef BETASPEC_RNG_HPP
#define BETASPEC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace betaspec {

namespace detail {

// One SplitMix64 output step, advancing the counter.
inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Stateless finalizer (a bijection on 64-bit words).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace detail

/// A deterministic random stream identified by (master_seed, stream_id).
/// Distinct stream_ids map to distinct engine seeds through a bijective
/// mix, so per-realization streams never collide for a fixed master seed.
class RngStream {
public:
    explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_id = 0)
        : stream_id_(stream_id) {
        std::uint64_t h = detail::mix64(master_seed + 0x9E3779B97F4A7C15ull);
        std::uint64_t x = detail::mix64(h ^ (stream_id * 0xBF58476D1CE4E5B9ull + 0x94D049BB133111EBull));
        for (auto& w : s_) w = detail::splitmix64(x);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // all-zero state is absorbing
    }

    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0,1) with the full 53-bit mantissa.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0,1), never exactly zero (safe under log()).
    double uniform_pos() {
        double u;
        do { u = uniform01(); } while (u <= 0.0);
        return u;
    }

    bool has_cached_gaussian_ = false;
    double cached_gaussian_ = 0.0;

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
    std::uint64_t stream_id_ = 0;
};

/// Exponent parameter k of the coupling density 2/Gamma(k/2) b^{k-1} e^{-b^2}.
struct ChiParam {
    double k;
    explicit ChiParam(double k_) : k(k_) {
        if (!(k > 0.0)) throw std::invalid_argument("ChiParam: k must be positive");
    }
};

inline RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
    return RngStream(master_seed, stream_id);
}

/// Standard normal draw (Marsaglia polar, second deviate cached).
inline double sample_gaussian(RngStream& rng) {
    if (rng.has_cached_gaussian_) {
        rng.has_cached_gaussian_ = false;
        return rng.cached_gaussian_;
    }
    double u, v, s;
    do {
        u = 2.0 * rng.uniform01() - 1.0;
        v = 2.0 * rng.uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    rng.cached_gaussian_ = v * f;
    rng.has_cached_gaussian_ = true;
    return u * f;
}

/// Gamma(shape, 1) via Marsaglia-Tsang squeeze rejection; the shape < 1
/// case uses the boost X = Gamma(shape+1) * U^(1/shape).
inline double sample_gamma(RngStream& rng, double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("sample_gamma: shape must be positive");
    double boost = 1.0;
    if (shape < 1.0) {
        boost = std::pow(rng.uniform_pos(), 1.0 / shape);
        shape += 1.0;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = (1.0 / 3.0) / std::sqrt(d);
    for (;;) {
        double x, v;
        do {
            x = sample_gaussian(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_pos();
        if (u < 1.0 - 0.0331 * x * x * x * x) return boost * d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return boost * d * v;
    }
}

/// Coupling draw with density 2/Gamma(k/2) b^{k-1} e^{-b^2}: the square
/// root of a Gamma(k/2, 1) variate.
inline double sample_chi_scaled(RngStream& rng, ChiParam p) {
    return std::sqrt(sample_gamma(rng, 0.5 * p.k));
}

} // namespace betaspec

#endif // BETASPEC_RNG_HPP
