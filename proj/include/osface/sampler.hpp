#ifndef OSFACE_SAMPLER_HPP
#define OSFACE_SAMPLER_HPP

// Seeded parameter sampling.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Doubles are formed from the top 53 bits of each draw, so a seed
// reproduces the same samples with any conforming standard library.
// Independent streams are derived from (seed, stream name, index) with FNV-1a
// and the splitmix64 finalizer.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "state_sum.hpp"
#include "theta.hpp"

namespace osface {

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
    return splitmix64(splitmix64(seed ^ fnv1a(stream)) + index);
}

class sampler {
public:
    /// Half-widths of the sampling box: Re in [-0.4, 0.4], Im in [-0.2, 0.2] * Im tau.
    static constexpr double real_half_width = 0.4;
    static constexpr double imag_half_width = 0.2;
    /// Rejection attempts before giving up on a point.
    static constexpr int max_attempts = 10000;

    explicit sampler(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    cplx in_box(const context& ctx) {
        const double re = uniform(-real_half_width, real_half_width);
        const double w = imag_half_width * ctx.tau().imag();
        return {re, uniform(-w, w)};
    }

    /// 2n spectral parameters and a height, every denominator of the R-matrix and
    /// of both closed forms at least ctx.denominator_guard in modulus.
    parameter_point point(std::size_t n, const context& ctx) {
        for (int attempt = 0; attempt < max_attempts; ++attempt) {
            std::vector<cplx> u(2 * n);
            for (cplx& x : u) x = in_box(ctx);
            const cplx h = in_box(ctx);
            if (admissible(u, h, ctx)) return {std::move(u), h};
        }
        throw degenerate_sample("sampler: no admissible point found");
    }

    /// Spectral parameters alone, guarded on the pairwise denominators.
    std::vector<cplx> spectral(std::size_t count, const context& ctx) {
        for (int attempt = 0; attempt < max_attempts; ++attempt) {
            std::vector<cplx> u(count);
            for (cplx& x : u) x = in_box(ctx);
            if (pairwise_admissible(u, ctx)) return u;
        }
        throw degenerate_sample("sampler: no admissible spectral parameters found");
    }

    static bool pairwise_admissible(const std::vector<cplx>& u, const context& ctx) {
        auto ok = [&](cplx z) { return std::abs(theta(z, ctx)) >= ctx.denominator_guard; };
        for (std::size_t i = 0; i < u.size(); ++i) {
            for (std::size_t j = i + 1; j < u.size(); ++j) {
                const cplx d = u[j] - u[i], s = u[j] + u[i];
                if (!ok(d) || !ok(s) || !ok(s + 0.5) || !ok(d + 0.5) || !ok(-d + 0.5))
                    return false;
            }
        }
        return true;
    }

    static bool admissible(const std::vector<cplx>& u, cplx h, const context& ctx) {
        auto ok = [&](cplx z) { return std::abs(theta(z, ctx)) >= ctx.denominator_guard; };
        return ok(h) && ok(h + 0.5) && pairwise_admissible(u, ctx);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace osface

#endif // OSFACE_SAMPLER_HPP
