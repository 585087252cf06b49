#pragma once

// Seeded random test fields. Everything is driven by std::mt19937_64 and
// explicit arithmetic on its raw output, so a seed gives the same fields on
// every standard library.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "czmix/error.hpp"
#include "czmix/fourier.hpp"
#include "czmix/grid.hpp"

namespace czmix {

struct CorpusOptions {
    double length = 32.0;    ///< side of the square domain [-L/2, L/2)^2
    std::size_t count = 256; ///< samples per axis
    int packets = 3;         ///< wave packets per field
};

namespace detail {

/// Uniform double in [lo, hi) from the top 53 bits of one draw.
inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

inline void band_limit(std::vector<cplx>& spec, std::size_t n, long long cutoff)
{
    const long long mmin = -static_cast<long long>(n / 2);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const long long mi = mmin + static_cast<long long>(i);
            const long long mj = mmin + static_cast<long long>(j);
            if (mi * mi + mj * mj > cutoff * cutoff)
                spec[j * n + i] = cplx(0.0);
        }
}

} // namespace detail

/**
 * One random real field: a sum of Gaussian wave packets with widths in
 * [1.25, 2], carrier frequencies up to 1 and centers in [-2, 2]^2, projected
 * onto the frequency disc of radius count/8 (in frequency-index units).
 */
inline Field2D random_band_limited_field(std::mt19937_64& rng, const CorpusOptions& opt = {})
{
    if (opt.count < 16 || opt.length <= 0.0 || opt.packets < 1)
        throw ParameterError("corpus needs count >= 16, length > 0 and at least one packet");
    const UniformGrid1D g = centered_grid(opt.length, opt.count);
    struct Packet {
        double amp, cx, cy, sigma, wx, wy, phase;
    };
    std::vector<Packet> ps;
    for (int k = 0; k < opt.packets; ++k) {
        Packet p{};
        p.amp = detail::uniform(rng, 0.5, 2.0) * (detail::uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
        p.cx = detail::uniform(rng, -2.0, 2.0);
        p.cy = detail::uniform(rng, -2.0, 2.0);
        p.sigma = detail::uniform(rng, 1.25, 2.0);
        p.wx = detail::uniform(rng, -1.0, 1.0);
        p.wy = detail::uniform(rng, -1.0, 1.0);
        p.phase = detail::uniform(rng, 0.0, 2.0 * std::numbers::pi);
        ps.push_back(p);
    }
    Field2D raw = field_from_fn(g, g, [&](double x, double y) {
        double s = 0.0;
        for (const auto& p : ps) {
            const double dx = x - p.cx;
            const double dy = y - p.cy;
            s += p.amp * std::exp(-(dx * dx + dy * dy) / (2.0 * p.sigma * p.sigma)) *
                 std::cos(p.wx * dx + p.wy * dy + p.phase);
        }
        return s;
    });
    Spectrum2D s = ft2(raw);
    std::vector<cplx> v(s.values().begin(), s.values().end());
    detail::band_limit(v, opt.count, static_cast<long long>(opt.count / 8));
    Field2D back = ift2(Spectrum2D(s.x_axis(), s.y_axis(), std::move(v)));
    std::vector<cplx> re(back.size());
    for (std::size_t k = 0; k < re.size(); ++k)
        re[k] = cplx(back.values()[k].real(), 0.0);
    return Field2D(back.x_axis(), back.y_axis(), std::move(re));
}

inline std::vector<Field2D> random_corpus(std::size_t size, std::uint64_t seed, const CorpusOptions& opt = {})
{
    std::mt19937_64 rng(seed);
    std::vector<Field2D> out;
    out.reserve(size);
    for (std::size_t k = 0; k < size; ++k)
        out.push_back(random_band_limited_field(rng, opt));
    return out;
}

/**
 * Random nonnegative 1-D field on [0, length): a few Gaussian bumps of mixed
 * widths plus, with probability 1/2, a handful of isolated spikes.
 */
inline Field1D random_nonnegative_field(std::mt19937_64& rng, std::size_t count = 256, double length = 16.0)
{
    if (count < 2)
        throw ParameterError("need at least two samples");
    const UniformGrid1D g(0.0, length / static_cast<double>(count), count);
    const int bumps = 1 + static_cast<int>(rng() % 4);
    std::vector<double> v(count, 0.0);
    for (int b = 0; b < bumps; ++b) {
        const double c = detail::uniform(rng, 0.2 * length, 0.8 * length);
        const double w = detail::uniform(rng, 0.05, 1.5);
        const double a = detail::uniform(rng, 0.1, 5.0);
        for (std::size_t i = 0; i < count; ++i) {
            const double t = (g.point(i) - c) / w;
            v[i] += a * std::exp(-t * t);
        }
    }
    if (rng() % 2 == 0) {
        const int spikes = 1 + static_cast<int>(rng() % 5);
        for (int s = 0; s < spikes; ++s)
            v[static_cast<std::size_t>(rng() % count)] += detail::uniform(rng, 1.0, 20.0);
    }
    std::vector<cplx> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = cplx(v[i], 0.0);
    return Field1D(g, std::move(out));
}

} // namespace czmix
