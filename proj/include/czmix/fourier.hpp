#pragma once

/**
 * @file fourier.hpp
 * @brief Discrete approximation of the symmetric continuous Fourier transform.
 *
 * Convention: F(f)(xi) = (2 pi)^(-n/2) * integral exp(-i x.xi) f(x) dx, and the
 * inverse with exp(+i x.xi). On a grid x_k = x0 + k h (k < N) the transform is
 * sampled on xi_m = m dxi with dxi = 2 pi / (N h) and m = -floor(N/2) ...
 * ceil(N/2) - 1, stored in ascending order:
 *
 *     F(xi_m) ~ h / sqrt(2 pi) * exp(-i x0 xi_m) * DFT[f](m mod N)
 *
 * The inverse uses dxi / sqrt(2 pi) with the conjugate phase, so
 * ift(ft(f)) = f up to rounding and the discrete Parseval identity holds
 * exactly in exact arithmetic.
 */

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include <fftw3.h>

#include "czmix/error.hpp"
#include "czmix/grid.hpp"

namespace czmix {

enum class AxisId { x, y };

/// Relative boundary level above which a field is reported as not decaying.
inline constexpr double boundary_decay_tolerance = 1e-10;

inline UniformGrid1D frequency_grid(const UniformGrid1D& space)
{
    const auto n = static_cast<double>(space.count());
    const double dxi = 2.0 * std::numbers::pi / (n * space.step());
    const double mmin = -std::floor(n / 2.0);
    return UniformGrid1D(mmin * dxi, dxi, space.count());
}

/// Spatial grid paired with a frequency axis.
inline UniformGrid1D space_grid(const Axis& freq)
{
    const auto n = static_cast<double>(freq.count());
    return UniformGrid1D(freq.space_origin, 2.0 * std::numbers::pi / (n * freq.grid.step()), freq.count());
}

namespace detail {

inline std::mutex& fftw_planner_mutex()
{
    static std::mutex m;
    return m;
}

/// In-place unnormalised DFT of `howmany` lines of length n.
inline void fft_lines(std::vector<cplx>& data, int n, int howmany, int stride, int dist, int sign)
{
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan = fftw_plan_many_dft(1, &n, howmany, buf, nullptr, stride, dist, buf, nullptr, stride, dist, sign,
                                  FFTW_ESTIMATE);
    }
    if (plan == nullptr)
        throw Error("FFTW could not create a plan");
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
}

inline std::size_t wrap_index(long long m, std::size_t n)
{
    const auto nn = static_cast<long long>(n);
    return static_cast<std::size_t>(((m % nn) + nn) % nn);
}

struct LineLayout {
    std::size_t n;
    std::size_t howmany;
    std::size_t stride;
    std::size_t dist;
};

/// Forward transform of every line described by `layout`, result in ascending frequency order.
inline void forward_lines(std::vector<cplx>& data, const UniformGrid1D& space, const LineLayout& layout)
{
    const std::size_t n = layout.n;
    const UniformGrid1D freq = frequency_grid(space);
    const long long mmin = -static_cast<long long>(n / 2);
    const double scale = space.step() / std::sqrt(2.0 * std::numbers::pi);
    std::vector<cplx> factor(n);
    for (std::size_t k = 0; k < n; ++k)
        factor[k] = scale * std::polar(1.0, -space.start() * freq.point(k));

    fft_lines(data, static_cast<int>(n), static_cast<int>(layout.howmany), static_cast<int>(layout.stride),
              static_cast<int>(layout.dist), FFTW_FORWARD);

    std::vector<cplx> line(n);
    for (std::size_t l = 0; l < layout.howmany; ++l) {
        const std::size_t base = l * layout.dist;
        for (std::size_t k = 0; k < n; ++k)
            line[k] = data[base + wrap_index(mmin + static_cast<long long>(k), n) * layout.stride] * factor[k];
        for (std::size_t k = 0; k < n; ++k)
            data[base + k * layout.stride] = line[k];
    }
}

inline void inverse_lines(std::vector<cplx>& data, const Axis& freq_axis, const LineLayout& layout)
{
    const std::size_t n = layout.n;
    const UniformGrid1D& freq = freq_axis.grid;
    const long long mmin = -static_cast<long long>(n / 2);
    const double scale = freq.step() / std::sqrt(2.0 * std::numbers::pi);
    std::vector<cplx> factor(n);
    for (std::size_t k = 0; k < n; ++k)
        factor[k] = scale * std::polar(1.0, freq_axis.space_origin * freq.point(k));

    std::vector<cplx> line(n);
    for (std::size_t l = 0; l < layout.howmany; ++l) {
        const std::size_t base = l * layout.dist;
        for (std::size_t k = 0; k < n; ++k)
            line[wrap_index(mmin + static_cast<long long>(k), n)] = data[base + k * layout.stride] * factor[k];
        for (std::size_t k = 0; k < n; ++k)
            data[base + k * layout.stride] = line[k];
    }
    fft_lines(data, static_cast<int>(n), static_cast<int>(layout.howmany), static_cast<int>(layout.stride),
              static_cast<int>(layout.dist), FFTW_BACKWARD);
}

inline bool decays_at_boundary(std::span<const cplx> line, double peak)
{
    if (peak == 0.0)
        return true;
    return std::abs(line.front()) < boundary_decay_tolerance * peak &&
           std::abs(line.back()) < boundary_decay_tolerance * peak;
}

inline void check_frequency_grid_consistency(const Axis& a)
{
    if (a.domain != Domain::frequency)
        throw ParameterError("inverse transform needs a frequency-domain axis");
    const auto n = static_cast<double>(a.count());
    const double expected_start = -std::floor(n / 2.0) * a.grid.step();
    if (std::abs(a.grid.start() - expected_start) > 1e-9 * std::max(1.0, std::abs(expected_start)))
        throw ParameterError("frequency grid is not the ascending DFT layout");
}

} // namespace detail

using Spectrum1D = Field1D;
using Spectrum2D = Field2D;

inline Spectrum1D ft1(const Field1D& f)
{
    if (f.domain() != Domain::space)
        throw ParameterError("ft1 expects a space-domain field");
    std::vector<cplx> data(f.values().begin(), f.values().end());
    detail::forward_lines(data, f.grid(), {f.size(), 1, 1, f.size()});
    Spectrum1D s(Axis(frequency_grid(f.grid()), Domain::frequency, f.grid().start()), std::move(data));
    if (!detail::decays_at_boundary(f.values(), max_abs(f.values())))
        s.add_note("input does not decay below 1e-10 of its peak at the grid boundary");
    return s;
}

inline Field1D ift1(const Spectrum1D& s)
{
    detail::check_frequency_grid_consistency(s.axis());
    std::vector<cplx> data(s.values().begin(), s.values().end());
    detail::inverse_lines(data, s.axis(), {s.size(), 1, 1, s.size()});
    return Field1D(space_grid(s.axis()), std::move(data));
}

/// Partial transform along one axis; the other axis is left untouched.
inline Field2D ft_axis(const Field2D& f, AxisId axis)
{
    const Axis& a = axis == AxisId::x ? f.x_axis() : f.y_axis();
    if (a.domain != Domain::space)
        throw ParameterError("ft_axis: axis is already in the frequency domain");
    std::vector<cplx> data(f.values().begin(), f.values().end());
    const detail::LineLayout layout = axis == AxisId::x ? detail::LineLayout{f.nx(), f.ny(), 1, f.nx()}
                                                        : detail::LineLayout{f.ny(), f.nx(), f.nx(), 1};
    detail::forward_lines(data, a.grid, layout);
    Axis freq(frequency_grid(a.grid), Domain::frequency, a.grid.start());
    Field2D out = axis == AxisId::x ? Field2D(freq, f.y_axis(), std::move(data))
                                    : Field2D(f.x_axis(), freq, std::move(data));
    const double peak = max_abs(f.values());
    bool decays = true;
    if (axis == AxisId::x) {
        for (std::size_t j = 0; j < f.ny() && decays; ++j)
            decays = detail::decays_at_boundary(f.row(j), peak);
    } else if (peak > 0.0) {
        // first and last rows are the y boundary
        const double lim = boundary_decay_tolerance * peak;
        for (std::size_t i = 0; i < f.nx() && decays; ++i)
            decays = std::abs(f.value(i, 0)) < lim && std::abs(f.value(i, f.ny() - 1)) < lim;
    }
    for (const auto& n : f.notes())
        out.add_note(n);
    if (!decays)
        out.add_note(std::string("input does not decay below 1e-10 of its peak at the ") +
                     (axis == AxisId::x ? "x" : "y") + " boundary");
    return out;
}

inline Field2D ift_axis(const Field2D& s, AxisId axis)
{
    const Axis& a = axis == AxisId::x ? s.x_axis() : s.y_axis();
    detail::check_frequency_grid_consistency(a);
    std::vector<cplx> data(s.values().begin(), s.values().end());
    const detail::LineLayout layout = axis == AxisId::x ? detail::LineLayout{s.nx(), s.ny(), 1, s.nx()}
                                                        : detail::LineLayout{s.ny(), s.nx(), s.nx(), 1};
    detail::inverse_lines(data, a, layout);
    Axis space(space_grid(a));
    return axis == AxisId::x ? Field2D(space, s.y_axis(), std::move(data))
                             : Field2D(s.x_axis(), space, std::move(data));
}

inline Spectrum2D ft2(const Field2D& f) { return ft_axis(ft_axis(f, AxisId::x), AxisId::y); }

inline Field2D ift2(const Spectrum2D& s) { return ift_axis(ift_axis(s, AxisId::y), AxisId::x); }

/// Discrete L2 norm: sqrt(step * sum |v|^2) per axis (the rectangle rule Parseval is exact for).
inline double l2_norm(const Field1D& f)
{
    std::vector<double> sq(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        sq[i] = std::norm(f[i]);
    return std::sqrt(detail::pairwise_sum(sq) * f.grid().step());
}

inline double l2_norm(const Field2D& f)
{
    std::vector<double> sq(f.size());
    for (std::size_t k = 0; k < f.size(); ++k)
        sq[k] = std::norm(f.values()[k]);
    return std::sqrt(detail::pairwise_sum(sq) * f.xgrid().step() * f.ygrid().step());
}

} // namespace czmix
