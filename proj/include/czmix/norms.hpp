#pragma once

/**
 * @file norms.hpp
 * @brief Mixed Lebesgue norms, distribution functions, weak norms and the
 *        truncation split used by the interpolation argument.
 *
 * Every measure is the trapezoid measure of the sample grid: sample i
 * carries weight w_i (step, halved at the two ends), both inside integrals
 * and in level sets, so |{|f| > alpha}| is the sum of w_i over samples above
 * alpha. The infinite exponent is the maximum over samples.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "czmix/error.hpp"
#include "czmix/fourier.hpp"
#include "czmix/grid.hpp"

namespace czmix {

inline constexpr double inf_exponent = std::numeric_limits<double>::infinity();

struct MixedNormSpec {
    AxisId inner_axis = AxisId::x;
    double inner_exponent = 2.0;
    double outer_exponent = inf_exponent;
};

namespace detail {

inline void check_exponent(double p)
{
    if (!(p >= 1.0))
        throw ParameterError("exponent must lie in [1, inf], got " + fmt_double(p));
}

inline double lp_of_magnitudes(const UniformGrid1D& g, const std::vector<double>& mags, double p)
{
    if (std::isinf(p))
        return mags.empty() ? 0.0 : *std::max_element(mags.begin(), mags.end());
    std::vector<double> pw(mags.size());
    for (std::size_t i = 0; i < mags.size(); ++i)
        pw[i] = std::pow(mags[i], p);
    return std::pow(trapezoid(g, pw), 1.0 / p);
}

inline std::vector<double> magnitudes(std::span<const cplx> v)
{
    std::vector<double> m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        m[i] = std::abs(v[i]);
    return m;
}

} // namespace detail

inline double lp_norm(const Field1D& f, double p)
{
    detail::check_exponent(p);
    return detail::lp_of_magnitudes(f.grid(), detail::magnitudes(f.values()), p);
}

/// || || f ||_{L^p along inner axis} ||_{L^q along the other axis}.
inline double mixed_norm(const Field2D& f, const MixedNormSpec& spec)
{
    detail::check_exponent(spec.inner_exponent);
    detail::check_exponent(spec.outer_exponent);
    const bool inner_x = spec.inner_axis == AxisId::x;
    const std::size_t n_inner = inner_x ? f.nx() : f.ny();
    const std::size_t n_outer = inner_x ? f.ny() : f.nx();
    std::vector<double> inner_vals(n_outer);
    std::vector<double> line(n_inner);
    for (std::size_t o = 0; o < n_outer; ++o) {
        for (std::size_t k = 0; k < n_inner; ++k)
            line[k] = std::abs(inner_x ? f.value(k, o) : f.value(o, k));
        inner_vals[o] = detail::lp_of_magnitudes(inner_x ? f.xgrid() : f.ygrid(), line, spec.inner_exponent);
    }
    return detail::lp_of_magnitudes(inner_x ? f.ygrid() : f.xgrid(), inner_vals, spec.outer_exponent);
}

/// d_f(alpha) = |{x : |f(x)| > alpha}|.
inline double distribution(const Field1D& f, double alpha)
{
    if (!(alpha >= 0.0))
        throw ParameterError("distribution needs alpha >= 0");
    const auto w = trapezoid_weights(f.grid());
    std::vector<double> hit;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (std::abs(f[i]) > alpha)
            hit.push_back(w[i]);
    return detail::pairwise_sum(hit);
}

namespace detail {

/// Sample magnitudes in ascending order with their weights, and tail[k] = sum of weights from k on.
struct SortedLevels {
    std::vector<double> mags;
    std::vector<double> tail;
};

inline SortedLevels sorted_levels(const Field1D& f)
{
    const auto w = trapezoid_weights(f.grid());
    std::vector<std::pair<double, double>> mw(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        mw[i] = {std::abs(f[i]), w[i]};
    std::sort(mw.begin(), mw.end());
    SortedLevels s{std::vector<double>(mw.size()), std::vector<double>(mw.size() + 1, 0.0)};
    for (std::size_t k = mw.size(); k-- > 0;) {
        s.mags[k] = mw[k].first;
        s.tail[k] = s.tail[k + 1] + mw[k].second;
    }
    return s;
}

} // namespace detail

/**
 * sup over alpha of alpha * d_f(alpha)^(1/p).
 *
 * d_f is a step function that drops at each sample magnitude, so the sup is
 * approached from just below a magnitude m, where alpha * d^(1/p) tends to
 * m times the measure of the samples with magnitude >= m.
 */
inline double weak_norm(const Field1D& f, double p)
{
    if (!(p >= 1.0))
        throw ParameterError("weak_norm needs p >= 1");
    const auto lv = detail::sorted_levels(f);
    double best = 0.0;
    for (std::size_t k = 0; k < lv.mags.size(); ++k) {
        if (lv.mags[k] == 0.0 || (k > 0 && lv.mags[k - 1] == lv.mags[k]))
            continue;
        best = std::max(best, lv.mags[k] * std::pow(lv.tail[k], 1.0 / p));
    }
    return best;
}

/**
 * p * integral_0^max|f| alpha^(p-1) d_f(alpha) d alpha.
 *
 * The alpha grid is the set of sample magnitudes: d_f is constant between
 * consecutive magnitudes, so each piece integrates exactly to
 * d * (b^p - a^p).
 */
inline double layer_cake(const Field1D& f, double p)
{
    if (!(p >= 1.0))
        throw ParameterError("layer_cake needs p >= 1");
    const auto lv = detail::sorted_levels(f);
    std::vector<double> pieces;
    pieces.reserve(lv.mags.size());
    double prev = 0.0;
    for (std::size_t k = 0; k < lv.mags.size(); ++k) {
        if (lv.mags[k] == prev)
            continue;
        // on [prev, mags[k]) every sample from index k upward exceeds alpha
        pieces.push_back(lv.tail[k] * (std::pow(lv.mags[k], p) - std::pow(prev, p)));
        prev = lv.mags[k];
    }
    return detail::pairwise_sum(pieces);
}

struct TruncationSplit {
    double alpha;
    Field2D f0; ///< samples with |f| > alpha, zero elsewhere
    Field2D f1; ///< samples with |f| <= alpha, zero elsewhere
};

inline TruncationSplit truncation_split(const Field2D& f, double alpha)
{
    if (!(alpha > 0.0))
        throw ParameterError("truncation_split needs alpha > 0");
    std::vector<cplx> v0(f.size(), cplx(0.0));
    std::vector<cplx> v1(f.size(), cplx(0.0));
    for (std::size_t k = 0; k < f.size(); ++k) {
        const cplx z = f.values()[k];
        (std::abs(z) > alpha ? v0 : v1)[k] = z;
    }
    return {alpha, Field2D(f.x_axis(), f.y_axis(), std::move(v0)), Field2D(f.x_axis(), f.y_axis(), std::move(v1))};
}

/// p ((2 A0)^p0 / (p - p0) + (2 A1)^p1 / (p1 - p)); the p-th power of the interpolation constant.
inline double interpolation_constant(double p0, double p1, double p, double A0, double A1)
{
    if (!(p0 >= 1.0 && p0 < p && p < p1))
        throw ParameterError("interpolation_constant needs 1 <= p0 < p < p1");
    if (p - p0 < 1e-9 || p1 - p < 1e-9)
        throw ParameterError("p is too close to an endpoint exponent; the constant diverges");
    if (!(A0 > 0.0 && A1 > 0.0))
        throw ParameterError("A0 and A1 must be positive");
    return p * (std::pow(2.0 * A0, p0) / (p - p0) + std::pow(2.0 * A1, p1) / (p1 - p));
}

} // namespace czmix
