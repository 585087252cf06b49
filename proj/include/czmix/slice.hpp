#pragma once

/**
 * @file slice.hpp
 * @brief Semi-analytic y = 0 slice of the x-transform of R12 f_j, and the
 *        constants and bounds of the lower-bound argument.
 *
 * For f(x, y) = chi1_j(y) a(x) the y-integral of the multiplier
 * xi1 xi2 / |xi|^2 against exp(-i z xi2) is -i pi sgn(z) xi1 exp(-|xi1| |z|),
 * which gives
 *
 *     F1(R12 f_j)(xi1, 0) = -i sgn(xi1) C sqrt(pi/2) (F chi2 * chi3_j)(xi1)
 *                           |xi1| integral chi1_j(z) exp(-|xi1| z) dz
 *
 * with C = 1 / (2 pi) under the symmetric transform convention. The
 * sqrt(pi/2) exp(-|t|) factor is the modulus of Finv(eta / (1 + eta^2))(t).
 */

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "czmix/bump.hpp"
#include "czmix/error.hpp"
#include "czmix/grid.hpp"

namespace czmix {

/// Overall constant of the slice formula.
inline constexpr double slice_constant = 1.0 / (2.0 * std::numbers::pi);

/// E = sqrt(pi)/2 (exp(-2 - 2^-9) - exp(-4 + 2^-9)) * integral_{-1/4}^{1/4} exp(-xi^2/4) d xi.
inline double E_const(std::size_t nodes = 4097)
{
    const double bracket = std::exp(-2.0 - std::ldexp(1.0, -9)) - std::exp(-4.0 + std::ldexp(1.0, -9));
    const double gauss = trapezoid(-0.25, 0.25, nodes, [](double xi) { return std::exp(-xi * xi / 4.0); });
    return std::sqrt(std::numbers::pi) / 2.0 * bracket * gauss;
}

struct SemiAnalyticParams {
    const CounterexampleFamily* family;
    double C_cal = slice_constant;
    double E = E_const();
    double conv_half_width = 8.0;     ///< window half-width of the Gaussian convolution
    double conv_nodes_per_unit = 512; ///< trapezoid density for the convolution
    std::size_t ramp_nodes = 257;     ///< trapezoid nodes on each ramp of chi1_j

    explicit SemiAnalyticParams(const CounterexampleFamily& fam) : family(&fam) {}
};

/// F(chi2)(xi) = exp(-xi^2 / 4) / sqrt(2).
inline double ft_chi2(double xi) { return std::exp(-xi * xi / 4.0) / std::numbers::sqrt2; }

/// (F chi2 * chi3_j)(xi1) over the window [xi1 - w, xi1 + w].
inline double chi3_gauss_convolution(const SemiAnalyticParams& p, int j, double xi1)
{
    // Both pieces are integrated in the local variable t of chi(t), t in [0, A]:
    // chi(eta - 2^j) at eta = 2^j + t and chi(-eta - 2^j) at eta = -2^j - t.
    const SmoothBump& chi = p.family->chi();
    const double shift = std::ldexp(1.0, j);
    const double w = p.conv_half_width;
    double total = 0.0;
    auto piece = [&](double lo, double hi, auto&& offset_of) {
        lo = std::max(lo, chi.support().lo);
        hi = std::min(hi, chi.support().hi);
        if (!(hi > lo))
            return 0.0;
        const auto nodes = static_cast<std::size_t>(std::ceil((hi - lo) * p.conv_nodes_per_unit)) + 1;
        return trapezoid(lo, hi, std::max<std::size_t>(nodes, 3),
                         [&](double t) { return ft_chi2(offset_of(t)) * chi(t); });
    };
    const double u = xi1 - shift; // xi1 - eta = u - t on the positive piece
    total += piece(u - w, u + w, [u](double t) { return u - t; });
    const double v = xi1 + shift; // xi1 - eta = v + t on the negative piece
    total += piece(-v - w, -v + w, [v](double t) { return v + t; });
    return total;
}

/// integral chi1_j(z) exp(-s z) dz for s > 0: exact on the plateau, trapezoid on the two ramps.
inline double chi1_laplace(const SemiAnalyticParams& p, int j, double s)
{
    const SmoothBump c1 = chi1(j);
    const double a = c1.support().lo;
    const double c = c1.plateau().lo;
    const double d = c1.plateau().hi;
    const double b = c1.support().hi;
    // exp(-s c) - exp(-s d) without cancellation
    const double plateau = -std::exp(-s * c) * std::expm1(-s * (d - c)) / s;
    auto g = [&](double z) { return c1(z) * std::exp(-s * z); };
    return plateau + trapezoid(a, c, p.ramp_nodes, g) + trapezoid(d, b, p.ramp_nodes, g);
}

/// Signed value of F1(R12 f_j)(xi1, 0).
inline cplx semi_value(const SemiAnalyticParams& p, int j, double xi1)
{
    if (xi1 == 0.0)
        throw ParameterError("semi_H needs xi1 != 0");
    const double conv = chi3_gauss_convolution(p, j, xi1);
    if (conv == 0.0)
        return cplx(0.0);
    const double s = std::abs(xi1);
    const double mag = p.C_cal * std::sqrt(std::numbers::pi / 2.0) * conv * s * chi1_laplace(p, j, s);
    return cplx(0.0, xi1 > 0.0 ? -mag : mag);
}

/// |F1(R12 f_j)(xi1, 0)|.
inline double semi_H(const SemiAnalyticParams& p, int j, double xi1) { return std::abs(semi_value(p, j, xi1)); }

/// The closed-form upper bound on |F1(R12 f_i)(xi1, 0)| over the j-window.
inline double cross_bound(const SemiAnalyticParams& p, int i, int j)
{
    if (i == j)
        throw ParameterError("cross_bound needs i != j");
    const auto& fam = *p.family;
    for (int k : {i, j})
        if (k < fam.j0() || k > fam.nmax())
            throw ParameterError("cross_bound index outside [j0, nmax]");
    return p.C_cal * 4.0 * std::sqrt(std::numbers::pi) * std::ldexp(1.0, -std::max(i, j));
}

/// Guaranteed lower bound for |sum_i F1(R12 f_i)(xi1, 0)| on [2^j + 1, 2^j + A - 1].
inline double margin(const SemiAnalyticParams& p, int j, int n)
{
    const auto& fam = *p.family;
    if (j < fam.j0() || j > n || n > fam.nmax())
        throw ParameterError("margin needs j0 <= j <= n <= nmax");
    double m = p.C_cal * p.E;
    for (int i = fam.j0(); i <= n; ++i)
        if (i != j)
            m -= cross_bound(p, i, j);
    return m;
}

/// Window [2^j + 1, 2^j + A - 1] on which the j-th term dominates.
inline Interval dominance_window(int j, double A)
{
    const double c = std::ldexp(1.0, j);
    return {c + 1.0, c + A - 1.0};
}

} // namespace czmix
