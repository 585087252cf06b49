#pragma once

/**
 * @file bump.hpp
 * @brief Smooth bumps and the counterexample family f_j, g_n.
 *
 * Family members (all real):
 *
 *     chi1_j(y)  bump on [2^-j, 2^-j+1], equal to 1 on
 *                [2^-j + 2^-j-10, 2^-j+1 - 2^-j-10]
 *     chi2(x)    exp(-x^2)
 *     chi(xi)    bump on [0, A], equal to 1 on [1/4, A - 1/4]
 *     chi3_j(xi) chi(xi - 2^j) + chi(-xi - 2^j)            (even in xi)
 *     f_j(x, y)  chi1_j(y) * chi2(x) * Finv(chi3_j)(x)
 *     g_n        sum of f_j for j0 <= j <= n
 *
 * With v = Finv(chi), Finv(chi3_j)(x) = 2 Re(exp(i 2^j x) v(x)).
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "czmix/error.hpp"
#include "czmix/grid.hpp"

namespace czmix {

struct Interval {
    double lo;
    double hi;
};

/// Canonical C-infinity ramp r(t) = phi(t) / (phi(t) + phi(1 - t)), phi(t) = exp(-1/t) for t > 0.
inline double smooth_ramp(double t)
{
    if (t <= 0.0)
        return 0.0;
    if (t >= 1.0)
        return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

/// Bump with value 0 outside [a, b], 1 on [c, d] and smooth monotone ramps between.
class SmoothBump {
public:
    SmoothBump(Interval support, Interval plateau) : support_(support), plateau_(plateau)
    {
        if (!(support.lo < plateau.lo && plateau.lo < plateau.hi && plateau.hi < support.hi))
            throw ParameterError("bump needs a < c < d < b for support [a, b] and plateau [c, d]");
    }

    double operator()(double x) const noexcept
    {
        if (x <= support_.lo || x >= support_.hi)
            return 0.0;
        if (x < plateau_.lo)
            return smooth_ramp((x - support_.lo) / (plateau_.lo - support_.lo));
        if (x > plateau_.hi)
            return smooth_ramp((support_.hi - x) / (support_.hi - plateau_.hi));
        return 1.0;
    }

    const Interval& support() const noexcept { return support_; }
    const Interval& plateau() const noexcept { return plateau_; }

private:
    Interval support_;
    Interval plateau_;
};

inline SmoothBump make_bump(Interval support, Interval plateau) { return SmoothBump(support, plateau); }

/// Bump in y selecting the j-th dyadic band [2^-j, 2^-j+1].
inline SmoothBump chi1(int j)
{
    if (j < 1)
        throw ParameterError("chi1 needs j >= 1");
    const double lo = std::ldexp(1.0, -j);
    const double hi = std::ldexp(1.0, -j + 1);
    const double margin = std::ldexp(1.0, -j - 10);
    return SmoothBump({lo, hi}, {lo + margin, hi - margin});
}

inline double chi2(double x) { return std::exp(-x * x); }

/// The frequency bump chi on [0, A] with plateau [1/4, A - 1/4].
inline SmoothBump make_chi(double A)
{
    if (!(A >= 3.0 && A <= 100.0))
        throw ParameterError("A must lie in [3, 100]");
    return SmoothBump({0.0, A}, {0.25, A - 0.25});
}

/// chi3_j(xi) = chi(xi - 2^j) + chi(-xi - 2^j); even in xi.
inline double chi3(int j, const SmoothBump& chi, double xi)
{
    if (j < 1)
        throw ParameterError("chi3 needs j >= 1");
    const double shift = std::ldexp(1.0, j);
    return chi(xi - shift) + chi(-xi - shift);
}

/// Supports of the two chi3_j pieces, negative piece first.
inline std::vector<Interval> chi3_support(int j, const SmoothBump& chi)
{
    const double shift = std::ldexp(1.0, j);
    return {{-shift - chi.support().hi, -shift - chi.support().lo}, {shift + chi.support().lo, shift + chi.support().hi}};
}

namespace detail {

/// (2 pi)^(-1/2) * integral exp(sign * i x xi) chi(xi) d xi, trapezoid over the support of chi.
inline cplx bump_transform(const SmoothBump& chi, double x, double sign, std::size_t nodes)
{
    const double a = chi.support().lo;
    const double b = chi.support().hi;
    const cplx val = trapezoid(a, b, nodes, [&](double xi) { return chi(xi) * std::polar(1.0, sign * x * xi); });
    return val / std::sqrt(2.0 * std::numbers::pi);
}

} // namespace detail

/**
 * The counterexample family with parameters (j0, nmax, A).
 *
 * The sup constant D = sup|Finv(chi)| + sup|F(chi)| is computed once at
 * construction over a fine sample grid and cached.
 */
class CounterexampleFamily {
public:
    /// Quadrature nodes per unit length of the chi support.
    static constexpr std::size_t default_nodes_per_unit = 1024;

    CounterexampleFamily(int j0, int nmax, double A, std::size_t nodes_per_unit = default_nodes_per_unit,
                         double sup_step = 1.0 / 64.0, double sup_range = 16.0)
        : j0_(j0), nmax_(nmax), A_(A), chi_(make_chi(A)), nodes_per_unit_(nodes_per_unit)
    {
        if (j0 < 2)
            throw ParameterError("j0 must be >= 2");
        if (nmax <= j0)
            throw ParameterError("nmax must exceed j0");
        if (nmax > 60)
            throw ParameterError("nmax above 60 leaves double precision");
        if (nodes_per_unit < 16)
            throw ParameterError("too few quadrature nodes for the chi transform");
        D_ = compute_D(sup_step, sup_range);
    }

    int j0() const noexcept { return j0_; }
    int nmax() const noexcept { return nmax_; }
    double A() const noexcept { return A_; }
    const SmoothBump& chi() const noexcept { return chi_; }
    double D() const noexcept { return D_; }

    std::size_t chi_nodes() const noexcept
    {
        return static_cast<std::size_t>(std::ceil(A_ * static_cast<double>(nodes_per_unit_))) + 1;
    }

    /// v(x) = Finv(chi)(x) by trapezoid quadrature.
    cplx inv_ft_chi(double x) const { return detail::bump_transform(chi_, x, +1.0, chi_nodes()); }

    /// F(chi)(xi).
    cplx ft_chi(double xi) const { return detail::bump_transform(chi_, xi, -1.0, chi_nodes()); }

    /// Finv(chi3_j)(x) = 2 Re(exp(i 2^j x) v(x)).
    double inv_ft_chi3(int j, double x) const
    {
        if (j < 1)
            throw ParameterError("inv_ft_chi3 needs j >= 1");
        return inv_ft_chi3_from(j, x, inv_ft_chi(x));
    }

    /// Same as inv_ft_chi3 with v(x) supplied by the caller.
    static double inv_ft_chi3_from(int j, double x, cplx v)
    {
        return 2.0 * (std::polar(1.0, std::ldexp(x, j)) * v).real();
    }

    void check_index(int j) const
    {
        if (j < j0_ || j > nmax_)
            throw ParameterError("index j = " + std::to_string(j) + " outside [" + std::to_string(j0_) + ", " +
                                 std::to_string(nmax_) + "]");
    }

    /// Pointwise f_j(x, y).
    double f_j(int j, double x, double y) const
    {
        check_index(j);
        const double c1 = chi1(j)(y);
        if (c1 == 0.0)
            return 0.0;
        return c1 * chi2(x) * inv_ft_chi3(j, x);
    }

    /// Pointwise g_n(x, y). The y-supports of the f_j are disjoint, so at most one term is nonzero.
    double g_n(int n, double x, double y) const
    {
        check_g_index(n);
        for (int j = j0_; j <= n; ++j) {
            const auto c = chi1(j);
            if (y > c.support().lo && y < c.support().hi)
                return f_j(j, x, y);
        }
        return 0.0;
    }

    void check_g_index(int n) const
    {
        if (n < j0_ || n > nmax_)
            throw ParameterError("g_n needs j0 <= n <= nmax, got n = " + std::to_string(n));
    }

    Field2D sample_f_j(int j, const UniformGrid1D& xg, const UniformGrid1D& yg) const
    {
        check_index(j);
        return sample_sum(j, j, xg, yg);
    }

    Field2D sample_g_n(int n, const UniformGrid1D& xg, const UniformGrid1D& yg) const
    {
        check_g_index(n);
        return sample_sum(j0_, n, xg, yg);
    }

private:
    double compute_D(double step, double range) const
    {
        const auto count = static_cast<std::size_t>(std::llround(2.0 * range / step)) + 1;
        double sup_inv = 0.0;
        double sup_fwd = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            const double x = -range + static_cast<double>(k) * step;
            sup_inv = std::max(sup_inv, std::abs(inv_ft_chi(x)));
            sup_fwd = std::max(sup_fwd, std::abs(ft_chi(x)));
        }
        return sup_inv + sup_fwd;
    }

    Field2D sample_sum(int jlo, int jhi, const UniformGrid1D& xg, const UniformGrid1D& yg) const
    {
        std::vector<cplx> v_at_x(xg.count());
        for (std::size_t i = 0; i < xg.count(); ++i)
            v_at_x[i] = inv_ft_chi(xg.point(i));
        std::vector<cplx> values(xg.count() * yg.count(), cplx(0.0));
        for (int j = jlo; j <= jhi; ++j) {
            const auto c1 = chi1(j);
            std::vector<double> profile(xg.count());
            for (std::size_t i = 0; i < xg.count(); ++i) {
                const double x = xg.point(i);
                profile[i] = chi2(x) * inv_ft_chi3_from(j, x, v_at_x[i]);
            }
            for (std::size_t r = 0; r < yg.count(); ++r) {
                const double cy = c1(yg.point(r));
                if (cy == 0.0)
                    continue;
                for (std::size_t i = 0; i < xg.count(); ++i)
                    values[r * xg.count() + i] += cy * profile[i];
            }
        }
        return Field2D(xg, yg, std::move(values));
    }

    int j0_;
    int nmax_;
    double A_;
    SmoothBump chi_;
    std::size_t nodes_per_unit_;
    double D_ = 0.0;
};

} // namespace czmix
