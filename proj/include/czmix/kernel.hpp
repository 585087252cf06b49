#pragma once

/**
 * @file kernel.hpp
 * @brief Numerical witnesses for the three Calderon-Zygmund kernel conditions in 2-D:
 *
 *  1. size:         |K(x)| <= B |x|^-2
 *  2. regularity:   integral over |x| > 2|y| of |K(x) - K(x - y)| dx <= B
 *  3. cancellation: integral over r < |x| < s of K(x) dx = 0
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "czmix/error.hpp"
#include "czmix/grid.hpp"

namespace czmix {

struct CZKernelSpec {
    std::function<double(double, double)> K;
    double B;
};

/// K(x, y) = x y / (2 pi (x^2 + y^2)^2), the kernel of R12.
inline CZKernelSpec r12_kernel()
{
    return {[](double x, double y) {
                const double r2 = x * x + y * y;
                return x * y / (2.0 * std::numbers::pi * r2 * r2);
            },
            0.5};
}

struct KernelQuadrature {
    std::size_t angles = 4096;         ///< periodic trapezoid nodes in theta
    std::size_t radii_per_annulus = 257;
    std::size_t hormander_angles = 1024;
    std::size_t hormander_nodes_per_efold = 96;
    double hormander_start_factor = 8.0; ///< first truncation radius, in units of |y|
    double hormander_tolerance = 0.01;   ///< relative change on doubling that ends the refinement
    int hormander_max_doublings = 24;
};

struct AnnulusReport {
    double r;
    double s;
    double size_witness; ///< max over samples of |K| |x|^2
    double integral;     ///< quadrature value of the annulus integral of K
};

struct HormanderReport {
    double y1;
    double y2;
    double radius;        ///< final truncation radius R
    double value;         ///< estimate on 2|y| < |x| < 2R
    double previous;      ///< estimate on 2|y| < |x| < R
    double relative_change;
    bool converged;
};

struct KernelReport {
    std::vector<AnnulusReport> annuli;
    std::vector<HormanderReport> hormander;
    double size_witness = 0.0; ///< max of |K| |x|^2 over every sampled annulus
    double B = 0.0;

    double max_abs_cancellation() const
    {
        double m = 0.0;
        for (const auto& a : annuli)
            m = std::max(m, std::abs(a.integral));
        return m;
    }

    /// Size condition in the form |K| |x|^2 <= B / (2 pi) (1 + tol).
    bool size_ok(double tol = 1e-9) const { return size_witness <= B / (2.0 * std::numbers::pi) * (1.0 + tol); }
};

namespace detail {

inline double polar_annulus_integral(const CZKernelSpec& spec, double r, double s, const KernelQuadrature& q)
{
    const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(q.angles);
    return trapezoid(r, s, q.radii_per_annulus, [&](double rho) {
        std::vector<double> ring(q.angles);
        for (std::size_t k = 0; k < q.angles; ++k) {
            const double th = static_cast<double>(k) * dtheta;
            ring[k] = spec.K(rho * std::cos(th), rho * std::sin(th));
        }
        return pairwise_sum(ring) * dtheta * rho;
    });
}

inline double hormander_integral(const CZKernelSpec& spec, double y1, double y2, double R, const KernelQuadrature& q)
{
    const double ny = std::hypot(y1, y2);
    const double t0 = std::log(2.0 * ny);
    const double t1 = std::log(R);
    const auto nodes = std::max<std::size_t>(
        16, static_cast<std::size_t>(std::ceil((t1 - t0) * static_cast<double>(q.hormander_nodes_per_efold))) + 1);
    const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(q.hormander_angles);
    return trapezoid(t0, t1, nodes, [&](double t) {
        const double rho = std::exp(t);
        std::vector<double> ring(q.hormander_angles);
        for (std::size_t k = 0; k < q.hormander_angles; ++k) {
            const double th = (static_cast<double>(k) + 0.5) * dtheta;
            const double x1 = rho * std::cos(th);
            const double x2 = rho * std::sin(th);
            ring[k] = std::abs(spec.K(x1, x2) - spec.K(x1 - y1, x2 - y2));
        }
        return pairwise_sum(ring) * dtheta * rho * rho;
    });
}

} // namespace detail

inline std::vector<std::pair<double, double>> default_hormander_points()
{
    return {{1.0, 0.0}, {0.0, 1.0}, {std::sqrt(0.5), std::sqrt(0.5)}, {0.3, -0.7}, {2.5, 1.0}};
}

/**
 * Evaluates the kernel conditions on the annuli (radii[k], radii[k+1]) and at
 * the Hormander shift points. The Hormander truncation radius starts at
 * `hormander_start_factor * |y|` and doubles until the estimate changes by
 * less than `hormander_tolerance`.
 */
inline KernelReport verify_kernel_conditions(const CZKernelSpec& spec, const std::vector<double>& radii,
                                             const std::vector<std::pair<double, double>>& shifts =
                                                 default_hormander_points(),
                                             const KernelQuadrature& q = {})
{
    if (radii.size() < 2)
        throw ParameterError("need at least two radii");
    for (std::size_t k = 0; k < radii.size(); ++k) {
        if (!(radii[k] > 0.0))
            throw ParameterError("radii must be positive");
        if (k > 0 && !(radii[k - 1] < radii[k]))
            throw ParameterError("annulus needs r < s; radii must be strictly increasing");
    }
    KernelReport rep;
    rep.B = spec.B;
    const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(q.angles);
    for (std::size_t k = 0; k + 1 < radii.size(); ++k) {
        const double r = radii[k];
        const double s = radii[k + 1];
        double witness = 0.0;
        for (std::size_t ir = 0; ir < 16; ++ir) {
            const double rho = r + (s - r) * static_cast<double>(ir) / 15.0;
            for (std::size_t a = 0; a < q.angles; ++a) {
                const double th = static_cast<double>(a) * dtheta;
                witness = std::max(witness, std::abs(spec.K(rho * std::cos(th), rho * std::sin(th))) * rho * rho);
            }
        }
        rep.size_witness = std::max(rep.size_witness, witness);
        rep.annuli.push_back({r, s, witness, detail::polar_annulus_integral(spec, r, s, q)});
    }
    for (const auto& [y1, y2] : shifts) {
        const double ny = std::hypot(y1, y2);
        if (!(ny > 0.0))
            throw ParameterError("Hormander shift must be nonzero");
        double R = q.hormander_start_factor * ny;
        double prev = detail::hormander_integral(spec, y1, y2, R, q);
        HormanderReport h{y1, y2, R, prev, prev, 0.0, false};
        for (int it = 0; it < q.hormander_max_doublings; ++it) {
            const double next = detail::hormander_integral(spec, y1, y2, 2.0 * R, q);
            const double rel = std::abs(next - prev) / std::abs(next);
            h = {y1, y2, R, next, prev, rel, rel < q.hormander_tolerance};
            if (h.converged)
                break;
            R *= 2.0;
            prev = next;
        }
        rep.hormander.push_back(h);
    }
    return rep;
}

} // namespace czmix
