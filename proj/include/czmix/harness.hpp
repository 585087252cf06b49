#pragma once

/**
 * @file harness.hpp
 * @brief Experiment runners: counterexample growth, cross-validation of the
 *        two slice evaluation paths, interpolation checks and weak-(1,1)
 *        sweeps, plus their CSV / SVG / text writers.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "czmix/bump.hpp"
#include "czmix/corpus.hpp"
#include "czmix/cz_decomp.hpp"
#include "czmix/error.hpp"
#include "czmix/fourier.hpp"
#include "czmix/grid.hpp"
#include "czmix/multiplier.hpp"
#include "czmix/norms.hpp"
#include "czmix/slice.hpp"

namespace czmix {

/// Decimal with 12 significant digits.
inline std::string fmt12(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// family configuration

struct FamilyConfig {
    int j0 = 13;
    int nmax = 26;
    double A = 4.0;
};

/// Parses {"j0": .., "nmax": .., "A": ..}; missing keys keep their defaults.
inline FamilyConfig parse_family_config(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("family config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("family config must be an object {j0, nmax, A}");
    FamilyConfig c;
    for (const auto& [key, val] : j.items()) {
        if (key == "j0" || key == "nmax") {
            if (!val.is_number_integer())
                throw ConfigError("family config '" + key + "' must be an integer");
            (key == "j0" ? c.j0 : c.nmax) = val.get<int>();
        } else if (key == "A") {
            if (!val.is_number())
                throw ConfigError("family config 'A' must be a number");
            c.A = val.get<double>();
        } else {
            throw ConfigError("unknown family config key '" + key + "'");
        }
    }
    return c;
}

inline CounterexampleFamily make_family(const FamilyConfig& c)
{
    try {
        return CounterexampleFamily(c.j0, c.nmax, c.A);
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
}

// ---------------------------------------------------------------------------
// counterexample growth

struct CexOptions {
    std::size_t window_points = 512;   ///< trapezoid nodes on each window [2^j+1, 2^j+A-1]
    double cover_pad = 8.0;            ///< covering interval [2^i - pad, 2^i + A + pad]
    double cover_nodes_per_unit = 32.0;
    double x_range = 8.0; ///< N2 / N3 are sampled on [-x_range, x_range]
    int x_step_log2 = 8;  ///< x step 2^-x_step_log2, so x = 0 is a sample
    std::size_t y_points = 33;
};

struct CexRow {
    int n;
    double S_lower;
    double L2sq_y0;
    double N2;
    double N3;
    double margin_min;

    double ratio() const { return std::sqrt(S_lower) / N3; }
};

struct CexRun {
    int j0;
    int nmax;
    double A;
    double D;
    std::vector<CexRow> rows;
    /// window_integral[n - j0][j - j0]: integral of |sum_{i<=n} F1(R12 f_i)(., 0)|^2 over window j.
    std::vector<std::vector<double>> window_integral;
    /// window_margin[n - j0][j - j0] = margin(j, n).
    std::vector<std::vector<double>> window_margin;
};

namespace detail {

struct Cover {
    double lo;
    double hi;
};

inline std::vector<Cover> merged_covers(const CounterexampleFamily& fam, double pad)
{
    std::vector<Cover> raw;
    for (int i = fam.j0(); i <= fam.nmax(); ++i) {
        const double c = std::ldexp(1.0, i);
        raw.push_back({std::max(c - pad, 1e-3), c + fam.A() + pad});
    }
    std::sort(raw.begin(), raw.end(), [](const Cover& a, const Cover& b) { return a.lo < b.lo; });
    std::vector<Cover> out;
    for (const auto& c : raw) {
        if (!out.empty() && c.lo <= out.back().hi)
            out.back().hi = std::max(out.back().hi, c.hi);
        else
            out.push_back(c);
    }
    return out;
}

/// For each n, the trapezoid integral of |sum_{i <= n} values[i][k]|^2 over nodes spaced h.
inline std::vector<double> partial_sum_energy(const std::vector<std::vector<cplx>>& values, double h, int count_n)
{
    const std::size_t nodes = values.empty() ? 0 : values[0].size();
    std::vector<double> out(static_cast<std::size_t>(count_n), 0.0);
    std::vector<cplx> acc(nodes, cplx(0.0));
    std::vector<double> sq(nodes);
    for (int m = 0; m < count_n; ++m) {
        for (std::size_t k = 0; k < nodes; ++k) {
            acc[k] += values[static_cast<std::size_t>(m)][k];
            sq[k] = std::norm(acc[k]);
        }
        if (nodes >= 2) {
            sq.front() *= 0.5;
            sq.back() *= 0.5;
            out[static_cast<std::size_t>(m)] = detail::pairwise_sum(sq) * h;
        }
    }
    return out;
}

} // namespace detail

/**
 * Rows n = j0 .. nmax of the counterexample table.
 *
 * The slice values of the separate f_i are summed as complex numbers before
 * the modulus is taken. L2sq_y0 integrates over the covering intervals on
 * the positive axis and doubles, since |F1(R12 g_n)(xi1, 0)| is even in xi1.
 */
inline CexRun run_counterexample(const CounterexampleFamily& fam, const CexOptions& opt = {})
{
    if (opt.window_points < 3 || opt.y_points < 3 || opt.cover_nodes_per_unit <= 0.0)
        throw ParameterError("counterexample quadrature is too coarse");
    const SemiAnalyticParams params(fam);
    const int j0 = fam.j0();
    const int nmax = fam.nmax();
    const int count = nmax - j0 + 1;
    for (int j = j0; j <= nmax; ++j) {
        const double m = margin(params, j, nmax);
        if (!(m > 0.0))
            throw ConfigError("margin(" + std::to_string(j) + ", " + std::to_string(nmax) + ") = " + fmt12(m) +
                              " is not positive; choose a larger j0");
    }

    CexRun run{j0, nmax, fam.A(), fam.D(), {}, {}, {}};

    // per-window energies for every n
    std::vector<std::vector<double>> win(static_cast<std::size_t>(count));
    for (int j = j0; j <= nmax; ++j) {
        const Interval w = dominance_window(j, fam.A());
        const double h = (w.hi - w.lo) / static_cast<double>(opt.window_points - 1);
        std::vector<std::vector<cplx>> vals(static_cast<std::size_t>(count), std::vector<cplx>(opt.window_points));
        for (int i = j0; i <= nmax; ++i)
            for (std::size_t k = 0; k < opt.window_points; ++k)
                vals[static_cast<std::size_t>(i - j0)][k] =
                    semi_value(params, i, w.lo + static_cast<double>(k) * h);
        win[static_cast<std::size_t>(j - j0)] = detail::partial_sum_energy(vals, h, count);
    }

    // full y = 0 energy over the covering intervals
    std::vector<std::vector<double>> cover_energy;
    for (const auto& c : detail::merged_covers(fam, opt.cover_pad)) {
        const auto nodes = static_cast<std::size_t>(std::ceil((c.hi - c.lo) * opt.cover_nodes_per_unit)) + 1;
        const double h = (c.hi - c.lo) / static_cast<double>(nodes - 1);
        std::vector<std::vector<cplx>> vals(static_cast<std::size_t>(count), std::vector<cplx>(nodes));
        for (int i = j0; i <= nmax; ++i)
            for (std::size_t k = 0; k < nodes; ++k)
                vals[static_cast<std::size_t>(i - j0)][k] = semi_value(params, i, c.lo + static_cast<double>(k) * h);
        cover_energy.push_back(detail::partial_sum_energy(vals, h, count));
    }

    // N2 and N3
    const double xs = std::ldexp(1.0, -opt.x_step_log2);
    const auto nx = static_cast<std::size_t>(std::llround(2.0 * opt.x_range / xs)) + 1;
    const UniformGrid1D xg(-opt.x_range, xs, nx);
    std::vector<cplx> v(nx);
    for (std::size_t k = 0; k < nx; ++k)
        v[k] = fam.inv_ft_chi(xg.point(k));
    std::vector<double> n2_of_j(static_cast<std::size_t>(count));
    std::vector<std::vector<double>> sup_y_of_j(static_cast<std::size_t>(count), std::vector<double>(nx));
    for (int j = j0; j <= nmax; ++j) {
        const SmoothBump c1 = chi1(j);
        const double a = c1.support().lo;
        const double b = c1.support().hi;
        double s2 = 0.0; // sup_y chi1(y) e^{y^2}
        double s3 = 0.0; // sup_y chi1(y)
        for (std::size_t k = 0; k < opt.y_points; ++k) {
            const double y = a + (b - a) * static_cast<double>(k) / static_cast<double>(opt.y_points - 1);
            s2 = std::max(s2, c1(y) * std::exp(y * y));
            s3 = std::max(s3, c1(y));
        }
        double sup_x = 0.0;
        auto& row = sup_y_of_j[static_cast<std::size_t>(j - j0)];
        for (std::size_t k = 0; k < nx; ++k) {
            const double x = xg.point(k);
            const double amp = std::abs(CounterexampleFamily::inv_ft_chi3_from(j, x, v[k]));
            // e^{x^2} chi2(x) = 1, so the x-weight cancels exactly
            sup_x = std::max(sup_x, amp);
            row[k] = s3 * chi2(x) * amp;
        }
        n2_of_j[static_cast<std::size_t>(j - j0)] = s2 * sup_x;
    }

    std::vector<double> envelope(nx, 0.0);
    std::vector<double> sq(nx);
    double n2 = 0.0;
    for (int n = j0; n <= nmax; ++n) {
        const auto m = static_cast<std::size_t>(n - j0);
        n2 = std::max(n2, n2_of_j[m]);
        for (std::size_t k = 0; k < nx; ++k) {
            envelope[k] = std::max(envelope[k], sup_y_of_j[m][k]);
            sq[k] = envelope[k] * envelope[k];
        }
        const double n3 = std::sqrt(trapezoid(xg, sq));

        std::vector<double> wrow;
        std::vector<double> mrow;
        for (int j = j0; j <= n; ++j) {
            wrow.push_back(win[static_cast<std::size_t>(j - j0)][m]);
            mrow.push_back(margin(params, j, n));
        }
        std::vector<double> cov;
        for (const auto& ce : cover_energy)
            cov.push_back(ce[m]);
        const double s_lower = detail::pairwise_sum(wrow);
        const double l2 = 2.0 * detail::pairwise_sum(cov);
        run.rows.push_back({n, s_lower, l2, n2, n3, *std::min_element(mrow.begin(), mrow.end())});
        run.window_integral.push_back(std::move(wrow));
        run.window_margin.push_back(std::move(mrow));
    }
    return run;
}

inline std::string cex_csv(const CexRun& run)
{
    std::string out = "n,S_lower,L2sq_y0,N2,N3,margin_min,ratio\n";
    for (const auto& r : run.rows) {
        out += std::to_string(r.n);
        for (double v : {r.S_lower, r.L2sq_y0, r.N2, r.N3, r.margin_min, r.ratio()})
            out += "," + fmt12(v);
        out += "\n";
    }
    return out;
}

/// Polyline of sqrt(S_lower)/N3 against n.
inline std::string cex_svg(const CexRun& run)
{
    const double W = 640, H = 400, ml = 70, mr = 20, mt = 20, mb = 50;
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
      << W << " " << H << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!run.rows.empty()) {
        double nlo = run.rows.front().n, nhi = run.rows.back().n;
        double rlo = std::numeric_limits<double>::infinity(), rhi = -rlo;
        for (const auto& r : run.rows) {
            rlo = std::min(rlo, r.ratio());
            rhi = std::max(rhi, r.ratio());
        }
        if (nhi == nlo)
            nhi = nlo + 1;
        if (rhi == rlo)
            rhi = rlo + 1;
        auto px = [&](double n) { return ml + (n - nlo) / (nhi - nlo) * (W - ml - mr); };
        auto py = [&](double r) { return H - mb - (r - rlo) / (rhi - rlo) * (H - mt - mb); };
        s << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\"" << H - mb
          << "\" stroke=\"black\"/>\n";
        s << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
          << "\" stroke=\"black\"/>\n";
        s << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
        for (std::size_t k = 0; k < run.rows.size(); ++k)
            s << (k ? " " : "") << fmt12(px(run.rows[k].n)) << "," << fmt12(py(run.rows[k].ratio()));
        s << "\"/>\n";
        s << "<text x=\"" << ml << "\" y=\"" << H - mb + 20 << "\" font-size=\"12\">" << nlo << "</text>\n";
        s << "<text x=\"" << W - mr - 20 << "\" y=\"" << H - mb + 20 << "\" font-size=\"12\">" << nhi << "</text>\n";
        s << "<text x=\"4\" y=\"" << H - mb << "\" font-size=\"12\">" << fmt12(rlo) << "</text>\n";
        s << "<text x=\"4\" y=\"" << mt + 10 << "\" font-size=\"12\">" << fmt12(rhi) << "</text>\n";
    }
    s << "<text x=\"" << W / 2 << "\" y=\"" << H - 10 << "\" font-size=\"14\" text-anchor=\"middle\">n</text>\n";
    s << "<text x=\"16\" y=\"" << H / 2 << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << H / 2 << ")\">sqrt(S_lower) / N3</text>\n";
    s << "</svg>\n";
    return s.str();
}

struct CexChecks {
    bool margins_positive = true;
    bool per_window_bound = true;  ///< window integral >= (A-2) margin(j,n)^2 for every j <= n
    bool increments = true;        ///< S_lower(n) - S_lower(n-1) >= 0.9 (A-2) margin_min(n)^2 > 0
    bool growth_slope = true;      ///< least-squares slope >= 0.9 (A-2) min_j margin(j,nmax)^2
    bool lower_le_full = true;     ///< S_lower <= L2sq_y0 (1 + 1e-6)
    bool n2_bounded = true;
    bool n3_bounded = true;
    bool n2_constant = true;
    bool ratio_increasing = true;
    double slope = 0.0;
    std::vector<std::string> failures;

    bool all() const
    {
        return margins_positive && per_window_bound && increments && growth_slope && lower_le_full && n2_bounded &&
               n3_bounded && n2_constant && ratio_increasing;
    }
};

inline CexChecks check_counterexample(const CexRun& run)
{
    CexChecks c;
    const double am2 = run.A - 2.0;
    auto fail = [&](bool& flag, std::string msg) {
        flag = false;
        c.failures.push_back(std::move(msg));
    };
    for (std::size_t m = 0; m < run.rows.size(); ++m) {
        const auto& r = run.rows[m];
        for (std::size_t k = 0; k < run.window_integral[m].size(); ++k) {
            const double mg = run.window_margin[m][k];
            if (!(mg > 0.0))
                fail(c.margins_positive, "margin not positive at n=" + std::to_string(r.n));
            if (!(run.window_integral[m][k] >= am2 * mg * mg))
                fail(c.per_window_bound, "window " + std::to_string(run.j0 + static_cast<int>(k)) +
                                             " below (A-2) margin^2 at n=" + std::to_string(r.n));
        }
        if (!(r.S_lower <= r.L2sq_y0 * (1.0 + 1e-6)))
            fail(c.lower_le_full, "S_lower exceeds L2sq_y0 at n=" + std::to_string(r.n));
        if (!(r.N2 <= run.D * std::numbers::e * (1.0 + 1e-9)))
            fail(c.n2_bounded, "N2 above D e at n=" + std::to_string(r.n));
        if (!(r.N3 <= run.D * std::pow(std::numbers::pi / 2.0, 0.25) * (1.0 + 1e-9)))
            fail(c.n3_bounded, "N3 above D (pi/2)^(1/4) at n=" + std::to_string(r.n));
        if (m > 0) {
            const auto& q = run.rows[m - 1];
            const double inc = r.S_lower - q.S_lower;
            if (!(inc > 0.0 && inc >= 0.9 * am2 * r.margin_min * r.margin_min))
                fail(c.increments, "S_lower increment too small at n=" + std::to_string(r.n));
            if (std::abs(r.N2 - q.N2) > 1e-9 * std::abs(q.N2))
                fail(c.n2_constant, "N2 changed at n=" + std::to_string(r.n));
            if (!(r.ratio() > q.ratio()))
                fail(c.ratio_increasing, "ratio not increasing at n=" + std::to_string(r.n));
        }
    }
    if (run.rows.size() >= 2) {
        double mn = 0.0, ms = 0.0;
        for (const auto& r : run.rows) {
            mn += r.n;
            ms += r.S_lower;
        }
        mn /= static_cast<double>(run.rows.size());
        ms /= static_cast<double>(run.rows.size());
        double sxy = 0.0, sxx = 0.0;
        for (const auto& r : run.rows) {
            sxy += (r.n - mn) * (r.S_lower - ms);
            sxx += (r.n - mn) * (r.n - mn);
        }
        c.slope = sxy / sxx;
        double mmin = std::numeric_limits<double>::infinity();
        for (double mg : run.window_margin.back())
            mmin = std::min(mmin, mg);
        if (!(c.slope >= 0.9 * am2 * mmin * mmin))
            fail(c.growth_slope, "growth slope " + fmt12(c.slope) + " below the per-window bound");
    }
    return c;
}

// ---------------------------------------------------------------------------
// path validation

struct PathOptions {
    std::size_t nx = 4096;
    std::size_t ny = 1024;
    double x_length = 16.0;
    double y_step_fraction = 1.0 / 64.0; ///< y step as a fraction of 2^-j
    double tol = 0.02;
    double A = 4.0;
};

struct PathRow {
    int j;
    double rel_l2;
    std::size_t samples;
    bool pass;
};

/**
 * For each j, samples f_j on an x grid of length x_length and a y grid of
 * step 2^-j * y_step_fraction placed symmetrically about y = 0 (y = 0 itself
 * falls midway between the two central rows), applies R12 spectrally, takes
 * the mean of the two central rows as the y = 0 slice, transforms it in x and
 * compares its modulus with semi_H at the frequency samples inside the
 * window [2^j + 1, 2^j + A - 1].
 */
inline std::vector<PathRow> run_path_validation(int jmin, int jmax, const PathOptions& opt = {})
{
    std::vector<PathRow> out;
    if (jmin > jmax)
        return out;
    if (jmin < 2)
        throw ParameterError("path validation needs j >= 2");
    if (opt.nx < 16 || opt.ny < 16 || opt.ny % 2 != 0)
        throw ParameterError("path validation needs nx, ny >= 16 and ny even");
    if (!(opt.tol > 0.0))
        throw ParameterError("tolerance must be positive");
    const UniformGrid1D xg = centered_grid(opt.x_length, opt.nx);
    const double nyquist = std::numbers::pi / xg.step();
    const double dxi = 2.0 * std::numbers::pi / opt.x_length;
    const CounterexampleFamily fam(std::max(2, jmin), std::max(jmax, jmin + 1), opt.A);
    const SemiAnalyticParams params(fam);
    for (int j = jmin; j <= jmax; ++j) {
        const Interval w = dominance_window(j, opt.A);
        if (w.hi + params.conv_half_width > 0.5 * nyquist)
            throw ParameterError("x grid too coarse for j = " + std::to_string(j) + ": window reaches " +
                                 fmt12(w.hi) + ", half the Nyquist frequency is " + fmt12(0.5 * nyquist));
        if (w.hi - w.lo < 2.0 * dxi)
            throw ParameterError("x domain too short to resolve the window at j = " + std::to_string(j));
        const double hy = std::ldexp(opt.y_step_fraction, -j);
        const double half_span = 0.5 * static_cast<double>(opt.ny) * hy;
        if (half_span < 4.0 * std::ldexp(1.0, -j))
            throw ParameterError("y grid too short for j = " + std::to_string(j));
        const UniformGrid1D yg((-static_cast<double>(opt.ny / 2) + 0.5) * hy, hy, opt.ny);

        const Field2D f = fam.sample_f_j(j, xg, yg);
        const Field2D rf = apply_multiplier(f, riesz12());
        std::vector<cplx> mid(opt.nx);
        const auto r0 = rf.row(opt.ny / 2 - 1);
        const auto r1 = rf.row(opt.ny / 2);
        for (std::size_t i = 0; i < opt.nx; ++i)
            mid[i] = 0.5 * (r0[i] + r1[i]);
        const Spectrum1D s = ft1(Field1D(xg, std::move(mid)));

        std::vector<double> diff, ref;
        for (std::size_t k = 0; k < s.size(); ++k) {
            const double xi = s.grid().point(k);
            if (xi < w.lo || xi > w.hi)
                continue;
            const double a = std::abs(s[k]);
            const double b = semi_H(params, j, xi);
            diff.push_back((a - b) * (a - b));
            ref.push_back(b * b);
        }
        const double rel = std::sqrt(detail::pairwise_sum(diff) / detail::pairwise_sum(ref));
        out.push_back({j, rel, diff.size(), rel <= opt.tol});
    }
    return out;
}

// ---------------------------------------------------------------------------
// interpolation machinery

struct InterpOptions {
    double p0 = 1.0;
    double p = 2.0;
    double p1 = 3.0;
    std::size_t corpus = 20;
    std::uint64_t seed = 7;
    std::size_t alphas_per_field = 12;
    double alpha_floor = 1e-3; ///< smallest alpha as a fraction of max |f|
    CorpusOptions corpus_options{};
};

struct InterpFieldRow {
    std::size_t index;
    double min_chain_slack;
    double min_split0_slack;
    double min_split1_slack;
    bool partition_exact;
    double layer_cake_rel; ///< worst relative gap between layer-cake and direct ||Tf(., y)||_p^p
    double A0;             ///< sup_y ||Tf(., y)||_{p0, weak} / || ||f||_{L^inf_y} ||_{p0}
    double A1;
    double ratio; ///< || ||Tf||_{L^p_x} ||_{L^inf_y} / || ||f||_{L^inf_y} ||_{L^p_x}
};

struct InterpReport {
    InterpOptions options;
    std::vector<InterpFieldRow> rows;
    double A0 = 0.0;
    double A1 = 0.0;
    double constant_pth = 0.0; ///< interpolation_constant(p0, p1, p, A0, A1)
    double constant = 0.0;     ///< its p-th root
    double max_ratio = 0.0;

    double min_chain_slack() const
    {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& r : rows)
            m = std::min(m, r.min_chain_slack);
        return m;
    }
    double min_split_slack() const
    {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& r : rows)
            m = std::min({m, r.min_split0_slack, r.min_split1_slack});
        return m;
    }
    double max_layer_cake_rel() const
    {
        double m = 0.0;
        for (const auto& r : rows)
            m = std::max(m, r.layer_cake_rel);
        return m;
    }
    bool partition_exact() const
    {
        return std::all_of(rows.begin(), rows.end(), [](const InterpFieldRow& r) { return r.partition_exact; });
    }
    bool ok(double layer_cake_tol = 1e-6) const
    {
        return min_chain_slack() >= 1.0 && min_split_slack() >= 1.0 && partition_exact() &&
               max_layer_cake_rel() <= layer_cake_tol && max_ratio <= constant;
    }
};

namespace detail {

inline double row_lp_pow(const Field2D& f, std::size_t j, double p)
{
    std::vector<double> v(f.nx());
    for (std::size_t i = 0; i < f.nx(); ++i)
        v[i] = std::pow(std::abs(f.value(i, j)), p);
    return trapezoid(f.xgrid(), v);
}

inline double row_distribution(const Field2D& f, std::size_t j, double alpha)
{
    return distribution(f.x_slice(j), alpha);
}

inline double slack(double lhs, double rhs)
{
    if (lhs <= 0.0)
        return std::numeric_limits<double>::infinity();
    return rhs / lhs;
}

} // namespace detail

inline InterpReport run_interpolation_check(const InterpOptions& opt = {})
{
    if (!(opt.p0 >= 1.0 && opt.p0 < opt.p && opt.p < opt.p1))
        throw ParameterError("interpolation check needs 1 <= p0 < p < p1");
    if (opt.alphas_per_field < 2)
        throw ParameterError("need at least two alpha values per field");
    InterpReport rep;
    rep.options = opt;
    const auto corpus = random_corpus(opt.corpus, opt.seed, opt.corpus_options);
    const MultiplierSymbol T = riesz12();
    for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
        const Field2D& f = corpus[idx];
        const Field1D h = majorant(f);
        const double hp = lp_norm(h, opt.p);
        const double hp_pow = std::pow(hp, opt.p);
        const Field2D Tf = apply_multiplier(f, T);
        InterpFieldRow row{idx, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                           std::numeric_limits<double>::infinity(), true, 0.0, 0.0, 0.0, 0.0};

        // layer cake, weak constants and the final ratio
        double sup_lp = 0.0, sup_w0 = 0.0, sup_w1 = 0.0;
        for (std::size_t j = 0; j < Tf.ny(); ++j) {
            const Field1D line = Tf.x_slice(j);
            const double direct = detail::row_lp_pow(Tf, j, opt.p);
            if (direct > 0.0)
                row.layer_cake_rel = std::max(row.layer_cake_rel, std::abs(layer_cake(line, opt.p) - direct) / direct);
            sup_lp = std::max(sup_lp, std::pow(direct, 1.0 / opt.p));
            sup_w0 = std::max(sup_w0, weak_norm(line, opt.p0));
            sup_w1 = std::max(sup_w1, weak_norm(line, opt.p1));
        }
        row.A0 = sup_w0 / lp_norm(h, opt.p0);
        row.A1 = sup_w1 / lp_norm(h, opt.p1);
        row.ratio = sup_lp / hp;

        const double fmax = max_abs(f.values());
        for (std::size_t k = 0; k < opt.alphas_per_field; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(opt.alphas_per_field - 1);
            const double alpha = fmax * std::pow(opt.alpha_floor, 1.0 - t) * (1.0 - 1e-3 * t);
            const TruncationSplit sp = truncation_split(f, alpha);
            for (std::size_t q = 0; q < f.size(); ++q)
                if (sp.f0.values()[q] + sp.f1.values()[q] != f.values()[q])
                    row.partition_exact = false;
            const Field2D T0 = apply_multiplier(sp.f0, T);
            const Field2D T1 = apply_multiplier(sp.f1, T);
            for (std::size_t j = 0; j < f.ny(); ++j) {
                row.min_split0_slack =
                    std::min(row.min_split0_slack, detail::slack(detail::row_lp_pow(sp.f0, j, opt.p0),
                                                                 std::pow(alpha, opt.p0 - opt.p) * hp_pow));
                row.min_split1_slack =
                    std::min(row.min_split1_slack, detail::slack(detail::row_lp_pow(sp.f1, j, opt.p1),
                                                                 std::pow(alpha, opt.p1 - opt.p) * hp_pow));
                const double lhs = detail::row_distribution(Tf, j, alpha);
                const double rhs =
                    detail::row_distribution(T0, j, alpha / 2.0) + detail::row_distribution(T1, j, alpha / 2.0);
                row.min_chain_slack = std::min(row.min_chain_slack, detail::slack(lhs, rhs));
            }
        }
        rep.A0 = std::max(rep.A0, row.A0);
        rep.A1 = std::max(rep.A1, row.A1);
        rep.max_ratio = std::max(rep.max_ratio, row.ratio);
        rep.rows.push_back(row);
    }
    if (!rep.rows.empty()) {
        rep.constant_pth = interpolation_constant(opt.p0, opt.p1, opt.p, rep.A0, rep.A1);
        rep.constant = std::pow(rep.constant_pth, 1.0 / opt.p);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// weak (1,1) sweep

/// "lo:hi:log:n" or "lo:hi:lin:n".
inline std::vector<double> parse_alpha_spec(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':'))
        parts.push_back(item);
    if (parts.size() != 4 || (parts[2] != "log" && parts[2] != "lin"))
        throw ConfigError("alpha spec must look like lo:hi:log:n or lo:hi:lin:n, got '" + text + "'");
    double lo = 0.0, hi = 0.0;
    long long n = 0;
    try {
        std::size_t used = 0;
        lo = std::stod(parts[0], &used);
        if (used != parts[0].size())
            throw std::invalid_argument("lo");
        hi = std::stod(parts[1], &used);
        if (used != parts[1].size())
            throw std::invalid_argument("hi");
        n = std::stoll(parts[3], &used);
        if (used != parts[3].size())
            throw std::invalid_argument("n");
    } catch (const std::exception&) {
        throw ConfigError("could not parse alpha spec '" + text + "'");
    }
    if (!(lo > 0.0 && hi >= lo && n >= 1))
        throw ConfigError("alpha spec needs 0 < lo <= hi and n >= 1");
    std::vector<double> out;
    for (long long k = 0; k < n; ++k) {
        const double t = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
        out.push_back(parts[2] == "log" ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
    }
    return out;
}

struct Weak11Sweep {
    std::vector<double> alphas;
    std::vector<Weak11Report> fields;
    double D_emp = 0.0;
};

inline Weak11Sweep run_weak11(std::size_t corpus_size, std::uint64_t seed, const std::vector<double>& alphas,
                              const CorpusOptions& copt = {})
{
    Weak11Sweep sw{alphas, {}, 0.0};
    for (const auto& f : random_corpus(corpus_size, seed, copt)) {
        sw.fields.push_back(weak11_witness(f, riesz12(), alphas));
        sw.D_emp = std::max(sw.D_emp, sw.fields.back().D_emp);
    }
    return sw;
}

inline std::string weak11_table(const Weak11Sweep& sw)
{
    std::string out = "field,rhs_norm,D_emp\n";
    for (std::size_t k = 0; k < sw.fields.size(); ++k)
        out += std::to_string(k) + "," + fmt12(sw.fields[k].rhs_norm) + "," + fmt12(sw.fields[k].D_emp) + "\n";
    return out;
}

} // namespace czmix
