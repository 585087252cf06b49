#pragma once

// The nine acceptance criteria as library functions, shared by the CLI's
// selftest and the acceptance test binary.

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "czmix/cz_decomp.hpp"
#include "czmix/corpus.hpp"
#include "czmix/fourier.hpp"
#include "czmix/harness.hpp"
#include "czmix/kernel.hpp"
#include "czmix/multiplier.hpp"
#include "czmix/norms.hpp"
#include "czmix/slice.hpp"

namespace czmix::acceptance {

struct Result {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double limit_seconds = 0.0;
};

namespace detail {

inline void add(std::string& d, const std::string& s)
{
    if (!d.empty())
        d += "; ";
    d += s;
}

} // namespace detail

inline Result gaussian_calibration()
{
    Result r{1, "Gaussian transform calibration", true, "", 0.0, 5.0};
    const UniformGrid1D g = centered_grid(16.0, 4096);
    const Field1D f = field_from_fn(g, [](double x) { return std::exp(-x * x); });
    const Spectrum1D s = ft1(f);
    double err = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double xi = s.grid().point(k);
        err = std::max(err, std::abs(s[k] - cplx(std::exp(-xi * xi / 4.0) / std::numbers::sqrt2)));
    }
    const double pl = std::abs(l2_norm(s) - l2_norm(f)) / l2_norm(f);
    r.pass = err <= 1e-8 && pl <= 1e-10;
    r.detail = "max abs error " + fmt12(err) + ", Plancherel relative gap " + fmt12(pl);
    return r;
}

inline Result mixed_derivative_identity()
{
    Result r{2, "d_x d_y u = R12 (Laplacian u)", true, "", 0.0, 30.0};
    const UniformGrid1D g = centered_grid(32.0, 1024);
    const Field2D lap = field_from_fn(g, g, [](double x, double y) {
        const double r2 = x * x + y * y;
        return (r2 - 2.0) * std::exp(-r2 / 2.0);
    });
    const Field2D dxy = field_from_fn(g, g, [](double x, double y) { return x * y * std::exp(-(x * x + y * y) / 2.0); });
    const Field2D rl = apply_multiplier(lap, riesz12());
    std::vector<cplx> diff(dxy.size());
    for (std::size_t k = 0; k < diff.size(); ++k)
        diff[k] = dxy.values()[k] - rl.values()[k];
    const double rel = l2_norm(Field2D(dxy.x_axis(), dxy.y_axis(), std::move(diff))) / l2_norm(dxy);
    r.pass = rel <= 1e-6;
    r.detail = "relative L2 residual " + fmt12(rel);
    return r;
}

inline Result path_equivalence()
{
    Result r{3, "path equivalence of the y = 0 slice, j = 3..7", true, "", 0.0, 120.0};
    for (const auto& row : run_path_validation(3, 7)) {
        r.pass = r.pass && row.pass;
        detail::add(r.detail, "j=" + std::to_string(row.j) + " rel " + fmt12(row.rel_l2));
    }
    return r;
}

inline Result counterexample_growth()
{
    Result r{4, "scaled counterexample growth (j0=13, nmax=26, A=4)", true, "", 0.0, 120.0};
    const double E = E_const();
    const double cross = 4.0 * std::sqrt(std::numbers::pi) * 13.0 * std::ldexp(1.0, -13);
    // oracle: integral_{-1/4}^{1/4} exp(-xi^2/4) = 2 sqrt(pi) erf(1/8)
    const double E_oracle = std::sqrt(std::numbers::pi) / 2.0 *
                            (std::exp(-2.0 - std::ldexp(1.0, -9)) - std::exp(-4.0 + std::ldexp(1.0, -9))) * 2.0 *
                            std::sqrt(std::numbers::pi) * std::erf(0.125);
    const bool constants_ok =
        std::abs(E - 0.0515) <= 0.01 * 0.0515 && std::abs(E - E_oracle) <= 1e-9 && std::abs(cross - 0.0113) <= 1e-4;
    detail::add(r.detail, "E " + fmt12(E) + ", 4 sqrt(pi) 13 2^-13 " + fmt12(cross));
    const CounterexampleFamily fam(13, 26, 4.0);
    const CexRun run = run_counterexample(fam);
    const CexChecks c = check_counterexample(run);
    r.pass = constants_ok && c.all();
    detail::add(r.detail, "slope " + fmt12(c.slope) + ", final ratio " + fmt12(run.rows.back().ratio()));
    for (const auto& f : c.failures)
        detail::add(r.detail, f);
    return r;
}

inline Result cz_suite()
{
    Result r{5, "CZ decomposition suite", true, "", 0.0, 60.0};
    std::mt19937_64 rng(20240611);
    std::size_t decompositions = 0, intervals = 0;
    double worst_mean = 0.0;
    for (int t = 0; t < 100; ++t) {
        const Field1D h0 = random_nonnegative_field(rng);
        const std::size_t ny = 6;
        std::vector<cplx> v(h0.size() * ny);
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t i = 0; i < h0.size(); ++i)
                v[j * h0.size() + i] = h0[i] * czmix::detail::uniform(rng, -1.0, 1.0);
        const Field2D f(h0.axis(), Axis(UniformGrid1D(0.0, 0.5, ny)), std::move(v));
        const Field1D h = majorant(f);
        const double hmax = max_abs(h.values());
        std::vector<double> hv(h.size());
        for (std::size_t i = 0; i < h.size(); ++i)
            hv[i] = h[i].real();
        const double l1_cells = czmix::detail::pairwise_sum(hv) * h.grid().step();
        for (int a = 0; a < 10; ++a) {
            const double alpha = hmax * std::pow(10.0, -3.0 + 3.2 * a / 9.0);
            const CZDecomposition dec = cz_decompose(h, alpha);
            ++decompositions;
            intervals += dec.intervals.size();
            for (double avg : dec.averages)
                if (!(avg > alpha && avg <= 2.0 * alpha))
                    r.pass = false;
            if (!(dec.total_length() <= l1_cells / alpha * (1.0 + 1e-9)))
                r.pass = false;
            const auto owner = dec.owner_of_samples();
            for (std::size_t i = 0; i < h.size(); ++i)
                if (owner[i] < 0 && h[i].real() > alpha * (1.0 + 1e-9))
                    r.pass = false;
            const GoodBadLift lf = lift(f, dec);
            for (std::size_t k = 0; k < f.size(); ++k) {
                const cplx sum = lf.f1.values()[k] + lf.f2.values()[k];
                if (std::abs(sum - f.values()[k]) > 4.0 * 2.3e-16 * std::max(std::abs(f.values()[k]), std::abs(lf.f1.values()[k])))
                    r.pass = false;
            }
            for (const auto& piece : lf.pieces)
                for (std::size_t j = 0; j < ny; ++j) {
                    const double denom = piece.abs_integral(j, h.grid().step());
                    if (denom > 0.0) {
                        const double rel = std::abs(piece.integral(j, h.grid().step())) / denom;
                        worst_mean = std::max(worst_mean, rel);
                    }
                }
        }
    }
    if (worst_mean > 1e-10)
        r.pass = false;
    r.detail = std::to_string(decompositions) + " decompositions, " + std::to_string(intervals) +
               " intervals, worst relative piece mean " + fmt12(worst_mean);
    return r;
}

inline Result layer_cake_suite()
{
    Result r{6, "layer-cake and weak-norm suite", true, "", 0.0, 60.0};
    CorpusOptions opt;
    opt.count = 128;
    opt.length = 24.0;
    const auto corpus = random_corpus(50, 11, opt);
    double worst = 0.0;
    bool chebyshev = true;
    for (const auto& f : corpus) {
        const Field1D line = f.x_slice(f.ny() / 2);
        for (double p : {1.5, 2.0, 3.0}) {
            const double direct = std::pow(lp_norm(line, p), p);
            worst = std::max(worst, std::abs(layer_cake(line, p) - direct) / direct);
        }
        for (double p : {1.0, 2.0, 3.0})
            if (weak_norm(line, p) > lp_norm(line, p) * (1.0 + 1e-12))
                chebyshev = false;
    }
    const UniformGrid1D g = centered_grid(4.0, 4096);
    const Field1D tent = field_from_fn(g, [](double x) { return std::max(0.0, 1.0 - std::abs(x)); });
    const double wt = weak_norm(tent, 1.0);
    const bool tent_ok = std::abs(wt - 0.5) <= g.step();
    r.pass = worst <= 1e-6 && chebyshev && tent_ok;
    r.detail = "worst layer-cake gap " + fmt12(worst) + ", Chebyshev " + (chebyshev ? "ok" : "violated") +
               ", tent weak-L1 " + fmt12(wt);
    return r;
}

inline Result interpolation_suite()
{
    Result r{7, "interpolation machinery", true, "", 0.0, 120.0};
    const double c = interpolation_constant(1.0, 3.0, 2.0, 1.0, 1.0);
    const InterpReport rep = run_interpolation_check();
    r.pass = c == 20.0 && rep.ok() && rep.rows.size() == 20;
    r.detail = "constant(1,3,2,1,1) = " + fmt12(c) + ", chain slack " + fmt12(rep.min_chain_slack()) +
               ", split slack " + fmt12(rep.min_split_slack()) + ", ratio " + fmt12(rep.max_ratio) + " <= " +
               fmt12(rep.constant);
    return r;
}

inline Result kernel_conditions()
{
    Result r{8, "kernel conditions for R12", true, "", 0.0, 60.0};
    const KernelReport k = verify_kernel_conditions(r12_kernel(), {0.25, 0.5, 1.0, 2.0, 4.0, 8.0});
    const double target = 1.0 / (4.0 * std::numbers::pi);
    bool horm = true;
    double worst_change = 0.0;
    for (const auto& h : k.hormander) {
        horm = horm && h.converged && std::isfinite(h.value);
        worst_change = std::max(worst_change, h.relative_change);
    }
    r.pass = k.annuli.size() == 5 && k.max_abs_cancellation() <= 1e-10 && std::abs(k.size_witness - target) <= 1e-6 &&
             horm;
    r.detail = "cancellation " + fmt12(k.max_abs_cancellation()) + ", size sup " + fmt12(k.size_witness) +
               ", Hormander change " + fmt12(worst_change);
    return r;
}

inline Result determinism()
{
    Result r{9, "determinism of cex run", true, "", 0.0, 240.0};
    const CounterexampleFamily fam(13, 26, 4.0);
    const std::string a = cex_csv(run_counterexample(fam));
    const std::string b = cex_csv(run_counterexample(CounterexampleFamily(13, 26, 4.0)));
    r.pass = a == b;
    r.detail = a == b ? "identical CSV (" + std::to_string(a.size()) + " bytes)" : "CSV differs between runs";
    return r;
}

inline std::vector<std::function<Result()>> all_criteria()
{
    return {gaussian_calibration, mixed_derivative_identity, path_equivalence, counterexample_growth, cz_suite,
            layer_cake_suite,     interpolation_suite,        kernel_conditions, determinism};
}

/// Runs one criterion with timing; an exception counts as a failure.
inline Result run_timed(const std::function<Result()>& fn, int id)
{
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
        r = fn();
    } catch (const std::exception& e) {
        r.id = id;
        r.name = "criterion " + std::to_string(id);
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.limit_seconds > 0.0 && r.seconds > r.limit_seconds) {
        r.pass = false;
        detail::add(r.detail, "runtime " + fmt12(r.seconds) + " s over the limit");
    }
    return r;
}

inline std::string format_line(const Result& r)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.2f s)", r.seconds);
    return std::string(r.pass ? "PASS" : "FAIL") + " criterion " + std::to_string(r.id) + ": " + r.name + buf +
           " -- " + r.detail;
}

} // namespace czmix::acceptance
