#pragma once

/**
 * @file cz_decomp.hpp
 * @brief Dyadic Calderon-Zygmund decomposition of the majorant
 *        h(x) = max_y |f(x, y)| and its lift back to 2-D.
 *
 * Sample i owns the half-open cell [x_i, x_i + step). Intervals are kept in
 * cell units so that every dyadic endpoint is an integer cell index; the
 * field is zero outside the grid.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "czmix/error.hpp"
#include "czmix/grid.hpp"
#include "czmix/multiplier.hpp"
#include "czmix/norms.hpp"

namespace czmix {

struct DyadicInterval {
    long long first_cell; ///< may be negative when the interval pokes out of the grid
    long long cells;      ///< a power of two
    int depth;            ///< levels below the root
    double a;             ///< left end (included)
    double b;             ///< right end (excluded)

    double center() const noexcept { return 0.5 * (a + b); }
    double length() const noexcept { return b - a; }
    bool contains(double x) const noexcept { return a <= x && x < b; }
};

/// Q* : same center, twice the length.
inline DyadicInterval double_interval(const DyadicInterval& q)
{
    const double half = q.length();
    const double c = q.center();
    return {q.first_cell - q.cells / 2, q.cells * 2, q.depth - 1, c - half, c + half};
}

struct CZDecomposition {
    double alpha;
    UniformGrid1D grid;
    DyadicInterval root;
    std::vector<DyadicInterval> intervals; ///< selected, disjoint, left to right
    std::vector<double> averages;          ///< average of h over each selected interval
    std::vector<double> parent_averages;   ///< average of h over each selected interval's parent
    Field1D good;                          ///< h off the union of intervals
    Field1D bad;                           ///< h on the union of intervals

    double total_length() const
    {
        double s = 0.0;
        for (const auto& q : intervals)
            s += q.length();
        return s;
    }

    /// Index of the selected interval holding sample i, or -1.
    std::vector<long long> owner_of_samples() const
    {
        std::vector<long long> owner(grid.count(), -1);
        for (std::size_t k = 0; k < intervals.size(); ++k) {
            const auto& q = intervals[k];
            const long long lo = std::max<long long>(q.first_cell, 0);
            const long long hi = std::min<long long>(q.first_cell + q.cells, static_cast<long long>(grid.count()));
            for (long long i = lo; i < hi; ++i)
                owner[static_cast<std::size_t>(i)] = static_cast<long long>(k);
        }
        return owner;
    }
};

/// h(x) = max over sampled y of |f(x, y)|.
inline Field1D majorant(const Field2D& f)
{
    std::vector<cplx> h(f.nx(), cplx(0.0));
    for (std::size_t j = 0; j < f.ny(); ++j)
        for (std::size_t i = 0; i < f.nx(); ++i)
            h[i] = std::max(h[i].real(), std::abs(f.value(i, j)));
    return Field1D(f.x_axis(), std::move(h));
}

namespace detail {

class CellSums {
public:
    explicit CellSums(const Field1D& h) : prefix_(h.size() + 1, 0.0)
    {
        for (std::size_t i = 0; i < h.size(); ++i)
            prefix_[i + 1] = prefix_[i] + h[i].real();
    }

    /// Sum of h over cells [lo, lo + n), zero outside the grid.
    double sum(long long lo, long long n) const
    {
        const auto size = static_cast<long long>(prefix_.size()) - 1;
        const long long a = std::clamp<long long>(lo, 0, size);
        const long long b = std::clamp<long long>(lo + n, 0, size);
        return prefix_[static_cast<std::size_t>(b)] - prefix_[static_cast<std::size_t>(a)];
    }

    bool touches_grid(long long lo, long long n) const
    {
        const auto size = static_cast<long long>(prefix_.size()) - 1;
        return lo + n > 0 && lo < size;
    }

private:
    std::vector<double> prefix_;
};

} // namespace detail

/**
 * Stopping-time decomposition at level alpha.
 *
 * The root is the smallest power-of-two run of cells covering the grid,
 * centered on it and doubled about its center until the average of h over it
 * is at most alpha. Each interval is then bisected; a child whose average
 * exceeds alpha is selected, any other child is bisected again until it is a
 * single cell.
 */
inline CZDecomposition cz_decompose(const Field1D& h, double alpha, int max_doublings = 60)
{
    if (!(alpha > 0.0))
        throw ParameterError("cz_decompose needs alpha > 0");
    for (std::size_t i = 0; i < h.size(); ++i)
        if (h[i].imag() != 0.0 || h[i].real() < 0.0)
            throw ParameterError("cz_decompose needs a nonnegative real function");
    const UniformGrid1D& g = h.grid();
    const auto n = static_cast<long long>(g.count());
    const detail::CellSums sums(h);

    auto make_interval = [&](long long lo, long long cells, int depth) {
        return DyadicInterval{lo, cells, depth, g.start() + static_cast<double>(lo) * g.step(),
                              g.start() + static_cast<double>(lo + cells) * g.step()};
    };
    auto average = [&](long long lo, long long cells) { return sums.sum(lo, cells) / static_cast<double>(cells); };

    long long cells = 1;
    while (cells < n)
        cells *= 2;
    long long lo = -((cells - n) / 2);
    int doublings = 0;
    while (average(lo, cells) > alpha) {
        if (++doublings > max_doublings)
            throw DecompositionError("average of h cannot be brought below alpha; sample h on a larger domain");
        lo -= cells / 2;
        cells *= 2;
    }

    std::vector<DyadicInterval> selected;
    std::vector<double> avgs;
    std::vector<double> parents;
    struct Node {
        long long lo;
        long long cells;
        int depth;
        double avg;
    };
    std::vector<Node> stack{{lo, cells, 0, average(lo, cells)}};
    while (!stack.empty()) {
        const Node node = stack.back();
        stack.pop_back();
        if (node.cells == 1)
            continue;
        const long long half = node.cells / 2;
        // push right first so intervals come out left to right
        for (long long child_lo : {node.lo + half, node.lo}) {
            if (!sums.touches_grid(child_lo, half))
                continue;
            const double avg = average(child_lo, half);
            if (avg > alpha) {
                selected.push_back(make_interval(child_lo, half, node.depth + 1));
                avgs.push_back(avg);
                parents.push_back(node.avg);
            } else if (avg > 0.0) {
                stack.push_back({child_lo, half, node.depth + 1, avg});
            }
        }
    }
    // the stack order already yields left-to-right within each branch; sort for certainty
    std::vector<std::size_t> order(selected.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return selected[a].first_cell < selected[b].first_cell; });

    CZDecomposition dec{alpha, g, make_interval(lo, cells, 0), {}, {}, {}, h, h};
    for (auto k : order) {
        dec.intervals.push_back(selected[k]);
        dec.averages.push_back(avgs[k]);
        dec.parent_averages.push_back(parents[k]);
    }
    const auto owner = dec.owner_of_samples();
    std::vector<cplx> good(h.size()), bad(h.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        (owner[i] >= 0 ? bad : good)[i] = h[i];
    dec.good = Field1D(h.axis(), std::move(good));
    dec.bad = Field1D(h.axis(), std::move(bad));
    return dec;
}

/// f_Q on every cell of Q (including cells outside the grid, where f is zero).
struct BadPiece {
    DyadicInterval interval;
    std::size_t ny;
    std::vector<cplx> means;  ///< interval mean of f(., y) for each sampled y
    std::vector<cplx> values; ///< row-major, interval.cells values per y row

    cplx value(long long cell_offset, std::size_t j) const
    {
        return values[j * static_cast<std::size_t>(interval.cells) + static_cast<std::size_t>(cell_offset)];
    }

    /// integral of f_Q(x, y_j) dx over Q.
    cplx integral(std::size_t j, double step) const
    {
        const auto c = static_cast<std::size_t>(interval.cells);
        return detail::pairwise_sum(std::span<const cplx>(values).subspan(j * c, c)) * step;
    }

    /// integral of |f_Q(x, y_j)| dx over Q.
    double abs_integral(std::size_t j, double step) const
    {
        const auto c = static_cast<std::size_t>(interval.cells);
        std::vector<double> m(c);
        for (std::size_t k = 0; k < c; ++k)
            m[k] = std::abs(values[j * c + k]);
        return detail::pairwise_sum(m) * step;
    }
};

struct GoodBadLift {
    Field2D f1; ///< bounded part
    Field2D f2; ///< sum of the mean-zero pieces, restricted to the grid
    std::vector<BadPiece> pieces;
};

/**
 * f1 = f off the intervals and the x-mean of f(., y) on each interval;
 * f2 = f - f1 = sum over Q of f_Q with f_Q = chi_Q (f - mean_Q f).
 */
inline GoodBadLift lift(const Field2D& f, const CZDecomposition& dec)
{
    if (!(f.xgrid() == dec.grid))
        throw ParameterError("decomposition grid does not match the field's x grid");
    const std::size_t nx = f.nx();
    const std::size_t ny = f.ny();
    std::vector<cplx> v1(f.values().begin(), f.values().end());
    std::vector<cplx> v2(f.size(), cplx(0.0));
    std::vector<BadPiece> pieces;
    pieces.reserve(dec.intervals.size());
    for (const auto& q : dec.intervals) {
        const long long lo = std::max<long long>(q.first_cell, 0);
        const long long hi = std::min<long long>(q.first_cell + q.cells, static_cast<long long>(nx));
        BadPiece piece{q, ny, std::vector<cplx>(ny), std::vector<cplx>(static_cast<std::size_t>(q.cells) * ny)};
        for (std::size_t j = 0; j < ny; ++j) {
            std::vector<cplx> row;
            row.reserve(static_cast<std::size_t>(hi - lo));
            for (long long i = lo; i < hi; ++i)
                row.push_back(f.value(static_cast<std::size_t>(i), j));
            const cplx mean = detail::pairwise_sum(row) / static_cast<double>(q.cells);
            piece.means[j] = mean;
            for (long long c = 0; c < q.cells; ++c) {
                const long long i = q.first_cell + c;
                const bool inside = i >= 0 && i < static_cast<long long>(nx);
                const cplx fv = inside ? f.value(static_cast<std::size_t>(i), j) : cplx(0.0);
                const cplx fq = fv - mean;
                piece.values[j * static_cast<std::size_t>(q.cells) + static_cast<std::size_t>(c)] = fq;
                if (inside) {
                    const std::size_t k = j * nx + static_cast<std::size_t>(i);
                    v1[k] = mean;
                    v2[k] = fq;
                }
            }
        }
        pieces.push_back(std::move(piece));
    }
    return {Field2D(f.x_axis(), f.y_axis(), std::move(v1)), Field2D(f.x_axis(), f.y_axis(), std::move(v2)),
            std::move(pieces)};
}

struct Weak11Row {
    double alpha;
    double max_ratio; ///< max over sampled y of alpha * d_{Tf(., y)}(alpha) / || ||f||_{L^inf_y} ||_{L^1_x}
};

struct Weak11Report {
    double rhs_norm; ///< || ||f||_{L^inf_y} ||_{L^1_x}
    std::vector<Weak11Row> rows;
    double D_emp = 0.0;
};

/// Empirical constant of the mixed weak-(1,1) estimate for one field.
inline Weak11Report weak11_witness(const Field2D& f, const MultiplierSymbol& T, const std::vector<double>& alphas)
{
    for (double a : alphas)
        if (!(a > 0.0))
            throw ParameterError("weak11_witness needs positive alphas");
    Weak11Report rep{lp_norm(majorant(f), 1.0), {}, 0.0};
    const Field2D Tf = apply_multiplier(f, T);
    for (double a : alphas) {
        double best = 0.0;
        if (rep.rhs_norm > 0.0) {
            for (std::size_t j = 0; j < Tf.ny(); ++j)
                best = std::max(best, a * distribution(Tf.x_slice(j), a) / rep.rhs_norm);
        }
        rep.rows.push_back({a, best});
        rep.D_emp = std::max(rep.D_emp, best);
    }
    return rep;
}

} // namespace czmix
