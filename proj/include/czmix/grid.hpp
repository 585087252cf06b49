#pragma once

/**
 * @file grid.hpp
 * @brief Uniform grids, sampled fields and trapezoid quadrature.
 *
 * Every other module works on the discrete objects defined here. A 2-D field
 * is stored row-major with x as the fast axis: value(i, j) lives at
 * values[j * nx + i], where i indexes x and j indexes y.
 */

#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "czmix/error.hpp"

namespace czmix {

using cplx = std::complex<double>;

namespace detail {

/// Pairwise (cascade) summation. The result depends only on the input order,
/// which keeps every reduction in the library reproducible.
template <typename T>
T pairwise_sum(std::span<const T> xs)
{
    constexpr std::size_t block = 32;
    if (xs.size() <= block) {
        T acc{};
        for (const auto& x : xs)
            acc += x;
        return acc;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& xs)
{
    return pairwise_sum(std::span<const T>(xs));
}

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline std::string fmt_double(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace detail

/// Equispaced grid: point(i) = start + i * step for 0 <= i < count.
class UniformGrid1D {
public:
    UniformGrid1D(double start, double step, std::size_t count)
        : start_(start), step_(step), count_(count)
    {
        if (!std::isfinite(start) || !std::isfinite(step) || !(step > 0.0))
            throw ParameterError("grid step must be positive and finite, got " + detail::fmt_double(step));
        if (count < 2)
            throw ParameterError("grid needs at least 2 points, got " + std::to_string(count));
    }

    double start() const noexcept { return start_; }
    double step() const noexcept { return step_; }
    std::size_t count() const noexcept { return count_; }

    double point(std::size_t i) const noexcept { return start_ + static_cast<double>(i) * step_; }
    double last() const noexcept { return point(count_ - 1); }
    /// Total measure when each sample owns the half-open cell [x_i, x_i + step).
    double cell_span() const noexcept { return static_cast<double>(count_) * step_; }

    std::vector<double> points() const
    {
        std::vector<double> out(count_);
        for (std::size_t i = 0; i < count_; ++i)
            out[i] = point(i);
        return out;
    }

    friend bool operator==(const UniformGrid1D&, const UniformGrid1D&) = default;

private:
    double start_;
    double step_;
    std::size_t count_;
};

inline UniformGrid1D make_grid(double start, double step, long long count)
{
    if (count < 2)
        throw ParameterError("grid needs at least 2 points, got " + std::to_string(count));
    return UniformGrid1D(start, step, static_cast<std::size_t>(count));
}

/// Symmetric grid with `count` points covering [-length/2, length/2).
inline UniformGrid1D centered_grid(double length, std::size_t count)
{
    const double step = length / static_cast<double>(count);
    return UniformGrid1D(-length / 2.0, step, count);
}

enum class Domain { space, frequency };

/**
 * One axis of a sampled field.
 *
 * A frequency axis remembers where its spatial partner grid started; the
 * spatial step is implied by the frequency step and the count, so the pair
 * (grid, space_origin) is enough to invert the transform.
 */
struct Axis {
    UniformGrid1D grid;
    Domain domain = Domain::space;
    double space_origin = 0.0;

    explicit Axis(UniformGrid1D g, Domain d = Domain::space, double origin = 0.0)
        : grid(g), domain(d), space_origin(origin) {}

    std::size_t count() const noexcept { return grid.count(); }

    friend bool operator==(const Axis&, const Axis&) = default;
};

class Field1D {
public:
    Field1D(Axis axis, std::vector<cplx> values) : axis_(std::move(axis)), values_(std::move(values))
    {
        if (values_.size() != axis_.count())
            throw ParameterError("field has " + std::to_string(values_.size()) + " values for a grid of " +
                                 std::to_string(axis_.count()));
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (!detail::is_finite(values_[i]))
                throw ParameterError("non-finite field value at index " + std::to_string(i));
    }

    Field1D(UniformGrid1D grid, std::vector<cplx> values) : Field1D(Axis(grid), std::move(values)) {}

    const Axis& axis() const noexcept { return axis_; }
    const UniformGrid1D& grid() const noexcept { return axis_.grid; }
    Domain domain() const noexcept { return axis_.domain; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const cplx> values() const noexcept { return values_; }
    cplx operator[](std::size_t i) const noexcept { return values_[i]; }

    /// Non-fatal diagnostics attached by the operation that produced the field.
    const std::vector<std::string>& notes() const noexcept { return notes_; }
    void add_note(std::string note) { notes_.push_back(std::move(note)); }

private:
    Axis axis_;
    std::vector<cplx> values_;
    std::vector<std::string> notes_;
};

class Field2D {
public:
    Field2D(Axis x, Axis y, std::vector<cplx> values)
        : x_(std::move(x)), y_(std::move(y)), values_(std::move(values))
    {
        if (values_.size() != x_.count() * y_.count())
            throw ParameterError("field has " + std::to_string(values_.size()) + " values for a " +
                                 std::to_string(x_.count()) + "x" + std::to_string(y_.count()) + " grid");
        for (std::size_t k = 0; k < values_.size(); ++k)
            if (!detail::is_finite(values_[k]))
                throw ParameterError("non-finite field value at (" + std::to_string(k % x_.count()) + ", " +
                                     std::to_string(k / x_.count()) + ")");
    }

    Field2D(UniformGrid1D xg, UniformGrid1D yg, std::vector<cplx> values)
        : Field2D(Axis(xg), Axis(yg), std::move(values)) {}

    const Axis& x_axis() const noexcept { return x_; }
    const Axis& y_axis() const noexcept { return y_; }
    const UniformGrid1D& xgrid() const noexcept { return x_.grid; }
    const UniformGrid1D& ygrid() const noexcept { return y_.grid; }
    std::size_t nx() const noexcept { return x_.count(); }
    std::size_t ny() const noexcept { return y_.count(); }
    std::size_t size() const noexcept { return values_.size(); }

    std::span<const cplx> values() const noexcept { return values_; }
    /// i indexes x, j indexes y.
    cplx value(std::size_t i, std::size_t j) const noexcept { return values_[j * nx() + i]; }
    std::span<const cplx> row(std::size_t j) const noexcept { return std::span<const cplx>(values_).subspan(j * nx(), nx()); }

    Field1D x_slice(std::size_t j) const
    {
        auto r = row(j);
        return Field1D(x_, std::vector<cplx>(r.begin(), r.end()));
    }

    Field1D y_slice(std::size_t i) const
    {
        std::vector<cplx> v(ny());
        for (std::size_t j = 0; j < ny(); ++j)
            v[j] = value(i, j);
        return Field1D(y_, std::move(v));
    }

    const std::vector<std::string>& notes() const noexcept { return notes_; }
    void add_note(std::string note) { notes_.push_back(std::move(note)); }

private:
    Axis x_;
    Axis y_;
    std::vector<cplx> values_;
    std::vector<std::string> notes_;
};

/// Composite trapezoid weights (end weights 1/2) times the step.
inline std::vector<double> trapezoid_weights(const UniformGrid1D& g)
{
    std::vector<double> w(g.count(), g.step());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

/// Composite trapezoid rule applied to arbitrary samples on `g`.
template <typename T>
T trapezoid(const UniformGrid1D& g, std::span<const T> samples)
{
    if (samples.size() != g.count())
        throw ParameterError("sample count does not match grid");
    std::vector<T> terms(samples.begin(), samples.end());
    terms.front() *= 0.5;
    terms.back() *= 0.5;
    return detail::pairwise_sum(std::span<const T>(terms)) * g.step();
}

template <typename T>
T trapezoid(const UniformGrid1D& g, const std::vector<T>& samples)
{
    return trapezoid(g, std::span<const T>(samples));
}

/// Trapezoid rule over [a, b] with n >= 2 nodes for a scalar integrand.
template <typename Fn>
auto trapezoid(double a, double b, std::size_t n, Fn&& fn)
{
    using R = std::decay_t<std::invoke_result_t<Fn&, double>>;
    if (n < 2)
        throw ParameterError("trapezoid needs at least 2 nodes");
    const double h = (b - a) / static_cast<double>(n - 1);
    std::vector<R> terms(n);
    for (std::size_t i = 0; i < n; ++i)
        terms[i] = fn(i + 1 == n ? b : a + static_cast<double>(i) * h);
    terms.front() *= 0.5;
    terms.back() *= 0.5;
    return detail::pairwise_sum(std::span<const R>(terms)) * h;
}

inline cplx integrate(const Field1D& f) { return trapezoid(f.grid(), f.values()); }

template <typename Fn>
concept ScalarFn1 = std::invocable<Fn&, double> && std::convertible_to<std::invoke_result_t<Fn&, double>, cplx>;

template <typename Fn>
concept ScalarFn2 =
    std::invocable<Fn&, double, double> && std::convertible_to<std::invoke_result_t<Fn&, double, double>, cplx>;

/// Samples `fn` at every grid point. A non-finite sample raises SamplingError naming the point.
template <ScalarFn1 Fn>
Field1D field_from_fn(const UniformGrid1D& g, Fn&& fn)
{
    std::vector<cplx> v(g.count());
    for (std::size_t i = 0; i < g.count(); ++i) {
        const double x = g.point(i);
        v[i] = cplx(fn(x));
        if (!detail::is_finite(v[i]))
            throw SamplingError("non-finite sample at x = " + detail::fmt_double(x));
    }
    return Field1D(g, std::move(v));
}

template <ScalarFn2 Fn>
Field2D field_from_fn(const UniformGrid1D& xg, const UniformGrid1D& yg, Fn&& fn)
{
    std::vector<cplx> v(xg.count() * yg.count());
    for (std::size_t j = 0; j < yg.count(); ++j) {
        const double y = yg.point(j);
        for (std::size_t i = 0; i < xg.count(); ++i) {
            const double x = xg.point(i);
            cplx z = cplx(fn(x, y));
            if (!detail::is_finite(z))
                throw SamplingError("non-finite sample at (x, y) = (" + detail::fmt_double(x) + ", " +
                                    detail::fmt_double(y) + ")");
            v[j * xg.count() + i] = z;
        }
    }
    return Field2D(xg, yg, std::move(v));
}

/// Maximum modulus over all samples.
inline double max_abs(std::span<const cplx> v)
{
    double m = 0.0;
    for (const auto& z : v)
        m = std::max(m, std::abs(z));
    return m;
}

} // namespace czmix
