#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "czmix/error.hpp"
#include "czmix/fourier.hpp"
#include "czmix/grid.hpp"

namespace czmix {

/// Fourier multiplier m(xi1, xi2). Evaluation at the origin is never requested; it is 0 by definition.
struct MultiplierSymbol {
    std::string name;
    std::function<cplx(double, double)> m;

    cplx operator()(double xi1, double xi2) const
    {
        if (xi1 == 0.0 && xi2 == 0.0)
            return cplx(0.0);
        return m(xi1, xi2);
    }
};

/// R1: -i xi1 / |xi|.
inline MultiplierSymbol riesz1()
{
    return {"riesz1", [](double a, double b) { return cplx(0.0, -a / std::hypot(a, b)); }};
}

/// R2: -i xi2 / |xi|.
inline MultiplierSymbol riesz2()
{
    return {"riesz2", [](double a, double b) { return cplx(0.0, -b / std::hypot(a, b)); }};
}

/// Double Riesz transform R12: xi1 xi2 / |xi|^2.
inline MultiplierSymbol riesz12()
{
    return {"riesz12", [](double a, double b) { return cplx(a * b / (a * a + b * b), 0.0); }};
}

/// m = 1 away from the origin: removes the zero-frequency component only.
inline MultiplierSymbol unit_symbol()
{
    return {"unit", [](double, double) { return cplx(1.0); }};
}

inline const std::vector<std::string>& symbol_catalog()
{
    static const std::vector<std::string> names{"riesz1", "riesz2", "riesz12"};
    return names;
}

inline MultiplierSymbol symbol_by_name(std::string_view name)
{
    if (name == "riesz1")
        return riesz1();
    if (name == "riesz2")
        return riesz2();
    if (name == "riesz12")
        return riesz12();
    throw ParameterError("unknown multiplier symbol '" + std::string(name) + "'");
}

/// Multiplies a full 2-D spectrum pointwise by `m`, in place on a copy.
template <typename Symbol>
Spectrum2D multiply_spectrum(const Spectrum2D& s, Symbol&& m)
{
    if (s.x_axis().domain != Domain::frequency || s.y_axis().domain != Domain::frequency)
        throw ParameterError("multiply_spectrum needs a full 2-D spectrum");
    std::vector<cplx> out(s.values().begin(), s.values().end());
    for (std::size_t j = 0; j < s.ny(); ++j) {
        const double xi2 = s.ygrid().point(j);
        for (std::size_t i = 0; i < s.nx(); ++i) {
            const double xi1 = s.xgrid().point(i);
            const cplx mv = (xi1 == 0.0 && xi2 == 0.0) ? cplx(0.0) : cplx(m(xi1, xi2));
            if (!detail::is_finite(mv))
                throw EvaluationError("symbol is non-finite at (" + detail::fmt_double(xi1) + ", " +
                                      detail::fmt_double(xi2) + ")");
            out[j * s.nx() + i] *= mv;
        }
    }
    Spectrum2D r(s.x_axis(), s.y_axis(), std::move(out));
    for (const auto& n : s.notes())
        r.add_note(n);
    return r;
}

/// T f = ift2(m * ft2(f)).
inline Field2D apply_multiplier(const Field2D& f, const MultiplierSymbol& sym)
{
    Spectrum2D s = ft2(f);
    Field2D out = ift2(multiply_spectrum(s, sym));
    for (const auto& n : s.notes())
        out.add_note(n);
    return out;
}

/// Spectral Laplacian: symbol -|xi|^2.
inline Field2D spectral_laplacian(const Field2D& f)
{
    return ift2(multiply_spectrum(ft2(f), [](double a, double b) { return cplx(-(a * a + b * b)); }));
}

/// Spectral mixed derivative d^2/dx dy: symbol (i xi1)(i xi2) = -xi1 xi2.
inline Field2D spectral_dxdy(const Field2D& f)
{
    return ift2(multiply_spectrum(ft2(f), [](double a, double b) { return cplx(-a * b); }));
}

} // namespace czmix
