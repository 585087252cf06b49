#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "czmix/corpus.hpp"
#include "czmix/field_io.hpp"
#include "czmix/fourier.hpp"

using namespace czmix;

namespace {

double gauss_ft(double xi) { return std::exp(-xi * xi / 4.0) / std::numbers::sqrt2; }

} // namespace

TEST(Fourier, GaussianTransform)
{
    const auto g = centered_grid(16.0, 4096);
    const Spectrum1D s = ft1(field_from_fn(g, [](double x) { return std::exp(-x * x); }));
    double err = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k)
        if (std::abs(s.grid().point(k)) <= 8.0)
            err = std::max(err, std::abs(s[k] - gauss_ft(s.grid().point(k))));
    EXPECT_LE(err, 1e-8);
    EXPECT_TRUE(s.notes().empty());
}

TEST(Fourier, FrequencyGridAscendingAndSymmetric)
{
    const auto g = centered_grid(16.0, 64);
    const auto f = frequency_grid(g);
    EXPECT_DOUBLE_EQ(f.step(), 2.0 * std::numbers::pi / 16.0);
    EXPECT_DOUBLE_EQ(f.point(32), 0.0);
    EXPECT_DOUBLE_EQ(f.point(0), -f.point(64 - 1) - f.step());
}

TEST(Fourier, ModulationShiftsTheSpectrum)
{
    const double w = 3.0;
    const auto g = centered_grid(16.0, 2048);
    const Spectrum1D s = ft1(field_from_fn(g, [&](double x) { return std::exp(-x * x) * std::polar(1.0, w * x); }));
    double err = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k)
        err = std::max(err, std::abs(s[k] - gauss_ft(s.grid().point(k) - w)));
    EXPECT_LE(err, 1e-8);
}

TEST(Fourier, InversionRecoversTheField)
{
    const auto g = centered_grid(20.0, 512);
    const Field1D f = field_from_fn(g, [](double x) { return cplx(std::exp(-0.5 * x * x) * std::cos(2 * x), std::exp(-(x - 1) * (x - 1))); });
    const Field1D back = ift1(ft1(f));
    EXPECT_TRUE(back.grid() == f.grid());
    double err = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k)
        err = std::max(err, std::abs(back[k] - f[k]));
    EXPECT_LE(err / max_abs(f.values()), 1e-10);
}

TEST(Fourier, OffCenterGridKeepsPhase)
{
    const UniformGrid1D g(-5.0, 10.0 / 1024.0, 1536);
    const Spectrum1D s = ft1(field_from_fn(g, [](double x) { return std::exp(-x * x); }));
    double err = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k)
        err = std::max(err, std::abs(s[k] - gauss_ft(s.grid().point(k))));
    EXPECT_LE(err, 1e-8);
    const Field1D back = ift1(s);
    EXPECT_DOUBLE_EQ(back.grid().start(), -5.0);
}

TEST(Fourier, PoorDecayIsNotedNotFatal)
{
    const auto g = centered_grid(4.0, 64);
    const Spectrum1D s = ft1(field_from_fn(g, [](double x) { return std::exp(-x * x / 4.0); }));
    EXPECT_FALSE(s.notes().empty());
}

TEST(Fourier, SeparableTransformFactors)
{
    const auto gx = centered_grid(16.0, 128);
    const auto gy = centered_grid(12.0, 96);
    auto a = [](double x) { return std::exp(-x * x) * (1.0 + x); };
    auto b = [](double y) { return std::exp(-0.5 * y * y); };
    const Field2D f = field_from_fn(gx, gy, [&](double x, double y) { return a(x) * b(y); });
    const Spectrum2D s = ft2(f);
    const Spectrum1D sa = ft1(field_from_fn(gx, a));
    const Spectrum1D sb = ft1(field_from_fn(gy, b));
    double err = 0.0;
    for (std::size_t j = 0; j < s.ny(); ++j)
        for (std::size_t i = 0; i < s.nx(); ++i)
            err = std::max(err, std::abs(s.value(i, j) - sa[i] * sb[j]));
    EXPECT_LE(err, 1e-10);

    const Field2D sx = ft_axis(f, AxisId::x);
    double errx = 0.0;
    for (std::size_t j = 0; j < s.ny(); ++j)
        for (std::size_t i = 0; i < s.nx(); ++i)
            errx = std::max(errx, std::abs(sx.value(i, j) - sa[i] * b(gy.point(j))));
    EXPECT_LE(errx, 1e-10);
}

TEST(Fourier, AxisOrderIsImmaterial)
{
    const auto corpus = random_corpus(1, 5);
    const Field2D& f = corpus[0];
    const Field2D xy = ft_axis(ft_axis(f, AxisId::x), AxisId::y);
    const Field2D yx = ft_axis(ft_axis(f, AxisId::y), AxisId::x);
    double err = 0.0;
    for (std::size_t k = 0; k < xy.size(); ++k)
        err = std::max(err, std::abs(xy.values()[k] - yx.values()[k]));
    EXPECT_LE(err, 1e-12);
}

TEST(Fourier, Plancherel2D)
{
    const auto corpus = random_corpus(2, 9);
    for (const auto& f : corpus) {
        const Spectrum2D s = ft2(f);
        EXPECT_NEAR(l2_norm(s) / l2_norm(f), 1.0, 1e-10);
        const Field2D back = ift2(s);
        double err = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k)
            err = std::max(err, std::abs(back.values()[k] - f.values()[k]));
        EXPECT_LE(err / max_abs(f.values()), 1e-10);
    }
}

TEST(Fourier, RealEvenInputGivesRealEvenSpectrum)
{
    const auto g = centered_grid(16.0, 256);
    const Spectrum1D s = ft1(field_from_fn(g, [](double x) { return std::exp(-x * x) * std::cos(2 * x); }));
    for (std::size_t k = 1; k < s.size(); ++k) {
        EXPECT_LE(std::abs(s[k].imag()), 1e-10);
        EXPECT_NEAR(s[k].real(), s[s.size() - k].real(), 1e-10);
    }
}

TEST(Fourier, SpectrumSerializesWithFrequencyMarker)
{
    const auto g = centered_grid(8.0, 16);
    const Spectrum1D s = ft1(field_from_fn(g, [](double x) { return std::exp(-x * x); }));
    const auto j = field_to_json(s);
    EXPECT_EQ(j.at("domain"), "frequency");
    const auto back = std::get<Field1D>(parse_field(j.dump()));
    EXPECT_EQ(back.domain(), Domain::frequency);
    const Field1D f = ift1(back);
    EXPECT_DOUBLE_EQ(f.grid().start(), g.start());
}
