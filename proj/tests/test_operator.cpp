#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "czmix/bump.hpp"
#include "czmix/corpus.hpp"
#include "czmix/kernel.hpp"
#include "czmix/multiplier.hpp"
#include "czmix/slice.hpp"

using namespace czmix;

TEST(Multiplier, CatalogByName)
{
    for (const auto& name : symbol_catalog())
        EXPECT_EQ(symbol_by_name(name).name, name);
    EXPECT_THROW(symbol_by_name("hilbert"), ParameterError);
    EXPECT_EQ(riesz12()(0.0, 0.0), cplx(0.0));
    EXPECT_NEAR(riesz12()(1.0, 1.0).real(), 0.5, 1e-15);
    EXPECT_NEAR(riesz1()(3.0, 4.0).imag(), -0.6, 1e-15);
}

TEST(Multiplier, UnitSymbolRemovesOnlyTheMean)
{
    const auto g = centered_grid(16.0, 128);
    const Field2D f = field_from_fn(g, g, [](double x, double y) { return x * std::exp(-x * x - y * y); });
    const Field2D t = apply_multiplier(f, unit_symbol());
    double err = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k)
        err = std::max(err, std::abs(t.values()[k] - f.values()[k]));
    EXPECT_LE(err, 1e-12);
}

TEST(Multiplier, VanishesOnAxisSupportedSpectra)
{
    // f(x, y) = a(x) with constant y-profile has spectrum on xi2 = 0
    const auto g = centered_grid(16.0, 64);
    const Field2D f = field_from_fn(g, g, [](double x, double) { return std::exp(-x * x); });
    const Field2D t = apply_multiplier(f, riesz12());
    EXPECT_LE(max_abs(t.values()), 1e-10);
}

TEST(Multiplier, MixedDerivativeIdentity)
{
    const auto g = centered_grid(16.0, 256);
    const Field2D u = field_from_fn(g, g, [](double x, double y) { return std::exp(-x * x - y * y); });
    const Field2D lhs = spectral_dxdy(u);
    const Field2D rhs = apply_multiplier(spectral_laplacian(u), riesz12());
    std::vector<cplx> d(u.size());
    for (std::size_t k = 0; k < d.size(); ++k)
        d[k] = lhs.values()[k] - rhs.values()[k];
    EXPECT_LE(l2_norm(Field2D(u.x_axis(), u.y_axis(), d)) / l2_norm(lhs), 1e-6);
}

TEST(Multiplier, NormNotIncreasedAndRealOutput)
{
    const auto corpus = random_corpus(3, 21);
    for (const auto& f : corpus)
        for (const auto& name : symbol_catalog()) {
            const Field2D t = apply_multiplier(f, symbol_by_name(name));
            EXPECT_LE(l2_norm(t), l2_norm(f) + 1e-10);
            double im = 0.0;
            for (auto z : t.values())
                im = std::max(im, std::abs(z.imag()));
            EXPECT_LE(im, 1e-8);
        }
}

TEST(Multiplier, NonFiniteSymbolIsEvaluationError)
{
    const auto g = centered_grid(8.0, 16);
    const Field2D f = field_from_fn(g, g, [](double x, double y) { return std::exp(-x * x - y * y); });
    const MultiplierSymbol bad{"bad", [](double a, double) { return cplx(1.0 / (a - a)); }};
    EXPECT_THROW(apply_multiplier(f, bad), EvaluationError);
}

TEST(Kernel, AnnulusCancellationAndSize)
{
    const KernelReport k = verify_kernel_conditions(r12_kernel(), {0.1, 0.5, 1.0, 3.0, 10.0, 50.0});
    ASSERT_EQ(k.annuli.size(), 5u);
    EXPECT_LE(k.max_abs_cancellation(), 1e-10);
    EXPECT_NEAR(k.size_witness, 1.0 / (4.0 * std::numbers::pi), 1e-6);
    EXPECT_TRUE(k.size_ok());
}

TEST(Kernel, SizeAtDiagonalPoint)
{
    // |K| |x|^2 at (1, 1)
    const auto spec = r12_kernel();
    EXPECT_NEAR(std::abs(spec.K(1.0, 1.0)) * 2.0, 1.0 / (4.0 * std::numbers::pi), 1e-15);
}

TEST(Kernel, HormanderIntegralStableUnderDoubling)
{
    const KernelReport k = verify_kernel_conditions(r12_kernel(), {1.0, 2.0});
    ASSERT_FALSE(k.hormander.empty());
    for (const auto& h : k.hormander) {
        EXPECT_TRUE(h.converged);
        EXPECT_LT(h.relative_change, 0.01);
        EXPECT_TRUE(std::isfinite(h.value));
        EXPECT_GT(h.value, 0.0);
    }
}

TEST(Kernel, RadiiMustIncrease)
{
    EXPECT_THROW(verify_kernel_conditions(r12_kernel(), {1.0, 1.0}), ParameterError);
    EXPECT_THROW(verify_kernel_conditions(r12_kernel(), {2.0, 1.0}), ParameterError);
    EXPECT_THROW(verify_kernel_conditions(r12_kernel(), {1.0}), ParameterError);
}

TEST(Slice, EConstantAndItsFactors)
{
    const double E = E_const();
    EXPECT_GT(E, 0.0);
    EXPECT_NEAR(E, 0.0515, 0.01 * 0.0515);
    const double bracket = std::exp(-2.0 - std::ldexp(1.0, -9)) - std::exp(-4.0 + std::ldexp(1.0, -9));
    EXPECT_NEAR(bracket, 0.11672, 1e-5);
    EXPECT_NEAR(std::sqrt(std::numbers::pi) / 2.0, 0.88623, 1e-5);
    const double gauss = 2.0 * std::sqrt(std::numbers::pi) * std::erf(0.125);
    EXPECT_NEAR(gauss, 0.497408, 1e-6);
    EXPECT_NEAR(E, std::sqrt(std::numbers::pi) / 2.0 * bracket * gauss, 1e-9);
    EXPECT_NEAR(4.0 * std::sqrt(std::numbers::pi) * 13.0 * std::ldexp(1.0, -13), 0.0113, 1e-4);
}

class SliceTest : public ::testing::Test {
protected:
    static const CounterexampleFamily& fam()
    {
        static const CounterexampleFamily f(13, 20, 4.0);
        return f;
    }
};

TEST_F(SliceTest, LaplaceFactorBracketing)
{
    const SemiAnalyticParams p(fam());
    for (int j : {13, 15, 20})
        for (double s : {std::ldexp(1.0, j) + 1.0, std::ldexp(1.0, j) + 2.5, std::ldexp(1.0, j) + 3.0}) {
            const double v = s * chi1_laplace(p, j, s);
            const double lo = std::exp(-s * (std::ldexp(1.0, -j) + std::ldexp(1.0, -j - 10))) -
                              std::exp(-s * (std::ldexp(1.0, -j + 1) - std::ldexp(1.0, -j - 10)));
            const double hi = std::exp(-s * std::ldexp(1.0, -j)) - std::exp(-s * std::ldexp(1.0, -j + 1));
            EXPECT_LE(lo, v);
            EXPECT_LE(v, hi);
        }
    const double outer = std::exp(-1.0) - std::exp(-2.0);
    EXPECT_NEAR(outer, 0.23254, 1e-5);
}

TEST_F(SliceTest, RejectsZeroFrequency)
{
    const SemiAnalyticParams p(fam());
    EXPECT_THROW(semi_H(p, 13, 0.0), ParameterError);
}

TEST_F(SliceTest, CrossBoundValues)
{
    const SemiAnalyticParams p(fam());
    const double c = p.C_cal * 4.0 * std::sqrt(std::numbers::pi);
    EXPECT_DOUBLE_EQ(cross_bound(p, 14, 15), c * std::ldexp(1.0, -15));
    EXPECT_DOUBLE_EQ(cross_bound(p, 17, 14), c * std::ldexp(1.0, -17));
    EXPECT_THROW(cross_bound(p, 14, 14), ParameterError);
    EXPECT_THROW(cross_bound(p, 12, 14), ParameterError);
}

TEST_F(SliceTest, CrossTermsBelowTheirBounds)
{
    const SemiAnalyticParams p(fam());
    for (int j = 13; j <= 20; ++j) {
        const Interval w = dominance_window(j, 4.0);
        for (int i = 13; i <= 20; ++i) {
            if (i == j)
                continue;
            double worst = 0.0;
            for (int k = 0; k <= 64; ++k)
                worst = std::max(worst, semi_H(p, i, w.lo + (w.hi - w.lo) * k / 64.0));
            EXPECT_LE(worst, cross_bound(p, i, j) * 1.05);
        }
    }
}

TEST_F(SliceTest, MarginPositiveMonotoneAndTailBounded)
{
    const SemiAnalyticParams p(fam());
    for (int j = 13; j <= 20; ++j) {
        EXPECT_GT(margin(p, j, 20), 0.0);
        if (j > 13) {
            EXPECT_GE(margin(p, j, 20), margin(p, j - 1, 20));
        }
    }
    const double tail = p.C_cal * 4.0 * std::sqrt(std::numbers::pi) * std::ldexp(1.0, -16);
    EXPECT_LE(margin(p, 14, 16) - margin(p, 14, 20), tail);
    EXPECT_GE(margin(p, 14, 16), margin(p, 14, 20));
    EXPECT_THROW(margin(p, 15, 14), ParameterError);
}

TEST_F(SliceTest, DiagonalTermExceedsTheConstantOnItsWindow)
{
    const SemiAnalyticParams p(fam());
    for (int j = 13; j <= 20; ++j) {
        const Interval w = dominance_window(j, 4.0);
        for (int k = 0; k <= 32; ++k)
            EXPECT_GE(semi_H(p, j, w.lo + (w.hi - w.lo) * k / 32.0), p.C_cal * p.E);
    }
}

TEST_F(SliceTest, ConvolutionWindowStableUnderDoubling)
{
    SemiAnalyticParams p(fam());
    SemiAnalyticParams wide(fam());
    wide.conv_half_width = 16.0;
    for (double xi : {std::ldexp(1.0, 14) + 1.3, std::ldexp(1.0, 14) + 2.9, std::ldexp(1.0, 14) - 3.0}) {
        const double a = chi3_gauss_convolution(p, 14, xi);
        const double b = chi3_gauss_convolution(wide, 14, xi);
        EXPECT_LE(std::abs(a - b), 1e-3 * std::abs(b));
    }
}
