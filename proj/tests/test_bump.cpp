#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "czmix/bump.hpp"
#include "czmix/fourier.hpp"

using namespace czmix;

TEST(SmoothBump, PlateauSupportAndRampMidpoint)
{
    const SmoothBump b = make_bump({0.0, 4.0}, {0.25, 3.75});
    EXPECT_EQ(b(2.0), 1.0);
    EXPECT_EQ(b(-0.1), 0.0);
    EXPECT_EQ(b(4.5), 0.0);
    EXPECT_NEAR(b(0.125), 0.5, 1e-15);
    EXPECT_NEAR(b(3.875), 0.5, 1e-15);
}

TEST(SmoothBump, RejectsBadOrdering)
{
    EXPECT_THROW(make_bump({0.0, 1.0}, {0.5, 0.4}), ParameterError);
    EXPECT_THROW(make_bump({0.0, 1.0}, {0.0, 0.5}), ParameterError);
    EXPECT_THROW(make_bump({0.0, 1.0}, {0.2, 1.0}), ParameterError);
}

TEST(SmoothBump, ValuesInUnitIntervalWithBoundedDerivatives)
{
    const SmoothBump b = make_bump({0.0, 4.0}, {0.25, 3.75});
    const double h = 1e-2;
    double d4 = 0.0;
    for (int k = -20; k <= 420; ++k) {
        const double x = k * 0.01;
        const double v = b(x);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
        const double fd = (b(x + 2 * h) - 4 * b(x + h) + 6 * v - 4 * b(x - h) + b(x - 2 * h)) / std::pow(h, 4);
        d4 = std::max(d4, std::abs(fd));
    }
    EXPECT_TRUE(std::isfinite(d4));
    EXPECT_LT(d4, 1e7);
}

TEST(Chi1, SupportAndPlateau)
{
    const SmoothBump c = chi1(5);
    EXPECT_EQ(c(std::ldexp(1.0, -5) + std::ldexp(1.0, -15) * 16.0), 1.0);
    EXPECT_DOUBLE_EQ(c.support().lo, std::ldexp(1.0, -5));
    EXPECT_DOUBLE_EQ(c.support().hi, std::ldexp(1.0, -4));
    EXPECT_DOUBLE_EQ(c.plateau().lo, std::ldexp(1.0, -5) + std::ldexp(1.0, -15));
    EXPECT_EQ(c(std::ldexp(1.0, -3)), 0.0);
}

TEST(Chi1, SupportsAreDisjointAcrossScales)
{
    for (int k = 0; k < 2000; ++k) {
        const double y = 1e-4 + k * 5e-4;
        int nonzero = 0;
        for (int j = 1; j <= 14; ++j)
            nonzero += chi1(j)(y) != 0.0 ? 1 : 0;
        EXPECT_LE(nonzero, 1) << "y = " << y;
    }
}

TEST(Chi1, GaussianWeightStaysBelowE)
{
    for (int j = 1; j <= 20; ++j) {
        const SmoothBump c = chi1(j);
        for (int k = 0; k <= 64; ++k) {
            const double y = c.support().lo + (c.support().hi - c.support().lo) * k / 64.0;
            EXPECT_LE(std::exp(y * y) * c(y), std::numbers::e);
        }
    }
}

TEST(Chi3, ShiftedPlateauAndEvenSymmetry)
{
    const SmoothBump chi = make_chi(4.0);
    EXPECT_EQ(chi3(4, chi, 17.0), 1.0);
    EXPECT_EQ(chi3(4, chi, -17.0), 1.0);
    EXPECT_EQ(chi3(4, chi, 0.0), 0.0);
    for (double xi : {15.9, 16.1, 18.3, 19.95})
        EXPECT_EQ(chi3(4, chi, xi), chi3(4, chi, -xi));
}

TEST(Chi, RejectsOutOfRangeA)
{
    EXPECT_THROW(make_chi(2.5), ParameterError);
    EXPECT_THROW(make_chi(101.0), ParameterError);
}

class FamilyTest : public ::testing::Test {
protected:
    static const CounterexampleFamily& fam()
    {
        static const CounterexampleFamily f(3, 8, 4.0);
        return f;
    }
};

TEST_F(FamilyTest, DIsPositiveAndAtLeastTheValueAtZero)
{
    const double v0 = std::abs(fam().inv_ft_chi(0.0));
    EXPECT_GT(fam().D(), 0.0);
    EXPECT_GE(fam().D(), v0);
    // both transforms peak at 0 for a nonnegative chi: D = 2 (2 pi)^{-1/2} integral chi
    const double integral = trapezoid(0.0, 4.0, 40001, [&](double t) { return fam().chi()(t); });
    EXPECT_NEAR(fam().D(), 2.0 * integral / std::sqrt(2.0 * std::numbers::pi), 1e-9);
}

TEST_F(FamilyTest, DStableUnderSampleRefinement)
{
    const CounterexampleFamily fine(3, 8, 4.0, CounterexampleFamily::default_nodes_per_unit, 1.0 / 128.0);
    EXPECT_LT(std::abs(fine.D() - fam().D()) / fam().D(), 1e-3);
}

TEST_F(FamilyTest, ModulationBoundAndValueAtZero)
{
    const double at0 = fam().inv_ft_chi3(3, 0.0);
    for (int j = 3; j <= 8; ++j) {
        EXPECT_NEAR(fam().inv_ft_chi3(j, 0.0), at0, 1e-14);
        for (int k = -400; k <= 400; ++k)
            EXPECT_LE(std::abs(fam().inv_ft_chi3(j, k * 0.02)), fam().D() * (1.0 + 1e-12));
    }
    EXPECT_NEAR(at0, 2.0 * fam().inv_ft_chi(0.0).real(), 1e-15);
}

TEST_F(FamilyTest, ModulationMatchesDiscreteInverseTransform)
{
    for (int j = 3; j <= 8; ++j) {
        // frequency grid fine enough for the bump, x grid wide enough for its transform
        const std::size_t n = 131072;
        const double L = 512.0;
        const UniformGrid1D xg = centered_grid(L, n);
        const UniformGrid1D fg = frequency_grid(xg);
        std::vector<cplx> s(n);
        for (std::size_t k = 0; k < n; ++k)
            s[k] = chi3(j, fam().chi(), fg.point(k));
        const Field1D f = ift1(Spectrum1D(Axis(fg, Domain::frequency, xg.start()), s));
        double err = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double x = xg.point(k);
            if (std::abs(x) <= 8.0)
                err = std::max(err, std::abs(f[k] - fam().inv_ft_chi3(j, x)));
        }
        EXPECT_LE(err, 1e-6) << "j = " << j;
    }
}

TEST_F(FamilyTest, FjVanishesOutsideItsStrip)
{
    EXPECT_EQ(fam().f_j(4, 0.3, std::ldexp(1.0, -2)), 0.0);
    EXPECT_EQ(fam().f_j(4, 0.3, 0.0), 0.0);
    EXPECT_NE(fam().f_j(4, 0.0, 1.5 * std::ldexp(1.0, -4)), 0.0);
    EXPECT_THROW(fam().f_j(9, 0.0, 0.0), ParameterError);
    EXPECT_THROW(fam().f_j(2, 0.0, 0.0), ParameterError);
}

TEST_F(FamilyTest, FjBoundedByGaussianEnvelope)
{
    for (int j = 3; j <= 8; ++j) {
        const SmoothBump c = chi1(j);
        for (int kx = -100; kx <= 100; ++kx)
            for (int ky = 0; ky <= 16; ++ky) {
                const double x = kx * 0.05;
                const double y = c.support().lo + (c.support().hi - c.support().lo) * ky / 16.0;
                const double v = fam().f_j(j, x, y);
                EXPECT_LE(std::abs(v), fam().D() * std::exp(-x * x) * (1.0 + 1e-12));
                EXPECT_LE(std::exp(y * y) * std::abs(fam().inv_ft_chi3(j, x)) * c(y), fam().D() * std::numbers::e);
            }
    }
}

TEST_F(FamilyTest, GnIsTheSumOfTheFj)
{
    for (int kx = -20; kx <= 20; ++kx)
        for (int ky = 1; ky <= 300; ++ky) {
            const double x = kx * 0.1;
            const double y = ky * 1e-3;
            EXPECT_EQ(fam().g_n(4, x, y) - fam().f_j(3, x, y) - fam().f_j(4, x, y), 0.0);
        }
}

TEST_F(FamilyTest, SampledFieldsMatchPointwise)
{
    const UniformGrid1D xg = centered_grid(8.0, 32);
    const UniformGrid1D yg(0.0, 1.0 / 64.0, 40);
    const Field2D g = fam().sample_g_n(5, xg, yg);
    for (std::size_t j = 0; j < yg.count(); ++j)
        for (std::size_t i = 0; i < xg.count(); ++i)
            EXPECT_NEAR(g.value(i, j).real(), fam().g_n(5, xg.point(i), yg.point(j)), 1e-15);
}

TEST(Family, RejectsBadParameters)
{
    EXPECT_THROW(CounterexampleFamily(1, 5, 4.0), ParameterError);
    EXPECT_THROW(CounterexampleFamily(5, 5, 4.0), ParameterError);
    EXPECT_THROW(CounterexampleFamily(5, 8, 2.0), ParameterError);
}
