#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "czmix/harness.hpp"

using namespace czmix;

TEST(FamilyConfig, ParsesAndValidates)
{
    const FamilyConfig c = parse_family_config(R"({"j0": 14, "nmax": 20, "A": 5.5})");
    EXPECT_EQ(c.j0, 14);
    EXPECT_EQ(c.nmax, 20);
    EXPECT_EQ(c.A, 5.5);
    const FamilyConfig d = parse_family_config("{}");
    EXPECT_EQ(d.j0, 13);
    EXPECT_THROW(parse_family_config("[1,2]"), ConfigError);
    EXPECT_THROW(parse_family_config(R"({"j0": 1.5})"), ConfigError);
    EXPECT_THROW(parse_family_config(R"({"jzero": 3})"), ConfigError);
    EXPECT_THROW(parse_family_config("{"), ConfigError);
    EXPECT_THROW(make_family({13, 12, 4.0}), ConfigError);
}

TEST(Counterexample, SmallJ0IsRefusedNamingTheIndex)
{
    const CounterexampleFamily fam(3, 8, 4.0);
    try {
        (void)run_counterexample(fam);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("margin(3, 8)"), std::string::npos) << e.what();
    }
}

class CexSmall : public ::testing::Test {
protected:
    static const CexRun& run()
    {
        static const CexRun r = run_counterexample(CounterexampleFamily(13, 18, 4.0));
        return r;
    }
};

TEST_F(CexSmall, RowsAndChecks)
{
    ASSERT_EQ(run().rows.size(), 6u);
    EXPECT_EQ(run().rows.front().n, 13);
    const CexChecks c = check_counterexample(run());
    EXPECT_TRUE(c.all());
    for (const auto& f : c.failures)
        ADD_FAILURE() << f;
}

TEST_F(CexSmall, PerWindowContributionAboveMarginBound)
{
    for (std::size_t m = 0; m < run().rows.size(); ++m)
        for (std::size_t k = 0; k < run().window_integral[m].size(); ++k) {
            const double mg = run().window_margin[m][k];
            EXPECT_GE(run().window_integral[m][k], 2.0 * mg * mg);
        }
}

TEST_F(CexSmall, NormsWithinTheirBounds)
{
    for (const auto& r : run().rows) {
        EXPECT_LE(r.N2, run().D * std::numbers::e * (1.0 + 1e-9));
        EXPECT_LE(r.N3, run().D * std::pow(std::numbers::pi / 2.0, 0.25) * (1.0 + 1e-9));
        EXPECT_LE(r.S_lower, r.L2sq_y0 * (1.0 + 1e-6));
        EXPECT_NEAR(r.N2, run().rows.front().N2, 1e-9 * r.N2);
    }
}

TEST_F(CexSmall, WindowQuadratureStableUnderRefinement)
{
    CexOptions fine;
    fine.window_points = 1023;
    const CexRun r2 = run_counterexample(CounterexampleFamily(13, 18, 4.0), fine);
    for (std::size_t m = 0; m < r2.rows.size(); ++m)
        EXPECT_LE(std::abs(r2.rows[m].S_lower - run().rows[m].S_lower), 1e-3 * run().rows[m].S_lower);
}

TEST_F(CexSmall, CsvFormat)
{
    const std::string csv = cex_csv(run());
    EXPECT_EQ(csv.rfind("n,S_lower,L2sq_y0,N2,N3,margin_min,ratio\n", 0), 0u);
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
    const std::string second = csv.substr(csv.find('\n') + 1);
    EXPECT_EQ(second.substr(0, 3), "13,");
    EXPECT_EQ(fmt12(run().rows[0].S_lower), second.substr(3, second.find(',', 3) - 3));
    EXPECT_EQ(fmt12(1.0 / 3.0), "0.333333333333");
}

TEST_F(CexSmall, SvgHasOnePolyline)
{
    const std::string svg = cex_svg(run());
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_EQ(svg.find("<polyline"), svg.rfind("<polyline"));
    EXPECT_NE(svg.find("sqrt(S_lower) / N3"), std::string::npos);
}

TEST(PathValidation, EmptyRange)
{
    EXPECT_TRUE(run_path_validation(5, 4).empty());
}

TEST(PathValidation, CoarseGridRejected)
{
    PathOptions opt;
    opt.nx = 256;
    EXPECT_THROW(run_path_validation(7, 7, opt), ParameterError);
}

TEST(PathValidation, ToleranceFloor)
{
    PathOptions opt;
    opt.nx = 1024;
    opt.ny = 512;
    const auto ok = run_path_validation(5, 5, opt);
    ASSERT_EQ(ok.size(), 1u);
    EXPECT_TRUE(ok[0].pass) << ok[0].rel_l2;
    opt.tol = 1e-6;
    const auto tight = run_path_validation(5, 5, opt);
    EXPECT_FALSE(tight[0].pass);
}

TEST(AlphaSpec, LogAndLinear)
{
    const auto a = parse_alpha_spec("0.001:10:log:40");
    ASSERT_EQ(a.size(), 40u);
    EXPECT_DOUBLE_EQ(a.front(), 0.001);
    EXPECT_NEAR(a.back(), 10.0, 1e-12);
    EXPECT_NEAR(a[1] / a[0], a[2] / a[1], 1e-12);
    const auto b = parse_alpha_spec("1:2:lin:3");
    EXPECT_DOUBLE_EQ(b[1], 1.5);
    EXPECT_THROW(parse_alpha_spec("1:2:cubic:3"), ConfigError);
    EXPECT_THROW(parse_alpha_spec("0:2:log:3"), ConfigError);
    EXPECT_THROW(parse_alpha_spec("1:2:log"), ConfigError);
    EXPECT_THROW(parse_alpha_spec("1x:2:log:3"), ConfigError);
}

TEST(Weak11, EmptyCorpusGivesEmptyTable)
{
    const auto sw = run_weak11(0, 7, {0.1, 1.0});
    EXPECT_TRUE(sw.fields.empty());
    EXPECT_EQ(weak11_table(sw), "field,rhs_norm,D_emp\n");
}

TEST(Weak11, ScaleInvariance)
{
    const auto corpus = random_corpus(3, 12);
    const std::vector<double> alphas = parse_alpha_spec("0.001:10:log:12");
    std::vector<double> doubled;
    for (double a : alphas)
        doubled.push_back(2.0 * a);
    for (const auto& f : corpus) {
        std::vector<cplx> v(f.values().begin(), f.values().end());
        for (auto& z : v)
            z *= 2.0;
        const Field2D g(f.x_axis(), f.y_axis(), v);
        const auto r1 = weak11_witness(f, riesz12(), alphas);
        const auto r2 = weak11_witness(g, riesz12(), doubled);
        for (std::size_t k = 0; k < alphas.size(); ++k)
            EXPECT_NEAR(r1.rows[k].max_ratio, r2.rows[k].max_ratio, 1e-9 * std::max(1.0, r1.rows[k].max_ratio));
    }
}

TEST(Weak11, FiniteAndStableUnderRefinement)
{
    const auto alphas = parse_alpha_spec("0.001:10:log:40");
    const auto coarse = run_weak11(20, 7, alphas);
    CorpusOptions fine;
    fine.count = 512;
    const auto refined = run_weak11(20, 7, alphas, fine);
    EXPECT_TRUE(std::isfinite(coarse.D_emp));
    EXPECT_GT(coarse.D_emp, 0.0);
    EXPECT_LT(std::abs(refined.D_emp - coarse.D_emp), 0.1 * coarse.D_emp);
}

TEST(Interpolation, SmallCorpusPasses)
{
    InterpOptions opt;
    opt.corpus = 3;
    opt.alphas_per_field = 6;
    const InterpReport r = run_interpolation_check(opt);
    EXPECT_EQ(r.rows.size(), 3u);
    EXPECT_TRUE(r.ok());
    EXPECT_GE(r.min_chain_slack(), 1.0);
    EXPECT_GE(r.min_split_slack(), 1.0);
    EXPECT_TRUE(r.partition_exact());
    EXPECT_LE(r.max_ratio, r.constant);
    EXPECT_NEAR(r.constant_pth, interpolation_constant(1.0, 3.0, 2.0, r.A0, r.A1), 0.0);
}

TEST(Interpolation, RejectsBadExponents)
{
    InterpOptions opt;
    opt.p = 3.5;
    EXPECT_THROW(run_interpolation_check(opt), ParameterError);
}
