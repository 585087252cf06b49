#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "czmix/czmix.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_config = 2;

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw czmix::ConfigError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw czmix::ConfigError("cannot write '" + path + "'");
    out << text;
}

double parse_exponent(const std::string& s)
{
    if (s == "inf")
        return czmix::inf_exponent;
    try {
        std::size_t used = 0;
        const double p = std::stod(s, &used);
        if (used == s.size() && p >= 1.0)
            return p;
    } catch (const std::exception&) {
    }
    throw czmix::ConfigError("exponent must be a number >= 1 or 'inf', got '" + s + "'");
}

struct CexRunArgs {
    std::optional<int> j0, nmax;
    std::optional<double> A;
    std::string config;
    std::string out;
    std::string svg;
};

int cex_run(const CexRunArgs& a)
{
    czmix::FamilyConfig cfg;
    if (!a.config.empty())
        cfg = czmix::parse_family_config(slurp(a.config));
    if (a.j0)
        cfg.j0 = *a.j0;
    if (a.nmax)
        cfg.nmax = *a.nmax;
    if (a.A)
        cfg.A = *a.A;
    const czmix::CounterexampleFamily fam = czmix::make_family(cfg);
    const czmix::CexRun run = czmix::run_counterexample(fam);
    const std::string csv = czmix::cex_csv(run);
    if (a.out.empty())
        std::cout << csv;
    else
        write_text(a.out, csv);
    if (!a.svg.empty())
        write_text(a.svg, czmix::cex_svg(run));
    const czmix::CexChecks checks = czmix::check_counterexample(run);
    for (const auto& f : checks.failures)
        std::cerr << "check failed: " << f << "\n";
    return checks.all() ? exit_ok : exit_check_failed;
}

int cex_validate(int jmin, int jmax, const czmix::PathOptions& opt)
{
    const auto rows = czmix::run_path_validation(jmin, jmax, opt);
    bool ok = true;
    for (const auto& r : rows) {
        std::cout << (r.pass ? "PASS" : "FAIL") << " j=" << r.j << " rel_l2=" << czmix::fmt12(r.rel_l2)
                  << " samples=" << r.samples << " tol=" << czmix::fmt12(opt.tol) << "\n";
        ok = ok && r.pass;
    }
    return ok ? exit_ok : exit_check_failed;
}

int interp_check(const czmix::InterpOptions& opt)
{
    const czmix::InterpReport rep = czmix::run_interpolation_check(opt);
    std::cout << "field,chain_slack,split0_slack,split1_slack,partition_exact,layer_cake_rel,A0,A1,ratio\n";
    for (const auto& r : rep.rows)
        std::cout << r.index << "," << czmix::fmt12(r.min_chain_slack) << "," << czmix::fmt12(r.min_split0_slack)
                  << "," << czmix::fmt12(r.min_split1_slack) << "," << (r.partition_exact ? 1 : 0) << ","
                  << czmix::fmt12(r.layer_cake_rel) << "," << czmix::fmt12(r.A0) << "," << czmix::fmt12(r.A1) << ","
                  << czmix::fmt12(r.ratio) << "\n";
    if (rep.rows.empty()) {
        std::cout << "empty corpus\n";
        return exit_ok;
    }
    std::cout << "A0=" << czmix::fmt12(rep.A0) << " A1=" << czmix::fmt12(rep.A1)
              << " constant^p=" << czmix::fmt12(rep.constant_pth) << " constant=" << czmix::fmt12(rep.constant)
              << " max_ratio=" << czmix::fmt12(rep.max_ratio) << "\n";
    const bool ok = rep.ok();
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? exit_ok : exit_check_failed;
}

int weak11(std::size_t corpus, std::uint64_t seed, const std::string& alphas, const std::string& out)
{
    const auto sw = czmix::run_weak11(corpus, seed, czmix::parse_alpha_spec(alphas));
    const std::string table = czmix::weak11_table(sw);
    if (out.empty())
        std::cout << table;
    else
        write_text(out, table);
    std::cout << "D_emp=" << czmix::fmt12(sw.D_emp) << "\n";
    return std::isfinite(sw.D_emp) ? exit_ok : exit_check_failed;
}

int selftest()
{
    bool ok = true;
    int id = 1;
    for (const auto& fn : czmix::acceptance::all_criteria()) {
        const auto r = czmix::acceptance::run_timed(fn, id++);
        std::cout << czmix::acceptance::format_line(r) << std::endl;
        ok = ok && r.pass;
    }
    return ok ? exit_ok : exit_check_failed;
}

int norms(const std::string& axis, const std::string& inner, const std::string& outer, const std::string& input)
{
    czmix::MixedNormSpec spec;
    spec.inner_axis = axis == "y" ? czmix::AxisId::y : czmix::AxisId::x;
    spec.inner_exponent = parse_exponent(inner);
    spec.outer_exponent = parse_exponent(outer);
    const czmix::Field2D f = czmix::read_field2d(input);
    std::cout << czmix::fmt12(czmix::mixed_norm(f, spec)) << "\n";
    return exit_ok;
}

int czd(const std::string& input, double alpha, const std::string& out)
{
    const auto any = czmix::read_field(input);
    const czmix::Field1D h =
        std::holds_alternative<czmix::Field2D>(any) ? czmix::majorant(std::get<czmix::Field2D>(any))
                                                     : std::get<czmix::Field1D>(any);
    const czmix::CZDecomposition dec = czmix::cz_decompose(h, alpha);
    const std::filesystem::path outp(out);
    const std::string stem = outp.stem().string();
    const std::filesystem::path good = outp.parent_path() / (stem + ".good.json");
    const std::filesystem::path bad = outp.parent_path() / (stem + ".bad.json");
    czmix::write_field(good.string(), dec.good);
    czmix::write_field(bad.string(), dec.bad);
    nlohmann::json j;
    j["alpha"] = alpha;
    j["intervals"] = nlohmann::json::array();
    for (const auto& q : dec.intervals)
        j["intervals"].push_back({q.a, q.b});
    j["averages"] = dec.averages;
    j["good"] = good.filename().string();
    j["bad"] = bad.filename().string();
    write_text(out, j.dump(2) + "\n");
    std::cout << dec.intervals.size() << " intervals, total length " << czmix::fmt12(dec.total_length()) << "\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Toolkit for the double Riesz transform counterexample and mixed-norm experiments"};
    app.require_subcommand(1);

    auto* cex = app.add_subcommand("cex", "counterexample family");
    cex->require_subcommand(1);
    CexRunArgs run_args;
    auto* run = cex->add_subcommand("run", "tabulate S_lower, N2, N3 and the divergence ratio");
    run->add_option("--j0", run_args.j0, "first index of the family");
    run->add_option("--nmax", run_args.nmax, "last index of the family");
    run->add_option("--a,--A", run_args.A, "width A of the frequency bump");
    run->add_option("--config", run_args.config, "JSON file holding {j0, nmax, A}");
    run->add_option("--out", run_args.out, "CSV output (stdout when absent)");
    run->add_option("--svg", run_args.svg, "SVG plot of the ratio");

    int jmin = 3, jmax = 7;
    czmix::PathOptions path;
    auto* validate = cex->add_subcommand("validate", "compare the semi-analytic and the 2-D spectral slice");
    validate->add_option("--jmin", jmin);
    validate->add_option("--jmax", jmax);
    validate->add_option("--nx", path.nx);
    validate->add_option("--ny", path.ny);
    validate->add_option("--tol", path.tol);
    validate->add_option("--a,--A", path.A);

    czmix::InterpOptions interp_opt;
    auto* interp = app.add_subcommand("interp", "interpolation machinery");
    interp->require_subcommand(1);
    auto* check = interp->add_subcommand("check", "verify the split, chain and constant inequalities on a corpus");
    check->add_option("--p0", interp_opt.p0);
    check->add_option("--p", interp_opt.p);
    check->add_option("--p1", interp_opt.p1);
    check->add_option("--corpus", interp_opt.corpus);
    check->add_option("--seed", interp_opt.seed);

    std::size_t w_corpus = 20;
    std::uint64_t w_seed = 7;
    std::string w_alphas = "0.001:10:log:40", w_out;
    auto* weak = app.add_subcommand("weak11", "empirical mixed weak-(1,1) constant");
    weak->add_option("--corpus", w_corpus);
    weak->add_option("--seed", w_seed);
    weak->add_option("--alphas", w_alphas, "lo:hi:log:n or lo:hi:lin:n");
    weak->add_option("--out", w_out);

    auto* self = app.add_subcommand("selftest", "run the acceptance suite");

    std::string n_axis = "x", n_inner = "2", n_outer = "inf", n_input;
    auto* nrm = app.add_subcommand("norms", "mixed Lebesgue norm of a 2-D field file");
    nrm->add_option("--inner-axis", n_axis)->check(CLI::IsMember({"x", "y"}));
    nrm->add_option("--inner", n_inner);
    nrm->add_option("--outer", n_outer);
    nrm->add_option("--input", n_input)->required();

    std::string c_input, c_out;
    double c_alpha = 0.0;
    auto* cz = app.add_subcommand("czd", "CZ decomposition of a field's y-majorant");
    cz->add_option("--input", c_input)->required();
    cz->add_option("--alpha", c_alpha)->required();
    cz->add_option("--out", c_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        if (run->parsed())
            return cex_run(run_args);
        if (validate->parsed())
            return cex_validate(jmin, jmax, path);
        if (check->parsed())
            return interp_check(interp_opt);
        if (weak->parsed())
            return weak11(w_corpus, w_seed, w_alphas, w_out);
        if (self->parsed())
            return selftest();
        if (nrm->parsed())
            return norms(n_axis, n_inner, n_outer, n_input);
        if (cz->parsed())
            return czd(c_input, c_alpha, c_out);
    } catch (const czmix::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "unexpected failure: " << e.what() << "\n";
        return exit_check_failed;
    }
    return exit_config;
}
