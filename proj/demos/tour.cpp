// A short walk through the library: writes two sample fields, decomposes a
// step profile, and prints the first rows of the counterexample table.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>

#include "czmix/czmix.hpp"

using namespace czmix;

namespace {

Field2D gauss_strip()
{
    const UniformGrid1D gx = centered_grid(16.0, 256);
    const UniformGrid1D gy = centered_grid(8.0, 64);
    return field_from_fn(gx, gy, [](double x, double y) { return std::exp(-x * x - y * y); });
}

Field1D step()
{
    const UniformGrid1D g(0.0, 0.25, 16);
    return field_from_fn(g, [](double x) { return x < 1.0 ? 1.0 : 0.0; });
}

void write_fields(const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    write_field((dir / "gauss_strip.json").string(), gauss_strip());
    write_field((dir / "step.json").string(), step());
    std::cout << "wrote " << (dir / "gauss_strip.json").string() << " and " << (dir / "step.json").string() << "\n";
}

void tour()
{
    const Field2D g = gauss_strip();
    MixedNormSpec spec;
    spec.inner_axis = AxisId::y;
    spec.inner_exponent = inf_exponent;
    spec.outer_exponent = 2.0;
    std::cout << "|| ||g||_inf,y ||_2,x = " << fmt12(mixed_norm(g, spec)) << "  (exact (pi/2)^(1/4) = "
              << fmt12(std::pow(std::acos(-1.0) / 2.0, 0.25)) << ")\n";

    const CZDecomposition d = cz_decompose(step(), 0.3);
    std::cout << "step on [0,1), alpha 0.3:";
    for (std::size_t k = 0; k < d.intervals.size(); ++k)
        std::cout << " [" << d.intervals[k].a << ", " << d.intervals[k].b << ") avg " << d.averages[k];
    std::cout << "\n";

    const CexRun run = run_counterexample(CounterexampleFamily(13, 17, 4.0));
    std::cout << cex_csv(run);
    std::cout << "checks " << (check_counterexample(run).all() ? "hold" : "fail") << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    try {
        if (argc == 3 && std::string(argv[1]) == "--write-fields") {
            write_fields(argv[2]);
            return 0;
        }
        if (argc != 1) {
            std::cerr << "usage: czmix_demo [--write-fields DIR]\n";
            return 2;
        }
        tour();
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
