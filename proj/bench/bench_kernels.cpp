#include <omp.h>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "sa/equations.hpp"
#include "sa/grid.hpp"
#include "sa/kernels.hpp"
#include "sa/potential.hpp"
#include "sa/quadrature.hpp"
#include "sa/spline.hpp"

using namespace sa;
using std::numbers::pi;

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed, double lo = -1.0, double hi = 1.0)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> out(n);
    for (auto& x : out) x = dist(gen);
    return out;
}

// best of `repeat` wall times in milliseconds
double time_ms(const std::function<void()>& f, int repeat)
{
    double best = 1e300;
    for (int i = 0; i < repeat; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

struct Case {
    std::string name;
    std::string size;
    std::function<std::vector<double>()> serial, omp;
};

kernels::QuintupleRule quintuple_rule(std::size_t radial, std::size_t angular)
{
    kernels::QuintupleRule rule;
    const GaussRule r = gauss_legendre(radial, 0.0, 8.0);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        rule.y.push_back(r.nodes[i]);
        rule.wy.push_back(r.weights[i] * r.nodes[i] * r.nodes[i]);
    }
    rule.w = rule.y;
    rule.ww = rule.wy;
    const GaussRule c = gauss_legendre(angular);
    rule.cy = rule.cw = c.nodes;
    rule.wcy = rule.wcw = c.weights;
    const GaussRule az = gauss_legendre(angular, 0.0, pi);
    rule.phi = az.nodes;
    rule.wphi = az.weights;
    return rule;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Serial vs OpenMP timings of the solver kernels"};
    int repeat = 5, threads = 0;
    bool solves = false;
    app.add_option("--repeat", repeat, "Timed repetitions per kernel (best is reported)")->check(CLI::PositiveNumber);
    app.add_option("--threads", threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);
    app.add_flag("--solves", solves, "Also time full solves per equation kind");
    CLI11_PARSE(app, argc, argv);
    if (threads > 0) omp_set_num_threads(threads);

    std::vector<Case> cases;

    const auto x = make_grid(800, Space::position, 1.0);
    const auto c = random_vector(800, 1);
    const auto kq = make_grid(200, Space::momentum, 1.0);
    cases.push_back({"sine_transform", "800x200",
                     [&] {
                         std::vector<double> out(200);
                         kernels::sine_transform_serial(x->nodes(), c, kq->nodes(), out);
                         return out;
                     },
                     [&] {
                         std::vector<double> out(200);
                         kernels::sine_transform_omp(x->nodes(), c, kq->nodes(), out);
                         return out;
                     }});

    const auto primitive = [](double t) { return 4.0 * pi * t * t / (1.0 + t * t); };
    cases.push_back({"product_matrix", "200x200",
                     [&] {
                         std::vector<double> out(200 * 200);
                         kernels::product_matrix_serial(kq->nodes(), kq->weights(), primitive, out);
                         return out;
                     },
                     [&] {
                         std::vector<double> out(200 * 200);
                         kernels::product_matrix_omp(kq->nodes(), kq->weights(), primitive, out);
                         return out;
                     }});

    const std::size_t panels = 8, per = 13, n = panels * per;
    const SplineFitter fitter(make_panel_grid(panels, per, Space::momentum, 1.0), panels, per - 1);
    std::vector<double> tensor(n * n * n);
    kernels::bilinear_tensor_serial(fitter, 24, tensor);
    cases.push_back({"bilinear_tensor", "104^3",
                     [&] {
                         std::vector<double> out(n * n * n);
                         kernels::bilinear_tensor_serial(fitter, 24, out);
                         return out;
                     },
                     [&] {
                         std::vector<double> out(n * n * n);
                         kernels::bilinear_tensor_omp(fitter, 24, out);
                         return out;
                     }});

    const auto a = random_vector(n, 3), f = random_vector(n, 4);
    cases.push_back({"tensor_apply", "104^3",
                     [&] {
                         std::vector<double> out(n);
                         kernels::tensor_apply_serial(tensor, n, a, f, out);
                         return out;
                     },
                     [&] {
                         std::vector<double> out(n);
                         kernels::tensor_apply_omp(tensor, n, a, f, out);
                         return out;
                     }});
    cases.push_back({"tensor_contract_last", "104^3",
                     [&] {
                         std::vector<double> out(n * n);
                         kernels::tensor_contract_last_serial(tensor, n, f, out);
                         return out;
                     },
                     [&] {
                         std::vector<double> out(n * n);
                         kernels::tensor_contract_last_omp(tensor, n, f, out);
                         return out;
                     }});
    cases.push_back({"tensor_contract_middle", "104^3",
                     [&] {
                         std::vector<double> out(n * n);
                         kernels::tensor_contract_middle_serial(tensor, n, a, out);
                         return out;
                     },
                     [&] {
                         std::vector<double> out(n * n);
                         kernels::tensor_contract_middle_omp(tensor, n, a, out);
                         return out;
                     }});

    const auto rule = quintuple_rule(12, 8);
    const auto u = ChebSpline::from_function([](double r) { return std::exp(-r * r); }, 6, 8, 1.0);
    std::vector<double> uy, sw;
    for (double r : rule.y) uy.push_back(u(r));
    for (double r : rule.w) sw.push_back(std::exp(-r));
    const auto xs = random_vector(24, 5, 0.0, 4.0);
    cases.push_back({"quintuple", "24 x (12*8)^2*8",
                     [&] {
                         std::vector<double> out(xs.size());
                         kernels::quintuple_serial(rule, u, uy, sw, xs, out);
                         return out;
                     },
                     [&] {
                         std::vector<double> out(xs.size());
                         kernels::quintuple_omp(rule, u, uy, sw, xs, out);
                         return out;
                     }});

    std::printf("threads = %d\n", omp_get_max_threads());
    std::printf("%-24s %-16s %12s %12s %8s %s\n", "kernel", "size", "serial_ms", "omp_ms", "speedup", "identical");
    for (const auto& k : cases) {
        const bool same = k.serial() == k.omp();
        const double ts = time_ms([&] { (void)k.serial(); }, repeat);
        const double to = time_ms([&] { (void)k.omp(); }, repeat);
        std::printf("%-24s %-16s %12.3f %12.3f %8.2f %s\n", k.name.c_str(), k.size.c_str(), ts, to, ts / to,
                    same ? "yes" : "NO");
    }

    if (solves) {
        std::printf("\n%-10s %8s %12s %12s\n", "kind", "rho", "serial_ms", "parallel_ms");
        const auto v = catalog("exp", 1.0);
        for (auto kind : {EquationKind::simple, EquationKind::medium, EquationKind::bigeq, EquationKind::complete}) {
            SolverConfig cs, cp;
            cs.parallel = false;
            cp.parallel = true;
            const int reps = kind == EquationKind::complete ? 1 : repeat;
            const double ts = time_ms([&] { (void)solve(kind, v, 0.1, cs); }, reps);
            const double tp = time_ms([&] { (void)solve(kind, v, 0.1, cp); }, reps);
            std::printf("%-10s %8.2g %12.1f %12.1f\n", std::string(to_string(kind)).c_str(), 0.1, ts, tp);
        }
    }
    return 0;
}
