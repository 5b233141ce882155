#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "sa/grid.hpp"
#include "sa/kernels.hpp"
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

// runs f with several thread counts and checks every result equals the serial one bit for bit
template <class F>
void check_schedules(const std::vector<double>& serial, F&& omp)
{
    const int saved = omp_get_max_threads();
    for (int threads : {1, 2, 3, 7}) {
        omp_set_num_threads(threads);
        const std::vector<double> out = omp();
        REQUIRE(out.size() == serial.size());
        std::size_t mismatches = 0;
        for (std::size_t i = 0; i < out.size(); ++i) mismatches += out[i] != serial[i];
        CAPTURE(threads);
        CHECK(mismatches == 0);
    }
    omp_set_num_threads(saved);
}

}  // namespace

TEST_CASE("sine transform kernels agree")
{
    const auto g = make_grid(120, Space::position, 1.0);
    const auto c = random_vector(120, 1);
    const auto k = random_vector(90, 2, 0.0, 30.0);
    std::vector<double> serial(k.size());
    kernels::sine_transform_serial(g->nodes(), c, k, serial);
    check_schedules(serial, [&] {
        std::vector<double> out(k.size());
        kernels::sine_transform_omp(g->nodes(), c, k, out);
        return out;
    });

    // one term: c sin(kr) / (kr)
    std::vector<double> one(1);
    const std::vector<double> r{2.0}, w{3.0}, kk{0.7};
    kernels::sine_transform_serial(r, w, kk, one);
    CHECK(one[0] == doctest::Approx(3.0 * std::sin(1.4) / 1.4).epsilon(1e-15));
}

TEST_CASE("product matrix kernels agree")
{
    const auto g = make_grid(80, Space::momentum, 1.0);
    const auto primitive = [](double t) { return 4.0 * pi * t * t / (1.0 + t * t); };
    std::vector<double> serial(80 * 80);
    kernels::product_matrix_serial(g->nodes(), g->weights(), primitive, serial);
    check_schedules(serial, [&] {
        std::vector<double> out(80 * 80);
        kernels::product_matrix_omp(g->nodes(), g->weights(), primitive, out);
        return out;
    });
}

TEST_CASE("spline tensor kernels agree")
{
    const std::size_t panels = 3, per = 5, n = panels * per;
    const SplineFitter fitter(make_panel_grid(panels, per, Space::momentum, 1.0), panels, per - 1);
    std::vector<double> tensor(n * n * n);
    kernels::bilinear_tensor_serial(fitter, 24, tensor);
    check_schedules(tensor, [&] {
        std::vector<double> out(n * n * n);
        kernels::bilinear_tensor_omp(fitter, 24, out);
        return out;
    });

    const auto a = random_vector(n, 3), f = random_vector(n, 4);
    std::vector<double> y(n), m(n * n), mm(n * n);
    kernels::tensor_apply_serial(tensor, n, a, f, y);
    check_schedules(y, [&] {
        std::vector<double> out(n);
        kernels::tensor_apply_omp(tensor, n, a, f, out);
        return out;
    });
    kernels::tensor_contract_last_serial(tensor, n, f, m);
    check_schedules(m, [&] {
        std::vector<double> out(n * n);
        kernels::tensor_contract_last_omp(tensor, n, f, out);
        return out;
    });
    kernels::tensor_contract_middle_serial(tensor, n, a, mm);
    check_schedules(mm, [&] {
        std::vector<double> out(n * n);
        kernels::tensor_contract_middle_omp(tensor, n, a, out);
        return out;
    });

    // both contractions reproduce the full application
    for (std::size_t i = 0; i < n; ++i) {
        double via_last = 0.0, via_middle = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            via_last += m[i * n + j] * a[j];
            via_middle += mm[i * n + j] * f[j];
        }
        CHECK(via_last == doctest::Approx(y[i]).epsilon(1e-12));
        CHECK(via_middle == doctest::Approx(y[i]).epsilon(1e-12));
    }
}

TEST_CASE("quintuple kernels agree")
{
    kernels::QuintupleRule rule;
    const GaussRule radial = gauss_legendre(6, 0.0, 6.0);
    for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
        const double r = radial.nodes[i];
        rule.y.push_back(r);
        rule.wy.push_back(radial.weights[i] * r * r);
    }
    rule.w = rule.y;
    rule.ww = rule.wy;
    const GaussRule ang = gauss_legendre(5);
    rule.cy = ang.nodes;
    rule.wcy = ang.weights;
    rule.cw = ang.nodes;
    rule.wcw = ang.weights;
    const GaussRule az = gauss_legendre(4, 0.0, pi);
    rule.phi = az.nodes;
    rule.wphi = az.weights;

    const auto u = ChebSpline::from_function([](double r) { return std::exp(-r * r); }, 6, 8, 1.0);
    std::vector<double> uy, sw;
    for (double r : rule.y) uy.push_back(u(r));
    for (double r : rule.w) sw.push_back(std::exp(-r));
    const auto x = random_vector(11, 5, 0.0, 4.0);
    std::vector<double> serial(x.size());
    kernels::quintuple_serial(rule, u, uy, sw, x, serial);
    for (double q : serial) CHECK(std::isfinite(q));
    check_schedules(serial, [&] {
        std::vector<double> out(x.size());
        kernels::quintuple_omp(rule, u, uy, sw, x, out);
        return out;
    });
}
