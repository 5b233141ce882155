#include "sa/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace sa {
namespace {

// (P_n(x), P_n'(x)) by the three-term recurrence
std::pair<double, double> legendre(std::size_t n, double x)
{
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
    }
    const double dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

}  // namespace

GaussRule gauss_legendre(std::size_t n)
{
    if (n == 0) throw std::invalid_argument("gauss_legendre: order must be at least 1");
    GaussRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        if (n % 2 == 1 && i == half - 1) x = 0.0;
        const double dp = legendre(n, x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

GaussRule gauss_legendre(std::size_t n, double a, double b)
{
    GaussRule rule = gauss_legendre(n);
    const double h = 0.5 * (b - a), m = 0.5 * (b + a);
    for (std::size_t i = 0; i < n; ++i) {
        rule.nodes[i] = m + h * rule.nodes[i];
        rule.weights[i] *= h;
    }
    return rule;
}

}  // namespace sa
