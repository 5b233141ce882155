#pragma once

#include <cstddef>
#include <vector>

namespace sa {

struct GaussRule {
    std::vector<double> nodes;   // ascending, in (-1, 1)
    std::vector<double> weights;
};

/// Gauss-Legendre rule of order n on [-1, 1].
[[nodiscard]] GaussRule gauss_legendre(std::size_t n);

/// Gauss-Legendre rule mapped to [a, b].
[[nodiscard]] GaussRule gauss_legendre(std::size_t n, double a, double b);

}  // namespace sa
