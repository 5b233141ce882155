#pragma once

#include "sa/config.hpp"
#include "sa/potential.hpp"
#include "sa/radial_fn.hpp"

namespace sa {

/// Zero-energy scattering solution of -Lap phi = (1 - phi) v.
struct ScatteringData {
    RadialFn phi_hat;  // momentum grid
    RadialFn phi;      // position grid of the same layout
    double a;          // scattering length
    std::size_t iterations;
    double residual_norm;
};

/// Newton on k^2 phi_hat = FT[(1 - phi) v] starting from the Born term v_hat / k^2.
[[nodiscard]] ScatteringData scattering_solve(const Potential& v, GridPtr momentum, const SolverConfig& cfg = {});

/// (1 / 4 pi) int (1 - phi) v, evaluated on the position grid.
[[nodiscard]] double scattering_length(const ScatteringData& sd, const Potential& v);

/// lim k^2 phi_hat(k) / 4 pi read off at the smallest momentum node.
[[nodiscard]] double scattering_length_from_cusp(const ScatteringData& sd);

}  // namespace sa
