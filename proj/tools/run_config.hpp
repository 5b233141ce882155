#pragma once

#include "sa/config.hpp"
#include "sa/potential.hpp"

#include <CLI11.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cli {

enum ExitCode : int { ok = 0, not_converged = 1, usage = 2, io = 3 };

/// Invalid option values; the message names the offending flag.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string equation = "simple";
    std::string potential = "exp";
    double coupling = 1.0;
    std::string potential_file;
    std::optional<double> rho;
    std::optional<double> e_tilde;
    std::optional<double> rho_min;
    std::optional<double> rho_max;
    std::size_t points = 10;
    bool log = false;
    std::size_t order = 0;
    double scale = 1.0;
    double tol = 1e-11;
    std::size_t max_iter = 50;
    std::size_t splines = 0;
    std::size_t spline_degree = 0;
    std::string out;
    std::string reference;
    std::vector<std::string> observables;
};

/// Global flags plus --config; flags given on the command line override the file.
void register_options(CLI::App& app, RunConfig& cfg);

/// Checks cross-field rules that single-flag validators cannot express.
void validate(const RunConfig& cfg);

[[nodiscard]] sa::EquationKind kind(const RunConfig& cfg);
[[nodiscard]] sa::Potential potential(const RunConfig& cfg);
[[nodiscard]] sa::SolverConfig solver_config(const RunConfig& cfg);
[[nodiscard]] bool wants(const RunConfig& cfg, const std::string& observable);

/// rho_min..rho_max with `points` entries, log or linear spacing.
[[nodiscard]] std::vector<double> sweep(const RunConfig& cfg);

/// The effective configuration as ordered key/value pairs for output headers; unset options are left out.
[[nodiscard]] std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg);

}  // namespace cli
