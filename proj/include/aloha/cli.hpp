#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aloha/game.hpp"
#include "aloha/topology.hpp"

namespace aloha::cli {

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by parse_args for --help; carries the rendered help text.
struct HelpRequested {
    std::string text;
};

struct RunConfig {
    std::string command;

    // Topology source, resolved to `matrix` during parsing.
    std::optional<std::string> topology_path;
    std::optional<std::size_t> chain_n;
    std::optional<std::size_t> full_n;
    std::vector<std::size_t> n_values;
    std::vector<double> densities;
    std::optional<double> side;
    std::uint64_t seed = 1;
    EdgeRule edge_rule = EdgeRule::mutual_reach;
    std::optional<InterferenceMatrix> matrix;
    std::optional<NodePlacement> placement;

    /// Per-player rates after broadcasting a single value.
    Vector rates;

    double tol = 1e-10;
    std::size_t max_iter = 100000;

    // simulate
    std::string mode = "iterate";
    double epsilon = 1.0;
    std::vector<double> q0;
    std::vector<double> perturb;
    double dt = 0.01;
    double t_end = 200.0;
    double cycle_tol = 1e-6;
    std::size_t max_period = 64;

    // stability
    std::size_t roa_resolution = 0;

    // bifurcate / feasible / sweeps
    std::size_t vary = 2;
    double from = 0.0;
    double to = 0.30;
    double step = 0.001;
    std::size_t starts_per_axis = 5;
    double newton_tol = 1e-10;
    double grid_step = 0.05;
    double grid_max = 0.30;
    std::size_t trials = 100;
    double scale_step = 0.01;

    // fit
    std::optional<std::string> input_path;
    double break_x = 0.1;

    std::optional<std::string> out_path;
    std::size_t threads = 1;
};

/// Validates arguments and loads the topology. argv[0] is the program name.
RunConfig parse_args(const std::vector<std::string>& argv);

/// Executes a parsed command: 0 on success, 2 on an infeasible or unstable
/// verdict, 1 on errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with usage errors mapped to exit code 1.
int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

/// `[a,b,c]` with four decimals.
std::string format_vector(const Vector& v);

}  // namespace aloha::cli
