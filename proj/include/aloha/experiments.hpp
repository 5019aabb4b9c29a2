#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "aloha/game.hpp"
#include "aloha/solver.hpp"
#include "aloha/stability.hpp"
#include "aloha/topology.hpp"

namespace aloha {

/// Step-grid searches assume feasibility is monotone in the searched
/// parameter. `bracket` probes exponentially then bisects; `linear` walks
/// the grid upward and stops at the first failure. Under monotonicity both
/// return the same grid point.
enum class GridSearch { bracket, linear };

/// Kleene settings used inside sweeps (saturation stops early).
KleeneOptions sweep_kleene_options();

struct StableLfp {
    bool feasible = false;
    Vector q_star;
    std::optional<StabilityVerdict> verdict;
};

/// Least fixed point from 0, accepted only if interior and strictly
/// positive definite (marginal counts as unstable).
StableLfp stable_lfp(const GameInstance& g, const KleeneOptions& kleene = sweep_kleene_options());

// ---------------------------------------------------------------- bifurcation

struct BifurcationSlice {
    double parameter = 0.0;
    std::vector<Vector> points;
    std::vector<StabilityVerdict> verdicts;
};

struct BifurcationBranch {
    std::size_t varying_index = 0;
    std::vector<BifurcationSlice> slices;
    /// Last grid value with at least two interior fixed points.
    std::optional<double> last_two_branch_value;
    /// Fold located by Newton on {rate residual = 0, det = 0}, seeded between
    /// the two branches at the last two-branch grid value.
    std::optional<double> critical_value;
    Vector critical_point;
    std::vector<double> critical_minors;
};

BifurcationBranch bifurcation_sweep(const InterferenceMatrix& a, const Vector& fixed_rates,
                                    std::size_t varying_index, double from, double to, double step,
                                    const MultistartOptions& oracle = {});

/// Header `y<k>,branch_id,q1,...,qn,stable`; branch 0 is the least point.
void write_bifurcation_csv(std::ostream& os, const BifurcationBranch& b);

// ---------------------------------------------------------------- rate search

struct CommonRateResult {
    double y_max = 0.0;
    Vector q_star;
};

inline constexpr double kRateStep = 0.001;

/// Largest common rate on the step grid with a stable interior least fixed point.
CommonRateResult max_common_rate(const InterferenceMatrix& a, double step = kRateStep,
                                 GridSearch search = GridSearch::bracket);

struct FeasibleSurface {
    std::vector<double> y1_values;
    std::vector<double> y3_values;
    /// max_y2[i * y3_values.size() + j]; NaN where (y1, y3) is infeasible even with y2 = 0.
    std::vector<double> max_y2;

    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return max_y2[i * y3_values.size() + j]; }
};

/// Three-player surface of the largest stable y2 over a (y1, y3) grid.
FeasibleSurface feasible_contour(const InterferenceMatrix& a, const std::vector<double>& y1_grid,
                                 const std::vector<double>& y3_grid, double step = kRateStep);

/// Header `y1,y3,max_y2`.
void write_contour_csv(std::ostream& os, const FeasibleSurface& s);

// ---------------------------------------------------------------- sum-rate scaling

inline constexpr double kScaleStep = 0.01;

struct DemandScaling {
    double k_max = 1.0;
    /// Bisected continuous boundary in [k_max, k_max + step).
    double k_boundary = 1.0;
    Vector rates;
    Vector q_star;
    double sum_rate = 0.0;
};

/// Largest k on a 0.01 grid such that k*y keeps a stable interior least fixed point.
DemandScaling scale_demand_kmax(const GameInstance& g, double step = kScaleStep);

struct ProbabilityScaling {
    double b_max = 1.0;
    double b_boundary = 1.0;
    Vector induced_rates;
    Vector scaled_q;
    double sum_rate = 0.0;
};

/// Largest b on a 0.01 grid with b*q_star inside [0,1)^n and C(b*q_star)
/// positive definite; rates are those b*q_star achieves.
ProbabilityScaling scale_probability_bmax(const GameInstance& g, const Vector& q_star, double step = kScaleStep);

// ---------------------------------------------------------------- topology sweeps

struct SweepRecord {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    double side = 0.0;
    double connectivity = 0.0;
    double y_max = 0.0;
    double total_throughput = 0.0;
    double avg_q = 0.0;
};

struct SweepOptions {
    double step = kRateStep;
    EdgeRule rule = EdgeRule::mutual_reach;
    std::size_t threads = 1;
};

struct SettingSummary {
    std::size_t n = 0;
    double density = 0.0;
    double side = 0.0;
    std::size_t trials = 0;
    double mean_connectivity = 0.0;
    double mean_y_max = 0.0;
    double mean_total_throughput = 0.0;
    double mean_avg_q = 0.0;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::vector<SettingSummary> settings;
    /// Fully connected reference runs (seed 0, one per setting where computed).
    std::vector<SweepRecord> fully_connected;
};

/// Seed of trial `trial` in setting `setting`, derived from the base seed by splitmix64.
std::uint64_t trial_seed(std::uint64_t base, std::size_t setting, std::size_t trial);

/// One random topology plus its maximum common rate.
SweepRecord sweep_trial(std::size_t n, double side, std::uint64_t seed, const SweepOptions& opts);

/// Fixed n, varying density; the fully connected reference is computed once for n.
SweepResult density_sweep(std::size_t n, const std::vector<double>& densities, std::size_t trials,
                          std::uint64_t seed, const SweepOptions& opts = {});

inline constexpr std::size_t kFullyConnectedBaselineMaxN = 50;

/// Fixed density, varying n; fully connected baseline for n <= 50.
SweepResult size_sweep(double density, const std::vector<std::size_t>& n_values, std::size_t trials,
                       std::uint64_t seed, const SweepOptions& opts = {});

/// Fully connected record for n players.
SweepRecord fully_connected_record(std::size_t n, double step = kRateStep);

/// Header `seed,n,side,connectivity,y_max,total_throughput,avg_q`.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);

// ---------------------------------------------------------------- power law

struct PowerLawSegment {
    bool fitted = false;
    std::size_t count = 0;
    double coefficient = 0.0;
    double exponent = 0.0;
    double r_squared = 0.0;
    double rms_log_residual = 0.0;
};

struct PowerLawFit {
    double break_x = 0.1;
    PowerLawSegment low;   ///< X < break_x
    PowerLawSegment high;  ///< X >= break_x
};

/// Independent least-squares lines in (log X, log Y) on each side of break_x.
/// A side with fewer than two points is left unfitted; throws if neither side fits.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points, double break_x = 0.1);

/// (connectivity, total_throughput) pairs with positive connectivity.
std::vector<std::pair<double, double>> connectivity_throughput(const std::vector<SweepRecord>& records);

/// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace aloha
