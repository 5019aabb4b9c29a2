#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "aloha/game.hpp"

namespace aloha {

enum class Outcome { converged, cycle, budget_exhausted };

const char* to_string(Outcome o);

struct Trajectory {
    std::vector<Vector> states;
    Outcome outcome = Outcome::budget_exhausted;
    /// Cycle period (0 unless outcome == cycle).
    std::size_t period = 0;
    /// Relaxation factor, or the time step for ODE runs.
    double epsilon = 1.0;

    [[nodiscard]] const Vector& final_state() const { return states.back(); }
    /// The last `period` states, oldest first.
    [[nodiscard]] std::vector<Vector> cycle_points() const;
};

struct IterateOptions {
    double tol = 1e-9;
    std::size_t max_iter = 100000;
    double epsilon = 1.0;
    double cycle_tol = 1e-6;
    std::size_t max_period = 64;
    /// Added to q0 (then clamped to [0,1]) before the first step. Empty means
    /// no offset. An exactly placed unstable fixed point is stationary, so
    /// escaping it needs an explicit nudge.
    Vector perturbation;
};

/// q <- q + epsilon (F(q) - q) until ||F(q) - q||_inf <= tol, a cycle, or the budget.
Trajectory iterate_game(const Vector& q0, const GameInstance& g, const IterateOptions& opts = {});

struct OdeOptions {
    double dt = 0.01;
    double t_end = 200.0;
    double tol = 1e-9;
};

/// Fixed-step RK4 on dq/dt = F(q) - q, clamped to [0,1]^n after every step.
Trajectory integrate_ode(const Vector& q0, const GameInstance& g, const OdeOptions& opts = {});

/// Smallest period p in [2, max_period] such that ||q_m - q_{m-p}||_inf <= cycle_tol
/// for each of the last 2p states. A constant tail yields nullopt.
std::optional<std::size_t> detect_cycle(const std::vector<Vector>& states, double cycle_tol = 1e-6,
                                        std::size_t max_period = 64);

/// Header `step,q_1,...,q_n`, one row per state.
void write_trajectory_csv(std::ostream& os, const Trajectory& t);

/// Cells of a resolution^n grid (same layout as RoaEstimate) whose game
/// iteration converges to q_star within `match_tol`.
std::vector<bool> empirical_roa(const GameInstance& g, const Vector& q_star, std::size_t resolution,
                                const IterateOptions& opts = {}, double match_tol = 1e-6);

}  // namespace aloha
