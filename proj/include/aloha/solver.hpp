#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "aloha/game.hpp"

namespace aloha {

struct KleeneOptions {
    double tol = 1e-10;
    std::size_t max_iter = 100000;
    /// Stop as soon as any coordinate reaches 1. The chain is ascending, so the
    /// least fixed point cannot be interior once that happens.
    bool stop_on_saturation = false;
    /// Keep every iterate in `LfpResult::trace`.
    bool record_trace = false;
};

struct LfpResult {
    Vector q_star;
    std::size_t iterations = 0;
    bool converged = false;
    double residual_norm = 0.0;
    /// Some coordinate reached 1 (network infeasible at these rates).
    bool saturated = false;
    /// Converged to the all-ones point.
    bool extraneous = false;
    std::vector<Vector> trace;

    /// Converged with every coordinate strictly below 1.
    [[nodiscard]] bool interior() const { return converged && !saturated; }
};

/// Kleene iteration q <- F(q) from q0, which must satisfy q0 <= y.
LfpResult kleene_lfp(const GameInstance& g, const Vector& q0, const KleeneOptions& opts = {});
LfpResult kleene_lfp(const GameInstance& g, const KleeneOptions& opts = {});

struct MultistartOptions {
    std::size_t starts_per_axis = 5;
    double newton_tol = 1e-10;
    std::size_t max_newton_iter = 100;
    double dedup_radius = 1e-6;
    std::size_t threads = 1;
};

/// Interior fixed points of F found by multistart Newton. The all-ones
/// point is never stored in `points`; `includes_extraneous` records that it
/// is reported alongside them.
struct FixedPointSet {
    std::vector<Vector> points;
    bool includes_extraneous = false;

    /// `points` followed by the all-ones vector when flagged.
    [[nodiscard]] std::vector<Vector> with_extraneous(std::size_t n) const;
};

inline constexpr std::size_t kMaxOraclePlayers = 8;

class InstanceTooLarge : public std::invalid_argument {
public:
    explicit InstanceTooLarge(const std::string& what) : std::invalid_argument(what) {}
};

/// No point in the set is below all the others.
class OrderError : public std::runtime_error {
public:
    explicit OrderError(const std::string& what) : std::runtime_error(what) {}
};

/// Damped Newton on q_i * prod(1 - q_j) - y_i = 0 from a uniform grid of
/// starts; keeps deduplicated roots in [0,1)^n that pass the fixed-point check.
FixedPointSet multistart_fixed_points(const GameInstance& g, const MultistartOptions& opts = {});

/// Jacobian of q -> achieved_rate(q, a); singular exactly where the
/// Jacobian of F(q) - q is, at interior points.
Matrix rate_jacobian(const InterferenceMatrix& a, const Vector& q);

/// Newton refinement of a single start. Returns false when it fails to converge.
bool newton_fixed_point(const GameInstance& g, Vector& q, double tol, std::size_t max_iter);

/// Componentwise a <= b + slack.
bool leq_within(const Vector& a, const Vector& b, double slack);

/// The point below every other point of the set (within `slack`).
Vector least_of(const FixedPointSet& set, double slack = 1e-9);

}  // namespace aloha
