#include "aloha/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace aloha {

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::converged: return "converged";
        case Outcome::cycle: return "cycle";
        case Outcome::budget_exhausted: return "budget_exhausted";
    }
    return "unknown";
}

std::vector<Vector> Trajectory::cycle_points() const {
    if (outcome != Outcome::cycle || period == 0) return {};
    return {states.end() - static_cast<std::ptrdiff_t>(period), states.end()};
}

namespace {

Vector clamp_unit(Vector q) { return q.cwiseMax(0.0).cwiseMin(1.0); }

bool lag_sustained(const std::vector<Vector>& states, std::size_t p, double cycle_tol) {
    const std::size_t m = states.size();
    if (m < 3 * p) return false;
    for (std::size_t k = m - 2 * p; k < m; ++k)
        if (max_abs(states[k] - states[k - p]) > cycle_tol) return false;
    return true;
}

// Cycle check on the newest state: cheap lag test first, full check on a hit.
std::optional<std::size_t> newest_cycle(const std::vector<Vector>& states, double cycle_tol,
                                        std::size_t max_period) {
    const std::size_t m = states.size();
    if (m < 6) return std::nullopt;
    const Vector& last = states.back();
    for (std::size_t p = 2; p <= max_period && 3 * p <= m; ++p) {
        if (max_abs(last - states[m - 1 - p]) > cycle_tol) continue;
        if (lag_sustained(states, p, cycle_tol)) {
            if (lag_sustained(states, 1, cycle_tol)) return std::nullopt;
            return p;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::size_t> detect_cycle(const std::vector<Vector>& states, double cycle_tol,
                                        std::size_t max_period) {
    if (states.size() < 4) throw std::invalid_argument("detect_cycle needs at least 4 states");
    if (lag_sustained(states, 1, cycle_tol)) return std::nullopt;
    for (std::size_t p = 2; p <= max_period; ++p)
        if (lag_sustained(states, p, cycle_tol)) return p;
    return std::nullopt;
}

Trajectory iterate_game(const Vector& q0, const GameInstance& g, const IterateOptions& opts) {
    if (!(opts.epsilon > 0.0 && opts.epsilon <= 1.0))
        throw std::invalid_argument("iterate_game: epsilon must lie in (0, 1]");
    require_probability_vector(q0, g.size());

    Vector q = q0;
    if (opts.perturbation.size() != 0) {
        if (opts.perturbation.size() != q0.size()) throw DimensionError("iterate_game: perturbation length");
        q = clamp_unit(q + opts.perturbation);
    }

    Trajectory t;
    t.epsilon = opts.epsilon;
    t.states.push_back(q);
    for (std::size_t step = 0;; ++step) {
        const Vector f = best_response(q, g);
        if (max_abs(f - q) <= opts.tol) {
            t.outcome = Outcome::converged;
            return t;
        }
        if (step == opts.max_iter) break;
        q = opts.epsilon == 1.0 ? f : clamp_unit(q + opts.epsilon * (f - q));
        t.states.push_back(q);
        if (auto p = newest_cycle(t.states, opts.cycle_tol, opts.max_period)) {
            t.outcome = Outcome::cycle;
            t.period = *p;
            return t;
        }
    }
    t.outcome = Outcome::budget_exhausted;
    return t;
}

Trajectory integrate_ode(const Vector& q0, const GameInstance& g, const OdeOptions& opts) {
    if (!(opts.dt > 0.0)) throw std::invalid_argument("integrate_ode: dt must be positive");
    require_probability_vector(q0, g.size());

    Trajectory t;
    t.epsilon = opts.dt;
    t.states.push_back(q0);
    Vector q = q0;
    const auto steps = static_cast<std::size_t>(std::ceil(opts.t_end / opts.dt - 1e-9));
    const double h = opts.dt;
    for (std::size_t s = 0;; ++s) {
        const Vector k1 = residual(q, g);
        if (max_abs(k1) <= opts.tol) {
            t.outcome = Outcome::converged;
            return t;
        }
        if (s == steps) break;
        const Vector k2 = residual(clamp_unit(q + 0.5 * h * k1), g);
        const Vector k3 = residual(clamp_unit(q + 0.5 * h * k2), g);
        const Vector k4 = residual(clamp_unit(q + h * k3), g);
        q = clamp_unit(q + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
        t.states.push_back(q);
    }
    t.outcome = Outcome::budget_exhausted;
    return t;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
    const auto n = t.states.empty() ? 0 : t.states.front().size();
    os << "step";
    for (Eigen::Index i = 0; i < n; ++i) os << ",q_" << (i + 1);
    os << '\n';
    const auto old_precision = os.precision(12);
    for (std::size_t s = 0; s < t.states.size(); ++s) {
        os << s;
        for (Eigen::Index i = 0; i < n; ++i) os << ',' << t.states[s][i];
        os << '\n';
    }
    os.precision(old_precision);
}

std::vector<bool> empirical_roa(const GameInstance& g, const Vector& q_star, std::size_t resolution,
                                const IterateOptions& opts, double match_tol) {
    const std::size_t n = g.size();
    if (n > 4) throw std::invalid_argument("empirical_roa supports at most 4 players");
    std::size_t cells = 1;
    for (std::size_t d = 0; d < n; ++d) cells *= resolution;
    std::vector<bool> mask(cells, false);
    Vector q(static_cast<Eigen::Index>(n));
    for (std::size_t cell = 0; cell < cells; ++cell) {
        std::size_t rest = cell;
        for (std::size_t d = 0; d < n; ++d) {
            q[static_cast<Eigen::Index>(d)] =
                (static_cast<double>(rest % resolution) + 0.5) / static_cast<double>(resolution);
            rest /= resolution;
        }
        const auto run = iterate_game(q, g, opts);
        mask[cell] = run.outcome == Outcome::converged && max_abs(run.final_state() - q_star) <= match_tol;
    }
    return mask;
}

}  // namespace aloha
