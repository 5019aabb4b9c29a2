#include "aloha/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

#include "aloha/parallel.hpp"

namespace aloha {

LfpResult kleene_lfp(const GameInstance& g, const Vector& q0, const KleeneOptions& opts) {
    const std::size_t n = g.size();
    require_probability_vector(q0, n);
    if (!(opts.tol > 0.0)) throw std::invalid_argument("kleene_lfp: tol must be positive");
    if (!leq(q0, g.targets().values()))
        throw std::invalid_argument("kleene_lfp: q0 must lie in the initialization box [0, y]");

    LfpResult out;
    Vector q = q0;
    if (opts.record_trace) out.trace.push_back(q);
    for (;;) {
        Vector next = best_response(q, g);
        out.residual_norm = max_abs(next - q);
        if (out.residual_norm <= opts.tol) {
            out.converged = true;
            break;
        }
        if (out.iterations == opts.max_iter) break;
        q = std::move(next);
        ++out.iterations;
        if (opts.record_trace) out.trace.push_back(q);
        if (opts.stop_on_saturation && q.maxCoeff() >= 1.0) {
            out.saturated = true;
            out.residual_norm = max_abs(residual(q, g));
            break;
        }
    }
    out.saturated = out.saturated || q.maxCoeff() >= 1.0;
    out.extraneous = out.converged && q.minCoeff() >= 1.0;
    out.q_star = std::move(q);
    return out;
}

LfpResult kleene_lfp(const GameInstance& g, const KleeneOptions& opts) {
    return kleene_lfp(g, Vector::Zero(static_cast<Eigen::Index>(g.size())), opts);
}

std::vector<Vector> FixedPointSet::with_extraneous(std::size_t n) const {
    std::vector<Vector> all = points;
    if (includes_extraneous) all.push_back(Vector::Ones(static_cast<Eigen::Index>(n)));
    return all;
}

namespace {

void rate_system(const GameInstance& g, const Vector& q, Vector& h, Matrix& jac) {
    h = achieved_rate(q, g.topology()) - g.targets().values();
    jac = rate_jacobian(g.topology(), q);
}

double rate_residual_norm(const GameInstance& g, const Vector& q) {
    return max_abs(achieved_rate(q, g.topology()) - g.targets().values());
}

}  // namespace

Matrix rate_jacobian(const InterferenceMatrix& a, const Vector& q) {
    if (static_cast<std::size_t>(q.size()) != a.size()) throw DimensionError("rate_jacobian: length mismatch");
    const auto n = static_cast<Eigen::Index>(a.size());
    Matrix jac = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& nb = a.interferers(static_cast<std::size_t>(i));
        jac(i, i) = silence_product(q, a, static_cast<std::size_t>(i));
        for (std::size_t j : nb) {
            double others = 1.0;
            for (std::size_t k : nb)
                if (k != j) others *= 1.0 - q[static_cast<Eigen::Index>(k)];
            jac(i, static_cast<Eigen::Index>(j)) = -q[i] * others;
        }
    }
    return jac;
}

bool newton_fixed_point(const GameInstance& g, Vector& q, double tol, std::size_t max_iter) {
    Vector h;
    Matrix jac;
    for (std::size_t it = 0; it < max_iter; ++it) {
        rate_system(g, q, h, jac);
        const double norm = max_abs(h);
        if (!std::isfinite(norm)) return false;
        Eigen::FullPivLU<Matrix> lu(jac);
        if (!lu.isInvertible()) return false;
        const Vector step = lu.solve(-h);
        if (!step.allFinite()) return false;

        double t = 1.0;
        Vector trial = q + step;
        for (int halvings = 0; halvings < 30 && rate_residual_norm(g, trial) > norm; ++halvings) {
            t *= 0.5;
            trial = q + t * step;
        }
        q = std::move(trial);
        if (q.cwiseAbs().maxCoeff() > 1e6) return false;
        if (t * max_abs(step) <= 1e-3 * tol && rate_residual_norm(g, q) <= tol) return true;
    }
    return rate_residual_norm(g, q) <= tol * 1e-2;
}

FixedPointSet multistart_fixed_points(const GameInstance& g, const MultistartOptions& opts) {
    const std::size_t n = g.size();
    if (n > kMaxOraclePlayers) {
        std::ostringstream os;
        os << "multistart oracle limited to " << kMaxOraclePlayers << " players, got " << n;
        throw InstanceTooLarge(os.str());
    }
    if (opts.starts_per_axis == 0) throw std::invalid_argument("starts_per_axis must be positive");

    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= opts.starts_per_axis;

    const double spacing = 1.0 / static_cast<double>(opts.starts_per_axis);
    std::vector<std::optional<Vector>> roots(total);
    parallel_for(total, opts.threads, [&](std::size_t idx) {
        Vector q(static_cast<Eigen::Index>(n));
        std::size_t rest = idx;
        for (std::size_t i = 0; i < n; ++i) {
            q[static_cast<Eigen::Index>(i)] =
                (static_cast<double>(rest % opts.starts_per_axis) + 0.5) * spacing;
            rest /= opts.starts_per_axis;
        }
        if (!newton_fixed_point(g, q, opts.newton_tol, opts.max_newton_iter)) return;
        constexpr double slack = 1e-9;
        for (Eigen::Index i = 0; i < q.size(); ++i) {
            if (q[i] < -slack || q[i] >= 1.0 - 1e-12) return;
            q[i] = std::max(q[i], 0.0);
        }
        if (max_abs(residual(q, g)) > 10.0 * opts.newton_tol) return;
        roots[idx] = std::move(q);
    });

    FixedPointSet out;
    for (auto& r : roots) {
        if (!r) continue;
        const bool duplicate = std::any_of(out.points.begin(), out.points.end(), [&](const Vector& p) {
            return max_abs(p - *r) <= opts.dedup_radius;
        });
        if (!duplicate) out.points.push_back(std::move(*r));
    }
    std::sort(out.points.begin(), out.points.end(), [](const Vector& a, const Vector& b) {
        const double sa = a.sum(), sb = b.sum();
        if (sa != sb) return sa < sb;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    out.includes_extraneous = g.targets().values().maxCoeff() > 0.0;
    return out;
}

bool leq_within(const Vector& a, const Vector& b, double slack) {
    if (a.size() != b.size()) throw DimensionError("leq_within: length mismatch");
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (!(a[i] <= b[i] + slack)) return false;
    return true;
}

Vector least_of(const FixedPointSet& set, double slack) {
    if (set.points.empty()) throw std::invalid_argument("least_of: no interior fixed points");
    for (const auto& candidate : set.points) {
        const bool least = std::all_of(set.points.begin(), set.points.end(),
                                       [&](const Vector& p) { return leq_within(candidate, p, slack); });
        if (least) return candidate;
    }
    throw OrderError("least_of: fixed points have no least element (incomparable minima)");
}

}  // namespace aloha
