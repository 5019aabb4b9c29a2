// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aloha/dynamics.hpp"
#include "aloha/experiments.hpp"
#include "aloha/solver.hpp"
#include "aloha/stability.hpp"
#include "aloha/topology.hpp"

using namespace aloha;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << ". " << name << ": " << detail << '\n';
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool near(const Vector& a, const Vector& b, double tol) { return a.size() == b.size() && max_abs(a - b) <= tol; }

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

std::string fmt(const Vector& v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    os << '[';
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
    return os.str();
}

std::string fmt(double x, int digits = 4) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << x;
    return os.str();
}

GameInstance chain_game(double y1, double y2, double y3) {
    return GameInstance(InterferenceMatrix::chain(3), TargetRates(vec({y1, y2, y3})));
}

void criterion_fixed_points() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto g = chain_game(0.15, 0.15, 0.15);
    const auto lfp = kleene_lfp(g);
    const auto set = multistart_fixed_points(g);
    const double elapsed = seconds_since(t0);

    const Vector want_low = vec({0.1952, 0.2316, 0.1952});
    const Vector want_high = vec({0.5451, 0.7248, 0.5451});
    const bool low_ok = lfp.interior() && near(lfp.q_star, want_low, 5e-4);
    const bool high_found = std::any_of(set.points.begin(), set.points.end(),
                                        [&](const Vector& p) { return near(p, want_high, 5e-4); });
    const bool low_found = std::any_of(set.points.begin(), set.points.end(),
                                       [&](const Vector& p) { return near(p, want_low, 5e-4); });
    report(1, "fixed-point reproduction", low_ok && high_found && low_found && elapsed < 1.0,
           "lfp=" + fmt(lfp.q_star) + " oracle_points=" + std::to_string(set.points.size()) +
               " second=" + (high_found ? fmt(want_high) : std::string("missing")) + " time=" + fmt(elapsed, 3) + "s");
}

void criterion_stability() {
    const auto g = chain_game(0.15, 0.15, 0.15);
    const Vector q_star = kleene_lfp(g).q_star;
    const auto set = multistart_fixed_points(g);
    Vector p_s = set.points.back();
    const auto v_low = krasovskii_verdict(q_star, g);
    const auto v_high = krasovskii_verdict(p_s, g);

    IterateOptions it;
    const auto from_y = iterate_game(g.targets().values(), g, it);
    std::size_t first_close = from_y.states.size();
    for (std::size_t k = 0; k < from_y.states.size(); ++k) {
        if (max_abs(from_y.states[k] - q_star) <= 1e-3) {
            first_close = k;
            break;
        }
    }

    IterateOptions nudge;
    nudge.perturbation = vec({1e-6, -1e-6, 1e-6});
    const auto from_ps = iterate_game(p_s, g, nudge);
    const Vector c1 = vec({0.1952, 1.0, 0.1952}), c2 = vec({1.0, 0.2316, 1.0});
    bool cycle_ok = from_ps.outcome == Outcome::cycle && from_ps.period == 2;
    if (cycle_ok) {
        const auto pts = from_ps.cycle_points();
        cycle_ok = (near(pts[0], c1, 1e-3) && near(pts[1], c2, 1e-3)) ||
                   (near(pts[0], c2, 1e-3) && near(pts[1], c1, 1e-3));
    }
    std::string cycle_text = to_string(from_ps.outcome);
    if (from_ps.outcome == Outcome::cycle) {
        const auto pts = from_ps.cycle_points();
        cycle_text += " {" + fmt(pts[0]) + "," + fmt(pts[1 % pts.size()]) + "}";
    }
    const bool ok = v_low.stable() && !v_high.stable() && first_close <= 10 && cycle_ok;
    report(2, "stability verdicts and dynamics", ok,
           std::string("q*=") + (v_low.stable() ? "stable" : "unstable") + " p_s=" +
               (v_high.stable() ? "stable" : "unstable") + " iterations_to_1e-3=" + std::to_string(first_close) +
               " perturbed=" + cycle_text);
}

void criterion_bifurcation() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto b = bifurcation_sweep(InterferenceMatrix::chain(3), vec({0.15, 0.0, 0.15}), 1, 0.0, 0.30, 0.001);
    const double elapsed = seconds_since(t0);
    if (!b.critical_value) {
        report(3, "fold bifurcation", false, "no two-branch region found");
        return;
    }
    double smallest = INFINITY;
    for (double m : b.critical_minors) smallest = std::min(smallest, std::abs(m));
    const bool ok = std::abs(*b.critical_value - 0.246) <= 0.001 &&
                    near(b.critical_point, vec({0.3138, 0.5223, 0.3138}), 1e-3) && smallest < 0.05 && elapsed < 60.0;
    report(3, "fold bifurcation", ok,
           "critical=" + fmt(*b.critical_value) + " point=" + fmt(b.critical_point) +
               " smallest_minor=" + fmt(smallest) + " time=" + fmt(elapsed, 2) + "s");
}

void criterion_scaling() {
    const auto g = chain_game(0.15, 0.15, 0.15);
    const auto k = scale_demand_kmax(g);
    const auto b = scale_probability_bmax(g, kleene_lfp(g).q_star);
    const bool k_ok = std::abs(k.k_max - 1.27) <= 0.01 && std::abs(k.sum_rate - 0.5715) <= 0.002 &&
                      near(k.q_star, vec({0.3336, 0.4290, 0.3336}), 1e-3);
    const bool b_ok = std::abs(b.b_max - 1.94) <= 0.01 && std::abs(b.sum_rate - 0.5905) <= 0.002 &&
                      near(b.scaled_q, vec({0.3787, 0.4493, 0.3787}), 1e-3);
    report(4, "sum-rate scaling", k_ok && b_ok,
           "k_max=" + fmt(k.k_max, 2) + " sum=" + fmt(k.sum_rate) + " q=" + fmt(k.q_star) + "; b_max=" +
               fmt(b.b_max, 2) + " sum=" + fmt(b.sum_rate) + " q=" + fmt(b.scaled_q));
}

void criterion_fully_connected() {
    const auto r = size_sweep(0.1, {10, 20, 30, 40, 50}, 1, 5);
    bool ok = r.fully_connected.size() == 5;
    std::string detail;
    for (const auto& f : r.fully_connected) {
        ok = ok && std::abs(f.total_throughput - 0.37) <= 0.05;
        detail += "n=" + std::to_string(f.n) + ":" + fmt(f.total_throughput, 3) + " ";
    }
    detail += "(1/e=" + fmt(std::exp(-1.0), 3) + ")";
    report(5, "fully connected baseline", ok, detail);
}

void criterion_connectivity_law() {
    const auto t0 = std::chrono::steady_clock::now();
    SweepOptions opts;
    const std::size_t trials = 30;
    const auto dens = density_sweep(20, {0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0, 1.5, 2.0}, trials, 1, opts);
    const auto size = size_sweep(0.1, {10, 20, 30, 40, 50, 60}, trials, 2, opts);
    std::vector<SweepRecord> pooled = dens.records;
    pooled.insert(pooled.end(), size.records.begin(), size.records.end());
    const auto pts = connectivity_throughput(pooled);
    std::vector<double> x, y;
    for (const auto& [cx, cy] : pts) {
        x.push_back(cx);
        y.push_back(cy);
    }
    const double rho = spearman(x, y);
    const auto fit = fit_power_law(pts, 0.1);
    const double elapsed = seconds_since(t0);

    const bool loose = fit.low.fitted && fit.high.fitted && std::abs(fit.low.exponent + 0.47) <= 0.15 &&
                       std::abs(fit.high.exponent + 0.82) <= 0.15 && std::abs(fit.high.coefficient - 0.37) <= 0.1;
    const bool ok = rho < -0.8 && loose && elapsed < 600.0;
    report(6, "connectivity power law", ok,
           std::string("rule=") + to_string(opts.rule) + " points=" + std::to_string(pts.size()) +
               " spearman=" + fmt(rho, 3) + " low=(" + fmt(fit.low.coefficient, 3) + "," +
               fmt(fit.low.exponent, 3) + ") high=(" + fmt(fit.high.coefficient, 3) + "," +
               fmt(fit.high.exponent, 3) + ") time=" + fmt(elapsed, 2) + "s");
}

struct PropertyCounts {
    std::size_t range = 0, monotone = 0, ascending = 0, least = 0, init_box = 0, unstable_least = 0, jacobian = 0,
                dominance = 0;
    std::size_t roots = 0, jacobian_points = 0, dominant_points = 0;
};

GameInstance random_instance(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> size_dist(1, 4);
    std::bernoulli_distribution edge(0.6);
    std::bernoulli_distribution zero_rate(0.1);
    std::uniform_real_distribution<double> rate(0.0, 0.35);
    const auto n = static_cast<std::size_t>(size_dist(rng));
    InterferenceMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && edge(rng)) a.set(i, j, true);
    Vector y(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = zero_rate(rng) ? 0.0 : rate(rng);
    return GameInstance(a, TargetRates(y));
}

Vector uniform_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    Vector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = u(rng);
    return v;
}

void check_instance(const GameInstance& g, std::mt19937_64& rng, PropertyCounts& c) {
    const std::size_t n = g.size();
    const Vector& y = g.targets().values();

    for (int s = 0; s < 5; ++s) {
        const Vector q = uniform_vector(rng, n, 0.0, 1.0);
        const Vector f = best_response(q, g);
        if (f.minCoeff() < 0.0 || f.maxCoeff() > 1.0) ++c.range;
        const Vector hi = (q + uniform_vector(rng, n, 0.0, 0.5)).cwiseMin(1.0);
        if (!leq_within(f, best_response(hi, g), 1e-15)) ++c.monotone;
    }

    KleeneOptions traced;
    traced.tol = 1e-13;
    traced.record_trace = true;
    const auto lfp = kleene_lfp(g, traced);
    for (std::size_t k = 1; k < lfp.trace.size(); ++k)
        if (!leq(lfp.trace[k - 1], lfp.trace[k])) {
            ++c.ascending;
            break;
        }

    const auto set = multistart_fixed_points(g);
    c.roots += set.points.size();
    if (lfp.converged)
        for (const auto& p : set.points)
            if (!leq_within(lfp.q_star, p, 1e-8)) ++c.least;

    if (lfp.interior()) {
        KleeneOptions o;
        o.tol = 1e-13;
        const Vector q0 = y.cwiseProduct(uniform_vector(rng, n, 0.0, 1.0));
        const auto other = kleene_lfp(g, q0, o);
        if (!other.interior() || max_abs(other.q_star - lfp.q_star) > 1e-8) ++c.init_box;
    }

    if (!set.points.empty() && least_point_consistency(set, g).violation) ++c.unstable_least;

    for (int s = 0; s < 3; ++s) {
        const Vector q = uniform_vector(rng, n, 0.01, 0.9);
        if (best_response(q, g).maxCoeff() >= 1.0) continue;
        ++c.jacobian_points;
        const Matrix j = jacobian_at(q, g);
        const double h = 1e-6;
        for (std::size_t col = 0; col < n; ++col) {
            Vector up = q, down = q;
            up[static_cast<Eigen::Index>(col)] += h;
            down[static_cast<Eigen::Index>(col)] -= h;
            const Vector fd = (residual(up, g) - residual(down, g)) / (2.0 * h);
            for (std::size_t row = 0; row < n; ++row) {
                const double exact = j(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
                if (std::abs(exact - fd[static_cast<Eigen::Index>(row)]) > 1e-6 * std::max(1.0, std::abs(exact))) {
                    ++c.jacobian;
                    col = n;
                    break;
                }
            }
        }
    }

    for (const auto& p : set.points) {
        if (!diag_dominant(p, g.topology())) continue;
        ++c.dominant_points;
        if (!sylvester_pd(c_matrix_at_fixed_point(p, g.topology())).positive_definite()) ++c.dominance;
    }
}

void criterion_properties() {
    std::mt19937_64 rng(20240607);
    PropertyCounts c;
    const std::size_t instances = 1000;
    for (std::size_t k = 0; k < instances; ++k) check_instance(random_instance(rng), rng, c);
    const std::size_t total = c.range + c.monotone + c.ascending + c.least + c.init_box + c.unstable_least + c.jacobian +
                              c.dominance;
    std::ostringstream os;
    os << "instances=" << instances << " roots=" << c.roots << " violations: range=" << c.range
       << " monotone=" << c.monotone << " ascending=" << c.ascending << " least=" << c.least
       << " init_box=" << c.init_box << " unstable_least=" << c.unstable_least << " jacobian=" << c.jacobian << "/"
       << c.jacobian_points << " dominance=" << c.dominance << "/" << c.dominant_points;
    report(7, "property suites", total == 0, os.str());
}

}  // namespace

int main() {
    criterion_fixed_points();
    criterion_stability();
    criterion_bifurcation();
    criterion_scaling();
    criterion_fully_connected();
    criterion_connectivity_law();
    criterion_properties();
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}
