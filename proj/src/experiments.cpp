#include "aloha/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "aloha/parallel.hpp"

namespace aloha {

namespace {

// Largest k in [lo, hi] with pred(k), assuming pred is true on a prefix.
template <typename Pred>
std::optional<std::size_t> largest_true(std::size_t lo, std::size_t hi, Pred&& pred, GridSearch mode) {
    if (lo > hi || !pred(lo)) return std::nullopt;
    std::size_t good = lo;
    if (mode == GridSearch::linear) {
        while (good < hi && pred(good + 1)) ++good;
        return good;
    }
    std::size_t bad = hi + 1;
    std::size_t stride = 1;
    while (good < hi) {
        const std::size_t probe = std::min(good + stride, hi);
        if (pred(probe)) {
            good = probe;
            stride *= 2;
        } else {
            bad = probe;
            break;
        }
    }
    while (bad - good > 1) {
        const std::size_t mid = good + (bad - good) / 2;
        if (pred(mid))
            good = mid;
        else
            bad = mid;
    }
    return good;
}

std::size_t grid_count(double span, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
    if (span < 0.0) return 0;
    return static_cast<std::size_t>(std::floor(span / step + 1e-9));
}

double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

KleeneOptions sweep_kleene_options() {
    KleeneOptions k;
    k.stop_on_saturation = true;
    return k;
}

StableLfp stable_lfp(const GameInstance& g, const KleeneOptions& kleene) {
    StableLfp out;
    auto lfp = kleene_lfp(g, kleene);
    if (!lfp.interior()) return out;
    auto verdict = krasovskii_verdict(lfp.q_star, g, std::max(10.0 * kleene.tol, kFixedPointTol));
    out.feasible = verdict.positive_definite;
    out.q_star = std::move(lfp.q_star);
    out.verdict = std::move(verdict);
    return out;
}

// ---------------------------------------------------------------- bifurcation

namespace {

// Newton on z = (q, mu): achieved_rate(q) = rates(mu) and det(rate_jacobian(q)) = 0.
std::optional<std::pair<Vector, double>> locate_fold(const InterferenceMatrix& a, Vector rates,
                                                     std::size_t index, Vector q, double mu) {
    const auto n = static_cast<Eigen::Index>(a.size());
    const auto system = [&](const Vector& z) {
        const Vector qq = z.head(n);
        rates[static_cast<Eigen::Index>(index)] = z[n];
        Vector out(n + 1);
        out.head(n) = achieved_rate(qq, a) - rates;
        out[n] = rate_jacobian(a, qq).determinant();
        return out;
    };
    Vector z(n + 1);
    z.head(n) = q;
    z[n] = mu;
    for (int it = 0; it < 60; ++it) {
        const Vector gz = system(z);
        Matrix jac(n + 1, n + 1);
        for (Eigen::Index c = 0; c <= n; ++c) {
            const double h = 1e-7 * std::max(1.0, std::abs(z[c]));
            Vector zp = z, zm = z;
            zp[c] += h;
            zm[c] -= h;
            jac.col(c) = (system(zp) - system(zm)) / (2.0 * h);
        }
        Eigen::FullPivLU<Matrix> lu(jac);
        if (!lu.isInvertible()) return std::nullopt;
        const Vector dz = lu.solve(-gz);
        if (!dz.allFinite()) return std::nullopt;
        z += dz;
        if (max_abs(dz) <= 1e-14) break;
    }
    if (max_abs(system(z)) > 1e-10) return std::nullopt;
    return std::make_pair(Vector(z.head(n)), z[n]);
}

}  // namespace

BifurcationBranch bifurcation_sweep(const InterferenceMatrix& a, const Vector& fixed_rates,
                                    std::size_t varying_index, double from, double to, double step,
                                    const MultistartOptions& oracle) {
    const std::size_t n = a.size();
    if (static_cast<std::size_t>(fixed_rates.size()) != n) throw DimensionError("bifurcation: rate length");
    if (varying_index >= n) throw std::out_of_range("bifurcation: varying index");
    if (n > kMaxOraclePlayers) throw InstanceTooLarge("bifurcation sweep relies on the multistart oracle (n <= 8)");
    const std::size_t count = grid_count(to - from, step) + 1;

    BifurcationBranch out;
    out.varying_index = varying_index;
    out.slices.resize(count);
    parallel_for(count, oracle.threads, [&](std::size_t k) {
        Vector rates = fixed_rates;
        const double value = from + static_cast<double>(k) * step;
        rates[static_cast<Eigen::Index>(varying_index)] = value;
        const GameInstance g(a, TargetRates(rates));
        MultistartOptions single = oracle;
        single.threads = 1;
        auto& slice = out.slices[k];
        slice.parameter = value;
        slice.points = multistart_fixed_points(g, single).points;
        for (const auto& p : slice.points) slice.verdicts.push_back(krasovskii_verdict(p, g, 1e-8));
    });

    const BifurcationSlice* last_two = nullptr;
    for (const auto& s : out.slices)
        if (s.points.size() >= 2) last_two = &s;
    if (last_two == nullptr) return out;
    out.last_two_branch_value = last_two->parameter;

    // Seed between the least point and its nearest neighbour on the last two-branch slice.
    FixedPointSet set{last_two->points, false};
    const Vector least = least_of(set);
    const Vector* partner = nullptr;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : last_two->points) {
        const double d = max_abs(p - least);
        if (d > 0.0 && d < best) {
            best = d;
            partner = &p;
        }
    }
    const Vector seed_q = 0.5 * (least + *partner);
    Vector rates = fixed_rates;
    const auto fold = locate_fold(a, rates, varying_index, seed_q, last_two->parameter);
    const bool in_box = fold && fold->first.minCoeff() > 0.0 && fold->first.maxCoeff() < 1.0 &&
                        fold->second >= last_two->parameter - step && fold->second <= last_two->parameter + 2 * step;
    if (in_box) {
        out.critical_value = fold->second;
        out.critical_point = fold->first;
    } else {
        out.critical_value = last_two->parameter;
        out.critical_point = seed_q;
    }
    out.critical_minors = sylvester_pd(c_matrix_at_fixed_point(out.critical_point, a)).leading_minors;
    return out;
}

void write_bifurcation_csv(std::ostream& os, const BifurcationBranch& b) {
    const auto old_precision = os.precision(12);
    std::size_t n = 0;
    for (const auto& s : b.slices)
        if (!s.points.empty()) n = static_cast<std::size_t>(s.points.front().size());
    os << 'y' << (b.varying_index + 1) << ",branch_id";
    for (std::size_t i = 0; i < n; ++i) os << ",q" << (i + 1);
    os << ",stable\n";
    for (const auto& s : b.slices) {
        for (std::size_t k = 0; k < s.points.size(); ++k) {
            os << s.parameter << ',' << k;
            for (Eigen::Index i = 0; i < s.points[k].size(); ++i) os << ',' << s.points[k][i];
            os << ',' << (s.verdicts[k].stable() ? "true" : "false") << '\n';
        }
    }
    os.precision(old_precision);
}

// ---------------------------------------------------------------- rate search

CommonRateResult max_common_rate(const InterferenceMatrix& a, double step, GridSearch search) {
    const std::size_t n = a.size();
    const std::size_t hi = grid_count(1.0, step);
    const auto game_at = [&](std::size_t k) {
        return GameInstance(a, TargetRates::common(n, std::min(1.0, static_cast<double>(k) * step)));
    };
    const auto best = largest_true(1, hi, [&](std::size_t k) { return stable_lfp(game_at(k)).feasible; }, search);
    CommonRateResult out;
    if (!best) return out;
    out.y_max = static_cast<double>(*best) * step;
    out.q_star = stable_lfp(game_at(*best)).q_star;
    return out;
}

FeasibleSurface feasible_contour(const InterferenceMatrix& a, const std::vector<double>& y1_grid,
                                 const std::vector<double>& y3_grid, double step) {
    if (a.size() != 3) throw std::invalid_argument("feasible_contour expects a three-player topology");
    FeasibleSurface s;
    s.y1_values = y1_grid;
    s.y3_values = y3_grid;
    s.max_y2.assign(y1_grid.size() * y3_grid.size(), std::numeric_limits<double>::quiet_NaN());
    const std::size_t hi = grid_count(1.0, step);
    for (std::size_t i = 0; i < y1_grid.size(); ++i) {
        for (std::size_t j = 0; j < y3_grid.size(); ++j) {
            const auto pred = [&](std::size_t k) {
                Vector y(3);
                y << y1_grid[i], std::min(1.0, static_cast<double>(k) * step), y3_grid[j];
                return stable_lfp(GameInstance(a, TargetRates(y))).feasible;
            };
            if (auto k = largest_true(0, hi, pred, GridSearch::bracket))
                s.max_y2[i * y3_grid.size() + j] = static_cast<double>(*k) * step;
        }
    }
    return s;
}

void write_contour_csv(std::ostream& os, const FeasibleSurface& s) {
    const auto old_precision = os.precision(12);
    os << "y1,y3,max_y2\n";
    for (std::size_t i = 0; i < s.y1_values.size(); ++i) {
        for (std::size_t j = 0; j < s.y3_values.size(); ++j) {
            os << s.y1_values[i] << ',' << s.y3_values[j] << ',';
            const double v = s.at(i, j);
            if (std::isnan(v))
                os << "NA";
            else
                os << v;
            os << '\n';
        }
    }
    os.precision(old_precision);
}

// ---------------------------------------------------------------- sum-rate scaling

DemandScaling scale_demand_kmax(const GameInstance& g, double step) {
    const Vector& y = g.targets().values();
    const double y_peak = y.maxCoeff();
    const auto pred_at = [&](double k) { return stable_lfp(GameInstance(g.topology(), TargetRates((k * y).cwiseMin(1.0)))); };
    if (!pred_at(1.0).feasible) throw std::invalid_argument("scale_demand_kmax: base demand has no stable equilibrium");

    DemandScaling out;
    if (y_peak <= 0.0) {
        out.rates = y;
        out.q_star = pred_at(1.0).q_star;
        return out;
    }
    const double k_limit = 1.0 / y_peak;
    const std::size_t hi = grid_count(k_limit - 1.0, step);
    const auto best = largest_true(
        0, hi, [&](std::size_t i) { return pred_at(1.0 + static_cast<double>(i) * step).feasible; },
        GridSearch::bracket);
    out.k_max = 1.0 + static_cast<double>(*best) * step;

    double lo = out.k_max, up = std::min(out.k_max + step, k_limit);
    for (int it = 0; it < 50 && up - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + up);
        if (pred_at(mid).feasible)
            lo = mid;
        else
            up = mid;
    }
    out.k_boundary = lo;
    out.rates = out.k_max * y;
    out.q_star = pred_at(out.k_max).q_star;
    out.sum_rate = out.rates.sum();
    return out;
}

ProbabilityScaling scale_probability_bmax(const GameInstance& g, const Vector& q_star, double step) {
    const auto& a = g.topology();
    if (!krasovskii_verdict(q_star, g, 1e-8).stable())
        throw std::invalid_argument("scale_probability_bmax: q_star is not a stable equilibrium");
    const auto pred_at = [&](double b) {
        const Vector scaled = b * q_star;
        if (scaled.maxCoeff() >= 1.0) return false;
        return sylvester_pd(c_matrix_at_fixed_point(scaled, a)).positive_definite();
    };
    ProbabilityScaling out;
    const double q_peak = q_star.maxCoeff();
    const double b_limit = q_peak > 0.0 ? 1.0 / q_peak : 1.0 + 1.0 / step;
    const std::size_t hi = grid_count(b_limit - 1.0, step);
    const auto best = largest_true(
        0, hi, [&](std::size_t i) { return pred_at(1.0 + static_cast<double>(i) * step); }, GridSearch::bracket);
    out.b_max = best ? 1.0 + static_cast<double>(*best) * step : 1.0;

    double lo = out.b_max, up = std::min(out.b_max + step, b_limit);
    for (int it = 0; it < 50 && up - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + up);
        if (pred_at(mid))
            lo = mid;
        else
            up = mid;
    }
    out.b_boundary = lo;
    out.scaled_q = out.b_max * q_star;
    out.induced_rates = achieved_rate(out.scaled_q, a);
    out.sum_rate = out.induced_rates.sum();
    return out;
}

// ---------------------------------------------------------------- topology sweeps

std::uint64_t trial_seed(std::uint64_t base, std::size_t setting, std::size_t trial) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(setting) * 1000003ULL +
                                                      static_cast<std::uint64_t>(trial) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

SweepRecord record_for(const InterferenceMatrix& a, std::uint64_t seed, double side, double step) {
    SweepRecord r;
    r.seed = seed;
    r.n = a.size();
    r.side = side;
    // A single player has no possible links.
    r.connectivity = a.size() >= 2 ? connectivity(a) : 0.0;
    const auto best = max_common_rate(a, step);
    r.y_max = best.y_max;
    r.total_throughput = static_cast<double>(a.size()) * best.y_max;
    r.avg_q = best.q_star.size() ? best.q_star.mean() : 0.0;
    return r;
}

SettingSummary summarize(const std::vector<SweepRecord>& records, std::size_t first, std::size_t trials,
                         double density) {
    SettingSummary s;
    s.trials = trials;
    s.density = density;
    std::vector<double> conn, ymax, total, q;
    for (std::size_t t = first; t < first + trials; ++t) {
        const auto& r = records[t];
        s.n = r.n;
        s.side = r.side;
        conn.push_back(r.connectivity);
        ymax.push_back(r.y_max);
        total.push_back(r.total_throughput);
        q.push_back(r.avg_q);
    }
    s.mean_connectivity = mean(conn);
    s.mean_y_max = mean(ymax);
    s.mean_total_throughput = mean(total);
    s.mean_avg_q = mean(q);
    return s;
}

}  // namespace

SweepRecord sweep_trial(std::size_t n, double side, std::uint64_t seed, const SweepOptions& opts) {
    const auto topo = random_topology(n, side, seed, opts.rule);
    return record_for(topo.matrix, seed, side, opts.step);
}

SweepRecord fully_connected_record(std::size_t n, double step) {
    return record_for(InterferenceMatrix::fully_connected(n), 0, 0.0, step);
}

SweepResult density_sweep(std::size_t n, const std::vector<double>& densities, std::size_t trials,
                          std::uint64_t seed, const SweepOptions& opts) {
    if (trials == 0) throw std::invalid_argument("density_sweep: trials must be at least 1");
    SweepResult out;
    out.records.resize(densities.size() * trials);
    parallel_for(out.records.size(), opts.threads, [&](std::size_t idx) {
        const std::size_t s = idx / trials, t = idx % trials;
        out.records[idx] = sweep_trial(n, side_for_density(n, densities[s]), trial_seed(seed, s, t), opts);
    });
    for (std::size_t s = 0; s < densities.size(); ++s)
        out.settings.push_back(summarize(out.records, s * trials, trials, densities[s]));
    if (n <= kFullyConnectedBaselineMaxN) out.fully_connected.push_back(fully_connected_record(n, opts.step));
    return out;
}

SweepResult size_sweep(double density, const std::vector<std::size_t>& n_values, std::size_t trials,
                       std::uint64_t seed, const SweepOptions& opts) {
    if (trials == 0) throw std::invalid_argument("size_sweep: trials must be at least 1");
    SweepResult out;
    out.records.resize(n_values.size() * trials);
    parallel_for(out.records.size(), opts.threads, [&](std::size_t idx) {
        const std::size_t s = idx / trials, t = idx % trials;
        const std::size_t n = n_values[s];
        out.records[idx] = sweep_trial(n, side_for_density(n, density), trial_seed(seed, s, t), opts);
    });
    for (std::size_t s = 0; s < n_values.size(); ++s)
        out.settings.push_back(summarize(out.records, s * trials, trials, density));

    std::vector<std::size_t> baseline;
    for (std::size_t n : n_values)
        if (n <= kFullyConnectedBaselineMaxN) baseline.push_back(n);
    out.fully_connected.resize(baseline.size());
    parallel_for(baseline.size(), opts.threads,
                 [&](std::size_t i) { out.fully_connected[i] = fully_connected_record(baseline[i], opts.step); });
    return out;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    const auto old_precision = os.precision(12);
    os << "seed,n,side,connectivity,y_max,total_throughput,avg_q\n";
    for (const auto& r : records) {
        os << r.seed << ',' << r.n << ',' << r.side << ',' << r.connectivity << ',' << r.y_max << ','
           << r.total_throughput << ',' << r.avg_q << '\n';
    }
    os.precision(old_precision);
}

// ---------------------------------------------------------------- power law

namespace {

PowerLawSegment fit_segment(const std::vector<std::pair<double, double>>& pts) {
    PowerLawSegment seg;
    seg.count = pts.size();
    if (pts.size() < 2) return seg;
    const double m = static_cast<double>(pts.size());
    double sx = 0, sy = 0;
    for (const auto& [x, y] : pts) {
        sx += std::log(x);
        sy += std::log(y);
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, y] : pts) {
        const double dx = std::log(x) - mx, dy = std::log(y) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) return seg;
    seg.fitted = true;
    seg.exponent = sxy / sxx;
    const double intercept = my - seg.exponent * mx;
    seg.coefficient = std::exp(intercept);
    double ss_res = 0;
    for (const auto& [x, y] : pts) {
        const double r = std::log(y) - (intercept + seg.exponent * std::log(x));
        ss_res += r * r;
    }
    seg.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    seg.rms_log_residual = std::sqrt(ss_res / m);
    return seg;
}

}  // namespace

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points, double break_x) {
    std::vector<std::pair<double, double>> low, high;
    for (const auto& p : points) {
        if (!(p.first > 0.0) || !(p.second > 0.0)) throw std::invalid_argument("fit_power_law: X and Y must be positive");
        (p.first < break_x ? low : high).push_back(p);
    }
    PowerLawFit fit;
    fit.break_x = break_x;
    fit.low = fit_segment(low);
    fit.high = fit_segment(high);
    if (!fit.low.fitted && !fit.high.fitted)
        throw std::invalid_argument("fit_power_law: need at least two distinct points on one side of the break");
    return fit;
}

std::vector<std::pair<double, double>> connectivity_throughput(const std::vector<SweepRecord>& records) {
    std::vector<std::pair<double, double>> out;
    for (const auto& r : records)
        if (r.connectivity > 0.0 && r.total_throughput > 0.0) out.emplace_back(r.connectivity, r.total_throughput);
    return out;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
        i = j + 1;
    }
    return rank;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("spearman: need two equal-length samples");
    const auto rx = average_ranks(x), ry = average_ranks(y);
    const double mx = mean(rx), my = mean(ry);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace aloha
