#include "aloha/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "aloha/dynamics.hpp"
#include "aloha/experiments.hpp"
#include "aloha/solver.hpp"
#include "aloha/stability.hpp"

namespace aloha::cli {

std::string format_vector(const Vector& v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << '[';
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
    return os.str();
}

namespace {

constexpr const char* kTopologyCommands[] = {"solve", "stability", "simulate", "bifurcate", "feasible", "scale"};

bool needs_topology(const std::string& cmd) {
    return std::find(std::begin(kTopologyCommands), std::end(kTopologyCommands), cmd) != std::end(kTopologyCommands);
}

struct Raw {
    std::vector<double> rates;
    std::optional<std::string> rates_file;
    std::string edge_rule = "min";
};

void add_topology_options(CLI::App* app, RunConfig& c, Raw& raw, bool with_rates) {
    app->add_option("--topology", c.topology_path, "Topology file (n, then n rows of 0/1)");
    app->add_option("--chain", c.chain_n, "Use an n-player chain topology");
    app->add_option("--full", c.full_n, "Use an n-player fully connected topology");
    app->add_option("--n", c.n_values, "Players for a generated random topology");
    app->add_option("--side", c.side, "Square side for a generated topology");
    app->add_option("--density", c.densities, "Players per unit area for a generated topology");
    app->add_option("--seed", c.seed, "Generator seed")->capture_default_str();
    app->add_option("--edge-rule", raw.edge_rule, "Mixed-range edge rule: min or max")->capture_default_str();
    if (with_rates) {
        app->add_option("--rates", raw.rates, "Target rates, comma separated; one value is broadcast")
            ->delimiter(',');
        app->add_option("--rates-file", raw.rates_file, "Target rates, one value per line");
    }
}

void add_lfp_options(CLI::App* app, RunConfig& c) {
    app->add_option("--tol", c.tol, "Fixed-point tolerance (infinity norm)")->capture_default_str();
    app->add_option("--max-iter", c.max_iter, "Iteration budget")->capture_default_str();
}

void add_output(CLI::App* app, RunConfig& c, const char* what) { app->add_option("--out", c.out_path, what); }

std::vector<double> read_rates_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open rates file '" + path + "'");
    std::vector<double> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        double v = 0;
        std::string extra;
        if (!(ls >> v) || (ls >> extra)) throw UsageError("malformed rate line '" + line + "'");
        out.push_back(v);
    }
    return out;
}

void resolve_topology(RunConfig& c) {
    const int sources = (c.topology_path ? 1 : 0) + (c.chain_n ? 1 : 0) + (c.full_n ? 1 : 0) + (!c.n_values.empty() ? 1 : 0);
    if (sources != 1) throw UsageError("give exactly one topology source: --topology, --chain, --full or --n");
    if (c.topology_path) {
        try {
            auto file = read_topology_file(*c.topology_path);
            c.matrix = std::move(file.matrix);
            c.placement = std::move(file.placement);
        } catch (const ParseError& e) {
            throw UsageError(e.what());
        } catch (const std::runtime_error& e) {
            throw UsageError(e.what());
        }
    } else if (c.chain_n) {
        c.matrix = InterferenceMatrix::chain(*c.chain_n);
    } else if (c.full_n) {
        c.matrix = InterferenceMatrix::fully_connected(*c.full_n);
    } else {
        if (c.n_values.size() != 1) throw UsageError("--n takes a single value here");
        if (c.side.has_value() == !c.densities.empty()) throw UsageError("give exactly one of --side or --density");
        if (c.densities.size() > 1) throw UsageError("--density takes a single value here");
        const std::size_t n = c.n_values.front();
        const double side = c.side ? *c.side : side_for_density(n, c.densities.front());
        auto topo = random_topology(n, side, c.seed, c.edge_rule);
        c.matrix = std::move(topo.matrix);
        c.placement = std::move(topo.placement);
    }
}

void resolve_rates(RunConfig& c, Raw& raw) {
    if (raw.rates_file) {
        if (!raw.rates.empty()) throw UsageError("give --rates or --rates-file, not both");
        raw.rates = read_rates_file(*raw.rates_file);
    }
    const std::size_t n = c.matrix->size();
    if (raw.rates.empty()) throw UsageError("target rates are required (--rates or --rates-file)");
    if (raw.rates.size() == 1 && n > 1) raw.rates.assign(n, raw.rates.front());
    if (raw.rates.size() != n) {
        throw UsageError("expected " + std::to_string(n) + " rates, got " + std::to_string(raw.rates.size()));
    }
    for (double v : raw.rates)
        if (!(v >= 0.0 && v <= 1.0)) throw UsageError("rates must lie in [0, 1]");
    c.rates = Eigen::Map<const Vector>(raw.rates.data(), static_cast<Eigen::Index>(raw.rates.size()));
}

Vector to_vector(const std::vector<double>& v) {
    return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write '" + path + "'");
    return os;
}

std::string fmt4(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << v;
    return os.str();
}

std::string format_minors(const std::vector<double>& m) {
    std::ostringstream os;
    os << std::setprecision(4) << '[';
    for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
    os << ']';
    return os.str();
}

GameInstance game_of(const RunConfig& c) { return GameInstance(*c.matrix, TargetRates(c.rates)); }

KleeneOptions kleene_of(const RunConfig& c) {
    KleeneOptions k;
    k.tol = c.tol;
    k.max_iter = c.max_iter;
    return k;
}

int run_solve(const RunConfig& c, std::ostream& out) {
    const auto g = game_of(c);
    const auto lfp = kleene_lfp(g, kleene_of(c));
    if (!lfp.interior()) {
        out << "infeasible\n";
        return 2;
    }
    const auto verdict = krasovskii_verdict(lfp.q_star, g, std::max(10.0 * c.tol, kFixedPointTol));
    out << "NE=" << format_vector(lfp.q_star) << " stable=" << (verdict.stable() ? "true" : "false") << '\n';
    if (c.out_path) {
        auto os = open_out(*c.out_path);
        const Vector r = achieved_rate(lfp.q_star, g.topology());
        os << std::setprecision(12) << "player,q,rate\n";
        for (Eigen::Index i = 0; i < r.size(); ++i) os << (i + 1) << ',' << lfp.q_star[i] << ',' << r[i] << '\n';
    }
    return verdict.stable() ? 0 : 2;
}

int run_stability(const RunConfig& c, std::ostream& out) {
    const auto g = game_of(c);
    const auto lfp = kleene_lfp(g, kleene_of(c));
    if (!lfp.interior()) {
        out << "infeasible\n";
        return 2;
    }
    const auto v = krasovskii_verdict(lfp.q_star, g, std::max(10.0 * c.tol, kFixedPointTol));
    out << "NE=" << format_vector(lfp.q_star) << " stable=" << (v.stable() ? "true" : "false")
        << " marginal=" << (v.marginal ? "true" : "false") << " minors=" << format_minors(v.leading_minors)
        << " diag_dominant=" << (v.diag_dominant ? "true" : "false") << '\n';
    if (v.stable() && c.roa_resolution > 0) {
        const auto roa = roa_grid(g, lfp.q_star, c.roa_resolution);
        const auto certified = std::count(roa.component.begin(), roa.component.end(), true);
        out << "roa_cells=" << certified << '/' << roa.cell_count() << " fraction="
            << fmt4(static_cast<double>(certified) / static_cast<double>(roa.cell_count())) << '\n';
        if (c.out_path) {
            auto os = open_out(*c.out_path);
            os << std::setprecision(12);
            for (std::size_t d = 0; d < roa.dims; ++d) os << "q_" << (d + 1) << ',';
            os << "pd,certified\n";
            for (std::size_t cell = 0; cell < roa.cell_count(); ++cell) {
                const Vector q = roa.cell_center(cell);
                for (Eigen::Index d = 0; d < q.size(); ++d) os << q[d] << ',';
                os << (roa.pd_mask[cell] ? 1 : 0) << ',' << (roa.component[cell] ? 1 : 0) << '\n';
            }
        }
    }
    return v.stable() ? 0 : 2;
}

int run_simulate(const RunConfig& c, std::ostream& out) {
    const auto g = game_of(c);
    const std::size_t n = g.size();
    Vector q0 = c.q0.empty() ? Vector::Zero(static_cast<Eigen::Index>(n)) : to_vector(c.q0);
    if (c.q0.size() == 1 && n > 1) q0 = Vector::Constant(static_cast<Eigen::Index>(n), c.q0.front());
    Trajectory t;
    if (c.mode == "iterate") {
        IterateOptions o;
        o.tol = c.tol;
        o.max_iter = c.max_iter;
        o.epsilon = c.epsilon;
        o.cycle_tol = c.cycle_tol;
        o.max_period = c.max_period;
        if (c.perturb.size() == 1)
            o.perturbation = Vector::Constant(static_cast<Eigen::Index>(n), c.perturb.front());
        else if (!c.perturb.empty())
            o.perturbation = to_vector(c.perturb);
        t = iterate_game(q0, g, o);
    } else {
        OdeOptions o;
        o.dt = c.dt;
        o.t_end = c.t_end;
        o.tol = c.tol;
        t = integrate_ode(q0, g, o);
    }
    out << "outcome=" << to_string(t.outcome) << " steps=" << (t.states.size() - 1);
    if (t.outcome == Outcome::cycle) {
        out << " period=" << t.period << " points=";
        const auto pts = t.cycle_points();
        for (std::size_t i = 0; i < pts.size(); ++i) out << (i ? ";" : "") << format_vector(pts[i]);
    } else {
        out << " final=" << format_vector(t.final_state());
    }
    out << '\n';
    if (c.out_path) {
        auto os = open_out(*c.out_path);
        write_trajectory_csv(os, t);
    }
    return 0;
}

int run_bifurcate(const RunConfig& c, std::ostream& out) {
    MultistartOptions m;
    m.starts_per_axis = c.starts_per_axis;
    m.newton_tol = c.newton_tol;
    m.threads = c.threads;
    if (c.vary < 1 || c.vary > c.matrix->size()) throw UsageError("--vary must name a player (1-based)");
    const auto b = bifurcation_sweep(*c.matrix, c.rates, c.vary - 1, c.from, c.to, c.step, m);
    if (c.out_path) {
        auto os = open_out(*c.out_path);
        write_bifurcation_csv(os, b);
    }
    if (!b.critical_value) {
        out << "no two-branch region in range\n";
        return 0;
    }
    const auto syl = sylvester_pd(c_matrix_at_fixed_point(b.critical_point, *c.matrix));
    out << "critical=" << fmt4(*b.critical_value) << " last_two_branch=" << fmt4(*b.last_two_branch_value)
        << " point=" << format_vector(b.critical_point) << " min_minor=" << fmt4(syl.smallest_minor_magnitude())
        << '\n';
    return 0;
}

int run_feasible(const RunConfig& c, std::ostream& out) {
    std::vector<double> grid;
    for (std::size_t k = 0; static_cast<double>(k) * c.grid_step <= c.grid_max + 1e-9; ++k)
        grid.push_back(static_cast<double>(k) * c.grid_step);
    const auto s = feasible_contour(*c.matrix, grid, grid, c.step);
    if (c.out_path) {
        auto os = open_out(*c.out_path);
        write_contour_csv(os, s);
    }
    std::size_t feasible = 0;
    for (double v : s.max_y2) feasible += std::isnan(v) ? 0 : 1;
    out << "grid=" << grid.size() << 'x' << grid.size() << " feasible_cells=" << feasible
        << " max_y2_at_origin=" << fmt4(s.at(0, 0)) << '\n';
    return 0;
}

int run_scale(const RunConfig& c, std::ostream& out) {
    const auto g = game_of(c);
    const auto base = stable_lfp(g);
    if (!base.feasible) {
        out << "infeasible\n";
        return 2;
    }
    const auto k = scale_demand_kmax(g, c.scale_step);
    const auto b = scale_probability_bmax(g, base.q_star, c.scale_step);
    out << "demand k_max=" << std::fixed << std::setprecision(2) << k.k_max << " y=" << format_vector(k.rates)
        << " q=" << format_vector(k.q_star) << " sum=" << fmt4(k.sum_rate) << '\n';
    out << "probability b_max=" << std::fixed << std::setprecision(2) << b.b_max
        << " y=" << format_vector(b.induced_rates) << " q=" << format_vector(b.scaled_q)
        << " sum=" << fmt4(b.sum_rate) << '\n';
    return 0;
}

void print_settings(std::ostream& out, const SweepResult& r) {
    for (const auto& s : r.settings) {
        out << "n=" << s.n << " density=" << fmt4(s.density) << " trials=" << s.trials
            << " connectivity=" << fmt4(s.mean_connectivity) << " avg_throughput=" << fmt4(s.mean_y_max)
            << " total_throughput=" << fmt4(s.mean_total_throughput) << " avg_q=" << fmt4(s.mean_avg_q) << '\n';
    }
    for (const auto& f : r.fully_connected) {
        out << "fully_connected n=" << f.n << " avg_throughput=" << fmt4(f.y_max)
            << " total_throughput=" << fmt4(f.total_throughput) << " avg_q=" << fmt4(f.avg_q) << '\n';
    }
}

int run_sweep(const RunConfig& c, std::ostream& out) {
    if (c.n_values.empty() || c.densities.empty()) throw UsageError("sweep needs --n and --density");
    if (c.n_values.size() > 1 && c.densities.size() > 1)
        throw UsageError("sweep varies either --n or --density, not both");
    SweepOptions o;
    o.step = c.step;
    o.rule = c.edge_rule;
    o.threads = c.threads;
    const auto r = c.n_values.size() > 1 ? size_sweep(c.densities.front(), c.n_values, c.trials, c.seed, o)
                                         : density_sweep(c.n_values.front(), c.densities, c.trials, c.seed, o);
    if (c.out_path) {
        auto os = open_out(*c.out_path);
        write_sweep_csv(os, r.records);
    }
    print_settings(out, r);
    return 0;
}

std::vector<std::pair<double, double>> read_xy(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open input '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw UsageError("empty input '" + path + "'");
    const auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        return cells;
    };
    auto header = split(line);
    std::size_t xi = 0, yi = 1;
    const auto xit = std::find(header.begin(), header.end(), "connectivity");
    const auto yit = std::find(header.begin(), header.end(), "total_throughput");
    if (xit != header.end() && yit != header.end()) {
        xi = static_cast<std::size_t>(xit - header.begin());
        yi = static_cast<std::size_t>(yit - header.begin());
    }
    std::vector<std::pair<double, double>> pts;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split(line);
        if (cells.size() <= std::max(xi, yi)) throw UsageError("short CSV row '" + line + "'");
        try {
            const double x = std::stod(cells[xi]), y = std::stod(cells[yi]);
            // Connectivity 0 (no links) has no logarithm.
            if (x > 0.0 && y > 0.0) pts.emplace_back(x, y);
        } catch (const std::logic_error&) {
            throw UsageError("malformed CSV row '" + line + "'");
        }
    }
    return pts;
}

int run_fit(const RunConfig& c, std::ostream& out) {
    if (!c.input_path) throw UsageError("fit needs --input");
    const auto fit = fit_power_law(read_xy(*c.input_path), c.break_x);
    const auto line = [&](const char* name, const PowerLawSegment& s) {
        out << name << ": ";
        if (s.fitted)
            out << "c=" << fmt4(s.coefficient) << " e=" << fmt4(s.exponent) << " points=" << s.count
                << " r2=" << fmt4(s.r_squared) << '\n';
        else
            out << "unfitted points=" << s.count << '\n';
    };
    line("low", fit.low);
    line("high", fit.high);
    return 0;
}

int run_generate(const RunConfig& c, std::ostream& out) {
    if (c.out_path) {
        auto os = open_out(*c.out_path);
        write_topology(os, *c.matrix, c.placement);
    } else {
        write_topology(out, *c.matrix, c.placement);
    }
    return 0;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& argv) {
    RunConfig c;
    Raw raw;
    CLI::App app{"Aloha games with spatial reuse: equilibrium solver, stability certificates and experiments"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    auto* solve = app.add_subcommand("solve", "Least fixed point and its stability verdict");
    add_topology_options(solve, c, raw, true);
    add_lfp_options(solve, c);
    add_output(solve, c, "CSV of player,q,rate");

    auto* stab = app.add_subcommand("stability", "Krasovskii certificate (leading minors, diagonal dominance, RoA)");
    add_topology_options(stab, c, raw, true);
    add_lfp_options(stab, c);
    stab->add_option("--roa", c.roa_resolution, "Grid points per axis for the RoA estimate (0 = skip)")
        ->capture_default_str();
    add_output(stab, c, "RoA CSV");

    auto* sim = app.add_subcommand("simulate", "Game iteration or continuous-time flow");
    add_topology_options(sim, c, raw, true);
    c.tol = 1e-9;
    sim->add_option("--mode", c.mode, "iterate or ode")->check(CLI::IsMember({"iterate", "ode"}))->capture_default_str();
    sim->add_option("--tol", c.tol, "Convergence tolerance on ||F(q)-q||")->capture_default_str();
    sim->add_option("--max-iter", c.max_iter, "Iteration budget")->capture_default_str();
    sim->add_option("--epsilon", c.epsilon, "Relaxation factor in (0, 1]")->capture_default_str();
    sim->add_option("--q0", c.q0, "Initial probabilities (comma separated; one value is broadcast)")->delimiter(',');
    sim->add_option("--perturb", c.perturb, "Offset added to q0 (comma separated; one value is broadcast)")
        ->delimiter(',');
    sim->add_option("--dt", c.dt, "RK4 step")->capture_default_str();
    sim->add_option("--t-end", c.t_end, "RK4 horizon")->capture_default_str();
    sim->add_option("--cycle-tol", c.cycle_tol, "Cycle detection tolerance")->capture_default_str();
    sim->add_option("--max-period", c.max_period, "Longest detected cycle")->capture_default_str();
    add_output(sim, c, "Trajectory CSV (step,q_1,...,q_n)");

    auto* bif = app.add_subcommand("bifurcate", "Fixed points while one target rate varies");
    add_topology_options(bif, c, raw, true);
    bif->add_option("--vary", c.vary, "Player whose rate varies (1-based)")->capture_default_str();
    bif->add_option("--from", c.from, "Sweep start")->capture_default_str();
    bif->add_option("--to", c.to, "Sweep end")->capture_default_str();
    bif->add_option("--step", c.step, "Sweep step")->capture_default_str();
    bif->add_option("--starts", c.starts_per_axis, "Newton starts per axis")->capture_default_str();
    bif->add_option("--newton-tol", c.newton_tol, "Newton tolerance")->capture_default_str();
    bif->add_option("--threads", c.threads, "Worker threads")->capture_default_str();
    add_output(bif, c, "Branch CSV (y<k>,branch_id,q1,...,stable)");

    auto* feas = app.add_subcommand("feasible", "Largest stable y2 over a (y1, y3) grid");
    add_topology_options(feas, c, raw, false);
    feas->add_option("--step", c.step, "Search step for y2")->capture_default_str();
    feas->add_option("--grid-step", c.grid_step, "Spacing of the (y1, y3) grid")->capture_default_str();
    feas->add_option("--grid-max", c.grid_max, "Upper end of the (y1, y3) grid")->capture_default_str();
    add_output(feas, c, "Contour CSV (y1,y3,max_y2)");

    auto* scale = app.add_subcommand("scale", "Sum-rate scaling: y -> k y and q* -> b q*");
    add_topology_options(scale, c, raw, true);
    scale->add_option("--step", c.scale_step, "Grid step for k and b")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "Random-topology sweeps over density or player count");
    sweep->add_option("--n", c.n_values, "Players (a list makes a size sweep)")->delimiter(',')->required();
    sweep->add_option("--density", c.densities, "Players per unit area (a list makes a density sweep)")
        ->delimiter(',')
        ->required();
    sweep->add_option("--trials", c.trials, "Topologies per setting")->capture_default_str();
    sweep->add_option("--seed", c.seed, "Base seed")->capture_default_str();
    sweep->add_option("--step", c.step, "Common-rate search step")->capture_default_str();
    sweep->add_option("--edge-rule", raw.edge_rule, "Mixed-range edge rule: min or max")->capture_default_str();
    sweep->add_option("--threads", c.threads, "Worker threads")->capture_default_str();
    add_output(sweep, c, "Sweep CSV (seed,n,side,connectivity,y_max,total_throughput,avg_q)");

    auto* fit = app.add_subcommand("fit", "Piecewise power law of total throughput against connectivity");
    fit->add_option("--input", c.input_path, "CSV with connectivity,total_throughput columns")->required();
    fit->add_option("--break", c.break_x, "Connectivity break point")->capture_default_str();

    auto* gen = app.add_subcommand("generate", "Write a random topology file");
    add_topology_options(gen, c, raw, false);
    add_output(gen, c, "Topology file (stdout if omitted)");

    std::vector<std::string> args(argv.rbegin(), argv.rend());
    if (!args.empty()) args.pop_back();
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        const CLI::App* shown = &app;
        for (const auto* sub : app.get_subcommands()) shown = sub;
        throw HelpRequested{shown->help()};
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    c.command = app.get_subcommands().front()->get_name();
    try {
        c.edge_rule = parse_edge_rule(raw.edge_rule);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (needs_topology(c.command) || c.command == "generate") {
        try {
            resolve_topology(c);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (c.command == "feasible") {
        if (c.matrix->size() != 3) throw UsageError("feasible expects a three-player topology");
        c.rates = Vector::Zero(3);
    } else if (needs_topology(c.command)) {
        resolve_rates(c, raw);
    }
    if (c.command == "simulate" && !c.q0.empty() && c.q0.size() != 1 && c.q0.size() != c.matrix->size())
        throw UsageError("--q0 length must be 1 or n");
    if (c.command == "simulate" && !c.perturb.empty() && c.perturb.size() != 1 && c.perturb.size() != c.matrix->size())
        throw UsageError("--perturb length must be 1 or n");
    return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        if (c.command == "solve") return run_solve(c, out);
        if (c.command == "stability") return run_stability(c, out);
        if (c.command == "simulate") return run_simulate(c, out);
        if (c.command == "bifurcate") return run_bifurcate(c, out);
        if (c.command == "feasible") return run_feasible(c, out);
        if (c.command == "scale") return run_scale(c, out);
        if (c.command == "sweep") return run_sweep(c, out);
        if (c.command == "fit") return run_fit(c, out);
        if (c.command == "generate") return run_generate(c, out);
        err << "error: unknown command '" << c.command << "'\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return 1;
}

int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        config = parse_args(argv);
    } catch (const HelpRequested& h) {
        out << h.text;
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n(run with --help for usage)\n";
        return 1;
    }
    return run(config, out, err);
}

}  // namespace aloha::cli
