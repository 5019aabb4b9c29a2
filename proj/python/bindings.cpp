#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aloha/dynamics.hpp"
#include "aloha/experiments.hpp"
#include "aloha/solver.hpp"
#include "aloha/stability.hpp"
#include "aloha/topology.hpp"

namespace py = pybind11;
using namespace aloha;

namespace {

InterferenceMatrix to_matrix(const std::vector<std::vector<int>>& rows) { return InterferenceMatrix::from_rows(rows); }

std::vector<std::vector<int>> to_rows(const InterferenceMatrix& a) {
    std::vector<std::vector<int>> rows(a.size(), std::vector<int>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) rows[i][j] = a(i, j) ? 1 : 0;
    return rows;
}

GameInstance game(const std::vector<std::vector<int>>& a, const Vector& y) {
    return GameInstance(to_matrix(a), TargetRates(y));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Aloha games with spatial reuse";

    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<InstanceTooLarge>(m, "InstanceTooLarge", PyExc_ValueError);

    m.def("chain", [](std::size_t n) { return to_rows(InterferenceMatrix::chain(n)); }, py::arg("n"));
    m.def("fully_connected", [](std::size_t n) { return to_rows(InterferenceMatrix::fully_connected(n)); },
          py::arg("n"));

    m.def("best_response", [](const Vector& q, const std::vector<std::vector<int>>& a, const Vector& y) {
        return best_response(q, game(a, y));
    }, py::arg("q"), py::arg("a"), py::arg("y"));
    m.def("achieved_rate", [](const Vector& q, const std::vector<std::vector<int>>& a) {
        return achieved_rate(q, to_matrix(a));
    }, py::arg("q"), py::arg("a"));

    py::class_<LfpResult>(m, "LfpResult")
        .def_readonly("q_star", &LfpResult::q_star)
        .def_readonly("iterations", &LfpResult::iterations)
        .def_readonly("converged", &LfpResult::converged)
        .def_readonly("residual_norm", &LfpResult::residual_norm)
        .def_readonly("saturated", &LfpResult::saturated)
        .def_readonly("extraneous", &LfpResult::extraneous)
        .def_property_readonly("interior", &LfpResult::interior);

    m.def("kleene_lfp", [](const std::vector<std::vector<int>>& a, const Vector& y, std::optional<Vector> q0,
                           double tol, std::size_t max_iter) {
        KleeneOptions o;
        o.tol = tol;
        o.max_iter = max_iter;
        const auto g = game(a, y);
        return q0 ? kleene_lfp(g, *q0, o) : kleene_lfp(g, o);
    }, py::arg("a"), py::arg("y"), py::arg("q0") = py::none(), py::arg("tol") = 1e-10, py::arg("max_iter") = 100000);

    m.def("multistart_fixed_points", [](const std::vector<std::vector<int>>& a, const Vector& y,
                                        std::size_t starts_per_axis, std::size_t threads) {
        MultistartOptions o;
        o.starts_per_axis = starts_per_axis;
        o.threads = threads;
        const auto set = multistart_fixed_points(game(a, y), o);
        return py::make_tuple(set.points, set.includes_extraneous);
    }, py::arg("a"), py::arg("y"), py::arg("starts_per_axis") = 5, py::arg("threads") = 1,
          "Interior fixed points (sorted by sum) and whether the all-ones point is also reported.");

    py::class_<StabilityVerdict>(m, "StabilityVerdict")
        .def_readonly("point", &StabilityVerdict::point)
        .def_readonly("positive_definite", &StabilityVerdict::positive_definite)
        .def_readonly("marginal", &StabilityVerdict::marginal)
        .def_readonly("leading_minors", &StabilityVerdict::leading_minors)
        .def_readonly("diag_dominant", &StabilityVerdict::diag_dominant)
        .def_readonly("clipped", &StabilityVerdict::clipped)
        .def_property_readonly("stable", &StabilityVerdict::stable);

    m.def("krasovskii_verdict", [](const Vector& q, const std::vector<std::vector<int>>& a, const Vector& y) {
        return krasovskii_verdict(q, game(a, y));
    }, py::arg("q"), py::arg("a"), py::arg("y"));
    m.def("jacobian_at", [](const Vector& q, const std::vector<std::vector<int>>& a, const Vector& y) {
        return jacobian_at(q, game(a, y));
    }, py::arg("q"), py::arg("a"), py::arg("y"));

    m.def("iterate_game", [](const Vector& q0, const std::vector<std::vector<int>>& a, const Vector& y,
                             double epsilon, std::optional<Vector> perturbation, std::size_t max_iter) {
        IterateOptions o;
        o.epsilon = epsilon;
        o.max_iter = max_iter;
        if (perturbation) o.perturbation = *perturbation;
        const auto t = iterate_game(q0, game(a, y), o);
        py::dict out;
        out["outcome"] = to_string(t.outcome);
        out["period"] = t.period;
        out["states"] = t.states;
        return out;
    }, py::arg("q0"), py::arg("a"), py::arg("y"), py::arg("epsilon") = 1.0, py::arg("perturbation") = py::none(),
          py::arg("max_iter") = 100000);

    m.def("random_topology", [](std::size_t n, double side, std::uint64_t seed, const std::string& rule) {
        const auto t = random_topology(n, side, seed, parse_edge_rule(rule));
        std::vector<std::vector<double>> positions;
        for (const auto& p : t.placement.positions) positions.push_back({p[0], p[1]});
        return py::make_tuple(to_rows(t.matrix), positions, t.placement.ranges);
    }, py::arg("n"), py::arg("side"), py::arg("seed"), py::arg("rule") = "min");
    m.def("connectivity", [](const std::vector<std::vector<int>>& a) { return connectivity(to_matrix(a)); },
          py::arg("a"));

    m.def("max_common_rate", [](const std::vector<std::vector<int>>& a, double step) {
        const auto r = max_common_rate(to_matrix(a), step);
        return py::make_tuple(r.y_max, r.q_star);
    }, py::arg("a"), py::arg("step") = kRateStep);

    m.def("fit_power_law", [](const std::vector<std::pair<double, double>>& points, double break_x) {
        const auto f = fit_power_law(points, break_x);
        const auto seg = [](const PowerLawSegment& s) {
            return s.fitted ? py::object(py::make_tuple(s.coefficient, s.exponent)) : py::object(py::none());
        };
        return py::make_tuple(seg(f.low), seg(f.high));
    }, py::arg("points"), py::arg("break_x") = 0.1, "(coefficient, exponent) below and above break_x.");
}
