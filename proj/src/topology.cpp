#include "aloha/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace aloha {

EdgeRule parse_edge_rule(const std::string& s) {
    if (s == "min" || s == "mutual") return EdgeRule::mutual_reach;
    if (s == "max" || s == "either") return EdgeRule::either_reach;
    throw std::invalid_argument("unknown edge rule '" + s + "' (expected min or max)");
}

const char* to_string(EdgeRule r) { return r == EdgeRule::mutual_reach ? "min" : "max"; }

double side_for_density(std::size_t n, double density) {
    if (!(density > 0.0)) throw std::invalid_argument("density must be positive");
    return std::sqrt(static_cast<double>(n) / density);
}

InterferenceMatrix interference_from_placement(const NodePlacement& p, EdgeRule rule) {
    const std::size_t n = p.positions.size();
    std::vector<std::uint8_t> e(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = p.positions[i][0] - p.positions[j][0];
            const double dy = p.positions[i][1] - p.positions[j][1];
            const double reach = rule == EdgeRule::mutual_reach ? std::min(p.ranges[i], p.ranges[j])
                                                                 : std::max(p.ranges[i], p.ranges[j]);
            if (std::hypot(dx, dy) <= reach) e[i * n + j] = e[j * n + i] = 1;
        }
    }
    return InterferenceMatrix(n, std::move(e));
}

GeneratedTopology random_topology(std::size_t n, double side, std::uint64_t seed, EdgeRule rule) {
    if (n == 0) throw std::invalid_argument("random_topology: n must be at least 1");
    if (!(side > 0.0)) throw std::invalid_argument("random_topology: side must be positive");
    std::mt19937_64 gen(seed);
    const auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };

    NodePlacement p;
    p.side = side;
    p.positions.resize(n);
    p.ranges.resize(n);
    const std::size_t long_range = (n + 1) / 2;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = side * unit();
        const double y = side * unit();
        p.positions[i] = {x, y};
        p.ranges[i] = i < long_range ? kLongRange : kShortRange;
    }
    auto a = interference_from_placement(p, rule);
    return {std::move(p), std::move(a)};
}

double connectivity(const InterferenceMatrix& a) {
    const std::size_t n = a.size();
    if (n < 2) throw std::invalid_argument("connectivity needs at least two players");
    return static_cast<double>(a.link_count()) / static_cast<double>(n * (n - 1));
}

std::vector<std::vector<std::size_t>> connected_components(const InterferenceMatrix& a) {
    const std::size_t n = a.size();
    std::vector<int> label(n, -1);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t start = 0; start < n; ++start) {
        if (label[start] >= 0) continue;
        const int id = static_cast<int>(out.size());
        out.emplace_back();
        std::deque<std::size_t> queue{start};
        label[start] = id;
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            out.back().push_back(v);
            for (std::size_t w = 0; w < n; ++w) {
                if (label[w] < 0 && (a(v, w) || a(w, v))) {
                    label[w] = id;
                    queue.push_back(w);
                }
            }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

std::vector<double> component_connectivity(const InterferenceMatrix& a) {
    std::vector<double> out;
    for (const auto& comp : connected_components(a)) {
        if (comp.size() < 2) continue;
        std::size_t links = 0;
        for (std::size_t i : comp)
            for (std::size_t j : comp) links += a(i, j) ? 1 : 0;
        out.push_back(static_cast<double>(links) / static_cast<double>(comp.size() * (comp.size() - 1)));
    }
    return out;
}

namespace {

bool is_blank(const std::string& line) {
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos;
}

bool positions_header(const std::string& line) {
    std::istringstream ls(line);
    std::string hash, word, extra;
    return (ls >> hash >> word) && hash == "#" && word == "positions" && !(ls >> extra);
}

}  // namespace

TopologyFile read_topology(std::istream& is) {
    std::string line;
    std::size_t line_no = 0;
    const auto fail = [&line_no](const std::string& msg) {
        throw ParseError("topology line " + std::to_string(line_no) + ": " + msg);
    };
    const auto next_line = [&]() -> bool {
        while (std::getline(is, line)) {
            ++line_no;
            if (!is_blank(line)) return true;
        }
        return false;
    };

    if (!next_line()) throw ParseError("topology: empty input");
    long long n_raw = 0;
    {
        std::istringstream ls(line);
        std::string extra;
        if (!(ls >> n_raw) || (ls >> extra) || n_raw < 1) fail("expected a positive player count");
    }
    const auto n = static_cast<std::size_t>(n_raw);
    std::vector<std::uint8_t> e;
    e.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!next_line()) fail("expected " + std::to_string(n) + " matrix rows");
        std::istringstream ls(line);
        std::string tok;
        std::size_t count = 0;
        while (ls >> tok) {
            if (tok != "0" && tok != "1") fail("matrix entries must be 0 or 1, got '" + tok + "'");
            if (count == i && tok == "1") fail("nonzero diagonal entry");
            e.push_back(tok == "1" ? 1 : 0);
            ++count;
        }
        if (count != n) fail("row has " + std::to_string(count) + " entries, expected " + std::to_string(n));
    }

    TopologyFile out{InterferenceMatrix(n, std::move(e)), std::nullopt};
    if (!next_line()) return out;
    if (!positions_header(line)) fail("unexpected content after matrix");

    NodePlacement p;
    p.positions.assign(n, {0.0, 0.0});
    p.ranges.assign(n, 0.0);
    std::vector<bool> seen(n, false);
    while (next_line()) {
        std::istringstream ls(line);
        long long idx = 0;
        double x = 0, y = 0, r = 0;
        std::string extra;
        if (!(ls >> idx >> x >> y >> r) || (ls >> extra)) fail("expected 'i x y range'");
        if (idx < 1 || static_cast<std::size_t>(idx) > n) fail("player index out of range");
        if (!(r > 0.0)) fail("range must be positive");
        const auto k = static_cast<std::size_t>(idx - 1);
        if (seen[k]) fail("duplicate position row");
        seen[k] = true;
        p.positions[k] = {x, y};
        p.ranges[k] = r;
        p.side = std::max({p.side, x, y});
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw ParseError("topology: positions block must list every player");
    out.placement = std::move(p);
    return out;
}

TopologyFile read_topology_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open topology file '" + path + "'");
    return read_topology(in);
}

void write_topology(std::ostream& os, const InterferenceMatrix& a, const std::optional<NodePlacement>& placement) {
    const std::size_t n = a.size();
    os << n << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) os << (j ? " " : "") << (a(i, j) ? 1 : 0);
        os << '\n';
    }
    if (!placement) return;
    os << "# positions\n";
    const auto old_precision = os.precision(17);
    for (std::size_t i = 0; i < n; ++i) {
        os << (i + 1) << ' ' << placement->positions[i][0] << ' ' << placement->positions[i][1] << ' '
           << placement->ranges[i] << '\n';
    }
    os.precision(old_precision);
}

}  // namespace aloha
