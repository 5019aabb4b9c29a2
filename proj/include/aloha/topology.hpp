#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aloha/game.hpp"

namespace aloha {

/// Player positions in a square of side `side`, with per-player ranges.
struct NodePlacement {
    std::vector<std::array<double, 2>> positions;
    std::vector<double> ranges;
    double side = 0.0;
};

/// How mixed transmission ranges produce an edge.
enum class EdgeRule {
    mutual_reach,  ///< dist <= min(r_i, r_j)
    either_reach,  ///< dist <= max(r_i, r_j)
};

EdgeRule parse_edge_rule(const std::string& s);
const char* to_string(EdgeRule r);

inline constexpr double kLongRange = 5.0;
inline constexpr double kShortRange = 3.0;

struct GeneratedTopology {
    NodePlacement placement;
    InterferenceMatrix matrix;
};

/// Side of the square holding n players at the given density (players per unit area).
double side_for_density(std::size_t n, double density);

/// Uniform placement from std::mt19937_64(seed): for each player in order,
/// x then y, each as side * (draw >> 11) * 2^-53. The first ceil(n/2) players
/// get range 5, the rest range 3. Edges are symmetric.
GeneratedTopology random_topology(std::size_t n, double side, std::uint64_t seed,
                                  EdgeRule rule = EdgeRule::mutual_reach);

/// Interference matrix implied by a placement.
InterferenceMatrix interference_from_placement(const NodePlacement& p, EdgeRule rule);

/// Present links over n(n-1).
double connectivity(const InterferenceMatrix& a);

/// Components of the undirected support graph, each sorted, ordered by first member.
std::vector<std::vector<std::size_t>> connected_components(const InterferenceMatrix& a);

/// Connectivity of each component with at least two players.
std::vector<double> component_connectivity(const InterferenceMatrix& a);

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct TopologyFile {
    InterferenceMatrix matrix;
    std::optional<NodePlacement> placement;
};

/// Plain-text format: `n`, then n rows of n space-separated 0/1 entries, then
/// an optional `# positions` block of `i x y range` rows (i is 1-based).
TopologyFile read_topology(std::istream& is);
TopologyFile read_topology_file(const std::string& path);
void write_topology(std::ostream& os, const InterferenceMatrix& a,
                    const std::optional<NodePlacement>& placement = std::nullopt);

}  // namespace aloha
