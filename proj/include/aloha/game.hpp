#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace aloha {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Raised when vector or matrix sizes disagree.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Binary directed interference graph. `(i, j) == 1` means a transmission by
/// player j collides with player i's reception. Need not be symmetric.
class InterferenceMatrix {
public:
    InterferenceMatrix() = default;

    /// All-zero matrix of `n` players.
    explicit InterferenceMatrix(std::size_t n);

    /// Row-major entries; throws on non-binary entries or a nonzero diagonal.
    InterferenceMatrix(std::size_t n, std::vector<std::uint8_t> entries);

    static InterferenceMatrix from_rows(const std::vector<std::vector<int>>& rows);
    static InterferenceMatrix chain(std::size_t n);
    static InterferenceMatrix fully_connected(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] bool operator()(std::size_t i, std::size_t j) const noexcept {
        return entries_[i * n_ + j] != 0;
    }
    void set(std::size_t i, std::size_t j, bool value);

    /// Players j with a(i, j) == 1, in increasing order.
    [[nodiscard]] const std::vector<std::size_t>& interferers(std::size_t i) const {
        return interferers_[i];
    }
    [[nodiscard]] std::size_t link_count() const noexcept;
    [[nodiscard]] bool is_symmetric() const noexcept;
    [[nodiscard]] const std::vector<std::uint8_t>& entries() const noexcept { return entries_; }

    friend bool operator==(const InterferenceMatrix& a, const InterferenceMatrix& b) {
        return a.n_ == b.n_ && a.entries_ == b.entries_;
    }

private:
    void rebuild_lists();

    std::size_t n_ = 0;
    std::vector<std::uint8_t> entries_;
    std::vector<std::vector<std::size_t>> interferers_;
};

/// Per-player target throughput, each in [0, 1].
class TargetRates {
public:
    TargetRates() = default;
    explicit TargetRates(Vector y);
    static TargetRates common(std::size_t n, double value);

    [[nodiscard]] const Vector& values() const noexcept { return y_; }
    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(y_.size()); }
    [[nodiscard]] double operator[](std::size_t i) const { return y_[static_cast<Eigen::Index>(i)]; }

private:
    Vector y_;
};

/// Immutable problem statement: topology plus target rates.
class GameInstance {
public:
    GameInstance(InterferenceMatrix topology, TargetRates targets);

    [[nodiscard]] const InterferenceMatrix& topology() const noexcept { return topology_; }
    [[nodiscard]] const TargetRates& targets() const noexcept { return targets_; }
    [[nodiscard]] std::size_t size() const noexcept { return topology_.size(); }

private:
    InterferenceMatrix topology_;
    TargetRates targets_;
};

/// Default fixed-point membership tolerance (infinity norm).
inline constexpr double kFixedPointTol = 1e-9;

/// Throws unless every entry of `q` lies in [0, 1] and its length is `n`.
void require_probability_vector(const Vector& q, std::size_t n);

/// prod over interferers j of (1 - q_j); 1 when player i has none.
double silence_product(const Vector& q, const InterferenceMatrix& a, std::size_t i);

/// r_i = q_i * prod_{a_ij = 1} (1 - q_j).
Vector achieved_rate(const Vector& q, const InterferenceMatrix& a);

/// Clipped best response F_i(q) = min{ y_i / prod(1 - q_j), 1 }.
/// A vanishing product yields 1 when y_i > 0 and 0 when y_i == 0.
Vector best_response(const Vector& q, const GameInstance& g);

/// F(q) - q.
Vector residual(const Vector& q, const GameInstance& g);

/// Componentwise a <= b, exact on stored values.
bool leq(const Vector& a, const Vector& b);

bool is_fixed_point(const Vector& q, const GameInstance& g, double tol = kFixedPointTol);

/// True for players whose best response at q is saturated at 1.
std::vector<bool> clipped_players(const Vector& q, const GameInstance& g);

double max_abs(const Vector& v);

}  // namespace aloha
