#pragma once

#include <cstddef>
#include <vector>

#include "aloha/game.hpp"
#include "aloha/solver.hpp"

namespace aloha {

/// Leading minors within (-pd_tol, pd_tol] are reported as marginal.
inline constexpr double kPdTol = 1e-12;

enum class Definiteness { positive_definite, marginal, indefinite };

const char* to_string(Definiteness d);

struct SylvesterResult {
    std::vector<double> leading_minors;
    Definiteness definiteness = Definiteness::indefinite;

    [[nodiscard]] bool positive_definite() const { return definiteness == Definiteness::positive_definite; }
    [[nodiscard]] double smallest_minor_magnitude() const;
};

struct StabilityVerdict {
    Vector point;
    bool positive_definite = false;
    bool marginal = false;
    std::vector<double> leading_minors;
    bool diag_dominant = false;
    /// Some player's best response is saturated at the point; the C-matrix
    /// formula assumes an interior fixed point there.
    bool clipped = false;

    [[nodiscard]] bool stable() const { return positive_definite; }
};

/// dg/dq for g = F(q) - q. Rows of saturated players have zero off-diagonals.
/// Throws std::domain_error when an interfering coordinate equals 1.
Matrix jacobian_at(const Vector& q, const GameInstance& g);

/// C(q) = -(J(q) + J(q)^T).
Matrix c_matrix(const Vector& q, const GameInstance& g);

/// C at a fixed point, with f_i(q) replaced by q_i.
Matrix c_matrix_at_fixed_point(const Vector& q, const InterferenceMatrix& a);

/// Leading principal minors by Gaussian elimination; positive definite when
/// all exceed pd_tol.
SylvesterResult sylvester_pd(const Matrix& c, double pd_tol = kPdTol);

/// Strict diagonal dominance of C at a fixed point.
bool diag_dominant(const Vector& q_s, const InterferenceMatrix& a);

/// Krasovskii certificate at a fixed point (`tol` is the membership check).
StabilityVerdict krasovskii_verdict(const Vector& q_s, const GameInstance& g, double tol = kFixedPointTol,
                                    double pd_tol = kPdTol);

/// g(q)^T g(q) with g the residual F(q) - q.
double lyapunov_value(const Vector& q, const GameInstance& g);

struct RoaEstimate {
    std::size_t resolution = 0;
    std::size_t dims = 0;
    /// C(q) positive definite at the cell centre, row-major over cells with
    /// the first player's index varying fastest.
    std::vector<bool> pd_mask;
    /// The face-connected component of pd_mask holding q_star.
    std::vector<bool> component;
    Vector q_star;

    [[nodiscard]] std::size_t cell_count() const { return pd_mask.size(); }
    [[nodiscard]] Vector cell_center(std::size_t cell) const;
    [[nodiscard]] std::size_t cell_of(const Vector& q) const;
    /// True when q's cell belongs to the certified component.
    [[nodiscard]] bool contains(const Vector& q) const { return component[cell_of(q)]; }
};

inline constexpr std::size_t kDefaultRoaResolution = 41;
inline constexpr std::size_t kMaxRoaDims = 4;

/// Grid estimate of the region where C(q) is positive definite around a
/// stable q_star. Refuses more than four players.
RoaEstimate roa_grid(const GameInstance& g, const Vector& q_star,
                     std::size_t resolution = kDefaultRoaResolution);

struct ConsistencyRow {
    Vector point;
    StabilityVerdict verdict;
    bool least = false;
};

struct ConsistencyReport {
    std::vector<ConsistencyRow> rows;
    /// Least point not stable while another fixed point is.
    bool violation = false;
};

/// Checks that instability of the least fixed point implies instability of
/// every other interior fixed point.
ConsistencyReport least_point_consistency(const FixedPointSet& set, const GameInstance& g, double tol = 1e-8);

}  // namespace aloha
