#include "aloha/stability.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace aloha {

const char* to_string(Definiteness d) {
    switch (d) {
        case Definiteness::positive_definite: return "positive_definite";
        case Definiteness::marginal: return "marginal";
        case Definiteness::indefinite: return "indefinite";
    }
    return "unknown";
}

double SylvesterResult::smallest_minor_magnitude() const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : leading_minors) m = std::min(m, std::abs(v));
    return m;
}

namespace {

void require_square(const Matrix& c) {
    if (c.rows() != c.cols()) throw DimensionError("matrix must be square");
}

void require_not_singular(const Vector& q, const InterferenceMatrix& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j : a.interferers(i)) {
            if (q[static_cast<Eigen::Index>(j)] >= 1.0) {
                std::ostringstream os;
                os << "jacobian undefined: q_" << (j + 1) << " = 1 interferes with player " << (i + 1);
                throw std::domain_error(os.str());
            }
        }
    }
}

// Determinant of the leading k x k block by partial-pivot elimination.
double leading_block_determinant(const Matrix& c, Eigen::Index k) {
    Matrix m = c.topLeftCorner(k, k);
    double det = 1.0;
    for (Eigen::Index col = 0; col < k; ++col) {
        Eigen::Index pivot = col;
        for (Eigen::Index r = col + 1; r < k; ++r)
            if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
        if (m(pivot, col) == 0.0) return 0.0;
        if (pivot != col) {
            m.row(pivot).swap(m.row(col));
            det = -det;
        }
        det *= m(col, col);
        for (Eigen::Index r = col + 1; r < k; ++r) {
            const double factor = m(r, col) / m(col, col);
            m.row(r).tail(k - col) -= factor * m.row(col).tail(k - col);
        }
    }
    return det;
}

}  // namespace

Matrix jacobian_at(const Vector& q, const GameInstance& g) {
    const auto& a = g.topology();
    require_probability_vector(q, a.size());
    require_not_singular(q, a);
    const auto n = static_cast<Eigen::Index>(a.size());
    const Vector f = best_response(q, g);
    const auto clipped = clipped_players(q, g);
    Matrix j = -Matrix::Identity(n, n);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (clipped[i]) continue;
        const auto r = static_cast<Eigen::Index>(i);
        for (std::size_t col : a.interferers(i)) {
            const auto c = static_cast<Eigen::Index>(col);
            j(r, c) = f[r] / (1.0 - q[c]);
        }
    }
    return j;
}

Matrix c_matrix(const Vector& q, const GameInstance& g) {
    const Matrix j = jacobian_at(q, g);
    return -(j + j.transpose());
}

Matrix c_matrix_at_fixed_point(const Vector& q, const InterferenceMatrix& a) {
    require_probability_vector(q, a.size());
    require_not_singular(q, a);
    const auto n = static_cast<Eigen::Index>(a.size());
    Matrix c = 2.0 * Matrix::Identity(n, n);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        for (std::size_t col : a.interferers(i)) {
            const auto k = static_cast<Eigen::Index>(col);
            const double term = q[r] / (1.0 - q[k]);
            c(r, k) -= term;
            c(k, r) -= term;
        }
    }
    return c;
}

SylvesterResult sylvester_pd(const Matrix& c, double pd_tol) {
    require_square(c);
    const Eigen::Index n = c.rows();
    SylvesterResult out;
    out.leading_minors.reserve(static_cast<std::size_t>(n));

    // Without pivoting the k-th leading minor is the product of the first k
    // pivots. Once a pivot vanishes the remaining blocks are factored directly.
    Matrix m = c;
    double running = 1.0;
    Eigen::Index k = 0;
    const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
    for (; k < n; ++k) {
        const double pivot = m(k, k);
        if (std::abs(pivot) <= 1e-13 * scale) break;
        running *= pivot;
        out.leading_minors.push_back(running);
        for (Eigen::Index r = k + 1; r < n; ++r) {
            const double factor = m(r, k) / pivot;
            m.row(r).tail(n - k) -= factor * m.row(k).tail(n - k);
        }
    }
    for (; k < n; ++k) out.leading_minors.push_back(leading_block_determinant(c, k + 1));

    bool all_positive = true, any_negative = false;
    for (double v : out.leading_minors) {
        if (!(v > pd_tol)) all_positive = false;
        if (v <= -pd_tol) any_negative = true;
    }
    out.definiteness = all_positive   ? Definiteness::positive_definite
                       : any_negative ? Definiteness::indefinite
                                      : Definiteness::marginal;
    return out;
}

bool diag_dominant(const Vector& q_s, const InterferenceMatrix& a) {
    require_probability_vector(q_s, a.size());
    require_not_singular(q_s, a);
    const auto n = a.size();
    std::vector<double> row_sum(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j : a.interferers(i)) {
            const double term = q_s[static_cast<Eigen::Index>(i)] / (1.0 - q_s[static_cast<Eigen::Index>(j)]);
            row_sum[i] += term;
            row_sum[j] += term;
        }
    }
    return std::all_of(row_sum.begin(), row_sum.end(), [](double s) { return s < 2.0; });
}

StabilityVerdict krasovskii_verdict(const Vector& q_s, const GameInstance& g, double tol, double pd_tol) {
    if (!is_fixed_point(q_s, g, tol))
        throw std::invalid_argument("krasovskii_verdict: point is not a fixed point");
    const auto& a = g.topology();
    const auto syl = sylvester_pd(c_matrix_at_fixed_point(q_s, a), pd_tol);
    StabilityVerdict v;
    v.point = q_s;
    v.positive_definite = syl.positive_definite();
    v.marginal = syl.definiteness == Definiteness::marginal;
    v.leading_minors = syl.leading_minors;
    v.diag_dominant = diag_dominant(q_s, a);
    const auto clipped = clipped_players(q_s, g);
    v.clipped = std::any_of(clipped.begin(), clipped.end(), [](bool b) { return b; });
    return v;
}

double lyapunov_value(const Vector& q, const GameInstance& g) { return residual(q, g).squaredNorm(); }

Vector RoaEstimate::cell_center(std::size_t cell) const {
    Vector q(static_cast<Eigen::Index>(dims));
    for (std::size_t d = 0; d < dims; ++d) {
        q[static_cast<Eigen::Index>(d)] =
            (static_cast<double>(cell % resolution) + 0.5) / static_cast<double>(resolution);
        cell /= resolution;
    }
    return q;
}

std::size_t RoaEstimate::cell_of(const Vector& q) const {
    if (static_cast<std::size_t>(q.size()) != dims) throw DimensionError("roa: point dimension");
    std::size_t cell = 0, stride = 1;
    for (std::size_t d = 0; d < dims; ++d) {
        const double x = std::clamp(q[static_cast<Eigen::Index>(d)], 0.0, 1.0);
        const auto idx = std::min(resolution - 1, static_cast<std::size_t>(x * static_cast<double>(resolution)));
        cell += idx * stride;
        stride *= resolution;
    }
    return cell;
}

RoaEstimate roa_grid(const GameInstance& g, const Vector& q_star, std::size_t resolution) {
    const std::size_t n = g.size();
    if (n > kMaxRoaDims) throw InstanceTooLarge("roa_grid supports at most 4 players");
    if (resolution == 0) throw std::invalid_argument("roa_grid: resolution must be positive");
    if (!krasovskii_verdict(q_star, g, 1e-8).stable())
        throw std::invalid_argument("roa_grid: q_star is not a stable equilibrium");

    RoaEstimate est;
    est.resolution = resolution;
    est.dims = n;
    est.q_star = q_star;
    std::size_t cells = 1;
    for (std::size_t d = 0; d < n; ++d) cells *= resolution;
    est.pd_mask.assign(cells, false);
    for (std::size_t cell = 0; cell < cells; ++cell)
        est.pd_mask[cell] = sylvester_pd(c_matrix(est.cell_center(cell), g)).positive_definite();

    // The certified equilibrium lies in its own cell even if the centre does not.
    const std::size_t seed = est.cell_of(q_star);
    est.pd_mask[seed] = true;

    est.component.assign(cells, false);
    std::deque<std::size_t> frontier{seed};
    est.component[seed] = true;
    while (!frontier.empty()) {
        const std::size_t cell = frontier.front();
        frontier.pop_front();
        std::size_t stride = 1;
        for (std::size_t d = 0; d < n; ++d, stride *= resolution) {
            const std::size_t coord = (cell / stride) % resolution;
            for (int dir : {-1, 1}) {
                if ((dir < 0 && coord == 0) || (dir > 0 && coord + 1 == resolution)) continue;
                const std::size_t next = dir < 0 ? cell - stride : cell + stride;
                if (est.pd_mask[next] && !est.component[next]) {
                    est.component[next] = true;
                    frontier.push_back(next);
                }
            }
        }
    }
    return est;
}

ConsistencyReport least_point_consistency(const FixedPointSet& set, const GameInstance& g, double tol) {
    ConsistencyReport report;
    if (set.points.empty()) return report;
    const Vector least = least_of(set);
    bool least_stable = true, other_stable = false;
    for (const auto& p : set.points) {
        ConsistencyRow row;
        row.point = p;
        row.verdict = krasovskii_verdict(p, g, tol);
        row.least = (p - least).cwiseAbs().maxCoeff() == 0.0;
        if (row.least)
            least_stable = row.verdict.stable();
        else if (row.verdict.stable())
            other_stable = true;
        report.rows.push_back(std::move(row));
    }
    report.violation = !least_stable && other_stable;
    return report;
}

}  // namespace aloha
