#include "aloha/game.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace aloha {

namespace {

void require_same(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        std::ostringstream os;
        os << what << ": expected length " << want << ", got " << got;
        throw DimensionError(os.str());
    }
}

}  // namespace

InterferenceMatrix::InterferenceMatrix(std::size_t n) : n_(n), entries_(n * n, 0) {
    if (n == 0) throw std::invalid_argument("interference matrix needs at least one player");
    rebuild_lists();
}

InterferenceMatrix::InterferenceMatrix(std::size_t n, std::vector<std::uint8_t> entries)
    : n_(n), entries_(std::move(entries)) {
    if (n == 0) throw std::invalid_argument("interference matrix needs at least one player");
    require_same(entries_.size(), n * n, "interference matrix entries");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto v = entries_[i * n + j];
            if (v > 1) throw std::invalid_argument("interference matrix entries must be 0 or 1");
            if (i == j && v != 0)
                throw std::invalid_argument("interference matrix diagonal must be zero");
        }
    }
    rebuild_lists();
}

InterferenceMatrix InterferenceMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
    const std::size_t n = rows.size();
    std::vector<std::uint8_t> e;
    e.reserve(n * n);
    for (const auto& row : rows) {
        require_same(row.size(), n, "interference matrix row");
        for (int v : row) {
            if (v != 0 && v != 1)
                throw std::invalid_argument("interference matrix entries must be 0 or 1");
            e.push_back(static_cast<std::uint8_t>(v));
        }
    }
    return InterferenceMatrix(n, std::move(e));
}

InterferenceMatrix InterferenceMatrix::chain(std::size_t n) {
    InterferenceMatrix a(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        a.set(i, i + 1, true);
        a.set(i + 1, i, true);
    }
    return a;
}

InterferenceMatrix InterferenceMatrix::fully_connected(std::size_t n) {
    InterferenceMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) a.set(i, j, true);
    return a;
}

void InterferenceMatrix::set(std::size_t i, std::size_t j, bool value) {
    if (i >= n_ || j >= n_) throw std::out_of_range("interference matrix index");
    if (i == j && value) throw std::invalid_argument("interference matrix diagonal must be zero");
    entries_[i * n_ + j] = value ? 1 : 0;
    rebuild_lists();
}

std::size_t InterferenceMatrix::link_count() const noexcept {
    return static_cast<std::size_t>(std::count(entries_.begin(), entries_.end(), 1));
}

bool InterferenceMatrix::is_symmetric() const noexcept {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (entries_[i * n_ + j] != entries_[j * n_ + i]) return false;
    return true;
}

void InterferenceMatrix::rebuild_lists() {
    interferers_.assign(n_, {});
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (entries_[i * n_ + j]) interferers_[i].push_back(j);
}

TargetRates::TargetRates(Vector y) : y_(std::move(y)) {
    for (Eigen::Index i = 0; i < y_.size(); ++i) {
        if (!(y_[i] >= 0.0 && y_[i] <= 1.0))
            throw std::invalid_argument("target rates must lie in [0, 1]");
    }
}

TargetRates TargetRates::common(std::size_t n, double value) {
    return TargetRates(Vector::Constant(static_cast<Eigen::Index>(n), value));
}

GameInstance::GameInstance(InterferenceMatrix topology, TargetRates targets)
    : topology_(std::move(topology)), targets_(std::move(targets)) {
    require_same(targets_.size(), topology_.size(), "target rates");
}

void require_probability_vector(const Vector& q, std::size_t n) {
    require_same(static_cast<std::size_t>(q.size()), n, "probability vector");
    for (Eigen::Index i = 0; i < q.size(); ++i) {
        if (!(q[i] >= 0.0 && q[i] <= 1.0))
            throw std::invalid_argument("probabilities must lie in [0, 1]");
    }
}

double silence_product(const Vector& q, const InterferenceMatrix& a, std::size_t i) {
    double p = 1.0;
    for (std::size_t j : a.interferers(i)) p *= 1.0 - q[static_cast<Eigen::Index>(j)];
    return p;
}

Vector achieved_rate(const Vector& q, const InterferenceMatrix& a) {
    require_same(static_cast<std::size_t>(q.size()), a.size(), "probability vector");
    Vector r(q.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        r[k] = q[k] * silence_product(q, a, i);
    }
    return r;
}

Vector best_response(const Vector& q, const GameInstance& g) {
    const auto& a = g.topology();
    require_probability_vector(q, a.size());
    Vector f(q.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        const double y = g.targets()[i];
        const double p = silence_product(q, a, i);
        if (p <= 0.0) {
            f[k] = y > 0.0 ? 1.0 : 0.0;
        } else {
            f[k] = std::min(y / p, 1.0);
        }
    }
    return f;
}

Vector residual(const Vector& q, const GameInstance& g) { return best_response(q, g) - q; }

bool leq(const Vector& a, const Vector& b) {
    require_same(static_cast<std::size_t>(b.size()), static_cast<std::size_t>(a.size()), "leq");
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (!(a[i] <= b[i])) return false;
    return true;
}

bool is_fixed_point(const Vector& q, const GameInstance& g, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    return max_abs(residual(q, g)) <= tol;
}

std::vector<bool> clipped_players(const Vector& q, const GameInstance& g) {
    const auto& a = g.topology();
    std::vector<bool> out(a.size(), false);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double y = g.targets()[i];
        if (y > 0.0 && silence_product(q, a, i) <= y) out[i] = true;
    }
    return out;
}

double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace aloha
