#pragma once

// Reference computations that share no code with the library.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

using Grid = std::vector<std::vector<int>>;

// Success probability of each player by enumerating all 2^n transmit patterns.
inline std::vector<double> brute_force_rate(const std::vector<double>& q, const Grid& a) {
    const std::size_t n = q.size();
    std::vector<double> rate(n, 0.0);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        double p = 1.0;
        for (std::size_t k = 0; k < n; ++k) p *= (mask >> k & 1u) ? q[k] : 1.0 - q[k];
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask >> i & 1u)) continue;
            bool clear = true;
            for (std::size_t j = 0; j < n; ++j)
                if (a[i][j] && (mask >> j & 1u)) clear = false;
            if (clear) rate[i] += p;
        }
    }
    return rate;
}

// Roots of q(1 - q) = y.
inline std::pair<double, double> two_player_roots(double y) {
    const double d = std::sqrt(1.0 - 4.0 * y);
    return {(1.0 - d) / 2.0, (1.0 + d) / 2.0};
}

// Determinant by cofactor expansion along the first row.
inline double laplace_det(const std::vector<std::vector<double>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1.0;
    if (n == 1) return m[0][0];
    double det = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<double>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<double> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(row);
        }
        det += ((c % 2) ? -1.0 : 1.0) * m[0][c] * laplace_det(minor);
    }
    return det;
}

inline std::vector<double> leading_minors(const std::vector<std::vector<double>>& m) {
    std::vector<double> out;
    for (std::size_t k = 1; k <= m.size(); ++k) {
        std::vector<std::vector<double>> sub(k, std::vector<double>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[i][j];
        out.push_back(laplace_det(sub));
    }
    return out;
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - r * (b - a), d = a + r * (b - a);
    for (int i = 0; i < iters; ++i) {
        if (f(c) > f(d)) {
            b = d;
        } else {
            a = c;
        }
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    return 0.5 * (a + b);
}

// Symmetric three-player chain with y1 = y3 = s: the outer players sit at
// a = s / (1 - b), the middle one at b with b (1 - a)^2 = y2.
struct ChainPoint {
    double outer, middle;
};

inline double chain_middle_rate(double s, double b) {
    const double a = s / (1.0 - b);
    return b * (1.0 - a) * (1.0 - a);
}

// Least symmetric fixed point for y1 = y3 = s, middle rate y2.
inline ChainPoint chain_least(double s, double y2) {
    const double peak = golden_max([&](double b) { return chain_middle_rate(s, b); }, 0.0, 1.0 - s);
    const double b = bisect([&](double x) { return chain_middle_rate(s, x) - y2; }, 0.0, peak);
    return {s / (1.0 - b), b};
}

// Largest middle rate admitting a fixed point, and the point where the branches meet.
inline std::pair<double, ChainPoint> chain_fold(double s) {
    const double b = golden_max([&](double x) { return chain_middle_rate(s, x); }, 0.0, 1.0 - s);
    return {chain_middle_rate(s, b), {s / (1.0 - b), b}};
}

}  // namespace oracle
