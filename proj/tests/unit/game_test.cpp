#include <doctest.h>

#include <algorithm>
#include <random>

#include "aloha/game.hpp"
#include "oracles.hpp"

using namespace aloha;

namespace {

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

oracle::Grid grid_of(const InterferenceMatrix& a) {
    oracle::Grid g(a.size(), std::vector<int>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) g[i][j] = a(i, j) ? 1 : 0;
    return g;
}

}  // namespace

TEST_CASE("interference matrix construction") {
    const auto chain = InterferenceMatrix::chain(3);
    CHECK(chain(0, 1));
    CHECK(chain(1, 0));
    CHECK(chain(1, 2));
    CHECK_FALSE(chain(0, 2));
    CHECK(chain.link_count() == 4);
    CHECK(chain.is_symmetric());
    CHECK(chain.interferers(1) == std::vector<std::size_t>{0, 2});

    const auto full = InterferenceMatrix::fully_connected(4);
    CHECK(full.link_count() == 12);

    CHECK_THROWS_AS(InterferenceMatrix(2, {0, 2, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(InterferenceMatrix(2, {1, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(InterferenceMatrix(2, {0, 1, 0}), DimensionError);

    auto directed = InterferenceMatrix::from_rows({{0, 1}, {0, 0}});
    CHECK_FALSE(directed.is_symmetric());
    directed.set(1, 0, true);
    CHECK(directed == InterferenceMatrix::fully_connected(2));
}

TEST_CASE("target rates are validated") {
    CHECK_THROWS(TargetRates(vec({0.2, 1.2})));
    CHECK_THROWS(TargetRates(vec({-0.1})));
    CHECK(TargetRates::common(3, 0.15).values().isApprox(Vector::Constant(3, 0.15)));
    CHECK_THROWS_AS(GameInstance(InterferenceMatrix::chain(3), TargetRates::common(2, 0.1)), DimensionError);
}

TEST_CASE("achieved rate matches enumeration of transmit patterns") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::bernoulli_distribution edge(0.5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 5;
        InterferenceMatrix a(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && edge(rng)) a.set(i, j, true);
        std::vector<double> q(n);
        for (auto& x : q) x = u(rng);
        const Vector qv = Eigen::Map<Vector>(q.data(), static_cast<Eigen::Index>(n));
        const auto want = oracle::brute_force_rate(q, grid_of(a));
        const Vector got = achieved_rate(qv, a);
        for (std::size_t i = 0; i < n; ++i) CHECK(got[static_cast<Eigen::Index>(i)] == doctest::Approx(want[i]).epsilon(1e-12));
    }
}

TEST_CASE("best response formula and saturation") {
    const GameInstance g(InterferenceMatrix::chain(3), TargetRates::common(3, 0.15));
    const Vector q = vec({0.2, 0.3, 0.4});
    const Vector f = best_response(q, g);
    CHECK(f[0] == doctest::Approx(0.15 / 0.7));
    CHECK(f[1] == doctest::Approx(0.15 / (0.8 * 0.6)));
    CHECK(f[2] == doctest::Approx(0.15 / 0.7));

    CHECK(best_response(vec({0.0, 0.9, 0.0}), g)[0] == 1.0);

    const GameInstance zero(InterferenceMatrix::chain(3), TargetRates(vec({0.0, 0.2, 0.0})));
    const Vector at_one = best_response(vec({0.0, 1.0, 0.0}), zero);
    CHECK(at_one[0] == 0.0);
    CHECK(at_one[2] == 0.0);
    CHECK(best_response(vec({1.0, 0.0, 0.0}), zero)[1] == 1.0);

    CHECK_THROWS(best_response(vec({0.1, 1.5, 0.0}), g));
    CHECK_THROWS_AS(best_response(vec({0.1, 0.1}), g), DimensionError);
}

TEST_CASE("best response is bounded below by the targets") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const GameInstance g(InterferenceMatrix::fully_connected(4), TargetRates(vec({0.1, 0.0, 0.3, 0.05})));
    for (int trial = 0; trial < 500; ++trial) {
        Vector q(4);
        for (Eigen::Index i = 0; i < 4; ++i) q[i] = u(rng);
        const Vector f = best_response(q, g);
        CHECK(leq(g.targets().values(), f));
        CHECK(f.maxCoeff() <= 1.0);
    }
}

TEST_CASE("fixed point membership and clipping") {
    const GameInstance g(InterferenceMatrix::chain(3), TargetRates::common(3, 0.15));
    const auto lfp = oracle::chain_least(0.15, 0.15);
    const Vector q = vec({lfp.outer, lfp.middle, lfp.outer});
    CHECK(is_fixed_point(q, g));
    CHECK(max_abs(achieved_rate(q, g.topology()) - g.targets().values()) < 1e-12);
    CHECK_FALSE(is_fixed_point(vec({0.2, 0.2, 0.2}), g));

    const auto none = clipped_players(q, g);
    CHECK(std::none_of(none.begin(), none.end(), [](bool b) { return b; }));
    const auto clipped = clipped_players(vec({0.0, 0.9, 0.0}), g);
    CHECK(clipped == std::vector<bool>{true, false, true});
}

TEST_CASE("componentwise order") {
    CHECK(leq(vec({0.1, 0.2}), vec({0.1, 0.3})));
    CHECK_FALSE(leq(vec({0.1, 0.4}), vec({0.2, 0.3})));
    CHECK_THROWS_AS(leq(vec({0.1}), vec({0.1, 0.2})), DimensionError);
}
