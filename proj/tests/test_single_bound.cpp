#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "mubent/prior_bounds.hpp"
#include "mubent/single_bound.hpp"

using namespace mubent;

namespace {

double xlogx(double p) { return p <= 0.0 ? 0.0 : -p * std::log(p); }

// Minimum entropy over the lattice points of the 2-simplex (step 1/n) whose
// collision probability is at most k. Every such point is feasible, so the
// result can never undercut a valid lower bound.
double grid_min_entropy_d3(double k, int n) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) {
            const double a = static_cast<double>(i) / n, b = static_cast<double>(j) / n, c = 1.0 - a - b;
            if (a * a + b * b + c * c > k) continue;
            best = std::min(best, xlogx(a) + xlogx(b) + xlogx(c));
        }
    return best;
}

// Same on the floored 3-simplex in d = 4.
double grid_min_entropy_d4_floor(double k, double p_min, int n) {
    double best = std::numeric_limits<double>::infinity();
    const double spare = 1.0 - 4 * p_min;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j)
            for (int l = 0; i + j + l <= n; ++l) {
                const double a = p_min + spare * i / n, b = p_min + spare * j / n, c = p_min + spare * l / n;
                const double e = 1.0 - a - b - c;
                if (a * a + b * b + c * c + e * e > k) continue;
                best = std::min(best, xlogx(a) + xlogx(b) + xlogx(c) + xlogx(e));
            }
    return best;
}

} // namespace

TEST(FeasibleRange, Examples) {
    auto [lo, hi] = feasible_k_range(3, 0.0);
    EXPECT_DOUBLE_EQ(lo, 1.0 / 3);
    EXPECT_DOUBLE_EQ(hi, 1.0);
    std::tie(lo, hi) = feasible_k_range(3, 1.0 / 3);
    EXPECT_NEAR(lo, 1.0 / 3, 1e-15);
    EXPECT_NEAR(hi, 1.0 / 3, 1e-15);
    std::tie(lo, hi) = feasible_k_range(4, 0.1);
    EXPECT_DOUBLE_EQ(lo, 0.25);
    EXPECT_NEAR(hi, 0.52, 1e-15);
    EXPECT_THROW(feasible_k_range(4, 0.3), Error);
}

TEST(KappaArcs, Examples) {
    EXPECT_EQ(kappa_arcs({3, 1.0 / 3, 0.0}), 3);
    EXPECT_EQ(kappa_arcs({5, 0.3, 0.0}), 3);
    // floor(0.36 / 0.19)
    EXPECT_EQ(kappa_arcs({4, 0.35, 0.1}), 1);
    // k and p_min both at 1/d: the only feasible point is uniform
    EXPECT_FALSE(kappa_arcs({4, 0.25, 0.25}).has_value());
}

TEST(KappaArcs, StaysInRangeOnFeasibleQueries) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 5000; ++t) {
        const int d = 2 + t % 8;
        const double p_min = unit(rng) / d;
        const auto [lo, hi] = feasible_k_range(d, p_min);
        const auto kappa = kappa_arcs({d, lo + unit(rng) * (hi - lo), p_min});
        if (!kappa) continue;
        EXPECT_GE(*kappa, 1);
        EXPECT_LE(*kappa, d);
    }
}

TEST(ExtremalDistribution, UniformEndpoint) {
    const auto e = extremal_distribution({3, 1.0 / 3, 0.0});
    EXPECT_EQ(e.big_k, 3);
    EXPECT_EQ(e.delta, 0.0);
    for (double p : e.dist.probs()) EXPECT_NEAR(p, 1.0 / 3, 1e-15);
}

TEST(ExtremalDistribution, NoFloorExample) {
    const auto e = extremal_distribution({3, 0.4, 0.0});
    EXPECT_EQ(e.big_k, 2);
    EXPECT_EQ(e.n_floor, 0);
    EXPECT_NEAR(e.delta, std::sqrt(0.4), 1e-15);
    // frozen from a 40-digit evaluation
    EXPECT_NEAR(e.dist[0], 0.12251482265544137787, 1e-14);
    EXPECT_NEAR(e.dist[1], 0.43874258867227931107, 1e-14);
    EXPECT_NEAR(e.dist[2], 0.43874258867227931107, 1e-14);
    EXPECT_NEAR(collision_probability(e.dist), 0.4, 1e-12);
}

TEST(ExtremalDistribution, FlooredExample) {
    const auto e = extremal_distribution({4, 0.35, 0.1});
    EXPECT_EQ(e.big_k, 1);
    EXPECT_EQ(e.n_floor, 2);
    EXPECT_NEAR(e.delta, std::sqrt(0.02), 1e-14);
    EXPECT_NEAR(e.dist[0], 0.1, 1e-15);
    EXPECT_NEAR(e.dist[1], 0.1, 1e-15);
    EXPECT_NEAR(e.dist[2], 0.32928932188134524756, 1e-14);
    EXPECT_NEAR(e.dist[3], 0.47071067811865475244, 1e-14);
}

TEST(ExtremalDistribution, RejectsInfeasibleQueries) {
    EXPECT_THROW(extremal_distribution({3, 0.2, 0.0}), Error);
    EXPECT_THROW(extremal_distribution({4, 0.6, 0.1}), Error);   // above (d-1) p^2 + (1-(d-1)p)^2 = 0.52
    EXPECT_THROW(extremal_distribution({4, 0.3, 0.3}), Error);   // floor above 1/d
    try {
        extremal_distribution({3, 0.2, 0.0});
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::infeasible);
    }
}

TEST(ExtremalDistribution, InvariantsOnRandomQueries) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 20000; ++t) {
        const int d = 1 + t % 9;
        const double p_min = (t % 3 == 0) ? 0.0 : unit(rng) / d;
        const auto [lo, hi] = feasible_k_range(d, p_min);
        const double k = lo + unit(rng) * (hi - lo);
        const auto e = extremal_distribution({d, k, p_min});
        ASSERT_EQ(e.dist.size(), static_cast<std::size_t>(d));
        double sum = 0.0;
        for (double p : e.dist.probs()) sum += p;
        EXPECT_NEAR(sum, 1.0, 1e-12);
        EXPECT_NEAR(collision_probability(e.dist), k, 1e-10) << d << " " << k << " " << p_min;
        EXPECT_GE(e.dist[0], p_min - 1e-12);
        for (std::size_t i = 1; i < e.dist.size(); ++i) EXPECT_LE(e.dist[i - 1], e.dist[i]);
        EXPECT_GE(e.big_k, 1);
        EXPECT_LE(e.big_k, d);
        if (e.big_k < d) {
            EXPECT_EQ(e.n_floor, d - e.big_k - 1);
            EXPECT_LE(e.p_mid, e.p_top + 1e-12);
            EXPECT_GE(e.p_mid, p_min - 1e-12);
        }
    }
}

TEST(HHat, Examples) {
    EXPECT_NEAR(h_hat({3, 1.0 / 3, 0.0}), std::log(3.0), 1e-12);
    EXPECT_NEAR(h_hat({4, 0.35, 0.1}), 1.1809836722347794348, 1e-12);
    EXPECT_NEAR(h_hat({2, 1.0, 0.0}), 0.0, 1e-12);
}

TEST(HTilde, Examples) {
    for (int d = 2; d <= 9; ++d) EXPECT_NEAR(h_tilde(d, 1.0), 0.0, 1e-12);
    EXPECT_NEAR(h_tilde(4, 0.25), std::log(4.0), 1e-12);
    EXPECT_NEAR(h_tilde(3, 0.4), 0.98013221043920862625, 1e-12);
    EXPECT_THROW(h_tilde(3, 0.3), Error);
    EXPECT_THROW(h_tilde(3, 1.01), Error);
}

TEST(HTilde, ExactAtSingularities) {
    for (int d = 2; d <= 9; ++d)
        for (int kk = 1; kk <= d; ++kk) EXPECT_NEAR(h_tilde(d, 1.0 / kk), std::log(static_cast<double>(kk)), 1e-12);
}

TEST(HTilde, GridOracleD3) {
    // Lattice points are feasible, so the grid minimum sits above the bound,
    // and a 1/600 lattice gets within a few 1e-3 of it.
    for (double k : {0.35, 0.4, 0.45, 0.5, 0.6, 0.75, 0.9}) {
        const double grid = grid_min_entropy_d3(k, 600);
        EXPECT_GE(grid, h_tilde(3, k) - 1e-12) << k;
        EXPECT_LE(grid, h_tilde(3, k) + 5e-3) << k;
    }
}

TEST(HHat, GridOracleFlooredD4) {
    for (double k : {0.3, 0.35, 0.45, 0.5}) {
        const double grid = grid_min_entropy_d4_floor(k, 0.1, 120);
        const double bound = h_hat({4, k, 0.1});
        EXPECT_GE(grid, bound - 1e-12) << k;
        EXPECT_LE(grid, bound + 1e-2) << k;
    }
}

TEST(HTilde, ReducesFromHHat) {
    for (int d = 2; d <= 9; ++d)
        for (int i = 0; i <= 1000; ++i) {
            const double k = 1.0 / d + (1.0 - 1.0 / d) * i / 1000.0;
            EXPECT_NEAR(h_hat({d, k, 0.0}), h_tilde(d, k), 1e-12) << d << " " << k;
        }
}

TEST(HTilde, NonIncreasing) {
    for (int d : {2, 4, 7}) {
        double prev = h_tilde(d, 1.0 / d);
        for (int i = 1; i <= 10000; ++i) {
            const double cur = h_tilde(d, 1.0 / d + (1.0 - 1.0 / d) * i / 10000.0);
            EXPECT_LE(cur, prev + 1e-12);
            prev = cur;
        }
    }
}

TEST(HTilde, ConcaveOnEachArc) {
    const int d = 6;
    for (int kk = 1; kk < d; ++kk) {
        const double lo = 1.0 / (kk + 1), hi = 1.0 / kk;
        const int n = 2000;
        const double h = (hi - lo) / n;
        for (int i = 1; i < n; ++i) {
            const double k = lo + i * h;
            const double second = h_tilde(d, k - h) - 2.0 * h_tilde(d, k) + h_tilde(d, k + h);
            EXPECT_LE(second, 1e-9) << "arc " << kk << " k " << k;
        }
    }
}

TEST(HTilde, DominatesPriorCurves) {
    for (int d : {2, 3, 4, 5, 9}) {
        for (int i = 0; i <= 2000; ++i) {
            const double k = 1.0 / d + (1.0 - 1.0 / d) * i / 2000.0;
            EXPECT_GE(h_tilde(d, k), azer_col_bound(1, k) - 1e-9);
            EXPECT_GE(h_tilde(d, k), -std::log(k) - 1e-9);
        }
    }
}

TEST(HTilde, MisplacedRadicandTermFailsIdentity) {
    // Moving the -1 outside the product, K(k + K k) - 1, overshoots at
    // k = 1/2: the middle entry goes negative and IC != k.
    const double k = 0.5, kk = 2.0;
    const double alt_top = (kk + std::sqrt(kk * (k + kk * k) - 1.0)) / (kk * kk + kk);
    const double alt_mid = 1.0 - kk * alt_top;
    EXPECT_LT(alt_mid, 0.0);
    EXPECT_GT(std::abs(alt_mid * alt_mid + kk * alt_top * alt_top - k), 1e-3);

    const auto e = extremal_distribution({3, k, 0.0});
    EXPECT_NEAR(collision_probability(e.dist), k, 1e-12);
}
