// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "mubent/cli.hpp"
#include "mubent/mub.hpp"
#include "mubent/multi_bound.hpp"
#include "mubent/oracle.hpp"
#include "mubent/prior_bounds.hpp"
#include "mubent/single_bound.hpp"

using namespace mubent;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* title, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= limit_s;
    const bool ok = o.pass && in_time;
    failures += ok ? 0 : 1;
    std::printf("[%s] %s %s: %s (%.2fs, limit %.0fs%s)\n", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs,
                limit_s, in_time ? "" : ", over time");
    std::fflush(stdout);
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

Outcome ac1() {
    double worst = 0.0;
    int states = 0;
    for (int d : supported_mub_dimensions) {
        const auto mubs = build_mubs(d);
        for (int t = 0; t < 100; ++t) {
            const auto mode = t < 50 ? StateMode::pure : StateMode::mixed;
            const auto rho = sample_density_matrix(d, mode, cli::derive_seed(1000 + static_cast<unsigned>(d), static_cast<unsigned>(t)));
            worst = std::max(worst, larsen_check(rho, mubs).residual);
            ++states;
        }
    }
    return {worst <= 1e-9, std::to_string(states) + " states, max residual " + fmt(worst)};
}

Outcome ac2() {
    double worst = 0.0;
    for (int d : supported_mub_dimensions) worst = std::max(worst, unbiasedness_error(build_mubs(d)));
    return {worst <= 1e-10, "max overlap deviation " + fmt(worst)};
}

Outcome ac3() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double lo_gap = 1e300, hi_gap = -1e300, worst_ic = 0.0;
    bool feasible = true;
    for (int t = 0; t < 50; ++t) {
        const int d = 2 + static_cast<int>(unit(rng) * 4.0);
        const double p_min = unit(rng) < 0.4 ? 0.0 : 0.9 * unit(rng) / d;
        const auto [k_lo, k_hi] = feasible_k_range(d, p_min);
        const double k = k_lo + unit(rng) * (k_hi - k_lo);
        const SingleBoundQuery q{d, k, p_min};
        const auto ext = extremal_distribution(q);
        for (double p : ext.dist.probs()) feasible = feasible && p >= p_min - 1e-12;
        worst_ic = std::max(worst_ic, std::abs(collision_probability(ext.dist) - k));
        oracle::SearchConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(t);
        const auto r = oracle::search_min_entropy_single(d, k, p_min, cfg);
        if (r.inconclusive()) return {false, "inconclusive search at query " + std::to_string(t)};
        const double gap = r.best_entropy - shannon_entropy(ext.dist);
        lo_gap = std::min(lo_gap, gap);
        hi_gap = std::max(hi_gap, gap);
    }
    const bool ok = feasible && worst_ic <= 1e-10 && lo_gap >= -1e-6 && hi_gap <= 1e-4;
    return {ok, "gap range [" + fmt(lo_gap) + ", " + fmt(hi_gap) + "], max |IC-k| " + fmt(worst_ic) +
                    (feasible ? "" : ", floor violated")};
}

Outcome ac4() {
    double worst = 0.0;
    for (int d = 2; d <= 9; ++d) {
        for (int i = 0; i < 1000; ++i) {
            const double k = 1.0 / d + (1.0 - 1.0 / d) * i / 999.0;
            worst = std::max(worst, std::abs(h_hat({d, k, 0.0}) - h_tilde(d, k)));
        }
    }
    return {worst <= 1e-12, "max difference " + fmt(worst)};
}

Outcome ac5() {
    struct Case {
        int M;
        double k_tot;
        int d;
    };
    std::vector<Case> cases{{2, 0.9, 3}, {4, 2.0, 3}};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        const int M = 2 + t % 2;
        const int d = 2 + static_cast<int>(unit(rng) * 4.0);
        const double lo = static_cast<double>(M) / d;
        cases.push_back({M, lo + unit(rng) * (M - lo), d});
    }
    double lo_gap = 1e300, hi_gap = -1e300;
    for (const auto& c : cases) {
        const auto q = MultiBoundQuery::uniform_dims(c.M, c.k_tot, c.d);
        const double bound = multi_bound(q).bound;
        const auto r = oracle::search_min_entropy_multi(c.M, c.k_tot, q.dims, oracle::SearchConfig{});
        lo_gap = std::min(lo_gap, r.best_sum - bound);
        hi_gap = std::max(hi_gap, r.best_sum - bound);
    }
    return {lo_gap >= -1e-6 && hi_gap <= 1e-4,
            std::to_string(cases.size()) + " queries, gap range [" + fmt(lo_gap) + ", " + fmt(hi_gap) + "]"};
}

Outcome ac6() {
    double worst = 1e300;
    for (int d : supported_mub_dimensions)
        for (int M = 2; M <= d + 1; ++M) worst = std::min(worst, mub_entropy_bound(d, M) - azer_bound(d, M));
    const double ours = mub_entropy_bound(3, 4), theirs = azer_bound(3, 4);
    const bool ok = worst >= -1e-9 && ours - theirs > 1e-6;
    return {ok, "min margin " + fmt(worst) + ", (3,4): " + std::to_string(ours) + " vs " + std::to_string(theirs)};
}

Outcome ac7() {
    double worst = 1e300;
    int checks = 0;
    for (int d : supported_mub_dimensions) {
        const auto mubs = build_mubs(d);
        std::vector<std::vector<double>> entropies;
        for (int t = 0; t < 100; ++t) {
            const auto mode = t % 2 ? StateMode::mixed : StateMode::pure;
            const auto rho = sample_density_matrix(d, mode, cli::derive_seed(7000 + static_cast<unsigned>(d), static_cast<unsigned>(t)));
            std::vector<double> h;
            for (const auto& b : mubs.bases) h.push_back(shannon_entropy(measurement_distribution(rho, b)));
            entropies.push_back(std::move(h));
        }
        for (int M = 2; M <= d + 1; ++M) {
            const double bound = mub_entropy_bound(d, M);
            for (const auto& h : entropies) {
                double sum = 0.0;
                for (int m = 0; m < M; ++m) sum += h[static_cast<std::size_t>(m)];
                worst = std::min(worst, sum - bound);
                ++checks;
            }
        }
    }
    return {worst >= -1e-9, std::to_string(checks) + " (state, M) checks, min slack " + fmt(worst)};
}

Outcome ac8() {
    const std::string cmd = std::string(MUBENT_CLI_PATH) + " curve --d 4 --from 0.25 --to 1 --steps 500";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {false, "could not start the CLI"};
    std::string text;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) text.append(buf, n);
    const int status = pclose(pipe);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return {false, "curve command failed"};

    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (line != "k,h_tilde,azer_col_m1,neg_ln_k") return {false, "unexpected header: " + line};
    int rows = 0;
    double worst_order = 1e300;
    while (std::getline(in, line)) {
        double k, a, b, c;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &k, &a, &b, &c) != 4) return {false, "bad row: " + line};
        worst_order = std::min({worst_order, a - b, b - c});
        ++rows;
    }
    double worst_eq = 0.0;
    for (double k : {0.25, 1.0 / 3, 0.5, 1.0}) {
        const auto r = cli::curve_row(4, k);
        worst_eq = std::max({worst_eq, std::abs(r.h_tilde - r.azer_col_m1), std::abs(r.azer_col_m1 - r.neg_ln_k)});
    }
    const bool ok = rows == 500 && worst_order >= -1e-12 && worst_eq <= 1e-9;
    return {ok, std::to_string(rows) + " rows, min ordering slack " + fmt(worst_order) + ", max touch gap " +
                    fmt(worst_eq)};
}

Outcome ac9() {
    int held = 0, total = 0;
    double margin = 1e300;
    for (int d = 4; d <= 9; ++d) {
        for (const auto& [k1, k2] : cli::sample_arc_pairs(d, 100, 900 + static_cast<unsigned>(d))) {
            const auto rep = arc_transfer_check(k1, k2, d);
            held += rep.lhs - rep.rhs > 0.0 ? 1 : 0;
            margin = std::min(margin, rep.lhs - rep.rhs);
            ++total;
        }
    }
    return {held == total, std::to_string(held) + "/" + std::to_string(total) + " held, min margin " + fmt(margin)};
}

Outcome ac10() {
    double worst = -1e300;
    int cells = 0;
    for (int i = 1; i <= 100; ++i) {
        const double eps = i / 100.0;
        for (int j = 0; j < 100; ++j) {
            const double k = eps * eps * (1.0 / 3 + (2.0 / 3) * j / 99.0);
            const double closed = oracle::three_prob_entropy(oracle::three_prob_min(eps, k));
            worst = std::max(worst, closed - oracle::three_prob_grid_min(eps, k, 1e-3));
            ++cells;
        }
    }
    return {worst <= 1e-8, std::to_string(cells) + " cells, max excess over grid " + fmt(worst)};
}

} // namespace

int main() {
    criterion("AC1", "Larsen identity", 10, ac1);
    criterion("AC2", "Unbiasedness", 5, ac2);
    criterion("AC3", "Single-bound tightness", 300, ac3);
    criterion("AC4", "Reduction to h_tilde", 5, ac4);
    criterion("AC5", "Multi-bound tightness", 600, ac5);
    criterion("AC6", "Dominance over Azer", 1, ac6);
    criterion("AC7", "Quantum consistency", 60, ac7);
    criterion("AC8", "Curve ordering", 1, ac8);
    criterion("AC9", "Arc transfer", 5, ac9);
    criterion("AC10", "Three-probability closed form", 60, ac10);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
