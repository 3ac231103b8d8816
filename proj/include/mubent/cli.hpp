#pragma once

// Command implementations behind the mubent executable. Each command returns
// its record plus the process exit status; argument parsing lives in tools/.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mubent/entropy.hpp"
#include "mubent/error.hpp"
#include "mubent/mub.hpp"
#include "mubent/multi_bound.hpp"
#include "mubent/oracle.hpp"
#include "mubent/prior_bounds.hpp"
#include "mubent/report.hpp"
#include "mubent/single_bound.hpp"

namespace mubent::cli {

enum ExitCode : int { success = 0, infeasible = 1, verification_failed = 2, inconclusive = 3 };

struct CommandResult {
    report::OutputRecord record;
    int exit_code = success;
};

inline constexpr double larsen_tol = 1e-9;
inline constexpr double single_gap_below = 1e-6;
inline constexpr double single_gap_above = 1e-4;

/// Runs `body`; library errors become a record carrying the diagnostic and
/// exit status 1 (3 for inconclusive searches).
inline CommandResult guarded(const std::string& command, const std::function<CommandResult()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        CommandResult r;
        r.record.command = command;
        r.record.error = e.what();
        r.exit_code = e.kind() == ErrorKind::inconclusive ? inconclusive : infeasible;
        return r;
    }
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{seed, index};
    std::uint32_t parts[2];
    seq.generate(parts, parts + 2);
    return (static_cast<std::uint64_t>(parts[0]) << 32) | parts[1];
}

inline CommandResult cmd_single(int d, double k, double p_min) {
    return guarded("single", [&] {
        CommandResult r;
        auto& rec = r.record;
        rec.command = "single";
        rec.input("d", std::int64_t{d}).input("k", k).input("p_min", p_min);
        const SingleBoundQuery q{d, k, p_min};
        const auto ext = extremal_distribution(q);
        const auto dist = ext.dist.probs();
        rec.entropy("h_hat", shannon_entropy(ext.dist));
        if (p_min == 0.0) rec.entropy("h_tilde", h_tilde(d, k));
        rec.value("big_k", std::int64_t{ext.big_k})
            .value("delta", ext.delta)
            .value("n_floor", std::int64_t{ext.n_floor})
            .value("p_mid", ext.p_mid)
            .value("p_top", ext.p_top)
            .value("distribution", std::vector<double>(dist.begin(), dist.end()))
            .value("collision_probability", collision_probability(ext.dist));
        return r;
    });
}

inline CommandResult cmd_mub_bound(int d, int M, bool compare) {
    return guarded("mub-bound", [&] {
        CommandResult r;
        auto& rec = r.record;
        rec.command = "mub-bound";
        rec.input("d", std::int64_t{d}).input("m", std::int64_t{M}).input("compare", compare);
        const auto arc = mub_entropy_decomposition(d, M);
        rec.entropy("new_theorem", arc.bound)
            .value("k_tot", k_tot_cap(d, M))
            .value("k_min", arc.k_min)
            .value("k_max", arc.k_max)
            .value("phi", std::int64_t{arc.phi})
            .value("k_residual", arc.k_residual)
            .value("degenerate", arc.degenerate)
            .value("witness_k", arc.witness_k);
        if (compare) {
            if (M == 2) rec.entropy("maassen_uffink", maassen_uffink(1.0 / std::sqrt(static_cast<double>(d))));
            const double azer = azer_bound(d, M);
            rec.entropy("azer", azer)
                .entropy("collision_entropy_bound", collision_entropy_bound(d, M))
                .entropy("improvement", arc.bound - azer);
        }
        return r;
    });
}

struct CurveRow {
    double k;
    double h_tilde;
    double azer_col_m1;
    double neg_ln_k;
};

inline CurveRow curve_row(int d, double k) { return {k, h_tilde(d, k), azer_col_bound(1, k), 0.0 - std::log(k)}; }

inline std::vector<CurveRow> curve_rows(int d, double k_from, double k_to, int steps) {
    if (d < 1) throw Error(ErrorKind::range, "d must be a positive integer");
    if (steps < 2) throw Error(ErrorKind::range, "steps must be at least 2");
    if (!(k_from >= 1.0 / d - 1e-12 && k_from < k_to && k_to <= 1.0 + 1e-12))
        throw Error(ErrorKind::range, "need 1/d <= from < to <= 1");
    std::vector<CurveRow> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double k = i + 1 == steps ? k_to : k_from + (k_to - k_from) * i / (steps - 1);
        rows.push_back(curve_row(d, k));
    }
    return rows;
}

inline void write_curve_csv(std::ostream& os, const std::vector<CurveRow>& rows) {
    os << "k,h_tilde,azer_col_m1,neg_ln_k\n";
    for (const auto& row : rows)
        os << report::format_number(row.k) << ',' << report::format_number(row.h_tilde) << ','
           << report::format_number(row.azer_col_m1) << ',' << report::format_number(row.neg_ln_k) << '\n';
}

inline CommandResult cmd_curve(int d, double k_from, double k_to, int steps, const std::string& out_path) {
    return guarded("curve", [&] {
        CommandResult r;
        auto& rec = r.record;
        rec.command = "curve";
        rec.input("d", std::int64_t{d}).input("from", k_from).input("to", k_to).input("steps", std::int64_t{steps});
        const auto rows = curve_rows(d, k_from, k_to, steps);
        std::ofstream file(out_path);
        if (!file) throw Error(ErrorKind::io, "cannot open '" + out_path + "' for writing");
        write_curve_csv(file, rows);
        file.close();
        if (!file) throw Error(ErrorKind::io, "failed writing '" + out_path + "'");
        rec.value("path", out_path).value("rows", static_cast<std::int64_t>(rows.size()));
        return r;
    });
}

inline CommandResult cmd_verify_larsen(int d, int trials, std::uint64_t seed) {
    return guarded("verify larsen", [&] {
        if (trials < 1) throw Error(ErrorKind::range, "trials must be positive");
        CommandResult r;
        auto& rec = r.record;
        rec.command = "verify larsen";
        rec.seed = seed;
        rec.input("d", std::int64_t{d}).input("trials", std::int64_t{trials});
        const auto mubs = build_mubs(d);
        double worst = -1.0;
        LarsenReport worst_report;
        for (int t = 0; t < trials; ++t) {
            const auto mode = t % 2 == 0 ? StateMode::pure : StateMode::mixed;
            const auto rho = sample_density_matrix(d, mode, derive_seed(seed, static_cast<std::uint64_t>(t)));
            auto rep = larsen_check(rho, mubs);
            if (rep.residual > worst) {
                worst = rep.residual;
                worst_report = std::move(rep);
            }
        }
        rec.value("max_residual", worst)
            .value("tolerance", larsen_tol)
            .value("worst_per_basis_ic", worst_report.per_basis_ic)
            .value("worst_lhs", worst_report.lhs)
            .value("worst_rhs", worst_report.rhs)
            .value("passed", worst <= larsen_tol);
        report::Table table{{"basis_index", "ic"}, {}};
        for (std::size_t i = 0; i < worst_report.per_basis_ic.size(); ++i)
            table.rows.push_back({static_cast<std::int64_t>(i), worst_report.per_basis_ic[i]});
        table.rows.push_back({std::string("sum_ic"), worst_report.lhs});
        table.rows.push_back({std::string("purity_plus_one"), worst_report.rhs});
        table.rows.push_back({std::string("max_residual"), worst});
        rec.table = std::move(table);
        r.exit_code = worst <= larsen_tol ? success : verification_failed;
        return r;
    });
}

inline CommandResult cmd_verify_tightness_single(int d, double k, double p_min, std::int64_t budget,
                                                 std::uint64_t seed) {
    return guarded("verify tightness-single", [&] {
        CommandResult r;
        auto& rec = r.record;
        rec.command = "verify tightness-single";
        rec.seed = seed;
        rec.input("d", std::int64_t{d}).input("k", k).input("p_min", p_min).input("budget", budget);
        const SingleBoundQuery q{d, k, p_min};
        const auto ext = extremal_distribution(q);
        const double bound = shannon_entropy(ext.dist);
        oracle::SearchConfig cfg;
        cfg.budget = budget;
        cfg.seed = seed;
        const auto found = oracle::search_min_entropy_single(d, k, p_min, cfg);
        rec.entropy("h_hat", bound).value("feasible_count", found.feasible_count);
        if (found.inconclusive()) {
            rec.value("passed", false);
            r.exit_code = inconclusive;
            return r;
        }
        const double gap = found.best_entropy - bound;
        const bool extremal_ok = std::abs(collision_probability(ext.dist) - k) <= 1e-10 &&
                                 ext.dist.probs().front() >= p_min - 1e-12;
        const bool ok = extremal_ok && gap >= -single_gap_below && gap <= single_gap_above;
        const auto best = found.best_dist->probs();
        rec.entropy("oracle_entropy", found.best_entropy)
            .entropy("gap", gap)
            .value("oracle_distribution", std::vector<double>(best.begin(), best.end()))
            .value("extremal_feasible", extremal_ok)
            .value("passed", ok);
        r.exit_code = ok ? success : verification_failed;
        return r;
    });
}

inline CommandResult cmd_verify_tightness_multi(int M, double k_tot, int d, std::uint64_t seed) {
    return guarded("verify tightness-multi", [&] {
        CommandResult r;
        auto& rec = r.record;
        rec.command = "verify tightness-multi";
        rec.seed = seed;
        rec.input("m", std::int64_t{M}).input("k_tot", k_tot).input("d", std::int64_t{d});
        const auto query = MultiBoundQuery::uniform_dims(M, k_tot, d);
        const auto arc = multi_bound(query);
        const auto found = oracle::search_min_entropy_multi(M, k_tot, query.dims, oracle::SearchConfig{});
        if (found.best_k.empty()) throw Error(ErrorKind::inconclusive, "lattice contains no feasible point");
        const double gap = found.best_sum - arc.bound;
        const bool ok = gap >= -single_gap_below && gap <= single_gap_above;
        rec.entropy("bound", arc.bound)
            .entropy("lattice_min", found.best_sum)
            .entropy("gap", gap)
            .value("lattice_points", found.lattice_points)
            .value("witness_k", arc.witness_k)
            .value("lattice_k", found.best_k)
            .value("passed", ok);
        r.exit_code = ok ? success : verification_failed;
        return r;
    });
}

/// Uniformly drawn (k1, k2) pairs in [1/d, 1] that satisfy the arc-transfer
/// precondition. Gives up with a range error if the dimension admits none.
inline std::vector<std::pair<double, double>> sample_arc_pairs(int d, int count, std::uint64_t seed) {
    if (d < 1 || count < 1) throw Error(ErrorKind::range, "need d >= 1 and a positive pair count");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(1.0 / d, 1.0);
    std::vector<std::pair<double, double>> out;
    std::int64_t attempts = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++attempts > 1000LL * count + 100000) {
            std::ostringstream os;
            os << "no valid arc pairs found for d = " << d;
            throw Error(ErrorKind::range, os.str());
        }
        double a = unit(rng), b = unit(rng);
        if (a > b) std::swap(a, b);
        if (a == b) continue;
        if (arc_transfer_check(a, b, d).applicable) out.emplace_back(a, b);
    }
    return out;
}

inline CommandResult cmd_verify_arcs(int d, int pairs, std::uint64_t seed) {
    return guarded("verify arcs", [&] {
        CommandResult r;
        auto& rec = r.record;
        rec.command = "verify arcs";
        rec.seed = seed;
        rec.input("d", std::int64_t{d}).input("pairs", std::int64_t{pairs});
        int held = 0;
        double min_margin = std::numeric_limits<double>::infinity();
        for (const auto& [k1, k2] : sample_arc_pairs(d, pairs, seed)) {
            const auto rep = arc_transfer_check(k1, k2, d);
            held += rep.holds ? 1 : 0;
            min_margin = std::min(min_margin, rep.lhs - rep.rhs);
        }
        rec.value("held", std::int64_t{held}).value("min_margin", min_margin).value("passed", held == pairs);
        r.exit_code = held == pairs ? success : verification_failed;
        return r;
    });
}

} // namespace mubent::cli
