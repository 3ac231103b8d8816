// mubent: entropy lower bounds under collision-probability constraints and
// entropic uncertainty relations for mutually unbiased bases.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mubent/cli.hpp"

namespace {

int emit(const mubent::cli::CommandResult& result, mubent::report::Format format, bool bits) {
    mubent::report::render(std::cout, result.record, format, bits);
    if (result.record.error) std::cerr << "mubent: " << *result.record.error << '\n';
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tight Shannon-entropy lower bounds from collision probabilities, and MUB uncertainty relations"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", MUBENT_VERSION);

    std::string format_name = "human";
    bool bits = false;
    app.add_option("--format", format_name, "Output format: human, csv, json")
        ->check(CLI::IsMember({"human", "csv", "json", "structured", "json-like-structured"}));
    app.add_flag("--bits", bits, "Display entropies in bits instead of nats");

    int d = 0;
    int m = 0;
    double k = 0.0;
    double p_min = 0.0;
    double k_tot = 0.0;
    double k_from = 0.0;
    double k_to = 1.0;
    int steps = 500;
    int trials = 100;
    int pairs = 100;
    std::int64_t budget = 1'000'000;
    std::uint64_t seed = 0;
    bool compare = false;
    std::string out_path;

    auto* single = app.add_subcommand("single", "Extremal distribution and entropy bound for one distribution");
    single->add_option("--d", d, "Number of outcomes")->required();
    single->add_option("--k", k, "Collision-probability bound")->required();
    single->add_option("--pmin", p_min, "Probability floor");

    auto* mub = app.add_subcommand("mub-bound", "Entropic uncertainty bound for M MUBs in prime-power dimension d");
    mub->add_option("--d", d, "Dimension (prime power)")->required();
    mub->add_option("--m", m, "Number of bases, 1..d+1")->required();
    mub->add_flag("--compare", compare, "Also print earlier bounds and the improvement");

    auto* curve = app.add_subcommand("curve", "Emit h_tilde, the chord bound and -ln k as CSV");
    curve->add_option("--d", d, "Number of outcomes")->required();
    curve->add_option("--from", k_from, "First k")->required();
    curve->add_option("--to", k_to, "Last k")->required();
    curve->add_option("--steps", steps, "Number of evenly spaced rows");
    curve->add_option("--out", out_path, "Output CSV path (stdout when omitted)");

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->require_subcommand(1);
    auto* larsen = verify->add_subcommand("larsen", "Sum of MUB collision probabilities equals purity + 1");
    larsen->add_option("--d", d)->required();
    larsen->add_option("--trials", trials);
    larsen->add_option("--seed", seed);
    auto* tight_single = verify->add_subcommand("tightness-single", "Brute-force search against h_hat");
    tight_single->add_option("--d", d)->required();
    tight_single->add_option("--k", k)->required();
    tight_single->add_option("--pmin", p_min);
    tight_single->add_option("--budget", budget);
    tight_single->add_option("--seed", seed);
    auto* tight_multi = verify->add_subcommand("tightness-multi", "Lattice search in k-space against the multi bound");
    tight_multi->add_option("--m", m)->required();
    tight_multi->add_option("--ktot", k_tot)->required();
    tight_multi->add_option("--d", d)->required();
    tight_multi->add_option("--seed", seed);
    auto* arcs = verify->add_subcommand("arcs", "Arc-transfer inequality on random pairs");
    arcs->add_option("--d", d)->required();
    arcs->add_option("--pairs", pairs);
    arcs->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mubent::cli::infeasible;
    }

    const auto format = mubent::report::parse_format(format_name);
    namespace cli = mubent::cli;

    if (*single) return emit(cli::cmd_single(d, k, p_min), format, bits);
    if (*mub) return emit(cli::cmd_mub_bound(d, m, compare), format, bits);
    if (*curve) {
        if (!out_path.empty()) return emit(cli::cmd_curve(d, k_from, k_to, steps, out_path), format, bits);
        try {
            cli::write_curve_csv(std::cout, cli::curve_rows(d, k_from, k_to, steps));
            return cli::success;
        } catch (const mubent::Error& e) {
            std::cerr << e.what() << '\n';
            return cli::infeasible;
        }
    }
    if (*larsen) return emit(cli::cmd_verify_larsen(d, trials, seed), format, bits);
    if (*tight_single) return emit(cli::cmd_verify_tightness_single(d, k, p_min, budget, seed), format, bits);
    if (*tight_multi) return emit(cli::cmd_verify_tightness_multi(m, k_tot, d, seed), format, bits);
    if (*arcs) return emit(cli::cmd_verify_arcs(d, pairs, seed), format, bits);
    return cli::infeasible;
}
