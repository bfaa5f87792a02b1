// fxmst command line: `run` executes the analysis pipeline on a rate file,
// `gen` synthesizes a market panel from a model config.
//
// Exit codes: 0 success, 1 per-currency failure(s) inside a run,
// 2 configuration or parse errors.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fxmst/fxmst.hpp"

namespace {

int run_command(const std::string& input,
                const std::string& base,
                bool all_bases,
                int tau,
                double jump_threshold,
                const std::string& jump_policy,
                std::size_t min_length,
                double poor_threshold,
                double regime_low,
                double regime_high,
                std::optional<std::uint64_t> shuffle_seed,
                bool fictitious,
                std::optional<double> fict_sigma,
                std::uint64_t fict_seed,
                const std::string& fict_anchor,
                const std::string& group_file,
                const std::string& out_dir,
                unsigned jobs) {
    fxmst::RunConfig config;
    config.input = input;
    config.all_bases = all_bases;
    if (!base.empty()) config.base = fxmst::CurrencyCode{base};
    config.tau = tau;
    config.cleaning.jump_threshold = jump_threshold;
    config.cleaning.min_length = min_length;
    if (jump_policy == "drop-day") {
        config.cleaning.policy = fxmst::JumpPolicy::DropDay;
    } else if (jump_policy == "clip") {
        config.cleaning.policy = fxmst::JumpPolicy::Clip;
    } else if (jump_policy == "interpolate") {
        config.cleaning.policy = fxmst::JumpPolicy::Interpolate;
    } else {
        throw fxmst::ValidationError("unknown jump policy '" + jump_policy + "'");
    }
    config.fit.poor_threshold = poor_threshold;
    config.regimes.low_frac = regime_low;
    config.regimes.high_frac = regime_high;
    config.shuffle_seed = shuffle_seed;
    config.fictitious = fictitious;
    config.fict_sigma = fict_sigma;
    config.fict_seed = fict_seed;
    if (!fict_anchor.empty()) config.fict_anchor = fxmst::CurrencyCode{fict_anchor};
    if (!group_file.empty()) config.group_table_file = group_file;
    config.out_dir = out_dir;
    config.jobs = jobs;

    const fxmst::RunReport report = fxmst::run_pipeline(config);
    for (const auto& warning : report.warnings) {
        std::cerr << "warning: " << warning << "\n";
    }
    std::cout << "bases analyzed: " << report.structured.size();
    if (!report.shuffled.empty()) {
        std::cout << " (+" << report.shuffled.size() << " shuffled)";
    }
    std::cout << "\noutputs in " << report.out_dir.string() << "\n\n" << report.table1;
    if (!report.failures.empty()) {
        for (const auto& failure : report.failures) {
            std::cerr << "error: " << failure << "\n";
        }
        return 1;
    }
    return 0;
}

int gen_command(const std::string& model_file, std::uint64_t seed, const std::string& out_file) {
    const fxmst::MarketModel model = fxmst::MarketModel::from_file(model_file);
    const fxmst::RatePanel panel = fxmst::generate_market(model, fxmst::RandomSeed{seed});
    fxmst::write_panel_csv(out_file, panel);
    std::cout << "wrote " << panel.currency_count() << " series x " << panel.sample_count()
              << " days to " << out_file << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Correlation networks, spanning trees and multiplicity scaling "
                 "for exchange-rate panels"};
    app.require_subcommand(1);

    // --- run ---
    auto* run = app.add_subcommand("run", "Run the analysis pipeline on a rate file");
    std::string input;
    run->add_option("input", input, "Rate file (date,currency,rate with # reference header)")
        ->required();
    std::string base;
    auto* base_opt = run->add_option("--base", base, "Base currency for a single run");
    bool all_bases = false;
    auto* all_opt = run->add_flag("--all-bases", all_bases, "Sweep every currency as base");
    base_opt->excludes(all_opt);
    int tau = 1;
    run->add_option("--tau", tau, "Return horizon in trading days")->default_val(1);
    double jump_threshold = 5.0;
    run->add_option("--jump-threshold", jump_threshold, "Jump filter threshold in sigmas")
        ->default_val(5.0);
    std::string jump_policy = "drop-day";
    run->add_option("--jump-policy", jump_policy, "drop-day | clip | interpolate")
        ->default_val("drop-day");
    std::size_t min_length = 2;
    run->add_option("--min-length", min_length, "Minimum timestamps after cleaning")
        ->default_val(2);
    double poor_threshold = 0.09;
    run->add_option("--poor-threshold", poor_threshold,
                    "Relative fit error above which a fit is POOR")
        ->default_val(0.09);
    double regime_low = 0.4;
    run->add_option("--regime-low", regime_low, "Lower typical-band fraction")->default_val(0.4);
    double regime_high = 0.65;
    run->add_option("--regime-high", regime_high, "Upper typical-band fraction")
        ->default_val(0.65);
    std::optional<std::uint64_t> shuffle_seed;
    run->add_option("--shuffle-seed", shuffle_seed,
                    "Also run a shuffled (time-correlation-free) sweep with this seed");
    bool fictitious = false;
    run->add_flag("--fict", fictitious, "Append the Gaussian fictitious currency FIC");
    std::optional<double> fict_sigma;
    run->add_option("--fict-sigma", fict_sigma,
                    "FIC noise scale (default: median series return stdev)");
    std::uint64_t fict_seed = 0;
    run->add_option("--fict-seed", fict_seed, "FIC noise seed")->default_val(0);
    std::string fict_anchor;
    run->add_option("--fict-anchor", fict_anchor,
                    "Currency FIC is quoted against (default USD, else the panel base)");
    std::string group_file;
    run->add_option("--groups", group_file, "code,group table overriding the built-in one");
    std::string out_dir;
    run->add_option("--out", out_dir, "Output directory")->required();
    unsigned jobs = 0;
    run->add_option("--jobs", jobs, "Worker threads for the sweep (0 = all cores)")
        ->default_val(0);

    // --- gen ---
    auto* gen = app.add_subcommand("gen", "Generate a synthetic market panel");
    std::string model_file;
    gen->add_option("model", model_file, "Market model config (key = value lines)")->required();
    std::uint64_t seed = 0;
    gen->add_option("--seed", seed, "Generator seed")->default_val(0);
    std::string out_file;
    gen->add_option("--out", out_file, "Output rate file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            if (base.empty() && !all_bases) {
                std::cerr << "error: pass --base XXX or --all-bases\n";
                return 2;
            }
            return run_command(input, base, all_bases, tau, jump_threshold, jump_policy,
                               min_length, poor_threshold, regime_low, regime_high, shuffle_seed,
                               fictitious, fict_sigma, fict_seed, fict_anchor, group_file,
                               out_dir, jobs);
        }
        return gen_command(model_file, seed, out_file);
    } catch (const fxmst::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 2;
    }
}
