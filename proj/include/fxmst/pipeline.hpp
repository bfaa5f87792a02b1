#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fxmst/cleaning.hpp"
#include "fxmst/correlation.hpp"
#include "fxmst/csv.hpp"
#include "fxmst/currency.hpp"
#include "fxmst/degree.hpp"
#include "fxmst/distance.hpp"
#include "fxmst/errors.hpp"
#include "fxmst/format.hpp"
#include "fxmst/graph_export.hpp"
#include "fxmst/mst.hpp"
#include "fxmst/nullmodel.hpp"
#include "fxmst/panel.hpp"
#include "fxmst/power_fit.hpp"
#include "fxmst/returns.hpp"
#include "fxmst/spectrum.hpp"

namespace fxmst {

/// Everything one pipeline invocation needs. Exactly one of `base` /
/// `all_bases` selects the sweep.
struct RunConfig {
    std::filesystem::path input;
    std::optional<CurrencyCode> base;
    bool all_bases = false;
    int tau = 1;
    CleaningConfig cleaning;
    FitConfig fit;
    RegimeThresholds regimes;
    /// When set, a shuffled sweep runs next to the structured one and
    /// feeds the r.m. table row.
    std::optional<std::uint64_t> shuffle_seed;
    /// When true, currency FIC is appended before the sweep (and becomes a
    /// base of its own under --all-bases).
    bool fictitious = false;
    std::optional<double> fict_sigma; // default: median series return stdev
    std::uint64_t fict_seed = 0;
    std::optional<CurrencyCode> fict_anchor; // default: USD, else the panel base
    std::optional<std::filesystem::path> group_table_file;
    std::filesystem::path out_dir;
    unsigned jobs = 0; // 0 = hardware concurrency

    void validate() const {
        if (input.empty()) throw ValidationError("input file is required");
        if (out_dir.empty()) throw ValidationError("output directory is required");
        if (base.has_value() == all_bases) {
            throw ValidationError("select exactly one of a single base or --all-bases");
        }
        if (tau < 1) throw ValidationError("tau must be >= 1");
        cleaning.validate();
        fit.validate();
        regimes.validate();
    }
};

/// Outcome of one (base currency, variant) pipeline pass.
struct BaseRunResult {
    CurrencyCode base;
    std::optional<CurrencyGroup> group;
    bool shuffled = false;
    SpectrumReport spectrum_report;
    MstTree tree;
    DegreeDistribution distribution;
    std::optional<PowerFit> fit;
    std::string fit_skipped; // non-empty when the power fit had no support
};

struct RunReport {
    std::filesystem::path out_dir;
    std::vector<BaseRunResult> structured;
    std::vector<BaseRunResult> shuffled;
    std::vector<std::string> failures; // fatal, per base: "XAU: why"
    std::vector<std::string> warnings;
    std::string table1;

    bool ok() const noexcept { return failures.empty(); }
};

namespace detail {

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
}

inline BaseRunResult run_single_base(const RatePanel& panel,
                                     const CurrencyCode& base,
                                     const RunConfig& config,
                                     bool shuffled,
                                     const GroupTable& groups) {
    const RatePanel rebased = rebase(panel, base);
    ReturnMatrix returns = log_returns(rebased, config.tau);
    if (shuffled) {
        returns = shuffle_returns(returns, RandomSeed{*config.shuffle_seed});
    }
    const CorrelationMatrix corr = correlation(returns);
    SpectrumReport report = spectrum(corr, config.regimes);
    MstTree tree = build_mst(distances(corr));
    DegreeDistribution dist = degree_distribution(tree);

    std::optional<PowerFit> fit;
    std::string skipped;
    try {
        fit = fit_power(dist, config.fit);
    } catch (const FitError& e) {
        skipped = e.what();
    }
    return BaseRunResult{base,       groups.group_of(base), shuffled, std::move(report),
                         std::move(tree), std::move(dist),  std::move(fit), std::move(skipped)};
}

inline std::string distribution_csv(const BaseRunResult& result) {
    std::string out = "K,count,cumulative,F,fitted\n";
    const auto& dist = result.distribution;
    for (int k = 1; k <= dist.k_max; ++k) {
        const auto count_it = dist.counts.find(k);
        out += std::to_string(k) + ",";
        out += std::to_string(count_it == dist.counts.end() ? 0 : count_it->second) + ",";
        out += std::to_string(dist.cumulative.at(k)) + ",";
        out += format_general(dist.normalized.at(k), 12);
        out += ",";
        if (result.fit) {
            out += format_general(result.fit->amplitude *
                                      std::pow(static_cast<double>(k), -result.fit->alpha),
                                  12);
        }
        out += "\n";
    }
    return out;
}

inline std::string eigenvalues_csv(const SpectrumReport& report) {
    std::string out = "index,lambda\n";
    for (std::size_t i = 0; i < report.size(); ++i) {
        out += std::to_string(i + 1) + "," + format_general(report.eigenvalues()[i], 12) + "\n";
    }
    return out;
}

inline std::string group_label(const std::optional<CurrencyGroup>& group) {
    return group ? std::string(to_string(*group)) : std::string("-");
}

inline void write_base_outputs(const std::filesystem::path& dir,
                               const BaseRunResult& result,
                               const GroupTable& groups) {
    std::filesystem::create_directories(dir);
    write_text_file(dir / "tree.dot", export_dot(result.tree, groups));
    write_text_file(dir / "edges.csv", export_edge_list(result.tree));
    write_text_file(dir / "multiplicity.csv", export_multiplicities(result.tree));
    write_text_file(dir / "distribution.csv", distribution_csv(result));
    write_text_file(dir / "eigenvalues.csv", eigenvalues_csv(result.spectrum_report));
}

inline std::string spectrum_csv(const std::vector<const BaseRunResult*>& results) {
    // Fig.-1-shaped file, one row per base, sorted by lambda_max descending.
    std::vector<const BaseRunResult*> sorted = results;
    std::sort(sorted.begin(), sorted.end(), [](const BaseRunResult* a, const BaseRunResult* b) {
        const double la = a->spectrum_report.lambda_max();
        const double lb = b->spectrum_report.lambda_max();
        if (la != lb) return la > lb;
        return a->base.str() < b->base.str();
    });
    std::string out = "base,group,lambda_max,lambda_second,regime\n";
    for (const auto* r : sorted) {
        out += r->base.str() + "," + group_label(r->group) + "," +
               format_general(r->spectrum_report.lambda_max(), 12) + "," +
               format_general(r->spectrum_report.lambda_second(), 12) + "," +
               std::string(to_string(r->spectrum_report.regime())) + "\n";
    }
    return out;
}

inline std::string summary_csv(const std::vector<const BaseRunResult*>& results) {
    std::vector<const BaseRunResult*> sorted = results;
    std::sort(sorted.begin(), sorted.end(), [](const BaseRunResult* a, const BaseRunResult* b) {
        return a->base.str() < b->base.str();
    });
    std::string out =
        "base,group,regime,lambda_max,lambda_second,alpha,delta_alpha,relative_error,quality\n";
    for (const auto* r : sorted) {
        out += r->base.str() + "," + group_label(r->group) + "," +
               std::string(to_string(r->spectrum_report.regime())) + "," +
               format_general(r->spectrum_report.lambda_max(), 12) + "," +
               format_general(r->spectrum_report.lambda_second(), 12) + ",";
        if (r->fit) {
            out += format_general(r->fit->alpha, 12) + "," +
                   format_general(r->fit->delta_alpha, 12) + "," +
                   format_general(r->fit->relative_error, 12) + "," +
                   std::string(to_string(r->fit->quality));
        } else {
            out += ",,,SKIPPED";
        }
        out += "\n";
    }
    return out;
}

struct Table1Row {
    std::string label;
    std::size_t members = 0;
    double alpha = 0.0;
    double delta_alpha = 0.0;
    double lambda_max = 0.0;

    bool add(const BaseRunResult& r) {
        if (!r.fit) return false;
        alpha += r.fit->alpha;
        delta_alpha += r.fit->delta_alpha;
        lambda_max += r.spectrum_report.lambda_max();
        ++members;
        return true;
    }

    void finish() {
        if (members == 0) return;
        const double m = static_cast<double>(members);
        alpha /= m;
        delta_alpha /= m;
        lambda_max /= m;
    }

    std::string csv() const {
        return label + "," + std::to_string(members) + "," + format_general(alpha, 6) + "," +
               format_general(delta_alpha, 6) + "," + format_general(delta_alpha / alpha, 6) +
               "," + format_general(lambda_max, 6) + "\n";
    }
};

} // namespace detail

/// Builds the per-group scaling table (rows: metals, A*, A, B, C, average,
/// average_groups, r.m., fict.; columns: alpha, delta_alpha, relative
/// error, lambda_max). Rows without members are omitted and a warning is
/// recorded. The metals row selects XAU/XAG/XPT by code; the fict. row the
/// FIC base; r.m. aggregates the shuffled sweep; the plain average spans
/// all real structured bases and average_groups averages the four group
/// rows.
inline std::string make_table1(const RunReport& report,
                               const GroupTable& groups,
                               std::vector<std::string>* warnings = nullptr) {
    auto warn = [&](const std::string& msg) {
        if (warnings) warnings->push_back(msg);
    };

    detail::Table1Row metals{"metals"};
    std::map<CurrencyGroup, detail::Table1Row> by_group;
    by_group[CurrencyGroup::AStar] = {"A*"};
    by_group[CurrencyGroup::A] = {"A"};
    by_group[CurrencyGroup::B] = {"B"};
    by_group[CurrencyGroup::C] = {"C"};
    detail::Table1Row average{"average"};
    detail::Table1Row shuffled{"r.m."};
    detail::Table1Row fict{"fict."};

    for (const auto& r : report.structured) {
        if (r.base == fictitious_code()) {
            if (!fict.add(r)) warn("fict. base has no power fit; row dropped");
            continue;
        }
        if (!r.fit) {
            warn(r.base.str() + ": no power fit (" + r.fit_skipped + "); excluded from table");
            continue;
        }
        average.add(r);
        if (is_metal(r.base)) metals.add(r);
        const auto group = groups.group_of(r.base);
        if (group && by_group.count(*group)) by_group[*group].add(r);
    }
    for (const auto& r : report.shuffled) shuffled.add(r);

    std::string out = "group,currencies,alpha,delta_alpha,relative_error,lambda_max\n";
    detail::Table1Row group_mean{"average_groups"};
    auto emit = [&](detail::Table1Row& row) {
        if (row.members == 0) {
            warn("table row '" + row.label + "' has no members; omitted");
            return;
        }
        row.finish();
        out += row.csv();
    };
    emit(metals);
    for (auto& [group, row] : by_group) {
        if (row.members > 0) {
            row.finish();
            out += row.csv();
            group_mean.alpha += row.alpha;
            group_mean.delta_alpha += row.delta_alpha;
            group_mean.lambda_max += row.lambda_max;
            ++group_mean.members;
        } else {
            warn("table row '" + row.label + "' has no members; omitted");
        }
    }
    emit(average);
    emit(group_mean);
    emit(shuffled);
    emit(fict);
    return out;
}

/// Runs the full pipeline: load -> clean -> (optional FIC) -> per-base
/// rebase -> returns -> (optional shuffle) -> correlation -> spectrum ->
/// MST -> multiplicity distribution -> power fit, then writes one output
/// directory per base plus the aggregated spectrum/summary/table files and
/// a JSON manifest. The sweep runs on a bounded worker pool; outputs are
/// deterministic for a fixed config and seeds.
inline RunReport run_pipeline(const RunConfig& config) {
    config.validate();

    const GroupTable groups = config.group_table_file
                                  ? read_group_table(*config.group_table_file)
                                  : GroupTable::defaults();

    RatePanel panel = load_panel(config.input, config.cleaning);
    RunReport report;
    report.out_dir = config.out_dir;

    if (config.fictitious) {
        CurrencyCode anchor = config.fict_anchor.value_or(
            panel.contains(CurrencyCode{"USD"}) ? CurrencyCode{"USD"} : panel.base());
        const double sigma = config.fict_sigma.value_or(median_return_stdev(panel));
        panel = fictitious_currency(panel, anchor, sigma, RandomSeed{config.fict_seed});
    }

    std::vector<CurrencyCode> bases;
    if (config.all_bases) {
        bases.push_back(panel.base());
        for (const auto& code : panel.currencies()) bases.push_back(code);
    } else {
        if (!panel.contains(*config.base)) {
            throw UnknownCurrencyError("base currency " + config.base->str() + " not in panel");
        }
        bases.push_back(*config.base);
    }

    struct Task {
        CurrencyCode base;
        bool shuffled;
    };
    std::vector<Task> tasks;
    for (const auto& base : bases) tasks.push_back({base, false});
    if (config.shuffle_seed) {
        for (const auto& base : bases) tasks.push_back({base, true});
    }

    std::vector<std::optional<BaseRunResult>> outcomes(tasks.size());
    std::vector<std::string> task_errors(tasks.size());

    std::atomic<std::size_t> cursor{0};
    auto work = [&] {
        while (true) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= tasks.size()) break;
            try {
                BaseRunResult result =
                    detail::run_single_base(panel, tasks[i].base, config, tasks[i].shuffled, groups);
                const auto dir = tasks[i].shuffled ? config.out_dir / "rm" / tasks[i].base.str()
                                                   : config.out_dir / tasks[i].base.str();
                detail::write_base_outputs(dir, result, groups);
                outcomes[i] = std::move(result);
            } catch (const std::exception& e) {
                task_errors[i] = tasks[i].base.str() +
                                 (tasks[i].shuffled ? " (shuffled): " : ": ") + e.what();
            }
        }
    };

    std::filesystem::create_directories(config.out_dir);
    unsigned jobs = config.jobs != 0 ? config.jobs : std::thread::hardware_concurrency();
    if (jobs == 0) jobs = 1;
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size()));
    if (jobs <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (!task_errors[i].empty()) {
            report.failures.push_back(task_errors[i]);
            continue;
        }
        if (!outcomes[i]) continue;
        if (!outcomes[i]->fit_skipped.empty()) {
            report.warnings.push_back(tasks[i].base.str() + ": power fit skipped (" +
                                      outcomes[i]->fit_skipped + ")");
        }
        if (tasks[i].shuffled) {
            report.shuffled.push_back(std::move(*outcomes[i]));
        } else {
            report.structured.push_back(std::move(*outcomes[i]));
        }
    }

    std::vector<const BaseRunResult*> structured_ptrs;
    for (const auto& r : report.structured) structured_ptrs.push_back(&r);
    detail::write_text_file(config.out_dir / "spectrum.csv", detail::spectrum_csv(structured_ptrs));
    detail::write_text_file(config.out_dir / "summary.csv", detail::summary_csv(structured_ptrs));
    if (!report.shuffled.empty()) {
        std::vector<const BaseRunResult*> shuffled_ptrs;
        for (const auto& r : report.shuffled) shuffled_ptrs.push_back(&r);
        detail::write_text_file(config.out_dir / "rm" / "summary.csv",
                                detail::summary_csv(shuffled_ptrs));
    }

    report.table1 = make_table1(report, groups, &report.warnings);
    detail::write_text_file(config.out_dir / "table1.csv", report.table1);

    nlohmann::json manifest;
    manifest["tool"] = "fxmst";
    manifest["input"] = config.input.string();
    manifest["tau"] = config.tau;
    manifest["mode"] = config.all_bases ? "all-bases" : "single-base";
    manifest["shuffle_seed"] =
        config.shuffle_seed ? nlohmann::json(*config.shuffle_seed) : nlohmann::json(nullptr);
    manifest["fictitious"] = config.fictitious;
    nlohmann::json artifacts;
    artifacts["spectrum"] = "spectrum.csv";
    artifacts["summary"] = "summary.csv";
    artifacts["table1"] = "table1.csv";
    nlohmann::json per_base;
    for (const auto& r : report.structured) {
        const std::string prefix = r.base.str() + "/";
        per_base[r.base.str()] = {{"dot", prefix + "tree.dot"},
                                  {"edges", prefix + "edges.csv"},
                                  {"multiplicity", prefix + "multiplicity.csv"},
                                  {"distribution", prefix + "distribution.csv"},
                                  {"eigenvalues", prefix + "eigenvalues.csv"}};
    }
    artifacts["bases"] = per_base;
    if (!report.shuffled.empty()) {
        nlohmann::json rm_base;
        for (const auto& r : report.shuffled) {
            const std::string prefix = "rm/" + r.base.str() + "/";
            rm_base[r.base.str()] = {{"dot", prefix + "tree.dot"},
                                     {"edges", prefix + "edges.csv"},
                                     {"multiplicity", prefix + "multiplicity.csv"},
                                     {"distribution", prefix + "distribution.csv"},
                                     {"eigenvalues", prefix + "eigenvalues.csv"}};
        }
        artifacts["shuffled_bases"] = rm_base;
    }
    manifest["artifacts"] = artifacts;
    detail::write_text_file(config.out_dir / "manifest.json", manifest.dump(2) + "\n");

    return report;
}

} // namespace fxmst
