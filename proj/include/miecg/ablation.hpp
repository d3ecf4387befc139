#pragma once

#include "miecg/trainer.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace miecg {

/// Lead sets to sweep, each trained `trials_per_set` times. Without a fixed
/// split every trial draws a fresh split from seed(root, set, trial); with one,
/// only the weight initialization and sampling vary.
struct ExperimentPlan {
    std::vector<std::vector<std::string>> lead_sets;
    int trials_per_set = 20;
    SplitSpec split;  // split.seed is the root seed
    std::optional<std::filesystem::path> manifest_path;
    std::optional<Split> fixed_split;
    nlohmann::json train_overrides = nlohmann::json::object();

    void validate() const;
    /// Training configuration for one trial.
    TrainConfig trial_config(std::span<const std::string> leads, int trial) const;
};

/// Plan file: {lead_sets, trials_per_set, split: {mode, ratios, seed | manifest_path}, train_overrides}.
/// A relative manifest_path is resolved against `base_dir`, and the manifest is loaded.
ExperimentPlan plan_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
ExperimentPlan load_plan(const std::filesystem::path& path);
nlohmann::json plan_to_json(const ExperimentPlan& plan);

std::string lead_set_key(std::span<const std::string> leads);
std::uint64_t trial_seed(std::uint64_t root, std::string_view lead_set, int trial);

struct TrialOutcome {
    std::string lead_set;
    std::vector<std::string> leads;
    int trial = 0;
    std::uint64_t seed = 0;
    std::optional<TrialResult> result;
    std::string error;

    bool ok() const { return result.has_value(); }
};

struct LeadSetResults {
    std::string key;
    std::vector<std::string> leads;
    std::vector<TrialOutcome> trials;  // by trial index
};

using PlanResults = std::vector<LeadSetResults>;  // plan order

struct RunOptions {
    unsigned threads = 1;
    /// JSON-lines log; completed trials found there are skipped when `resume` is set.
    std::optional<std::filesystem::path> results_log;
    bool resume = false;
    /// Stop after this many newly executed trials (used to exercise resumption).
    std::optional<std::size_t> max_new_trials;
    std::function<void(const TrialOutcome&)> on_trial;
};

/// Executes the plan on a worker pool. Trial failures are recorded in the
/// outcome instead of aborting the plan.
PlanResults run_plan(const DatasetIndex& index, const ExperimentPlan& plan, RecordSource& source,
                     const RunOptions& options = {});

nlohmann::json outcome_to_json(const TrialOutcome& outcome);
TrialOutcome outcome_from_json(const nlohmann::json& j);
/// Reads a results log; a truncated final line is ignored.
std::vector<TrialOutcome> read_results_log(const std::filesystem::path& path);

enum class StdMode { Sample, Population };

struct AggregateStats {
    double mean = 0.0;
    double std_dev = 0.0;
    double median = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t n = 0;
    bool std_defined = true;  // false for a single sample-std value
    std::vector<double> values;
};

/// Mean, standard deviation (n-1 denominator by default) and median.
AggregateStats aggregate(std::span<const double> accuracies, StdMode mode = StdMode::Sample);
/// Over the test accuracies of the successful trials.
AggregateStats aggregate(std::span<const TrialOutcome> outcomes, StdMode mode = StdMode::Sample);

/// Aggregate of the k highest accuracies (ties keep the lower index first).
AggregateStats top_k(std::span<const double> accuracies, std::size_t k, StdMode mode = StdMode::Sample);
AggregateStats top_k(std::span<const TrialOutcome> outcomes, std::size_t k, StdMode mode = StdMode::Sample);

struct LeadRanking {
    std::vector<std::string> order;
    std::vector<std::pair<std::string, std::string>> pairs;  // over the top entries
};

/// Descending mean, then median, then name. Pairs are formed from the
/// first `top` entries in rank order.
LeadRanking rank_leads(const std::map<std::string, AggregateStats>& stats_by_set, std::size_t top = 5);

struct ReportFiles {
    std::filesystem::path detail_csv;
    std::filesystem::path summary_csv;
    std::filesystem::path tables_txt;
    std::filesystem::path series_csv;
    std::filesystem::path topk_csv;
};

/// detail.csv, summary.csv, tables.txt, series.csv and topk.csv under `dir`.
/// topk.csv holds top-20 and top-50 statistics for sets with at least that many successes.
ReportFiles write_report(const PlanResults& results, const std::filesystem::path& dir,
                         StdMode mode = StdMode::Sample);

} // namespace miecg
