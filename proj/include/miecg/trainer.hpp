#pragma once

#include "miecg/dataset.hpp"
#include "miecg/metrics.hpp"
#include "miecg/nn.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace miecg {

struct TrainConfig {
    std::vector<std::string> leads{"v6", "vz"};
    SplitSpec split;
    std::size_t batch_size = 10;
    double lr = 1e-4;
    double label_smoothing = 0.1;
    int epochs = 50;
    std::size_t windows_per_epoch = 2000;
    std::uint64_t seed = 0;
    int patience = 10;
    std::size_t window_length = kWindowLength;
    int channels = 32;
    int kernel = 3;
    int stride = 2;
    int num_layers = 8;
    std::string activation = "relu";
    nn::BatchNormConfig bn;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::size_t eval_batch_size = 32;

    void validate() const;
    nn::Architecture architecture() const;
    nn::AdamConfig adam() const;
};

nlohmann::json train_config_to_json(const TrainConfig& config);
/// Applies the keys present in `j` on top of `base`; unknown keys are errors.
TrainConfig train_config_from_json(const nlohmann::json& j, TrainConfig base = {});
/// Hash of the canonical JSON form, as 16 hex digits.
std::string config_hash(const TrainConfig& config);

struct EpochRecord {
    int epoch = 0;
    double train_loss = 0.0;
    std::optional<double> val_accuracy;
};

struct TrialResult {
    TrainConfig config;
    std::uint64_t seed = 0;
    std::string split_id;
    Split split;
    int best_epoch = 0;   // 1-based; 0 if no epoch completed
    int epochs_run = 0;
    Metrics val;          // at best_epoch
    Metrics test;         // computed once, on the best_epoch checkpoint
    int test_evaluations = 0;
    double wall_seconds = 0.0;
    std::vector<EpochRecord> history;
};

nlohmann::json trial_result_to_json(const TrialResult& r);
TrialResult trial_result_from_json(const nlohmann::json& j);

struct TrialArtifacts {
    TrialResult result;
    nn::ModelParams<float> params;  // best-validation checkpoint
    nn::AdamState<float> adam;
};

struct PartitionData {
    std::vector<LabeledSignal> train;
    std::vector<LabeledSignal> val;
    std::vector<LabeledSignal> test;
};

/// Predictions are the argmax logit of each window, in eval mode.
Metrics evaluate(const nn::ModelParams<float>& params, std::span<const Window> windows,
                 std::size_t batch_size = 32);

/// One centered window per record of the partition. Throws EmptyPartition.
Metrics evaluate(const nn::ModelParams<float>& params, std::span<const LabeledSignal> partition,
                 std::span<const std::string> leads, std::size_t window_len = kWindowLength,
                 std::size_t batch_size = 32);

/// Trains on prepared partitions: balanced batches, Adam, per-epoch
/// validation, best-validation checkpoint (ties keep the earlier epoch),
/// early stop after `patience` epochs without improvement, then a single test
/// evaluation. Throws DivergedTraining on a non-finite loss or gradient.
TrialArtifacts train_partitions(const TrainConfig& config, const PartitionData& data);

/// Draws the split (or uses `fixed_split`), loads the partitions and trains.
TrialArtifacts train_trial(const DatasetIndex& index, const TrainConfig& config, RecordSource& source,
                           const std::optional<Split>& fixed_split = std::nullopt);

} // namespace miecg
