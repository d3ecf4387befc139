#pragma once

#include "miecg/index.hpp"
#include "miecg/rng.hpp"
#include "miecg/wfdb.hpp"

#include <nlohmann/json_fwd.hpp>

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace miecg {

inline constexpr std::size_t kWindowLength = 10'000;  // 10 s at 1000 Hz

/// Row-major [rows x cols] block of samples; rows are leads.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<float> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    std::span<float> row(std::size_t r) { return {data.data() + r * cols, cols}; }
    std::span<const float> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
    float& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    float operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

enum class SplitMode { RecordWise, PatientWise };

std::string to_string(SplitMode mode);
SplitMode split_mode_from_string(std::string_view s);

struct SplitSpec {
    SplitMode mode = SplitMode::RecordWise;
    std::array<double, 3> ratios{0.8, 0.1, 0.1};  // train, val, test
    std::uint64_t seed = 0;

    void validate() const;
};

enum class Partition { Train, Val, Test };

struct Split {
    std::vector<std::string> train;
    std::vector<std::string> val;
    std::vector<std::string> test;
    SplitSpec provenance;

    const std::vector<std::string>& part(Partition p) const;
    /// Content hash of the three partitions, as 16 hex digits.
    std::string id() const;

    friend bool operator==(const Split& a, const Split& b) {
        return a.train == b.train && a.val == b.val && a.test == b.test;
    }
};

nlohmann::json split_to_json(const Split& split);
Split split_from_json(const nlohmann::json& j);
void save_split(const Split& split, const std::filesystem::path& path);
Split load_split(const std::filesystem::path& path);

/// Maximum reshuffles tried before a split is declared infeasible.
inline constexpr int kMaxSplitAttempts = 100;

/// Partitions the usable records. RecordWise shuffles records; PatientWise
/// shuffles patients and keeps each patient's records together. Every
/// partition must contain both classes; otherwise the shuffle is redrawn with
/// derived sub-seeds.
Split make_split(const DatasetIndex& index, const SplitSpec& spec);

/// Rows in the requested order; duplicates allowed.
Matrix select_leads(const wfdb::EcgRecord& record, std::span<const std::string> leads);

struct WindowSlice {
    std::size_t offset = 0;
    Matrix data;
};

/// Contiguous slice of `window_len` columns at a uniformly drawn offset.
WindowSlice random_window(const Matrix& signal, std::size_t window_len, Rng& rng);

/// Per-row z-score; rows with standard deviation below 1e-8 become zeros.
Matrix normalize(const Matrix& window);

struct Window {
    std::vector<std::string> leads;
    Matrix data;
    int label = 0;  // 1 = MI, 0 = healthy
    std::string source_record;
    std::size_t offset = 0;
};

struct WindowBatch {
    std::vector<Window> windows;
    std::vector<int> labels;

    std::size_t size() const { return windows.size(); }
};

/// Supplies the selected leads of a record as a float matrix.
class RecordSource {
public:
    virtual ~RecordSource() = default;
    virtual std::shared_ptr<const Matrix> load(const IndexEntry& entry, std::span<const std::string> leads) = 0;
};

/// Reads records from their WFDB files; results are cached per (record, leads)
/// and the cache is safe to share between trial workers.
class WfdbRecordSource : public RecordSource {
public:
    explicit WfdbRecordSource(wfdb::ChecksumPolicy policy = wfdb::ChecksumPolicy::Warn) : policy_(policy) {}
    std::shared_ptr<const Matrix> load(const IndexEntry& entry, std::span<const std::string> leads) override;
    std::vector<std::string> warnings() const;

private:
    wfdb::ChecksumPolicy policy_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<const Matrix>> cache_;
    std::vector<std::string> warnings_;
};

/// Serves in-memory records keyed by IndexEntry::key().
class MemoryRecordSource : public RecordSource {
public:
    void add(wfdb::EcgRecord record);
    std::shared_ptr<const Matrix> load(const IndexEntry& entry, std::span<const std::string> leads) override;

private:
    std::map<std::string, wfdb::EcgRecord> records_;
};

struct LabeledSignal {
    std::string key;
    int label = 0;
    std::shared_ptr<const Matrix> signal;
};

/// Loads the signals of one partition (usable records only, in partition order).
std::vector<LabeledSignal> load_partition(const DatasetIndex& index, std::span<const std::string> keys,
                                          std::span<const std::string> leads, RecordSource& source);

/// Class-balanced stream of training batches. Each element picks a class with
/// probability 1/2, then a record of that class uniformly, then a random
/// window, then normalizes it.
class BalancedBatchStream {
public:
    BalancedBatchStream(std::span<const LabeledSignal> partition, std::vector<std::string> leads,
                        std::size_t batch_size, std::size_t windows_per_epoch, Rng& rng,
                        std::size_t window_len = kWindowLength);

    /// Next batch, or nullopt once windows_per_epoch / batch_size batches were emitted.
    std::optional<WindowBatch> next();
    std::size_t num_batches() const { return num_batches_; }

private:
    std::array<std::vector<const LabeledSignal*>, 2> by_class_;
    std::vector<std::string> leads_;
    std::size_t batch_size_;
    std::size_t num_batches_;
    std::size_t emitted_ = 0;
    Rng& rng_;
    std::size_t window_len_;
};

/// One centered, normalized window per record; records shorter than
/// `window_len` are skipped and their keys appended to `skipped`.
std::vector<Window> eval_windows(std::span<const LabeledSignal> partition, std::span<const std::string> leads,
                                 std::size_t window_len = kWindowLength,
                                 std::vector<std::string>* skipped = nullptr);

} // namespace miecg
