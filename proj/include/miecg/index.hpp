#pragma once

#include "miecg/wfdb.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace miecg {

/// Shortest record accepted for training, in seconds.
inline constexpr int kMinRecordSeconds = 10;

struct IndexEntry {
    std::string patient_id;
    std::string record_name;
    std::filesystem::path base;  // path without extension
    wfdb::DiagnosisLabel label;
    std::int64_t num_samples = 0;
    int sampling_rate = 0;
    std::vector<std::string> leads;
    bool usable = false;
    std::string unusable_reason;

    /// "patientNNN/record", the identifier used in manifests and logs.
    std::string key() const { return patient_id + "/" + record_name; }
};

struct ParseFailure {
    std::string record;
    std::string message;
};

struct DatasetIndex {
    std::filesystem::path root;
    std::vector<IndexEntry> records;  // sorted by (patient, record)
    std::map<std::string, std::vector<std::size_t>> patients;  // patient -> positions in records
    std::vector<ParseFailure> failures;

    /// Sorts, groups by patient and sets usability flags.
    static DatasetIndex from_entries(std::filesystem::path root, std::vector<IndexEntry> entries,
                                     std::vector<ParseFailure> failures = {});

    const IndexEntry* find(std::string_view key) const;
    std::size_t num_usable() const;
    /// Records per label name.
    std::map<std::string, std::size_t> record_label_counts() const;
    /// Patients per label name; a patient counts once for each distinct label among its records.
    std::map<std::string, std::size_t> patient_label_counts() const;
};

/// Sets `usable`/`unusable_reason` from the label and record length.
void classify_usability(IndexEntry& entry);

/// Indexes `root/patientNNN/record.hea`. Uses `root/RECORDS` when present,
/// otherwise scans the patient directories. Only headers are read.
DatasetIndex build_index(const std::filesystem::path& root);

/// {patients, records, usable, label_histogram, patient_label_histogram, unusable, failures}
nlohmann::json index_summary(const DatasetIndex& index);

} // namespace miecg
