#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace miecg::wfdb {

/// Gain substituted when a header declares zero ADC units per mV.
inline constexpr double kDefaultGain = 200.0;

struct SignalSpec {
    std::string file_name;
    int storage_format = 16;
    double gain = kDefaultGain;     // ADC units per mV
    bool gain_defaulted = false;    // header declared 0
    std::optional<int> baseline;    // the "(b)" suffix of the gain field, if any
    std::string units;              // the "/units" suffix of the gain field, if any
    int adc_resolution = 16;
    int adc_zero = 0;
    int initial_value = 0;
    std::int16_t checksum = 0;
    int block_size = 0;
    std::string lead_name;          // canonical lowercase
    std::string description;        // verbatim

    /// ADC value that maps to 0 mV.
    int physical_zero() const noexcept { return baseline.value_or(adc_zero); }
};

struct RecordHeader {
    std::string record_name;
    int num_signals = 0;
    int sampling_rate = 0;
    std::int64_t num_samples = 0;
    std::vector<SignalSpec> signals;
    std::vector<std::string> comments;  // leading '#' stripped

    const SignalSpec* find_signal(std::string_view lead) const;
};

struct DiagnosisLabel {
    enum class Kind { MyocardialInfarction, HealthyControl, OtherNamed, Unknown };

    Kind kind = Kind::Unknown;
    std::string reason;  // admission reason as written; empty for Unknown

    bool is_mi() const noexcept { return kind == Kind::MyocardialInfarction; }
    bool is_healthy() const noexcept { return kind == Kind::HealthyControl; }
    bool trainable() const noexcept { return is_mi() || is_healthy(); }

    /// Short stable name: "mi", "healthy", "unknown", or the admission reason.
    std::string name() const;

    friend bool operator==(const DiagnosisLabel&, const DiagnosisLabel&) = default;
};

using Channels = std::map<std::string, std::vector<double>, std::less<>>;
using RawChannels = std::map<std::string, std::vector<std::int16_t>, std::less<>>;

struct EcgRecord {
    std::string patient_id;
    std::string record_name;
    int sampling_rate = 0;
    Channels channels;  // mV
    DiagnosisLabel label;

    std::size_t num_samples() const noexcept;
};

enum class ChecksumPolicy { Warn, Error, Ignore };

struct DecodeOptions {
    ChecksumPolicy checksum = ChecksumPolicy::Warn;
    /// When non-empty, only these leads are converted to mV.
    std::vector<std::string> leads;
};

/// Maps a WFDB signal description ("aVR", " V1", "vz") to its lowercase token.
std::string canonical_lead_name(std::string_view description);

RecordHeader parse_header(std::string_view text);

/// 16-bit wrapping sum of raw ADC values, as stored in the header.
std::int16_t wfdb_checksum(std::span<const std::int16_t> samples) noexcept;

/// Decodes the raw ADC values of every signal stored in `file_name`
/// (default: the file of the first signal). Samples are little-endian int16,
/// frame-interleaved across the signals sharing the file.
RawChannels decode_adc(std::span<const std::byte> bytes, const RecordHeader& header,
                       const DecodeOptions& options = {}, std::vector<std::string>* warnings = nullptr,
                       std::string_view file_name = {});

/// As decode_adc, converted to mV via (adc - zero) / gain.
Channels decode_signal_file(std::span<const std::byte> bytes, const RecordHeader& header,
                            const DecodeOptions& options = {},
                            std::vector<std::string>* warnings = nullptr,
                            std::string_view file_name = {});

/// Inverse of decode_adc for format 16: writes the frame-interleaved bytes
/// and fills each signal's checksum and initial value in `header`.
std::vector<std::byte> encode_format16(const RawChannels& channels, RecordHeader& header);

/// Renders a header in the plain layout PTB uses.
std::string format_header(const RecordHeader& header);

DiagnosisLabel extract_diagnosis(const RecordHeader& header);

std::vector<std::byte> read_file(const std::filesystem::path& path);

/// Loads `<base>.hea` and the signal files it references. The patient id is
/// the name of the directory containing the record.
EcgRecord load_record(const std::filesystem::path& base, const DecodeOptions& options = {},
                      std::vector<std::string>* warnings = nullptr);

RecordHeader load_header(const std::filesystem::path& base);

} // namespace miecg::wfdb
