#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace miecg {

enum class Errc {
    MalformedHeader,
    UnsupportedFormat,
    TruncatedFile,
    ChecksumMismatch,
    EmptyDataset,
    UnknownLead,
    TooShort,
    InfeasibleSplit,
    MissingClass,
    UnsupportedLeadCount,
    ShapeMismatch,
    DegenerateBatch,
    MissingCache,
    NonFiniteGradient,
    DivergedTraining,
    EmptyPartition,
    CorruptCheckpoint,
    EmptyResults,
    KTooLarge,
    InvalidConfig,
    IoError,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message);

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace miecg
