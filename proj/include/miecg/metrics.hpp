#pragma once

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace miecg {

/// Binary confusion counts with MI as the positive class.
struct Confusion {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    void add(int truth, int predicted);
    std::uint64_t total() const noexcept { return tp + fp + tn + fn; }

    friend bool operator==(const Confusion&, const Confusion&) = default;
};

/// Percentages in [0, 100]; nullopt where the denominator is zero.
struct Metrics {
    Confusion counts;
    std::optional<double> accuracy;
    std::optional<double> sensitivity;
    std::optional<double> specificity;
    std::optional<double> precision;

    static Metrics from_counts(const Confusion& c);

    friend bool operator==(const Metrics&, const Metrics&) = default;
};

/// Two decimals, or "n/a" when undefined.
std::string format_percent(const std::optional<double>& value);

nlohmann::json metrics_to_json(const Metrics& m);
Metrics metrics_from_json(const nlohmann::json& j);

} // namespace miecg
