#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace strategizer::io {

enum class ReportKind { Rank, GoNoGo, Sweep, MonteCarlo, Infra, SampleSize };

std::string_view to_string(ReportKind kind) noexcept;
std::optional<ReportKind> parse_report_kind(std::string_view text) noexcept;

struct DecisionReport {
    ReportKind kind = ReportKind::Rank;
    std::string digest;  // hex SHA-256 of the canonical inputs
    nlohmann::json inputs;
    nlohmann::json payload;
    std::string human_log;

    bool operator==(const DecisionReport&) const = default;
};

nlohmann::json to_json(const DecisionReport& report);

// SchemaError on a malformed document.
DecisionReport report_from_json(const nlohmann::json& doc);

std::string sha256_hex(std::string_view bytes);

// Digest of the canonical (sorted-key, compact) serialization of `inputs`.
std::string inputs_digest(const nlohmann::json& inputs);

} // namespace strategizer::io
