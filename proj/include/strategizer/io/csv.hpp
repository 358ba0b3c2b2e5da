#pragma once

#include "strategizer/survey_stats.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace strategizer::io {

inline constexpr std::string_view kSurveyHeader = "respondent_id,plan_id,attribute_id,max_cost,utilization";
inline constexpr std::string_view kSurveyHeaderWithLifespan =
    "respondent_id,plan_id,attribute_id,max_cost,utilization,lifespan";

// Parses survey responses. Rows are numbered from 1 at the first data line.
// ParseError on a bad header, wrong field count or non-numeric value.
std::vector<ResponseRecord> parse_survey_csv(std::string_view text);

std::vector<ResponseRecord> load_survey_csv(const std::filesystem::path& path);

// Inverse of parse_survey_csv; the lifespan column is written when any record has one.
std::string serialize_survey_csv(const std::vector<ResponseRecord>& records);

} // namespace strategizer::io
