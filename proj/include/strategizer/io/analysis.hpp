#pragma once

#include "strategizer/config.hpp"
#include "strategizer/infra_decisions.hpp"
#include "strategizer/plan_model.hpp"
#include "strategizer/survey_stats.hpp"
#include "strategizer/io/report.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace strategizer::io {

// A parsed survey file. Immutable once built.
struct Dataset {
    std::string id;  // SHA-256 of the CSV bytes
    std::vector<ResponseRecord> records;
};

Dataset make_dataset(std::string_view csv_text);

// Per (plan, attribute) summaries plus the validation report under `config`.
nlohmann::json dataset_summary(const Dataset& dataset, const AnalysisConfig& config);

struct AnalysisRequest {
    ReportKind kind = ReportKind::Rank;
    const Dataset* dataset = nullptr;  // optional for SampleSize only
    std::vector<PlanSpec> plans;
    std::optional<InfraPlan> infra;
    AnalysisConfig config;  // fully resolved

    std::optional<std::string> plan_id;    // gonogo / montecarlo subject
    std::optional<std::string> plan_b_id;  // montecarlo comparison plan; status-quo twin when absent
    std::optional<std::size_t> draws;      // montecarlo default config.households; infra runs Monte Carlo only when set
    unsigned workers = 1;                  // does not change results

    std::optional<double> stdev;  // samplesize: custom s
    std::optional<double> width;  // samplesize: custom w
};

// Canonical inputs document; its digest identifies the report.
nlohmann::json canonical_inputs(const AnalysisRequest& request);

DecisionReport run_analysis(const AnalysisRequest& request);

} // namespace strategizer::io
