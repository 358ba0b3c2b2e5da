#pragma once

#include "strategizer/config.hpp"
#include "strategizer/decision_analysis.hpp"
#include "strategizer/infra_decisions.hpp"
#include "strategizer/monte_carlo.hpp"
#include "strategizer/plan_model.hpp"
#include "strategizer/survey_stats.hpp"
#include "strategizer/utility_curve.hpp"

#include <json.hpp>

#include <string>

namespace strategizer::io {

using nlohmann::json;

// Non-finite doubles become null.
json number(double v);

json config_to_json(const AnalysisConfig& config);

// Applies a JSON object of config fields on top of `config`. SchemaError naming
// `path.field` on unknown fields or wrong types; the result is validated.
void apply_config_overrides(AnalysisConfig& config, const json& overrides, const std::string& path = "config");

json to_json(const UtilityCurve& curve);
json to_json(const AttributeMeasurement& m);
json to_json(const ScenarioVector& v);
json to_json(const PlanEvaluation& eval);
json to_json(const GoNoGoResult& result);
json to_json(const MonteCarloResult& result);
json to_json(const SweepResult& sweep);
json to_json(const InfraRecommendation& rec);
json to_json(const InfraComparison& cmp);
json to_json(const ValidationReport& report);
json to_json(const ScenarioTargets& targets, const char* second_key = "quality");
json to_json(const PlanSpec& plan);
json to_json(const InfraPlan& plan);

} // namespace strategizer::io
