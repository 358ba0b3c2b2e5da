#pragma once

#include "strategizer/config.hpp"
#include "strategizer/monte_carlo.hpp"
#include "strategizer/plan_model.hpp"
#include "strategizer/survey_stats.hpp"
#include "strategizer/utility_curve.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace strategizer {

struct InfraMeasurement {
    double mean_max_cost = 0.0;
    double stdev_max_cost = 0.0;
    double mean_min_lifespan = 0.0;
    double stdev_min_lifespan = 0.0;
    std::size_t count = 0;
    double max_possible_cost = 35.0;
    double max_possible_lifespan = 0.0;

    void validate() const;
};

// Requires lifespan on every response and config.max_possible_lifespan.
InfraMeasurement infra_measurement(const AttributeMeasurement& m, const AnalysisConfig& config);

enum class InfraPreference { LowCostLowMitigation, HighCostHighMitigation, Indifferent };

std::string_view to_string(InfraPreference preference) noexcept;

struct InfraRecommendation {
    double cost_constant = 0.0;  // C
    double risk_constant = 0.0;  // R
    InfraPreference preference = InfraPreference::Indifferent;
    double cost_pi = 0.0;
    double risk_pi = 0.0;
};

// min_lifespan / max_possible_lifespan: a longer required lifespan means more risk sensitivity.
IndifferenceProbability lifespan_to_indifference(double min_lifespan, double max_possible_lifespan);

// Tolerance constant for an indifference probability: the convergence constant of
// the increasing unit curve through (c_ref, p_i). Larger p_i -> smaller constant.
UtilityCurve tolerance_curve(IndifferenceProbability p_i, const AnalysisConfig& config);

// Preference from the two constants alone: R < C favors high mitigation.
InfraPreference compare_tolerance(double cost_constant, double risk_constant, const AnalysisConfig& config);

InfraRecommendation infra_preference(const InfraMeasurement& measurement, const AnalysisConfig& config);

// Two implementation options of the same plan. The `quality` member of each
// target pair is the risk-mitigation level on [L, H].
struct InfraPlan {
    std::string plan_id;
    std::string attribute_id;
    ScenarioTargets low_option;   // low cost, low risk mitigation
    ScenarioTargets high_option;  // high cost, high risk mitigation
};

struct InfraComparison {
    PlanEvaluation low;
    PlanEvaluation high;
    InfraPreference winner = InfraPreference::Indifferent;
    // delta = EU(low) - EU(high); share_below_zero is the share preferring the high option.
    std::optional<MonteCarloResult> monte_carlo;
};

struct InfraInputs {
    IndifferenceProbability cost_pi;
    IndifferenceProbability risk_pi;
};

PlanEvaluation evaluate_infra_option(const std::string& label, const ScenarioTargets& option,
                                     const InfraInputs& inputs, const AnalysisConfig& config);

InfraComparison infra_scenario_compare(const InfraPlan& plan, const InfraMeasurement& measurement,
                                       const AnalysisConfig& config,
                                       std::optional<MonteCarloOptions> monte_carlo = std::nullopt);

} // namespace strategizer
