#pragma once

#include "strategizer/config.hpp"
#include "strategizer/survey_stats.hpp"
#include "strategizer/utility_curve.hpp"

#include <Eigen/Core>

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace strategizer {

inline constexpr int kScenarioCount = 3;

// Per-scenario values in (A = low, B = nominal, C = high) order.
using ScenarioVector = Eigen::Matrix<double, kScenarioCount, 1>;

struct TargetPair {
    double cost = 0.0;
    double quality = 0.0;  // mitigation level for infrastructure options
};

struct ScenarioTargets {
    std::array<TargetPair, kScenarioCount> targets{};  // low, nominal, high
    std::optional<ScenarioVector> probability_override;

    const TargetPair& low() const { return targets[0]; }
    const TargetPair& nominal() const { return targets[1]; }
    const TargetPair& high() const { return targets[2]; }

    // Targets inside [lower, upper] and nondecreasing; override a probability vector.
    void validate(double lower, double upper) const;
};

struct PlanAttribute {
    std::string attribute_id;
    ScenarioTargets targets;
};

struct PlanSpec {
    std::string plan_id;
    std::vector<PlanAttribute> attributes;
    bool is_status_quo = false;
    std::optional<ScenarioVector> probability_override;

    void validate(const AnalysisConfig& config) const;
};

struct PlanEvaluation {
    std::string plan_id;
    ScenarioVector scenario_probabilities = ScenarioVector::Zero();
    ScenarioVector scenario_utilities = ScenarioVector::Zero();
    double expected_utility = 0.0;
};

// Lookup of survey summaries by (plan_id, attribute_id).
class MeasurementTable {
public:
    MeasurementTable() = default;
    explicit MeasurementTable(std::map<std::pair<std::string, std::string>, AttributeMeasurement> entries)
        : entries_(std::move(entries)) {}

    void insert(const std::string& plan_id, const std::string& attribute_id, AttributeMeasurement m) {
        entries_[{plan_id, attribute_id}] = m;
    }

    // ValidationError naming the missing pair.
    const AttributeMeasurement& at(const std::string& plan_id, const std::string& attribute_id) const;

    // Measurements for every attribute of the plan, in attribute order.
    std::vector<AttributeMeasurement> for_plan(const PlanSpec& plan) const;

    const auto& entries() const noexcept { return entries_; }

private:
    std::map<std::pair<std::string, std::string>, AttributeMeasurement> entries_;
};

// The two random inputs of an attribute once survey data is reduced.
struct AttributeInputs {
    IndifferenceProbability p_i;
    QualityWeight weight;
};

AttributeInputs attribute_inputs(const AttributeMeasurement& m, const AnalysisConfig& config);

FitOptions fit_options(const AnalysisConfig& config);

// Increasing quality curve at the nominal convergence constant.
UtilityCurve nominal_quality_curve(const AnalysisConfig& config);

// Decreasing cost curve anchored at (c_ref, p_i).
UtilityCurve fit_cost_curve(IndifferenceProbability p_i, const AnalysisConfig& config);

// Quality added by each scenario, normalized by the total quality added.
ScenarioVector estimate_scenario_probabilities(const ScenarioTargets& targets, const UtilityCurve& quality_curve,
                                               double q_ref);

// Probabilities used for the plan: plan override, else first attribute's override,
// else (1, 0, 0) for status-quo plans, else estimated from the first attribute.
ScenarioVector plan_probabilities(const PlanSpec& plan, const AnalysisConfig& config);

ScenarioVector plan_scenario_utilities(const PlanSpec& plan, std::span<const AttributeInputs> inputs,
                                       const AnalysisConfig& config);
ScenarioVector plan_scenario_utilities(const PlanSpec& plan, const MeasurementTable& measurements,
                                       const AnalysisConfig& config);

// sum_s p_s u_s, written as u_A + sum_s p_s (u_s - u_A) so equal utilities stay exact.
double expected_value(const ScenarioVector& probabilities, const ScenarioVector& utilities);

PlanEvaluation expected_plan_utility(const PlanSpec& plan, std::span<const AttributeInputs> inputs,
                                     const AnalysisConfig& config);
PlanEvaluation expected_plan_utility(const PlanSpec& plan, const MeasurementTable& measurements,
                                     const AnalysisConfig& config);

// Descending by expected utility; ties keep declaration order.
std::vector<PlanEvaluation> rank_plans(std::span<const PlanSpec> plans, const MeasurementTable& measurements,
                                       const AnalysisConfig& config);

// Same attributes, every target at L, and the plan's probability weights.
PlanSpec make_status_quo_twin(const PlanSpec& plan, const AnalysisConfig& config);

enum class FundingDecision { Go, NoGo };

std::string_view to_string(FundingDecision decision) noexcept;

struct GoNoGoResult {
    FundingDecision decision = FundingDecision::NoGo;
    PlanEvaluation plan;
    PlanEvaluation status_quo;
};

GoNoGoResult go_no_go(const PlanSpec& plan, const MeasurementTable& measurements, const AnalysisConfig& config);

} // namespace strategizer
