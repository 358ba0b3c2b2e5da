#include "strategizer/plan_model.hpp"

#include "strategizer/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace strategizer {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

void validate_probabilities(const ScenarioVector& p, const std::string& where) {
    for (int s = 0; s < kScenarioCount; ++s)
        if (!(p[s] >= 0.0))
            throw ValidationError(where + ": probability override entries must be >= 0");
    if (std::abs(p.sum() - 1.0) > 1e-9)
        throw ValidationError(where + ": probability override must sum to 1, got " + fmt(p.sum()));
}

template <typename F>
auto with_attribute(const std::string& plan_id, const std::string& attribute_id, F&& f) {
    try {
        return f();
    } catch (const AttributeError&) {
        throw;
    } catch (const Error& e) {
        throw AttributeError(e, plan_id + "/" + attribute_id);
    }
}

} // namespace

void ScenarioTargets::validate(double lower, double upper) const {
    for (const auto& t : targets) {
        if (!(t.cost >= lower && t.cost <= upper) || !(t.quality >= lower && t.quality <= upper))
            throw ValidationError("scenario targets must lie in [" + fmt(lower) + ", " + fmt(upper) + "]");
    }
    for (int s = 1; s < kScenarioCount; ++s) {
        if (targets[s].quality < targets[s - 1].quality)
            throw ValidationError("quality targets must be nondecreasing low <= nominal <= high");
        if (targets[s].cost < targets[s - 1].cost)
            throw ValidationError("cost targets must be nondecreasing low <= nominal <= high");
    }
    if (probability_override)
        validate_probabilities(*probability_override, "scenario targets");
}

void PlanSpec::validate(const AnalysisConfig& config) const {
    if (plan_id.empty())
        throw ValidationError("plan_id must not be empty");
    if (attributes.empty())
        throw ValidationError("plan '" + plan_id + "' has no attributes");
    for (const auto& attr : attributes) {
        attr.targets.validate(config.lower, config.upper);
        if (is_status_quo) {
            for (const auto& t : attr.targets.targets)
                if (t.cost != config.lower || t.quality != config.lower)
                    throw ValidationError("status-quo plan '" + plan_id + "' must have every target at L");
        }
    }
    if (probability_override)
        validate_probabilities(*probability_override, "plan '" + plan_id + "'");
}

const AttributeMeasurement& MeasurementTable::at(const std::string& plan_id, const std::string& attribute_id) const {
    auto it = entries_.find({plan_id, attribute_id});
    if (it == entries_.end())
        throw ValidationError("no survey measurement for plan '" + plan_id + "', attribute '" + attribute_id + "'");
    return it->second;
}

std::vector<AttributeMeasurement> MeasurementTable::for_plan(const PlanSpec& plan) const {
    std::vector<AttributeMeasurement> out;
    out.reserve(plan.attributes.size());
    for (const auto& attr : plan.attributes)
        out.push_back(at(plan.plan_id, attr.attribute_id));
    return out;
}

AttributeInputs attribute_inputs(const AttributeMeasurement& m, const AnalysisConfig& config) {
    return {max_cost_to_indifference(m.mean_max_cost, config.max_possible_cost),
            quality_weight(m.mean_utilization, config.lower, config.upper, config.w_q)};
}

FitOptions fit_options(const AnalysisConfig& config) {
    FitOptions o;
    o.tolerance = config.fit_tolerance;
    o.k_cap_factor = config.k_cap_factor;
    return o;
}

UtilityCurve nominal_quality_curve(const AnalysisConfig& config) {
    return make_curve(config.lower, config.upper, config.k_q_nominal, Direction::Increasing);
}

UtilityCurve fit_cost_curve(IndifferenceProbability p_i, const AnalysisConfig& config) {
    return solve_convergence_constant(config.lower, config.upper, config.c_ref, p_i.value, Direction::Decreasing,
                                      fit_options(config));
}

ScenarioVector estimate_scenario_probabilities(const ScenarioTargets& targets, const UtilityCurve& quality_curve,
                                               double q_ref) {
    if (q_ref > targets.low().quality)
        throw DomainError("q_ref " + fmt(q_ref) + " exceeds the low quality target " + fmt(targets.low().quality));
    const double u_ref = evaluate_unit_utility(quality_curve, q_ref);
    ScenarioVector u;
    for (int s = 0; s < kScenarioCount; ++s)
        u[s] = evaluate_unit_utility(quality_curve, targets.targets[s].quality);
    const double total = u[2] - u_ref;
    if (!(total > 0.0))
        throw DegenerateScenario("scenarios add no quality over the reference; supply a probability override");
    ScenarioVector p;
    p << (u[0] - u_ref) / total, (u[1] - u[0]) / total, (u[2] - u[1]) / total;
    return p;
}

ScenarioVector plan_probabilities(const PlanSpec& plan, const AnalysisConfig& config) {
    if (plan.probability_override)
        return *plan.probability_override;
    if (plan.attributes.empty())
        throw ValidationError("plan '" + plan.plan_id + "' has no attributes");
    const auto& first = plan.attributes.front();
    if (first.targets.probability_override)
        return *first.targets.probability_override;
    if (plan.is_status_quo)
        return ScenarioVector(1.0, 0.0, 0.0);
    return with_attribute(plan.plan_id, first.attribute_id, [&] {
        return estimate_scenario_probabilities(first.targets, nominal_quality_curve(config), config.lower);
    });
}

ScenarioVector plan_scenario_utilities(const PlanSpec& plan, std::span<const AttributeInputs> inputs,
                                       const AnalysisConfig& config) {
    if (inputs.size() != plan.attributes.size())
        throw ShapeMismatch("plan '" + plan.plan_id + "' has " + std::to_string(plan.attributes.size()) +
                            " attributes but " + std::to_string(inputs.size()) + " inputs");
    const UtilityCurve quality = nominal_quality_curve(config);
    ScenarioVector total = ScenarioVector::Zero();
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const auto& attr = plan.attributes[i];
        with_attribute(plan.plan_id, attr.attribute_id, [&] {
            const UtilityCurve cost = fit_cost_curve(inputs[i].p_i, config);
            for (int s = 0; s < kScenarioCount; ++s) {
                const auto& t = attr.targets.targets[s];
                total[s] += attribute_total_utility(t.cost, t.quality, config.w_c, inputs[i].weight, cost, quality);
            }
            return 0;
        });
    }
    return total;
}

namespace {

std::vector<AttributeInputs> inputs_for(const PlanSpec& plan, const MeasurementTable& measurements,
                                        const AnalysisConfig& config) {
    std::vector<AttributeInputs> inputs;
    for (const auto& attr : plan.attributes) {
        const auto& m = measurements.at(plan.plan_id, attr.attribute_id);
        inputs.push_back(with_attribute(plan.plan_id, attr.attribute_id, [&] { return attribute_inputs(m, config); }));
    }
    return inputs;
}

} // namespace

ScenarioVector plan_scenario_utilities(const PlanSpec& plan, const MeasurementTable& measurements,
                                       const AnalysisConfig& config) {
    const auto inputs = inputs_for(plan, measurements, config);
    return plan_scenario_utilities(plan, inputs, config);
}

double expected_value(const ScenarioVector& probabilities, const ScenarioVector& utilities) {
    const double base = utilities[0];
    double acc = 0.0;
    for (int s = 0; s < kScenarioCount; ++s)
        acc += probabilities[s] * (utilities[s] - base);
    return base + acc;
}

PlanEvaluation expected_plan_utility(const PlanSpec& plan, std::span<const AttributeInputs> inputs,
                                     const AnalysisConfig& config) {
    PlanEvaluation eval;
    eval.plan_id = plan.plan_id;
    eval.scenario_probabilities = plan_probabilities(plan, config);
    eval.scenario_utilities = plan_scenario_utilities(plan, inputs, config);
    eval.expected_utility = expected_value(eval.scenario_probabilities, eval.scenario_utilities);
    return eval;
}

PlanEvaluation expected_plan_utility(const PlanSpec& plan, const MeasurementTable& measurements,
                                     const AnalysisConfig& config) {
    const auto inputs = inputs_for(plan, measurements, config);
    return expected_plan_utility(plan, inputs, config);
}

std::vector<PlanEvaluation> rank_plans(std::span<const PlanSpec> plans, const MeasurementTable& measurements,
                                       const AnalysisConfig& config) {
    if (plans.empty())
        throw ValidationError("at least one plan is required");
    std::vector<PlanEvaluation> evals;
    evals.reserve(plans.size());
    for (const auto& plan : plans)
        evals.push_back(expected_plan_utility(plan, measurements, config));
    std::stable_sort(evals.begin(), evals.end(), [](const PlanEvaluation& x, const PlanEvaluation& y) {
        return x.expected_utility > y.expected_utility;
    });
    return evals;
}

PlanSpec make_status_quo_twin(const PlanSpec& plan, const AnalysisConfig& config) {
    PlanSpec twin;
    twin.plan_id = plan.plan_id + " (status quo)";
    twin.is_status_quo = true;
    twin.probability_override = plan_probabilities(plan, config);
    for (const auto& attr : plan.attributes) {
        PlanAttribute a;
        a.attribute_id = attr.attribute_id;
        a.targets.targets.fill(TargetPair{config.lower, config.lower});
        twin.attributes.push_back(std::move(a));
    }
    return twin;
}

std::string_view to_string(FundingDecision decision) noexcept {
    return decision == FundingDecision::Go ? "Go" : "NoGo";
}

GoNoGoResult go_no_go(const PlanSpec& plan, const MeasurementTable& measurements, const AnalysisConfig& config) {
    if (plan.is_status_quo)
        throw ValidationError("go/no-go needs a non-status-quo plan, got '" + plan.plan_id + "'");
    const auto inputs = inputs_for(plan, measurements, config);
    const PlanSpec twin = make_status_quo_twin(plan, config);
    GoNoGoResult result;
    result.plan = expected_plan_utility(plan, inputs, config);
    result.status_quo = expected_plan_utility(twin, inputs, config);
    result.decision = result.plan.expected_utility > result.status_quo.expected_utility ? FundingDecision::Go
                                                                                       : FundingDecision::NoGo;
    return result;
}

} // namespace strategizer
