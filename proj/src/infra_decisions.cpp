#include "strategizer/infra_decisions.hpp"

#include "strategizer/errors.hpp"

#include <cmath>
#include <sstream>

namespace strategizer {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

template <typename F>
auto labeled(const char* label, F&& f) {
    try {
        return f();
    } catch (const AttributeError&) {
        throw;
    } catch (const Error& e) {
        throw AttributeError(e, label);
    }
}

InfraInputs mean_inputs(const InfraMeasurement& m) {
    return {labeled("cost", [&] { return max_cost_to_indifference(m.mean_max_cost, m.max_possible_cost); }),
            labeled("risk", [&] { return lifespan_to_indifference(m.mean_min_lifespan, m.max_possible_lifespan); })};
}

} // namespace

void InfraMeasurement::validate() const {
    if (!(max_possible_cost > 0.0))
        throw ValidationError("max_possible_cost must be positive");
    if (!(max_possible_lifespan > 0.0))
        throw ValidationError("max_possible_lifespan must be positive");
    if (!(mean_max_cost >= 0.0 && mean_max_cost <= max_possible_cost))
        throw ValidationError("mean_max_cost " + fmt(mean_max_cost) + " outside [0, " + fmt(max_possible_cost) + "]");
    if (!(mean_min_lifespan >= 0.0 && mean_min_lifespan <= max_possible_lifespan))
        throw ValidationError("mean_min_lifespan " + fmt(mean_min_lifespan) + " outside [0, " +
                              fmt(max_possible_lifespan) + "]");
    if (!(stdev_max_cost >= 0.0 && stdev_min_lifespan >= 0.0))
        throw ValidationError("standard deviations must be >= 0");
}

InfraMeasurement infra_measurement(const AttributeMeasurement& m, const AnalysisConfig& config) {
    if (!m.mean_lifespan || !m.stdev_lifespan)
        throw ValidationError("infrastructure analysis needs a lifespan on every response");
    if (!config.max_possible_lifespan)
        throw ValidationError("config.max_possible_lifespan is required for infrastructure analysis");
    InfraMeasurement out;
    out.mean_max_cost = m.mean_max_cost;
    out.stdev_max_cost = m.stdev_max_cost;
    out.mean_min_lifespan = *m.mean_lifespan;
    out.stdev_min_lifespan = *m.stdev_lifespan;
    out.count = m.count;
    out.max_possible_cost = config.max_possible_cost;
    out.max_possible_lifespan = *config.max_possible_lifespan;
    out.validate();
    return out;
}

std::string_view to_string(InfraPreference preference) noexcept {
    switch (preference) {
    case InfraPreference::LowCostLowMitigation: return "LowCostLowMitigation";
    case InfraPreference::HighCostHighMitigation: return "HighCostHighMitigation";
    case InfraPreference::Indifferent: return "Indifferent";
    }
    return "Unknown";
}

IndifferenceProbability lifespan_to_indifference(double min_lifespan, double max_possible_lifespan) {
    if (!(max_possible_lifespan > 0.0))
        throw DomainError("maximum possible lifespan must be positive");
    if (!(min_lifespan >= 0.0 && min_lifespan <= max_possible_lifespan))
        throw DomainError("minimum lifespan " + fmt(min_lifespan) + " outside [0, " + fmt(max_possible_lifespan) + "]");
    return IndifferenceProbability(min_lifespan / max_possible_lifespan);
}

UtilityCurve tolerance_curve(IndifferenceProbability p_i, const AnalysisConfig& config) {
    const double bound = indifference_lower_bound(config.c_ref, config.lower, config.upper);
    if (!(p_i.value > bound))
        throw ConstraintViolation("indifference probability " + fmt(p_i.value) + " must exceed the lower bound " +
                                  fmt(bound));
    return solve_convergence_constant(config.lower, config.upper, config.c_ref, p_i.value, Direction::Increasing,
                                      fit_options(config));
}

InfraPreference compare_tolerance(double cost_constant, double risk_constant, const AnalysisConfig& config) {
    const double tie = config.infra_tie_tolerance * (config.upper - config.lower);
    if (cost_constant == risk_constant || std::abs(risk_constant - cost_constant) <= tie)
        return InfraPreference::Indifferent;
    return risk_constant < cost_constant ? InfraPreference::HighCostHighMitigation
                                         : InfraPreference::LowCostLowMitigation;
}

InfraRecommendation infra_preference(const InfraMeasurement& measurement, const AnalysisConfig& config) {
    measurement.validate();
    const InfraInputs in = mean_inputs(measurement);
    const UtilityCurve cost = labeled("cost", [&] { return tolerance_curve(in.cost_pi, config); });
    const UtilityCurve risk = labeled("risk", [&] { return tolerance_curve(in.risk_pi, config); });

    InfraRecommendation r;
    r.cost_pi = in.cost_pi.value;
    r.risk_pi = in.risk_pi.value;
    r.cost_constant = cost.k;
    r.risk_constant = risk.k;
    r.preference = compare_tolerance(r.cost_constant, r.risk_constant, config);
    return r;
}

PlanEvaluation evaluate_infra_option(const std::string& label, const ScenarioTargets& option,
                                     const InfraInputs& inputs, const AnalysisConfig& config) {
    option.validate(config.lower, config.upper);
    const UtilityCurve cost = labeled("cost", [&] { return fit_cost_curve(inputs.cost_pi, config); });
    const UtilityCurve risk = labeled("risk", [&] { return tolerance_curve(inputs.risk_pi, config); });
    const QualityWeight weight(config.risk_weight);

    PlanEvaluation eval;
    eval.plan_id = label;
    eval.scenario_probabilities = option.probability_override
                                      ? *option.probability_override
                                      : estimate_scenario_probabilities(option, risk, config.lower);
    for (int s = 0; s < kScenarioCount; ++s) {
        const auto& t = option.targets[s];
        eval.scenario_utilities[s] = attribute_total_utility(t.cost, t.quality, config.w_c, weight, cost, risk);
    }
    eval.expected_utility = expected_value(eval.scenario_probabilities, eval.scenario_utilities);
    return eval;
}

InfraComparison infra_scenario_compare(const InfraPlan& plan, const InfraMeasurement& measurement,
                                       const AnalysisConfig& config, std::optional<MonteCarloOptions> monte_carlo) {
    config.validate();
    measurement.validate();
    const InfraInputs in = mean_inputs(measurement);

    InfraComparison out;
    out.low = evaluate_infra_option(plan.plan_id + " (low cost, low mitigation)", plan.low_option, in, config);
    out.high = evaluate_infra_option(plan.plan_id + " (high cost, high mitigation)", plan.high_option, in, config);
    if (out.low.expected_utility > out.high.expected_utility)
        out.winner = InfraPreference::LowCostLowMitigation;
    else if (out.high.expected_utility > out.low.expected_utility)
        out.winner = InfraPreference::HighCostHighMitigation;

    if (monte_carlo) {
        // One population member judges both options, so both share the draw's inputs.
        out.monte_carlo = run_monte_carlo(*monte_carlo, config, [&](DrawSampler& sampler) {
            const InfraInputs draw{
                sampler.indifference(1.0 - measurement.mean_max_cost / measurement.max_possible_cost,
                                     measurement.stdev_max_cost / measurement.max_possible_cost),
                sampler.indifference(measurement.mean_min_lifespan / measurement.max_possible_lifespan,
                                     measurement.stdev_min_lifespan / measurement.max_possible_lifespan)};
            return evaluate_infra_option("low", plan.low_option, draw, config).expected_utility -
                   evaluate_infra_option("high", plan.high_option, draw, config).expected_utility;
        });
    }
    return out;
}

} // namespace strategizer
