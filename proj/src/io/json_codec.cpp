#include "strategizer/io/json_codec.hpp"

#include "strategizer/errors.hpp"

#include <cmath>
#include <functional>
#include <map>

namespace strategizer::io {

json number(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json config_to_json(const AnalysisConfig& c) {
    return {
        {"lower", c.lower},
        {"upper", c.upper},
        {"w_q", c.w_q},
        {"w_c", c.w_c},
        {"c_ref", c.c_ref},
        {"k_q_nominal", c.k_q_nominal},
        {"max_possible_cost", c.max_possible_cost},
        {"max_possible_lifespan", c.max_possible_lifespan ? json(*c.max_possible_lifespan) : json(nullptr)},
        {"households", c.households},
        {"hurwicz_alpha", c.hurwicz_alpha},
        {"sweep_increment", c.sweep_increment},
        {"fit_tolerance", c.fit_tolerance},
        {"seed", c.seed},
        {"pilot_n", c.pilot_n},
        {"k_cap_factor", c.k_cap_factor},
        {"resample_limit", c.resample_limit},
        {"histogram_bins", c.histogram_bins},
        {"infra_tie_tolerance", c.infra_tie_tolerance},
        {"risk_weight", c.risk_weight},
        {"confidence", c.confidence},
        {"cost_spread_range", c.cost_spread_range},
        {"cost_interval_width", c.cost_interval_width},
        {"utilization_interval_width", c.utilization_interval_width},
    };
}

namespace {

using Setter = std::function<void(AnalysisConfig&, const json&, const std::string&)>;

double as_number(const json& v, const std::string& path) {
    if (!v.is_number())
        throw SchemaError(path + ": expected a number");
    return v.get<double>();
}

template <typename Int>
Int as_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer())
        throw SchemaError(path + ": expected an integer");
    if constexpr (std::is_unsigned_v<Int>) {
        if (v.is_number_unsigned())
            return v.get<Int>();
        if (v.get<std::int64_t>() < 0)
            throw SchemaError(path + ": expected a non-negative integer");
    }
    return v.get<Int>();
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        const auto real = [&t](const char* name, double AnalysisConfig::*field) {
            t[name] = [field](AnalysisConfig& c, const json& v, const std::string& p) { c.*field = as_number(v, p); };
        };
        real("lower", &AnalysisConfig::lower);
        real("upper", &AnalysisConfig::upper);
        real("w_q", &AnalysisConfig::w_q);
        real("w_c", &AnalysisConfig::w_c);
        real("c_ref", &AnalysisConfig::c_ref);
        real("k_q_nominal", &AnalysisConfig::k_q_nominal);
        real("max_possible_cost", &AnalysisConfig::max_possible_cost);
        real("hurwicz_alpha", &AnalysisConfig::hurwicz_alpha);
        real("sweep_increment", &AnalysisConfig::sweep_increment);
        real("fit_tolerance", &AnalysisConfig::fit_tolerance);
        real("k_cap_factor", &AnalysisConfig::k_cap_factor);
        real("infra_tie_tolerance", &AnalysisConfig::infra_tie_tolerance);
        real("risk_weight", &AnalysisConfig::risk_weight);
        real("confidence", &AnalysisConfig::confidence);
        real("cost_spread_range", &AnalysisConfig::cost_spread_range);
        real("cost_interval_width", &AnalysisConfig::cost_interval_width);
        real("utilization_interval_width", &AnalysisConfig::utilization_interval_width);
        t["max_possible_lifespan"] = [](AnalysisConfig& c, const json& v, const std::string& p) {
            if (v.is_null())
                c.max_possible_lifespan.reset();
            else
                c.max_possible_lifespan = as_number(v, p);
        };
        t["households"] = [](AnalysisConfig& c, const json& v, const std::string& p) {
            c.households = as_integer<std::int64_t>(v, p);
        };
        t["seed"] = [](AnalysisConfig& c, const json& v, const std::string& p) {
            c.seed = as_integer<std::uint64_t>(v, p);
        };
        t["pilot_n"] = [](AnalysisConfig& c, const json& v, const std::string& p) { c.pilot_n = as_integer<int>(v, p); };
        t["resample_limit"] = [](AnalysisConfig& c, const json& v, const std::string& p) {
            c.resample_limit = as_integer<int>(v, p);
        };
        t["histogram_bins"] = [](AnalysisConfig& c, const json& v, const std::string& p) {
            c.histogram_bins = as_integer<int>(v, p);
        };
        return t;
    }();
    return table;
}

} // namespace

void apply_config_overrides(AnalysisConfig& config, const json& overrides, const std::string& path) {
    if (overrides.is_null())
        return;
    if (!overrides.is_object())
        throw SchemaError(path + ": expected an object");
    AnalysisConfig updated = config;
    for (const auto& [key, value] : overrides.items()) {
        const auto it = setters().find(key);
        if (it == setters().end())
            throw SchemaError(path + "." + key + ": unknown field");
        it->second(updated, value, path + "." + key);
    }
    try {
        updated.validate();
    } catch (const DomainError& e) {
        throw SchemaError(path + ": " + e.what());
    }
    config = updated;
}

json to_json(const UtilityCurve& c) {
    return {{"lower", c.lower},       {"upper", c.upper},
            {"k", number(c.k)},       {"a", number(c.a)},
            {"b", number(c.b)},       {"direction", std::string(to_string(c.direction))},
            {"linear", c.linear}};
}

json to_json(const AttributeMeasurement& m) {
    json j = {{"mean_max_cost", m.mean_max_cost},
              {"stdev_max_cost", m.stdev_max_cost},
              {"mean_utilization", m.mean_utilization},
              {"stdev_utilization", m.stdev_utilization},
              {"count", m.count}};
    if (m.mean_lifespan) {
        j["mean_lifespan"] = *m.mean_lifespan;
        j["stdev_lifespan"] = *m.stdev_lifespan;
    }
    return j;
}

json to_json(const ScenarioVector& v) {
    return json::array({v[0], v[1], v[2]});
}

json to_json(const PlanEvaluation& e) {
    return {{"plan_id", e.plan_id},
            {"scenario_probabilities", to_json(e.scenario_probabilities)},
            {"scenario_utilities", to_json(e.scenario_utilities)},
            {"expected_utility", e.expected_utility}};
}

json to_json(const GoNoGoResult& r) {
    return {{"decision", std::string(to_string(r.decision))},
            {"plan", to_json(r.plan)},
            {"status_quo", to_json(r.status_quo)}};
}

json to_json(const MonteCarloResult& r) {
    json bins = json::array();
    for (const auto& b : r.histogram)
        bins.push_back({{"lower", b.lower}, {"count", b.count}});
    return {{"draw_count", r.draw_count},
            {"mean_delta", r.mean_delta},
            {"stdev_delta", r.stdev_delta},
            {"share_below_zero", r.share_below_zero},
            {"bin_width", r.bin_width},
            {"histogram", bins},
            {"seed", r.seed},
            {"min_sampled_pi", number(r.min_sampled_pi)},
            {"max_sampled_pi", number(r.max_sampled_pi)}};
}

json to_json(const SweepResult& s) {
    json utilities = json::array();
    for (Eigen::Index i = 0; i < s.scenario_utilities.rows(); ++i)
        utilities.push_back(json::array(
            {s.scenario_utilities(i, 0), s.scenario_utilities(i, 1), s.scenario_utilities(i, 2)}));
    json rows = json::array();
    for (const auto& row : s.rows) {
        json best = json::object();
        for (Criterion c : kAllCriteria) {
            const auto& o = outcome(row.best, c);
            best[std::string(to_string(c))] = {{"plan_id", s.plan_ids[o.winner]}, {"score", o.score}};
        }
        json eus = json::array();
        for (Eigen::Index i = 0; i < row.expected_utilities.size(); ++i)
            eus.push_back(row.expected_utilities[i]);
        rows.push_back({{"probabilities", to_json(row.probabilities)},
                        {"expected_utilities", eus},
                        {"best", best},
                        {"margin", row.margin}});
    }
    return {{"plan_ids", s.plan_ids},
            {"increment", s.increment},
            {"hurwicz_alpha", s.alpha},
            {"scenario_utilities", utilities},
            {"rows", rows}};
}

json to_json(const InfraRecommendation& r) {
    return {{"cost_constant", number(r.cost_constant)},
            {"risk_constant", number(r.risk_constant)},
            {"preference", std::string(to_string(r.preference))},
            {"cost_pi", r.cost_pi},
            {"risk_pi", r.risk_pi}};
}

json to_json(const InfraComparison& c) {
    json j = {{"low_option", to_json(c.low)},
              {"high_option", to_json(c.high)},
              {"winner", std::string(to_string(c.winner))}};
    if (c.monte_carlo)
        j["monte_carlo"] = to_json(*c.monte_carlo);
    return j;
}

json to_json(const ValidationReport& r) {
    const auto issues = [](const std::vector<ValidationIssue>& list) {
        json out = json::array();
        for (const auto& i : list)
            out.push_back({{"kind", std::string(to_string(i.kind))}, {"row", i.row}, {"message", i.message}});
        return out;
    };
    json counts = json::array();
    for (const auto& c : r.counts)
        counts.push_back({{"plan_id", c.plan_id}, {"attribute_id", c.attribute_id}, {"count", c.count}});
    return {{"issues", issues(r.issues)},
            {"warnings", issues(r.warnings)},
            {"counts", counts},
            {"required_cost_samples", r.required_cost_samples},
            {"required_utilization_samples", r.required_utilization_samples}};
}

json to_json(const ScenarioTargets& t, const char* second_key) {
    static constexpr const char* names[] = {"low", "nominal", "high"};
    json j = json::object();
    json targets = json::object();
    for (int s = 0; s < kScenarioCount; ++s)
        targets[names[s]] = {{"cost", t.targets[s].cost}, {second_key, t.targets[s].quality}};
    j["targets"] = targets;
    if (t.probability_override)
        j["probabilities"] = to_json(*t.probability_override);
    return j;
}

json to_json(const PlanSpec& p) {
    json attrs = json::array();
    for (const auto& a : p.attributes) {
        json aj = to_json(a.targets);
        aj["attribute_id"] = a.attribute_id;
        attrs.push_back(aj);
    }
    json j = {{"plan_id", p.plan_id}, {"status_quo", p.is_status_quo}, {"attributes", attrs}};
    if (p.probability_override)
        j["probabilities"] = to_json(*p.probability_override);
    return j;
}

json to_json(const InfraPlan& p) {
    return {{"plan_id", p.plan_id},
            {"attribute_id", p.attribute_id},
            {"low_option", to_json(p.low_option, "mitigation")},
            {"high_option", to_json(p.high_option, "mitigation")}};
}

} // namespace strategizer::io
