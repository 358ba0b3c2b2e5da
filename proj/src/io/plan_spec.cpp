#include "strategizer/io/plan_spec.hpp"

#include "strategizer/errors.hpp"
#include "strategizer/io/json_codec.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace strategizer::io {

namespace {

void require_object(const json& j, const std::string& path) {
    if (!j.is_object())
        throw SchemaError(path + ": expected an object");
}

void allow_only(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key))
            throw SchemaError(path + "." + key + ": unknown field");
}

const json& required(const json& j, const std::string& path, const char* key) {
    const auto it = j.find(key);
    if (it == j.end())
        throw SchemaError(path + "." + key + ": missing required field");
    return *it;
}

std::string string_field(const json& j, const std::string& path, const char* key) {
    const json& v = required(j, path, key);
    if (!v.is_string() || v.get<std::string>().empty())
        throw SchemaError(path + "." + key + ": expected a non-empty string");
    return v.get<std::string>();
}

double number_field(const json& j, const std::string& path, const char* key) {
    const json& v = required(j, path, key);
    if (!v.is_number())
        throw SchemaError(path + "." + key + ": expected a number");
    return v.get<double>();
}

ScenarioVector parse_probabilities(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != kScenarioCount)
        throw SchemaError(path + ": expected an array of 3 probabilities");
    ScenarioVector p;
    for (int s = 0; s < kScenarioCount; ++s) {
        if (!j[s].is_number())
            throw SchemaError(path + "[" + std::to_string(s) + "]: expected a number");
        p[s] = j[s].get<double>();
    }
    return p;
}

ScenarioTargets parse_targets(const json& j, const std::string& path, const char* second_key,
                              std::initializer_list<const char*> extra_keys) {
    require_object(j, path);
    std::vector<const char*> keys{"targets", "probabilities"};
    keys.insert(keys.end(), extra_keys.begin(), extra_keys.end());
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key))
            throw SchemaError(path + "." + key + ": unknown field");

    ScenarioTargets t;
    const json& targets = required(j, path, "targets");
    const std::string tpath = path + ".targets";
    require_object(targets, tpath);
    allow_only(targets, tpath, {"low", "nominal", "high"});
    static constexpr const char* names[] = {"low", "nominal", "high"};
    for (int s = 0; s < kScenarioCount; ++s) {
        const json& pair = required(targets, tpath, names[s]);
        const std::string ppath = tpath + "." + names[s];
        require_object(pair, ppath);
        const std::set<std::string> pair_keys{"cost", second_key};
        for (const auto& [key, _] : pair.items())
            if (!pair_keys.count(key))
                throw SchemaError(ppath + "." + key + ": unknown field");
        t.targets[s].cost = number_field(pair, ppath, "cost");
        t.targets[s].quality = number_field(pair, ppath, second_key);
    }
    if (const auto it = j.find("probabilities"); it != j.end() && !it->is_null())
        t.probability_override = parse_probabilities(*it, path + ".probabilities");
    return t;
}

template <typename F>
auto rethrow_as_schema(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

} // namespace

std::vector<PlanSpec> parse_plans(const json& plans, const AnalysisConfig& config, const std::string& path) {
    if (!plans.is_array())
        throw SchemaError(path + ": expected an array");
    if (plans.empty())
        throw SchemaError(path + ": plans list is empty");
    std::vector<PlanSpec> out;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < plans.size(); ++i) {
        const std::string ppath = path + "[" + std::to_string(i) + "]";
        const json& pj = plans[i];
        require_object(pj, ppath);
        allow_only(pj, ppath, {"plan_id", "status_quo", "probabilities", "attributes"});
        PlanSpec plan;
        plan.plan_id = string_field(pj, ppath, "plan_id");
        if (!seen.insert(plan.plan_id).second)
            throw SchemaError(ppath + ".plan_id: duplicate plan id '" + plan.plan_id + "'");
        if (const auto it = pj.find("status_quo"); it != pj.end()) {
            if (!it->is_boolean())
                throw SchemaError(ppath + ".status_quo: expected a boolean");
            plan.is_status_quo = it->get<bool>();
        }
        if (const auto it = pj.find("probabilities"); it != pj.end() && !it->is_null())
            plan.probability_override = parse_probabilities(*it, ppath + ".probabilities");
        const json& attrs = required(pj, ppath, "attributes");
        if (!attrs.is_array() || attrs.empty())
            throw SchemaError(ppath + ".attributes: expected a non-empty array");
        for (std::size_t a = 0; a < attrs.size(); ++a) {
            const std::string apath = ppath + ".attributes[" + std::to_string(a) + "]";
            require_object(attrs[a], apath);
            PlanAttribute attr;
            attr.attribute_id = string_field(attrs[a], apath, "attribute_id");
            attr.targets = parse_targets(attrs[a], apath, "quality", {"attribute_id"});
            plan.attributes.push_back(std::move(attr));
        }
        rethrow_as_schema(ppath, [&] {
            plan.validate(config);
            return 0;
        });
        out.push_back(std::move(plan));
    }
    return out;
}

InfraPlan parse_infra_plan(const json& j, const AnalysisConfig& config, const std::string& path) {
    require_object(j, path);
    allow_only(j, path, {"plan_id", "attribute_id", "low_option", "high_option"});
    InfraPlan plan;
    plan.plan_id = string_field(j, path, "plan_id");
    plan.attribute_id = string_field(j, path, "attribute_id");
    plan.low_option = parse_targets(required(j, path, "low_option"), path + ".low_option", "mitigation", {});
    plan.high_option = parse_targets(required(j, path, "high_option"), path + ".high_option", "mitigation", {});
    rethrow_as_schema(path + ".low_option", [&] {
        plan.low_option.validate(config.lower, config.upper);
        return 0;
    });
    rethrow_as_schema(path + ".high_option", [&] {
        plan.high_option.validate(config.lower, config.upper);
        return 0;
    });
    return plan;
}

PlanFile parse_plan_spec(const json& doc, const AnalysisConfig& base) {
    require_object(doc, "$");
    for (const auto& [key, _] : doc.items())
        if (key != "config" && key != "plans" && key != "infra")
            throw SchemaError(key + ": unknown field");
    PlanFile file;
    file.config = base;
    file.config_overrides = json::object();
    if (const auto it = doc.find("config"); it != doc.end() && !it->is_null()) {
        apply_config_overrides(file.config, *it, "config");
        file.config_overrides = *it;
    }
    const auto plans = doc.find("plans");
    const auto infra = doc.find("infra");
    if (plans == doc.end() && infra == doc.end())
        throw SchemaError("plans: missing required field");
    if (plans != doc.end())
        file.plans = parse_plans(*plans, file.config, "plans");
    if (infra != doc.end())
        file.infra = parse_infra_plan(*infra, file.config, "infra");
    return file;
}

PlanFile parse_plan_spec_text(std::string_view text, const AnalysisConfig& base) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("$: invalid JSON: ") + e.what());
    }
    return parse_plan_spec(doc, base);
}

PlanFile load_plan_spec(const std::filesystem::path& path, const AnalysisConfig& base) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open plan spec '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_plan_spec_text(buffer.str(), base);
}

} // namespace strategizer::io
