#include "strategizer/io/analysis.hpp"

#include "strategizer/decision_analysis.hpp"
#include "strategizer/errors.hpp"
#include "strategizer/monte_carlo.hpp"
#include "strategizer/io/csv.hpp"
#include "strategizer/io/json_codec.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

namespace strategizer::io {

namespace {

std::string f3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string pct(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * v);
    return buf;
}

const Dataset& need_dataset(const AnalysisRequest& r) {
    if (!r.dataset)
        throw ValidationError("a survey dataset is required for " + std::string(to_string(r.kind)));
    return *r.dataset;
}

void need_plans(const AnalysisRequest& r) {
    if (r.plans.empty())
        throw ValidationError("at least one plan is required for " + std::string(to_string(r.kind)));
}

MeasurementTable measurements(const AnalysisRequest& r) {
    return MeasurementTable(summarize_all(need_dataset(r).records, r.config));
}

const PlanSpec& find_plan(const std::vector<PlanSpec>& plans, const std::string& id) {
    const auto it = std::find_if(plans.begin(), plans.end(), [&](const PlanSpec& p) { return p.plan_id == id; });
    if (it == plans.end())
        throw ValidationError("unknown plan '" + id + "'");
    return *it;
}

// Explicit plan, else the best-ranked plan that is not a status quo.
const PlanSpec& subject_plan(const AnalysisRequest& r, const MeasurementTable& table) {
    if (r.plan_id)
        return find_plan(r.plans, *r.plan_id);
    for (const auto& eval : rank_plans(r.plans, table, r.config)) {
        const PlanSpec& p = find_plan(r.plans, eval.plan_id);
        if (!p.is_status_quo)
            return p;
    }
    throw ValidationError("every plan is a status quo; nothing to fund");
}

json measurement_rows(const MeasurementTable& table) {
    json rows = json::array();
    for (const auto& [key, m] : table.entries()) {
        json row = to_json(m);
        row["plan_id"] = key.first;
        row["attribute_id"] = key.second;
        rows.push_back(row);
    }
    return rows;
}

DecisionReport rank(const AnalysisRequest& r) {
    need_plans(r);
    const MeasurementTable table = measurements(r);
    const auto ranking = rank_plans(r.plans, table, r.config);
    json list = json::array();
    std::string log = "Plan Ranking\n";
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        list.push_back(to_json(ranking[i]));
        log += std::to_string(i + 1) + ". " + ranking[i].plan_id + " Expected utility: " +
               f3(ranking[i].expected_utility) + " Probabilities: [" + pct(ranking[i].scenario_probabilities[0]) +
               " " + pct(ranking[i].scenario_probabilities[1]) + " " + pct(ranking[i].scenario_probabilities[2]) +
               "]\n";
    }
    DecisionReport out;
    out.payload = {{"ranking", list}, {"measurements", measurement_rows(table)}};
    out.human_log = log;
    return out;
}

DecisionReport gonogo(const AnalysisRequest& r) {
    need_plans(r);
    const MeasurementTable table = measurements(r);
    const PlanSpec& plan = subject_plan(r, table);
    const GoNoGoResult result = go_no_go(plan, table, r.config);
    DecisionReport out;
    out.payload = to_json(result);
    out.human_log = "Go/No-Go Decision\n" + plan.plan_id + " expected utility: " + f3(result.plan.expected_utility) +
                    "\nStatus quo expected utility: " + f3(result.status_quo.expected_utility) +
                    "\nDecision: " + std::string(to_string(result.decision)) + "\n";
    return out;
}

DecisionReport sweep(const AnalysisRequest& r) {
    need_plans(r);
    const MeasurementTable table = measurements(r);
    const SweepResult result = probability_sweep(r.plans, table, r.config, r.config.sweep_increment);
    DecisionReport out;
    out.payload = to_json(result);
    out.human_log = render_sweep_log(result);
    return out;
}

std::string monte_carlo_log(const std::string& title, const MonteCarloResult& mc) {
    std::string log = "Monte Carlo Results\n" + title + "\nDraws: " + std::to_string(mc.draw_count) +
                      " Seed: " + std::to_string(mc.seed) + "\nMean: " + f3(mc.mean_delta) +
                      " Stdev: " + f3(mc.stdev_delta) + "\nPopulation Below Zero = " + pct(mc.share_below_zero) +
                      "\nHistogram (bin width " + f3(mc.bin_width) + ")\n";
    for (const auto& bin : mc.histogram)
        log += " " + f3(bin.lower) + " " + std::to_string(bin.count) + "\n";
    return log;
}

DecisionReport montecarlo(const AnalysisRequest& r) {
    need_plans(r);
    const MeasurementTable table = measurements(r);
    const PlanSpec& a = subject_plan(r, table);
    const std::size_t draws = r.draws.value_or(static_cast<std::size_t>(r.config.households));
    if (draws == 0)
        throw ValidationError("draws must be positive");
    MonteCarloResult mc;
    std::string against;
    if (r.plan_b_id) {
        const PlanSpec& b = find_plan(r.plans, *r.plan_b_id);
        mc = monte_carlo_compare(a, b, table, r.config, draws, r.config.seed, r.workers);
        against = b.plan_id;
    } else {
        mc = monte_carlo_go_no_go(a, table, r.config, draws, r.config.seed, r.workers);
        against = make_status_quo_twin(a, r.config).plan_id;
    }
    DecisionReport out;
    out.payload = to_json(mc);
    out.payload["plan_a"] = a.plan_id;
    out.payload["plan_b"] = against;
    out.human_log = monte_carlo_log("Delta: " + a.plan_id + " minus " + against, mc);
    return out;
}

DecisionReport infra(const AnalysisRequest& r) {
    if (!r.infra)
        throw ValidationError("an infra plan is required for Infra");
    const Dataset& data = need_dataset(r);
    const AttributeMeasurement m = summarize(data.records, r.infra->plan_id, r.infra->attribute_id, r.config);
    const InfraMeasurement im = infra_measurement(m, r.config);
    const InfraRecommendation rec = infra_preference(im, r.config);
    std::optional<MonteCarloOptions> mc;
    if (r.draws) {
        if (*r.draws == 0)
            throw ValidationError("draws must be positive");
        mc = MonteCarloOptions{*r.draws, r.config.seed, r.workers};
    }
    const InfraComparison cmp = infra_scenario_compare(*r.infra, im, r.config, mc);

    DecisionReport out;
    out.payload = {{"measurement", to_json(m)}, {"recommendation", to_json(rec)}, {"comparison", to_json(cmp)}};
    out.human_log = "Infrastructure Recommendation\nCost tolerance constant C: " + f3(rec.cost_constant) +
                    " (P_i " + f3(rec.cost_pi) + ")\nRisk tolerance constant R: " + f3(rec.risk_constant) +
                    " (P_i " + f3(rec.risk_pi) + ")\nPreference: " + std::string(to_string(rec.preference)) +
                    "\nLow option expected utility: " + f3(cmp.low.expected_utility) +
                    "\nHigh option expected utility: " + f3(cmp.high.expected_utility) +
                    "\nScenario winner: " + std::string(to_string(cmp.winner)) + "\n";
    if (cmp.monte_carlo)
        out.human_log += monte_carlo_log("Delta: low option minus high option", *cmp.monte_carlo);
    return out;
}

DecisionReport samplesize(const AnalysisRequest& r) {
    const AnalysisConfig& c = r.config;
    const auto entry = [&](double s, double w) {
        return json{{"stdev", s},
                    {"width", w},
                    {"confidence", c.confidence},
                    {"pilot_n", c.pilot_n},
                    {"t", student_t_quantile(c.confidence, c.pilot_n - 1)},
                    {"required_n", required_sample_size(s, w, c.confidence, c.pilot_n)}};
    };
    const json cost = entry(c.cost_spread_range / 6.0, c.cost_interval_width);
    const json util = entry((c.upper - c.lower) / 6.0, c.utilization_interval_width);
    DecisionReport out;
    out.payload = {{"cost", cost}, {"utilization", util}};
    std::string log = "Sample Size\nCost: N = " + std::to_string(cost["required_n"].get<long>()) + " (s " +
                      f3(cost["stdev"].get<double>()) + ", w " + f3(cost["width"].get<double>()) +
                      ")\nUtilization: N = " + std::to_string(util["required_n"].get<long>()) + " (s " +
                      f3(util["stdev"].get<double>()) + ", w " + f3(util["width"].get<double>()) + ")\n";
    if (r.stdev || r.width) {
        const json custom = entry(r.stdev.value_or(c.cost_spread_range / 6.0), r.width.value_or(c.cost_interval_width));
        out.payload["custom"] = custom;
        log += "Custom: N = " + std::to_string(custom["required_n"].get<long>()) + " (s " +
               f3(custom["stdev"].get<double>()) + ", w " + f3(custom["width"].get<double>()) + ")\n";
    }
    if (r.dataset) {
        const ValidationReport v = validate_responses(r.dataset->records, c);
        out.payload["validation"] = to_json(v);
        log += "Responses: " + std::to_string(r.dataset->records.size()) + " Issues: " +
               std::to_string(v.issues.size()) + " Undersampled groups: " + std::to_string(v.warnings.size()) + "\n";
    }
    out.human_log = log;
    return out;
}

} // namespace

Dataset make_dataset(std::string_view csv_text) {
    Dataset d;
    d.records = parse_survey_csv(csv_text);
    d.id = sha256_hex(csv_text);
    return d;
}

json dataset_summary(const Dataset& dataset, const AnalysisConfig& config) {
    const ValidationReport v = validate_responses(dataset.records, config);
    json summaries = json::array();
    if (v.ok())
        summaries = measurement_rows(MeasurementTable(summarize_all(dataset.records, config)));
    return {{"dataset_id", dataset.id},
            {"records", dataset.records.size()},
            {"summaries", summaries},
            {"validation", to_json(v)}};
}

json canonical_inputs(const AnalysisRequest& r) {
    json plans = json::array();
    for (const auto& p : r.plans)
        plans.push_back(to_json(p));
    json params = json::object();
    if (r.plan_id)
        params["plan_id"] = *r.plan_id;
    if (r.plan_b_id)
        params["plan_b_id"] = *r.plan_b_id;
    if (r.kind == ReportKind::MonteCarlo)
        params["draws"] = r.draws.value_or(static_cast<std::size_t>(r.config.households));
    else if (r.draws)
        params["draws"] = *r.draws;
    if (r.stdev)
        params["stdev"] = *r.stdev;
    if (r.width)
        params["width"] = *r.width;
    return {{"kind", std::string(to_string(r.kind))},
            {"dataset", r.dataset ? json(r.dataset->id) : json(nullptr)},
            {"plans", plans},
            {"infra", r.infra ? to_json(*r.infra) : json(nullptr)},
            {"config", config_to_json(r.config)},
            {"parameters", params}};
}

DecisionReport run_analysis(const AnalysisRequest& r) {
    r.config.validate();
    DecisionReport out;
    switch (r.kind) {
    case ReportKind::Rank: out = rank(r); break;
    case ReportKind::GoNoGo: out = gonogo(r); break;
    case ReportKind::Sweep: out = sweep(r); break;
    case ReportKind::MonteCarlo: out = montecarlo(r); break;
    case ReportKind::Infra: out = infra(r); break;
    case ReportKind::SampleSize: out = samplesize(r); break;
    }
    out.kind = r.kind;
    out.inputs = canonical_inputs(r);
    out.digest = inputs_digest(out.inputs);
    return out;
}

} // namespace strategizer::io
