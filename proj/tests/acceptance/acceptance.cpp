// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "strategizer/decision_analysis.hpp"
#include "strategizer/infra_decisions.hpp"
#include "strategizer/monte_carlo.hpp"
#include "strategizer/plan_model.hpp"
#include "strategizer/survey_stats.hpp"
#include "strategizer/utility_curve.hpp"
#include "strategizer/io/csv.hpp"
#include "strategizer/io/plan_spec.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace strategizer;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

std::string data(const std::string& name) {
    return std::string(STRATEGIZER_TEST_DATA) + "/" + name;
}

std::string num(double v, int precision = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

PlanSpec single(const std::string& id, double a, double b, double c, std::optional<ScenarioVector> p = {}) {
    PlanSpec plan;
    plan.plan_id = id;
    PlanAttribute attr;
    attr.attribute_id = "amenity";
    attr.targets.targets = {{{a, a}, {b, b}, {c, c}}};
    attr.targets.probability_override = p;
    plan.attributes.push_back(attr);
    return plan;
}

AttributeMeasurement measurement(double cost, double cost_sd, double util, double util_sd) {
    AttributeMeasurement m;
    m.mean_max_cost = cost;
    m.stdev_max_cost = cost_sd;
    m.mean_utilization = util;
    m.stdev_utilization = util_sd;
    m.count = 12;
    return m;
}

MeasurementTable fixture_table(const AnalysisConfig& config) {
    const auto records = io::load_survey_csv(data("two_plan_responses.csv"));
    return MeasurementTable(summarize_all(records, config));
}

std::vector<PlanSpec> fixture_plans(AnalysisConfig& config) {
    auto file = io::load_plan_spec(data("two_plan_plans.json"), AnalysisConfig{});
    config = file.config;
    return file.plans;
}

Outcome quality_weight_check() {
    Outcome o;
    const double w = quality_weight(2.6, 1, 5, 2).value;
    o.require(std::abs(w - 1.4) <= 1e-12, "got " + num(w, 15));
    if (o.pass)
        o.detail = "W = " + num(w, 15);
    return o;
}

Outcome status_quo_identity() {
    Outcome o;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> cost(0, 33), sd(0, 10), util(1, 5), u01(0, 1);
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        const auto m = measurement(cost(rng), sd(rng), util(rng), sd(rng));
        const double a = u01(rng), b = u01(rng) * (1 - a);
        for (double wc : {2.0, 1.0}) {
            AnalysisConfig config;
            config.w_c = wc;
            MeasurementTable t;
            t.insert("SQ", "amenity", m);
            PlanSpec sq = single("SQ", 1, 1, 1, ScenarioVector(a, b, 1 - a - b));
            sq.is_status_quo = true;
            const double eu = expected_plan_utility(sq, t, config).expected_utility;
            o.require(eu == wc, "set " + std::to_string(i) + ": " + num(eu, 15) + " != " + num(wc, 3));
            ++checked;
        }
    }
    if (o.pass)
        o.detail = std::to_string(checked) + " evaluations exact";
    return o;
}

Outcome scenario_probabilities() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const AnalysisConfig config;
    const UtilityCurve curve = nominal_quality_curve(config);
    const auto p2 = estimate_scenario_probabilities(single("P2", 2.5, 3.5, 4.5).attributes[0].targets, curve, 1.0);
    const auto p1 = estimate_scenario_probabilities(single("P1", 2, 3, 4).attributes[0].targets, curve, 1.0);
    const double secs = seconds_since(start);
    const ScenarioVector expected2(0.64, 0.22, 0.14);
    for (int s = 0; s < 3; ++s)
        o.require(std::abs(p2[s] - expected2[s]) <= 0.015, "Plan_2 p[" + std::to_string(s) + "] = " + num(p2[s], 4));
    o.require(std::abs(p1[0] - 0.5) <= 0.005, "Plan_1 p_A = " + num(p1[0], 4));
    o.require(std::abs(p1[1] - 0.32) <= 0.02, "Plan_1 p_B = " + num(p1[1], 4));
    o.require(std::abs(p1[2] - 0.18) <= 0.02, "Plan_1 p_C = " + num(p1[2], 4));
    o.require(secs < 1.0, "took " + num(secs, 3) + " s");
    if (o.pass)
        o.detail = "Plan_2 (" + num(p2[0], 3) + ", " + num(p2[1], 3) + ", " + num(p2[2], 3) + ") Plan_1 (" +
                   num(p1[0], 3) + ", " + num(p1[1], 3) + ", " + num(p1[2], 3) + ")";
    return o;
}

Outcome two_plan_ranking() {
    Outcome o;
    AnalysisConfig config;
    const auto plans = fixture_plans(config);
    const auto table = fixture_table(config);
    const auto ranking = rank_plans(plans, table, config);
    o.require(ranking.size() == 2 && ranking[0].plan_id == "Plan_1", "Plan_1 is not ranked first");
    if (!o.pass)
        return o;
    const double e1 = ranking[0].expected_utility, e2 = ranking[1].expected_utility;
    o.require(e1 > e2, "Plan_1 does not exceed Plan_2");
    o.require(std::abs(e1 - 1.375) <= 0.05, "Plan_1 EU " + num(e1, 4));
    o.require(std::abs(e2 - 1.335) <= 0.05, "Plan_2 EU " + num(e2, 4));
    if (o.pass)
        o.detail = "Plan_1 " + num(e1, 3) + " > Plan_2 " + num(e2, 3);
    return o;
}

Outcome go_no_go_flip() {
    Outcome o;
    AnalysisConfig config;
    const auto plans = fixture_plans(config);
    const auto table = fixture_table(config);
    config.w_c = 2;
    const auto at2 = go_no_go(plans[0], table, config);
    config.w_c = 1;
    const auto at1 = go_no_go(plans[0], table, config);
    o.require(at2.decision == FundingDecision::NoGo, "W_c = 2 gave Go");
    o.require(at1.decision == FundingDecision::Go, "W_c = 1 gave NoGo");
    o.require(at2.status_quo.expected_utility == 2.0 && at1.status_quo.expected_utility == 1.0,
              "status quo is not W_c");
    if (o.pass)
        o.detail = "W_c 2: " + num(at2.plan.expected_utility, 3) + " vs 2.000 NoGo; W_c 1: " +
                   num(at1.plan.expected_utility, 3) + " vs 1.000 Go";
    return o;
}

Outcome sample_size() {
    Outcome o;
    const long cost = required_sample_size(5, 1.0, 0.95, 12);
    const long util = required_sample_size(2.0 / 3.0, 0.25, 0.95, 12);
    o.require(cost == 485, "cost N = " + std::to_string(cost));
    o.require(util == 138, "utilization N = " + std::to_string(util));
    if (o.pass)
        o.detail = "N = 485 and 138";
    return o;
}

Outcome k_solver() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const double lower = 1, upper = 5;
    int fits = 0;
    for (Direction dir : {Direction::Decreasing, Direction::Increasing}) {
        for (int i = 0; i < 20; ++i) {
            const double c_ref = lower + (upper - lower) * (i + 0.5) / 20;
            const double bound = indifference_lower_bound(c_ref, lower, upper);
            std::vector<std::pair<double, double>> prev;
            for (int j = 0; j < 20; ++j) {
                const double p = bound + (1 - bound) * (j + 0.5) / 20;
                const auto curve = solve_convergence_constant(lower, upper, c_ref, p, dir, 1e-9);
                ++fits;
                const std::string at = " at c_ref " + num(c_ref, 3) + ", P_i " + num(p, 4);
                o.require(std::abs(evaluate_unit_utility(curve, c_ref) - p) <= 1e-9, "anchor missed" + at);
                const double u_lo = evaluate_unit_utility(curve, lower), u_hi = evaluate_unit_utility(curve, upper);
                const double want_lo = dir == Direction::Increasing ? 0.0 : 1.0;
                o.require(std::abs(u_lo - want_lo) <= 1e-9 && std::abs(u_hi - (1 - want_lo)) <= 1e-9,
                          "endpoint missed" + at);
                // The mirrored curve gives 1 - u without rounding where u sits next to 1.
                UtilityCurve mirror = curve;
                mirror.direction = dir == Direction::Increasing ? Direction::Decreasing : Direction::Increasing;
                std::vector<std::pair<double, double>> interior;
                for (int s = 1; s <= 10; ++s) {
                    const double x = lower + (upper - lower) * s / 11;
                    interior.emplace_back(evaluate_unit_utility(curve, x), evaluate_unit_utility(mirror, x));
                }
                if (!prev.empty())
                    for (std::size_t s = 0; s < interior.size(); ++s) {
                        const auto [u, w] = interior[s];
                        const auto [pu, pw] = prev[s];
                        o.require(u >= pu && w <= pw && (u > pu || w < pw), "family order broken" + at);
                    }
                prev = interior;
            }
        }
    }
    const double secs = seconds_since(start);
    o.require(secs < 5.0, "took " + num(secs, 3) + " s");
    if (o.pass)
        o.detail = std::to_string(fits) + " fits in " + num(secs, 3) + " s";
    return o;
}

bool identical(const MonteCarloResult& a, const MonteCarloResult& b) {
    if (a.histogram.size() != b.histogram.size())
        return false;
    for (std::size_t i = 0; i < a.histogram.size(); ++i)
        if (a.histogram[i].lower != b.histogram[i].lower || a.histogram[i].count != b.histogram[i].count)
            return false;
    return a.draw_count == b.draw_count && a.mean_delta == b.mean_delta && a.stdev_delta == b.stdev_delta &&
           a.share_below_zero == b.share_below_zero && a.bin_width == b.bin_width &&
           a.min_sampled_pi == b.min_sampled_pi && a.max_sampled_pi == b.max_sampled_pi;
}

Outcome bound_enforcement() {
    Outcome o;
    AnalysisConfig config;
    const auto plans = fixture_plans(config);
    const auto table = fixture_table(config);
    const std::size_t draws = 100000;
    const auto a = monte_carlo_compare(plans[0], plans[1], table, config, draws, 7, 1);
    const auto b = monte_carlo_compare(plans[0], plans[1], table, config, draws, 7, 1);
    const auto c = monte_carlo_compare(plans[0], plans[1], table, config, draws, 7, 4);
    const double bound = indifference_lower_bound(config.c_ref, config.lower, config.upper);
    o.require(a.min_sampled_pi > bound, "sampled P_i " + num(a.min_sampled_pi, 6) + " <= " + num(bound, 6));
    o.require(a.max_sampled_pi < 1.0, "sampled P_i reached 1");
    o.require(identical(a, b), "two runs differ");
    o.require(identical(a, c), "1 vs 4 workers differ");
    if (o.pass)
        o.detail = "min P_i " + num(a.min_sampled_pi, 4) + " > " + num(bound, 4) + ", reproducible";
    return o;
}

Outcome monte_carlo_symmetry() {
    Outcome o;
    AnalysisConfig config;
    const auto plans = fixture_plans(config);
    auto table = fixture_table(config);
    table.insert("Copy", "amenity", table.at("Plan_1", "amenity"));
    PlanSpec copy = plans[0];
    copy.plan_id = "Copy";
    const std::size_t draws = 10000;
    const auto r = monte_carlo_compare(plans[0], copy, table, config, draws, config.seed, 4);
    const double tol = 3 * std::sqrt(0.25 / draws);
    o.require(std::abs(r.share_below_zero - 0.5) <= tol, "share " + num(r.share_below_zero, 4));
    if (o.pass)
        o.detail = "share " + num(r.share_below_zero, 4) + " within 0.5 +- " + num(tol, 4);
    return o;
}

Eigen::MatrixXd shared(const ScenarioVector& p, Eigen::Index plans) {
    return p.transpose().replicate(plans, 1);
}

Outcome decision_criteria() {
    Outcome o;
    Eigen::MatrixXd xy(2, 3);
    xy << 1.0, 1.1, 1.1, 0.9, 1.0, 1.3;
    const auto r = apply_decision_criteria(xy, shared(ScenarioVector(0.5, 0.32, 0.18), 2), 0.5);
    const std::pair<Criterion, std::size_t> expected[] = {
        {Criterion::ExpectedUtility, 0}, {Criterion::Maximin, 0},        {Criterion::Maximax, 1},
        {Criterion::MinimaxRegret, 1},   {Criterion::MostLikelihood, 0}, {Criterion::Hurwicz, 1},
    };
    for (const auto& [c, winner] : expected)
        o.require(outcome(r, c).winner == winner, std::string(to_string(c)) + " picked the wrong plan");

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0, 3), gap(0.001, 0.5), w(0.01, 1), a01(0, 1);
    std::uniform_int_distribution<int> nplans(2, 6);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = nplans(rng);
        Eigen::MatrixXd util(n, 3);
        for (int i = 0; i < n; ++i)
            for (int s = 0; s < 3; ++s)
                util(i, s) = u(rng);
        const int d = std::uniform_int_distribution<int>(0, n - 1)(rng);
        for (int s = 0; s < 3; ++s)
            util(d, s) = util.col(s).maxCoeff() + gap(rng);
        ScenarioVector p(w(rng), w(rng), w(rng));
        p /= p.sum();
        const auto res = apply_decision_criteria(util, shared(p, n), a01(rng));
        for (Criterion c : kAllCriteria)
            o.require(outcome(res, c).winner == static_cast<std::size_t>(d),
                      "instance " + std::to_string(trial) + ": " + std::string(to_string(c)));
    }
    if (o.pass)
        o.detail = "six assignments exact, 100 dominance instances";
    return o;
}

Outcome sweep_lattice() {
    Outcome o;
    for (int n : {2, 4, 10}) {
        const auto lattice = probability_lattice(1.0 / n);
        o.require(lattice.size() == static_cast<std::size_t>((n + 1) * (n + 2) / 2),
                  "n = " + std::to_string(n) + " gave " + std::to_string(lattice.size()));
    }
    Eigen::MatrixXd xy(2, 3);
    xy << 1.0, 1.1, 1.1, 0.9, 1.0, 1.3;
    const std::string text = render_sweep_log(sweep_scenario_utilities({"Plan_X", "Plan_Y"}, xy, 0.5, 0.5));
    std::ifstream in(data("sweep_xy_golden.txt"), std::ios::binary);
    std::ostringstream golden;
    golden << in.rdbuf();
    o.require(!golden.str().empty(), "golden file missing");
    o.require(text == golden.str(), "rendering differs from the golden file");
    if (o.pass)
        o.detail = "6, 15, 66 triples; golden text matches";
    return o;
}

InfraMeasurement from_pis(double cost_pi, double risk_pi) {
    InfraMeasurement m;
    m.mean_max_cost = (1 - cost_pi) * 35;
    m.mean_min_lifespan = risk_pi * 40;
    m.count = 12;
    m.max_possible_cost = 35;
    m.max_possible_lifespan = 40;
    return m;
}

InfraPreference swapped(InfraPreference p) {
    if (p == InfraPreference::LowCostLowMitigation)
        return InfraPreference::HighCostHighMitigation;
    if (p == InfraPreference::HighCostHighMitigation)
        return InfraPreference::LowCostLowMitigation;
    return p;
}

Outcome infra_rule() {
    Outcome o;
    AnalysisConfig config;
    config.max_possible_lifespan = 40;
    const double bound = indifference_lower_bound(config.c_ref, config.lower, config.upper);
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> p(bound + 0.01, 0.99);
    for (int i = 0; i < 100; ++i) {
        const double a = p(rng), b = p(rng);
        const auto fwd = infra_preference(from_pis(a, b), config);
        const auto rev = infra_preference(from_pis(b, a), config);
        o.require(rev.preference == swapped(fwd.preference), "pair " + std::to_string(i) + " not antisymmetric");
    }
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const double cp = 0.08 + 0.09 * i, rp = 0.08 + 0.09 * j;
            const auto rec = infra_preference(from_pis(cp, rp), config);
            const InfraPreference shortcut = rp > cp   ? InfraPreference::HighCostHighMitigation
                                             : rp < cp ? InfraPreference::LowCostLowMitigation
                                                       : InfraPreference::Indifferent;
            o.require(rec.preference == shortcut, "grid point (" + num(cp, 2) + ", " + num(rp, 2) + ") disagrees");
        }
    }
    if (o.pass)
        o.detail = "100 swapped pairs, 100 grid points";
    return o;
}

} // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"quality weight", quality_weight_check},
        {"status quo identity", status_quo_identity},
        {"scenario probabilities", scenario_probabilities},
        {"two-plan ranking", two_plan_ranking},
        {"go/no-go flip", go_no_go_flip},
        {"sample size", sample_size},
        {"curvature solver", k_solver},
        {"indifference bound under sampling", bound_enforcement},
        {"Monte Carlo symmetry", monte_carlo_symmetry},
        {"decision criteria", decision_criteria},
        {"sweep lattice", sweep_lattice},
        {"infrastructure rule", infra_rule},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", ++index, name, o.detail.c_str());
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%d passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
