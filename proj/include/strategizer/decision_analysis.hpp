#pragma once

#include "strategizer/config.hpp"
#include "strategizer/plan_model.hpp"

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace strategizer {

enum class Criterion { ExpectedUtility, Maximin, Maximax, MinimaxRegret, MostLikelihood, Hurwicz };

inline constexpr std::array<Criterion, 6> kAllCriteria = {
    Criterion::ExpectedUtility, Criterion::Maximin,        Criterion::Maximax,
    Criterion::MinimaxRegret,   Criterion::MostLikelihood, Criterion::Hurwicz,
};

std::string_view to_string(Criterion criterion) noexcept;

struct CriterionOutcome {
    std::size_t winner = 0;  // plan index in declaration order
    double score = 0.0;      // the winner's criterion value (max regret for MinimaxRegret)
};

using CriteriaResult = std::array<CriterionOutcome, kAllCriteria.size()>;

inline const CriterionOutcome& outcome(const CriteriaResult& r, Criterion c) {
    return r[static_cast<std::size_t>(c)];
}

// utilities and probabilities are plans x scenarios. Ties go to the earliest plan.
CriteriaResult apply_decision_criteria(const Eigen::MatrixXd& utilities, const Eigen::MatrixXd& probabilities,
                                       double alpha);

// All (p_A, p_B, p_C) with entries on multiples of `increment` summing to 1, in
// descending lexicographic order. DomainError unless 0 < increment <= 0.5 and
// 1/increment is an integer.
std::vector<ScenarioVector> probability_lattice(double increment);

struct SweepRow {
    ScenarioVector probabilities = ScenarioVector::Zero();  // applied to every plan
    Eigen::VectorXd expected_utilities;
    CriteriaResult best{};
    double margin = 0.0;  // best minus runner-up expected utility; 0 for a single plan
};

struct SweepResult {
    std::vector<std::string> plan_ids;
    Eigen::MatrixXd scenario_utilities;  // plans x scenarios, evaluated once
    double increment = 0.0;
    double alpha = 0.5;
    std::vector<SweepRow> rows;
};

SweepResult sweep_scenario_utilities(std::vector<std::string> plan_ids, const Eigen::MatrixXd& utilities,
                                     double increment, double alpha);

SweepResult probability_sweep(std::span<const PlanSpec> plans, const MeasurementTable& measurements,
                              const AnalysisConfig& config, double increment);

// Log-style text block: one "Result: N Probabilities: [...]" entry per row.
std::string render_sweep_log(const SweepResult& sweep);

} // namespace strategizer
