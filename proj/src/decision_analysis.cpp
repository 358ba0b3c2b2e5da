#include "strategizer/decision_analysis.hpp"

#include "strategizer/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <sstream>

namespace strategizer {

std::string_view to_string(Criterion criterion) noexcept {
    switch (criterion) {
    case Criterion::ExpectedUtility: return "ExpectedUtility";
    case Criterion::Maximin: return "Maximin";
    case Criterion::Maximax: return "Maximax";
    case Criterion::MinimaxRegret: return "MinimaxRegret";
    case Criterion::MostLikelihood: return "MostLikelihood";
    case Criterion::Hurwicz: return "Hurwicz";
    }
    return "Unknown";
}

namespace {

// First index of the maximum (or minimum) entry.
CriterionOutcome pick(const Eigen::VectorXd& scores, bool maximize) {
    CriterionOutcome best{0, scores[0]};
    for (Eigen::Index i = 1; i < scores.size(); ++i) {
        if (maximize ? scores[i] > best.score : scores[i] < best.score)
            best = {static_cast<std::size_t>(i), scores[i]};
    }
    return best;
}

} // namespace

CriteriaResult apply_decision_criteria(const Eigen::MatrixXd& utilities, const Eigen::MatrixXd& probabilities,
                                       double alpha) {
    if (utilities.rows() < 1 || utilities.cols() < 1)
        throw ShapeMismatch("need at least one plan and one scenario");
    if (probabilities.rows() != utilities.rows() || probabilities.cols() != utilities.cols())
        throw ShapeMismatch("probabilities are " + std::to_string(probabilities.rows()) + "x" +
                            std::to_string(probabilities.cols()) + " but utilities are " +
                            std::to_string(utilities.rows()) + "x" + std::to_string(utilities.cols()));
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainError("Hurwicz alpha must lie in [0, 1]");

    const Eigen::Index plans = utilities.rows();
    const Eigen::VectorXd expected = utilities.cwiseProduct(probabilities).rowwise().sum();
    const Eigen::VectorXd worst = utilities.rowwise().minCoeff();
    const Eigen::VectorXd best = utilities.rowwise().maxCoeff();
    const Eigen::RowVectorXd column_best = utilities.colwise().maxCoeff();
    const Eigen::VectorXd max_regret = (utilities.rowwise() - column_best).cwiseAbs().rowwise().maxCoeff();

    Eigen::VectorXd likeliest(plans);
    for (Eigen::Index i = 0; i < plans; ++i) {
        Eigen::Index s = 0;
        probabilities.row(i).maxCoeff(&s);  // first maximum on ties
        likeliest[i] = utilities(i, s);
    }
    const Eigen::VectorXd hurwicz = alpha * best + (1.0 - alpha) * worst;

    CriteriaResult r{};
    r[static_cast<std::size_t>(Criterion::ExpectedUtility)] = pick(expected, true);
    r[static_cast<std::size_t>(Criterion::Maximin)] = pick(worst, true);
    r[static_cast<std::size_t>(Criterion::Maximax)] = pick(best, true);
    r[static_cast<std::size_t>(Criterion::MinimaxRegret)] = pick(max_regret, false);
    r[static_cast<std::size_t>(Criterion::MostLikelihood)] = pick(likeliest, true);
    r[static_cast<std::size_t>(Criterion::Hurwicz)] = pick(hurwicz, true);
    return r;
}

std::vector<ScenarioVector> probability_lattice(double increment) {
    if (!(increment > 0.0 && increment <= 0.5))
        throw DomainError("sweep increment must lie in (0, 0.5]");
    const double steps = std::round(1.0 / increment);
    if (std::abs(steps * increment - 1.0) > 1e-9)
        throw DomainError("sweep increment must divide 1 evenly");
    const int n = static_cast<int>(steps);
    std::vector<ScenarioVector> out;
    out.reserve(static_cast<std::size_t>((n + 1) * (n + 2) / 2));
    for (int i = n; i >= 0; --i) {
        for (int j = n - i; j >= 0; --j) {
            const int k = n - i - j;
            out.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n, static_cast<double>(k) / n);
        }
    }
    return out;
}

SweepResult sweep_scenario_utilities(std::vector<std::string> plan_ids, const Eigen::MatrixXd& utilities,
                                     double increment, double alpha) {
    if (static_cast<Eigen::Index>(plan_ids.size()) != utilities.rows())
        throw ShapeMismatch("one plan id per utility row required");
    if (utilities.cols() != kScenarioCount)
        throw ShapeMismatch("sweeps need exactly three scenarios per plan");

    SweepResult sweep;
    sweep.plan_ids = std::move(plan_ids);
    sweep.scenario_utilities = utilities;
    sweep.increment = increment;
    sweep.alpha = alpha;

    const Eigen::Index plans = utilities.rows();
    for (const auto& triple : probability_lattice(increment)) {
        SweepRow row;
        row.probabilities = triple;
        const Eigen::MatrixXd probs = triple.transpose().replicate(plans, 1);
        row.expected_utilities = utilities * triple;
        row.best = apply_decision_criteria(utilities, probs, alpha);
        if (plans > 1) {
            const std::size_t winner = outcome(row.best, Criterion::ExpectedUtility).winner;
            double runner_up = -std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < plans; ++i)
                if (static_cast<std::size_t>(i) != winner)
                    runner_up = std::max(runner_up, row.expected_utilities[i]);
            row.margin = row.expected_utilities[static_cast<Eigen::Index>(winner)] - runner_up;
        }
        sweep.rows.push_back(std::move(row));
    }
    return sweep;
}

SweepResult probability_sweep(std::span<const PlanSpec> plans, const MeasurementTable& measurements,
                              const AnalysisConfig& config, double increment) {
    if (plans.empty())
        throw ValidationError("at least one plan is required");
    Eigen::MatrixXd utilities(static_cast<Eigen::Index>(plans.size()), kScenarioCount);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < plans.size(); ++i) {
        utilities.row(static_cast<Eigen::Index>(i)) =
            plan_scenario_utilities(plans[i], measurements, config).transpose();
        ids.push_back(plans[i].plan_id);
    }
    return sweep_scenario_utilities(std::move(ids), utilities, increment, config.hurwicz_alpha);
}

namespace {

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string percent(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f%%", p * 100.0);
    return buf;
}

} // namespace

std::string render_sweep_log(const SweepResult& sweep) {
    std::ostringstream os;
    os << "Probability Sweep Results\n\n";
    os << "Options:";
    for (std::size_t i = 0; i < sweep.plan_ids.size(); ++i)
        os << ' ' << (i + 1) << '=' << sweep.plan_ids[i];
    os << "\n\nSweep 1\n";

    const auto option = [](std::size_t index) { return "Option " + std::to_string(index + 1); };
    for (std::size_t r = 0; r < sweep.rows.size(); ++r) {
        const auto& row = sweep.rows[r];
        os << "\nResult: " << (r + 1) << " Probabilities: [";
        for (std::size_t i = 0; i < sweep.plan_ids.size(); ++i) {
            for (int s = 0; s < kScenarioCount; ++s)
                os << (i == 0 && s == 0 ? "" : " ") << percent(row.probabilities[s]);
        }
        os << "]\n";

        const std::size_t winner = outcome(row.best, Criterion::ExpectedUtility).winner;
        const double best_eu = row.expected_utilities[static_cast<Eigen::Index>(winner)];
        os << ' ' << option(winner) << " is probably the best decision. Expected utility: " << fixed3(best_eu)
           << '\n';
        for (std::size_t i = 0; i < sweep.plan_ids.size(); ++i) {
            if (i == winner)
                continue;
            const double eu = row.expected_utilities[static_cast<Eigen::Index>(i)];
            os << " Expected utility of " << option(i) << ": " << fixed3(eu) << " Difference: " << fixed3(best_eu - eu)
               << '\n';
        }
        os << '\n';

        const std::pair<Criterion, const char*> lines[] = {
            {Criterion::Maximin, "Maximin criterion utility"},
            {Criterion::Maximax, "Maximax criterion utility"},
            {Criterion::MinimaxRegret, "Minimax regret criterion regret"},
            {Criterion::MostLikelihood, "Most likelihood criterion utility"},
            {Criterion::Hurwicz, "Hurwicz criterion utility"},
        };
        bool first = true;
        for (const auto& [criterion, label] : lines) {
            const auto& o = outcome(row.best, criterion);
            os << (first ? "" : " ") << label << ": " << fixed3(o.score) << " (" << option(o.winner) << ")\n";
            first = false;
        }
    }
    return os.str();
}

} // namespace strategizer
