#include "strategizer/survey_stats.hpp"

#include "strategizer/errors.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

namespace strategizer {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

// Empty string when the record is within range.
std::string range_problem(const ResponseRecord& r, const AnalysisConfig& config) {
    if (!(r.max_cost >= 0.0 && r.max_cost <= config.max_possible_cost))
        return "max_cost " + fmt(r.max_cost) + " outside [0, " + fmt(config.max_possible_cost) + "]";
    if (!(r.utilization >= config.lower && r.utilization <= config.upper))
        return "utilization " + fmt(r.utilization) + " outside [" + fmt(config.lower) + ", " + fmt(config.upper) + "]";
    if (r.lifespan) {
        if (!(*r.lifespan >= 0.0))
            return "lifespan " + fmt(*r.lifespan) + " is negative";
        if (config.max_possible_lifespan && *r.lifespan > *config.max_possible_lifespan)
            return "lifespan " + fmt(*r.lifespan) + " exceeds " + fmt(*config.max_possible_lifespan);
    }
    return {};
}

std::string row_label(const ResponseRecord& r) {
    return r.row ? "row " + std::to_string(r.row) : "record '" + r.respondent_id + "'";
}

} // namespace

std::pair<double, double> mean_and_sample_stdev(std::vector<double> values) {
    if (values.empty())
        throw EmptyDataset("no values to summarize");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values)
        sum += v;
    const double mean = sum / n;
    if (values.size() == 1)
        return {mean, 0.0};
    double ss = 0.0;
    for (double v : values)
        ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

AttributeMeasurement summarize(std::span<const ResponseRecord> records, const std::string& plan_id,
                               const std::string& attribute_id, const AnalysisConfig& config) {
    std::vector<double> cost, util, life;
    for (const auto& r : records) {
        if (r.plan_id != plan_id || r.attribute_id != attribute_id)
            continue;
        if (auto problem = range_problem(r, config); !problem.empty())
            throw ValidationError(row_label(r) + ": " + problem);
        cost.push_back(r.max_cost);
        util.push_back(r.utilization);
        if (r.lifespan)
            life.push_back(*r.lifespan);
    }
    if (cost.empty())
        throw EmptyDataset("no responses for plan '" + plan_id + "', attribute '" + attribute_id + "'");

    AttributeMeasurement m;
    m.count = cost.size();
    std::tie(m.mean_max_cost, m.stdev_max_cost) = mean_and_sample_stdev(std::move(cost));
    std::tie(m.mean_utilization, m.stdev_utilization) = mean_and_sample_stdev(std::move(util));
    if (!life.empty()) {
        if (life.size() != m.count)
            throw ValidationError("plan '" + plan_id + "', attribute '" + attribute_id +
                                  "': lifespan present on only some responses");
        auto [mean, sd] = mean_and_sample_stdev(std::move(life));
        m.mean_lifespan = mean;
        m.stdev_lifespan = sd;
    }
    return m;
}

std::map<std::pair<std::string, std::string>, AttributeMeasurement>
summarize_all(std::span<const ResponseRecord> records, const AnalysisConfig& config) {
    std::set<std::pair<std::string, std::string>> keys;
    for (const auto& r : records)
        keys.emplace(r.plan_id, r.attribute_id);
    std::map<std::pair<std::string, std::string>, AttributeMeasurement> out;
    for (const auto& key : keys)
        out.emplace(key, summarize(records, key.first, key.second, config));
    return out;
}

double student_t_quantile(double confidence, int degrees_of_freedom) {
    if (!(confidence > 0.0 && confidence < 1.0))
        throw DomainError("confidence must lie in (0, 1)");
    if (degrees_of_freedom < 1)
        throw DomainError("degrees of freedom must be >= 1");
    const boost::math::students_t dist(static_cast<double>(degrees_of_freedom));
    return boost::math::quantile(dist, 1.0 - (1.0 - confidence) / 2.0);
}

long required_sample_size(double s, double w, double confidence, int pilot_n) {
    if (!(s >= 0.0 && std::isfinite(s)))
        throw DomainError("standard deviation estimate must be >= 0");
    if (!(w > 0.0))
        throw DomainError("interval width must be positive");
    if (pilot_n < 2)
        throw DomainError("pilot sample size must be >= 2");
    const double t = student_t_quantile(confidence, pilot_n - 1);
    const double ratio = t * s / w;
    return static_cast<long>(std::ceil(4.0 * ratio * ratio));
}

std::string_view to_string(ValidationIssue::Kind kind) noexcept {
    switch (kind) {
    case ValidationIssue::Kind::RangeViolation: return "RangeViolation";
    case ValidationIssue::Kind::DuplicateKey: return "DuplicateKey";
    case ValidationIssue::Kind::Undersampled: return "Undersampled";
    }
    return "Unknown";
}

ValidationReport validate_responses(std::span<const ResponseRecord> records, const AnalysisConfig& config) {
    ValidationReport report;
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    std::map<std::pair<std::string, std::string>, std::size_t> counts;

    for (const auto& r : records) {
        if (auto problem = range_problem(r, config); !problem.empty())
            report.issues.push_back({ValidationIssue::Kind::RangeViolation, r.row, row_label(r) + ": " + problem});
        if (!seen.emplace(r.respondent_id, r.plan_id, r.attribute_id).second)
            report.issues.push_back({ValidationIssue::Kind::DuplicateKey, r.row,
                                     row_label(r) + ": duplicate response for respondent '" + r.respondent_id +
                                         "', plan '" + r.plan_id + "', attribute '" + r.attribute_id + "'"});
        ++counts[{r.plan_id, r.attribute_id}];
    }

    report.required_cost_samples = required_sample_size(config.cost_spread_range / 6.0, config.cost_interval_width,
                                                         config.confidence, config.pilot_n);
    report.required_utilization_samples =
        required_sample_size((config.upper - config.lower) / 6.0, config.utilization_interval_width,
                             config.confidence, config.pilot_n);

    for (const auto& [key, n] : counts) {
        report.counts.push_back({key.first, key.second, n});
        const auto check = [&](const char* quantity, long required) {
            if (static_cast<long>(n) < required)
                report.warnings.push_back(
                    {ValidationIssue::Kind::Undersampled, 0,
                     "plan '" + key.first + "', attribute '" + key.second + "': " + std::to_string(n) +
                         " responses, " + std::to_string(required) + " required for " + quantity});
        };
        check("max_cost", report.required_cost_samples);
        check("utilization", report.required_utilization_samples);
    }
    return report;
}

} // namespace strategizer
