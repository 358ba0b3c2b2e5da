#pragma once

#include "strategizer/config.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace strategizer {

struct ResponseRecord {
    std::string respondent_id;
    std::string plan_id;
    std::string attribute_id;
    double max_cost = 0.0;     // currency/month
    double utilization = 0.0;  // on [L, H]
    std::optional<double> lifespan;  // years, infrastructure surveys only
    std::size_t row = 0;       // 1-based data row in the source file, 0 if synthetic

    bool operator==(const ResponseRecord& other) const {
        return respondent_id == other.respondent_id && plan_id == other.plan_id &&
               attribute_id == other.attribute_id && max_cost == other.max_cost &&
               utilization == other.utilization && lifespan == other.lifespan;
    }
};

struct AttributeMeasurement {
    double mean_max_cost = 0.0;
    double stdev_max_cost = 0.0;
    double mean_utilization = 0.0;
    double stdev_utilization = 0.0;
    std::size_t count = 0;
    std::optional<double> mean_lifespan;
    std::optional<double> stdev_lifespan;
};

// Mean and sample (n - 1) standard deviation; the standard deviation of a single
// value is reported as 0. Values are summed in sorted order so the result does
// not depend on input order.
std::pair<double, double> mean_and_sample_stdev(std::vector<double> values);

// Summary of the matching records. EmptyDataset when nothing matches,
// ValidationError when a matching record is out of range.
AttributeMeasurement summarize(std::span<const ResponseRecord> records, const std::string& plan_id,
                               const std::string& attribute_id, const AnalysisConfig& config);

// Per (plan_id, attribute_id) summaries of every group present in the records.
std::map<std::pair<std::string, std::string>, AttributeMeasurement>
summarize_all(std::span<const ResponseRecord> records, const AnalysisConfig& config);

// Two-sided Student-t quantile, e.g. student_t_quantile(0.95, 11) ~ 2.201.
double student_t_quantile(double confidence, int degrees_of_freedom);

// Minimum sample size N = ceil(4 (t_{pilot_n - 1} s / w)^2).
long required_sample_size(double s, double w, double confidence, int pilot_n);

struct ValidationIssue {
    enum class Kind { RangeViolation, DuplicateKey, Undersampled };
    Kind kind;
    std::size_t row = 0;  // 0 for group-level issues
    std::string message;
};

std::string_view to_string(ValidationIssue::Kind kind) noexcept;

struct GroupCount {
    std::string plan_id;
    std::string attribute_id;
    std::size_t count = 0;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;    // range violations and duplicate keys
    std::vector<ValidationIssue> warnings;  // undersampled groups
    std::vector<GroupCount> counts;
    long required_cost_samples = 0;
    long required_utilization_samples = 0;

    bool ok() const noexcept { return issues.empty(); }
};

ValidationReport validate_responses(std::span<const ResponseRecord> records, const AnalysisConfig& config);

} // namespace strategizer
