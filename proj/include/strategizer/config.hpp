#pragma once

#include <cstdint>
#include <optional>

namespace strategizer {

// Global analysis constants. Defaults reproduce the worked two-plan example
// (utilization and target scale 1..5, $0..$35 cost scale).
struct AnalysisConfig {
    double lower = 1.0;               // L
    double upper = 5.0;               // H
    double w_q = 2.0;                 // maximum quality scaling factor
    double w_c = 2.0;                 // cost scaling factor
    double c_ref = 1.2;               // reference cost used to anchor cost fits
    double k_q_nominal = 2.078;       // nominal quality convergence constant
    double max_possible_cost = 35.0;  // currency/month
    std::optional<double> max_possible_lifespan;  // years; required for infrastructure runs
    std::int64_t households = 5400;
    double hurwicz_alpha = 0.5;
    double sweep_increment = 0.02;
    double fit_tolerance = 1e-9;
    std::uint64_t seed = 0;
    int pilot_n = 12;

    double k_cap_factor = 1e6;        // |K| above k_cap_factor*(H-L) is the linear limit
    int resample_limit = 1000;        // truncated-normal rejection budget per variable per draw
    int histogram_bins = 50;
    double infra_tie_tolerance = 1e-6;  // relative to H-L
    double risk_weight = 2.0;           // constant weight on the risk-mitigation utility

    // Sample-size planning.
    double confidence = 0.95;
    double cost_spread_range = 30.0;    // s_cost = cost_spread_range / 6
    double cost_interval_width = 1.0;
    double utilization_interval_width = 0.25;

    // Throws DomainError naming the first violated field.
    void validate() const;
};

} // namespace strategizer
