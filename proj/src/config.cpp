#include "strategizer/config.hpp"

#include "strategizer/errors.hpp"

#include <cmath>
#include <string>

namespace strategizer {

namespace {

void require(bool ok, const char* field, const char* rule) {
    if (!ok)
        throw DomainError(std::string("config.") + field + " " + rule);
}

} // namespace

void AnalysisConfig::validate() const {
    require(std::isfinite(lower) && std::isfinite(upper) && lower < upper, "lower/upper", "requires lower < upper");
    require(w_c >= 1.0, "w_c", "must be >= 1");
    require(w_q >= 1.0, "w_q", "must be >= 1");
    require(c_ref >= lower && c_ref < upper, "c_ref", "must satisfy lower <= c_ref < upper");
    require(std::isfinite(k_q_nominal) && k_q_nominal != 0.0, "k_q_nominal", "must be finite and non-zero");
    require(max_possible_cost > 0.0, "max_possible_cost", "must be positive");
    require(!max_possible_lifespan || *max_possible_lifespan > 0.0, "max_possible_lifespan", "must be positive");
    require(households >= 1, "households", "must be >= 1");
    require(hurwicz_alpha >= 0.0 && hurwicz_alpha <= 1.0, "hurwicz_alpha", "must lie in [0, 1]");
    require(sweep_increment > 0.0 && sweep_increment <= 0.5, "sweep_increment", "must lie in (0, 0.5]");
    require(fit_tolerance > 0.0, "fit_tolerance", "must be positive");
    require(pilot_n >= 2, "pilot_n", "must be >= 2");
    require(k_cap_factor > 0.0, "k_cap_factor", "must be positive");
    require(resample_limit >= 1, "resample_limit", "must be >= 1");
    require(histogram_bins >= 1, "histogram_bins", "must be >= 1");
    require(infra_tie_tolerance > 0.0, "infra_tie_tolerance", "must be positive");
    require(risk_weight >= 1.0, "risk_weight", "must be >= 1");
    require(confidence > 0.0 && confidence < 1.0, "confidence", "must lie in (0, 1)");
    require(cost_spread_range >= 0.0, "cost_spread_range", "must be >= 0");
    require(cost_interval_width > 0.0, "cost_interval_width", "must be positive");
    require(utilization_interval_width > 0.0, "utilization_interval_width", "must be positive");
}

} // namespace strategizer
