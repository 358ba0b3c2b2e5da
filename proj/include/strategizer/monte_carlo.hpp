#pragma once

#include "strategizer/config.hpp"
#include "strategizer/plan_model.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace strategizer {

struct HistogramBin {
    double lower = 0.0;  // lower edge, utils
    std::size_t count = 0;
};

struct MonteCarloResult {
    std::size_t draw_count = 0;
    double mean_delta = 0.0;
    double stdev_delta = 0.0;        // sample (n - 1) standard deviation
    double share_below_zero = 0.0;
    double bin_width = 0.0;          // 0 when every draw landed on one value
    std::vector<HistogramBin> histogram;
    std::uint64_t seed = 0;

    // Range of every indifference probability sampled during the run.
    double min_sampled_pi = std::numeric_limits<double>::infinity();
    double max_sampled_pi = -std::numeric_limits<double>::infinity();
};

struct MonteCarloOptions {
    std::size_t draws = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

// Seed of the generator for one draw; depends only on (seed, draw index), so the
// run is reproducible whatever the worker count.
std::uint64_t draw_substream_seed(std::uint64_t seed, std::uint64_t draw_index) noexcept;

// Random source and truncated samplers for a single draw.
class DrawSampler {
public:
    DrawSampler(std::uint64_t seed, std::uint64_t draw_index, const AnalysisConfig& config);

    // Normal(mean, sd) truncated to [lo, hi] (or (lo, hi) when `open`) by
    // rejection; SamplingExhausted after config.resample_limit tries. sd == 0
    // returns the mean when it is admissible.
    double truncated_normal(double mean, double sd, double lo, double hi, bool open);

    // Indifference probability on the open interval (lower bound, 1).
    IndifferenceProbability indifference(double mean, double sd);

    // Quality weight from a utilization draw truncated to [L, H].
    QualityWeight weight(double mean_utilization, double sd_utilization);

    // Both random inputs of an attribute, in the order (p_i, weight).
    AttributeInputs attribute(const AttributeMeasurement& m);

    double min_sampled_pi() const noexcept { return min_pi_; }
    double max_sampled_pi() const noexcept { return max_pi_; }

private:
    double standard_normal();

    const AnalysisConfig* config_;
    std::mt19937_64 engine_;
    double min_pi_ = std::numeric_limits<double>::infinity();
    double max_pi_ = -std::numeric_limits<double>::infinity();
};

// Runs `delta` once per draw across `options.workers` threads and summarizes.
MonteCarloResult run_monte_carlo(const MonteCarloOptions& options, const AnalysisConfig& config,
                                 const std::function<double(DrawSampler&)>& delta);

// Mean, spread, share below zero and histogram of a finished run.
MonteCarloResult summarize_deltas(const std::vector<double>& deltas, std::uint64_t seed, int bins);

// delta = EU(plan_a) - EU(plan_b); each plan's attributes are sampled independently.
MonteCarloResult monte_carlo_compare(const PlanSpec& plan_a, const PlanSpec& plan_b,
                                     const MeasurementTable& measurements, const AnalysisConfig& config,
                                     std::size_t draws, std::uint64_t seed, unsigned workers = 1);

// monte_carlo_compare against the plan's status-quo twin.
MonteCarloResult monte_carlo_go_no_go(const PlanSpec& plan, const MeasurementTable& measurements,
                                      const AnalysisConfig& config, std::size_t draws, std::uint64_t seed,
                                      unsigned workers = 1);

} // namespace strategizer
