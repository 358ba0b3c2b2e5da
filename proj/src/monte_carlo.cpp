#include "strategizer/monte_carlo.hpp"

#include "strategizer/errors.hpp"

#include <boost/random/normal_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace strategizer {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

} // namespace

std::uint64_t draw_substream_seed(std::uint64_t seed, std::uint64_t draw_index) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(draw_index + 0x632BE59BD9B4E019ULL));
}

DrawSampler::DrawSampler(std::uint64_t seed, std::uint64_t draw_index, const AnalysisConfig& config)
    : config_(&config), engine_(draw_substream_seed(seed, draw_index)) {}

double DrawSampler::standard_normal() {
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    return normal(engine_);
}

double DrawSampler::truncated_normal(double mean, double sd, double lo, double hi, bool open) {
    const auto admissible = [&](double x) { return open ? (x > lo && x < hi) : (x >= lo && x <= hi); };
    if (!(sd >= 0.0) || !std::isfinite(mean))
        throw DomainError("truncated normal needs a finite mean and sd >= 0");
    if (sd == 0.0) {
        if (admissible(mean))
            return mean;
        throw SamplingExhausted("zero-variance value " + fmt(mean) + " lies outside the admissible interval [" +
                                fmt(lo) + ", " + fmt(hi) + "]");
    }
    for (int attempt = 0; attempt < config_->resample_limit; ++attempt) {
        const double x = mean + sd * standard_normal();
        if (admissible(x))
            return x;
    }
    throw SamplingExhausted("no admissible sample in " + std::to_string(config_->resample_limit) +
                            " tries for normal(" + fmt(mean) + ", " + fmt(sd) + ") truncated to [" + fmt(lo) + ", " +
                            fmt(hi) + "]");
}

IndifferenceProbability DrawSampler::indifference(double mean, double sd) {
    const double bound = indifference_lower_bound(config_->c_ref, config_->lower, config_->upper);
    const double p = truncated_normal(mean, sd, bound, 1.0, true);
    if (!(p > bound && p < 1.0))
        throw ConstraintViolation("sampled indifference probability " + fmt(p) + " violates the lower bound");
    min_pi_ = std::min(min_pi_, p);
    max_pi_ = std::max(max_pi_, p);
    return IndifferenceProbability(p);
}

QualityWeight DrawSampler::weight(double mean_utilization, double sd_utilization) {
    const double q = truncated_normal(mean_utilization, sd_utilization, config_->lower, config_->upper, false);
    return quality_weight(q, config_->lower, config_->upper, config_->w_q);
}

AttributeInputs DrawSampler::attribute(const AttributeMeasurement& m) {
    // The straight-line cost proxy is affine, so its mean and sd map directly.
    const double mean_pi = 1.0 - m.mean_max_cost / config_->max_possible_cost;
    const double sd_pi = m.stdev_max_cost / config_->max_possible_cost;
    const IndifferenceProbability p = indifference(mean_pi, sd_pi);
    const QualityWeight w = weight(m.mean_utilization, m.stdev_utilization);
    return {p, w};
}

MonteCarloResult summarize_deltas(const std::vector<double>& deltas, std::uint64_t seed, int bins) {
    if (deltas.empty())
        throw DomainError("at least one draw is required");
    if (bins < 1)
        throw DomainError("histogram needs at least one bin");
    MonteCarloResult r;
    r.seed = seed;
    r.draw_count = deltas.size();
    const double n = static_cast<double>(deltas.size());

    double sum = 0.0;
    std::size_t below = 0;
    for (double d : deltas) {
        sum += d;
        if (d < 0.0)
            ++below;
    }
    r.mean_delta = sum / n;
    r.share_below_zero = static_cast<double>(below) / n;
    if (deltas.size() > 1) {
        double ss = 0.0;
        for (double d : deltas)
            ss += (d - r.mean_delta) * (d - r.mean_delta);
        r.stdev_delta = std::sqrt(ss / (n - 1.0));
    }

    const auto [lo_it, hi_it] = std::minmax_element(deltas.begin(), deltas.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo)) {
        r.mean_delta = lo;
        r.stdev_delta = 0.0;
        r.histogram.push_back({lo, deltas.size()});
        return r;
    }
    r.bin_width = (hi - lo) / bins;
    r.histogram.resize(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b)
        r.histogram[static_cast<std::size_t>(b)].lower = lo + b * r.bin_width;
    for (double d : deltas) {
        auto b = static_cast<std::size_t>((d - lo) / r.bin_width);
        b = std::min(b, static_cast<std::size_t>(bins - 1));
        ++r.histogram[b].count;
    }
    return r;
}

MonteCarloResult run_monte_carlo(const MonteCarloOptions& options, const AnalysisConfig& config,
                                 const std::function<double(DrawSampler&)>& delta) {
    if (options.draws < 1)
        throw DomainError("draws must be >= 1");
    const std::size_t draws = options.draws;
    const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(draws)));

    struct Chunk {
        std::size_t begin = 0, end = 0;
        double min_pi = std::numeric_limits<double>::infinity();
        double max_pi = -std::numeric_limits<double>::infinity();
        std::size_t failed_at = std::numeric_limits<std::size_t>::max();
        std::exception_ptr error;
    };
    std::vector<double> deltas(draws);
    std::vector<Chunk> chunks(workers);
    for (unsigned w = 0; w < workers; ++w) {
        chunks[w].begin = draws * w / workers;
        chunks[w].end = draws * (w + 1) / workers;
    }

    const auto work = [&](Chunk& c) {
        for (std::size_t i = c.begin; i < c.end; ++i) {
            try {
                DrawSampler sampler(options.seed, i, config);
                deltas[i] = delta(sampler);
                c.min_pi = std::min(c.min_pi, sampler.min_sampled_pi());
                c.max_pi = std::max(c.max_pi, sampler.max_sampled_pi());
            } catch (...) {
                c.failed_at = i;
                c.error = std::current_exception();
                return;
            }
        }
    };

    if (workers == 1) {
        work(chunks[0]);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (auto& c : chunks)
            threads.emplace_back([&work, &c] { work(c); });
    }

    // Report the failure of the earliest draw so errors do not depend on scheduling.
    const Chunk* failed = nullptr;
    for (const auto& c : chunks)
        if (c.error && (!failed || c.failed_at < failed->failed_at))
            failed = &c;
    if (failed)
        std::rethrow_exception(failed->error);

    MonteCarloResult r = summarize_deltas(deltas, options.seed, config.histogram_bins);
    for (const auto& c : chunks) {
        r.min_sampled_pi = std::min(r.min_sampled_pi, c.min_pi);
        r.max_sampled_pi = std::max(r.max_sampled_pi, c.max_pi);
    }
    return r;
}

namespace {

MonteCarloResult compare_sampled(const PlanSpec& plan_a, const std::vector<AttributeMeasurement>& meas_a,
                                 const PlanSpec& plan_b, const std::vector<AttributeMeasurement>& meas_b,
                                 const AnalysisConfig& config, std::size_t draws, std::uint64_t seed,
                                 unsigned workers) {
    config.validate();
    const auto sample_eu = [&config](DrawSampler& sampler, const PlanSpec& plan,
                                     const std::vector<AttributeMeasurement>& meas) {
        std::vector<AttributeInputs> inputs;
        inputs.reserve(meas.size());
        for (const auto& m : meas)
            inputs.push_back(sampler.attribute(m));
        return expected_plan_utility(plan, inputs, config).expected_utility;
    };
    MonteCarloOptions options{draws, seed, workers};
    return run_monte_carlo(options, config, [&](DrawSampler& sampler) {
        const double a = sample_eu(sampler, plan_a, meas_a);
        const double b = sample_eu(sampler, plan_b, meas_b);
        return a - b;
    });
}

} // namespace

MonteCarloResult monte_carlo_compare(const PlanSpec& plan_a, const PlanSpec& plan_b,
                                     const MeasurementTable& measurements, const AnalysisConfig& config,
                                     std::size_t draws, std::uint64_t seed, unsigned workers) {
    return compare_sampled(plan_a, measurements.for_plan(plan_a), plan_b, measurements.for_plan(plan_b), config,
                           draws, seed, workers);
}

MonteCarloResult monte_carlo_go_no_go(const PlanSpec& plan, const MeasurementTable& measurements,
                                      const AnalysisConfig& config, std::size_t draws, std::uint64_t seed,
                                      unsigned workers) {
    if (plan.is_status_quo)
        throw ValidationError("go/no-go needs a non-status-quo plan, got '" + plan.plan_id + "'");
    const auto meas = measurements.for_plan(plan);
    const PlanSpec twin = make_status_quo_twin(plan, config);
    return compare_sampled(plan, meas, twin, meas, config, draws, seed, workers);
}

} // namespace strategizer
