#pragma once

#include "strategizer/errors.hpp"

#include <string_view>

namespace strategizer {

enum class Direction { Increasing, Decreasing };

std::string_view to_string(Direction direction) noexcept;

// Unit exponential utility U(x) = a - b * exp(-x / k) on [lower, upper].
//
// Increasing curves run 0 -> 1, decreasing ones 1 -> 0 (the 1 - U transform of
// the increasing member with the same k). k is signed: k > 0 is concave for an
// increasing curve, k < 0 convex. When `linear` is set the curve is the affine
// limit |k| -> inf, k is +inf and a, b are not meaningful.
struct UtilityCurve {
    double lower = 0.0;
    double upper = 1.0;
    double k = 0.0;
    double a = 0.0;
    double b = 0.0;
    Direction direction = Direction::Increasing;
    bool linear = false;

    // 1/k; zero for the linear limit. Strictly monotone along a fitted family.
    double curvature() const noexcept;
    double width() const noexcept { return upper - lower; }
};

struct FitOptions {
    double tolerance = 1e-9;
    double k_cap_factor = 1e6;          // |k| > k_cap_factor * (upper - lower) -> linear
    double max_curvature_factor = 1e4;  // search |1/k| <= max_curvature_factor / (upper - lower)
};

// Builds the curve with a given convergence constant (e.g. the nominal quality K).
// A non-finite k yields the linear limit.
UtilityCurve make_curve(double lower, double upper, double k, Direction direction);

UtilityCurve make_linear_curve(double lower, double upper, Direction direction);

// Three-point fit through the endpoints and (c_ref, p_i). Sign-aware bracketing
// on the curvature 1/k followed by bisection on the anchor residual.
UtilityCurve solve_convergence_constant(double lower, double upper, double c_ref, double p_i,
                                        Direction direction, const FitOptions& options = {});

inline UtilityCurve solve_convergence_constant(double lower, double upper, double c_ref, double p_i,
                                               Direction direction, double tol) {
    FitOptions options;
    options.tolerance = tol;
    return solve_convergence_constant(lower, upper, c_ref, p_i, direction, options);
}

// Exact 0/1 at the endpoints; DomainError outside [lower, upper].
double evaluate_unit_utility(const UtilityCurve& curve, double x);

// Value of the increasing family member with curvature r = 1/k at x, without
// constructing a curve. Stable for either sign of r.
double increasing_unit_value(double lower, double upper, double curvature, double x) noexcept;

struct IndifferenceProbability {
    double value = 0.0;

    IndifferenceProbability() = default;
    explicit IndifferenceProbability(double v);
};

struct QualityWeight {
    double value = 1.0;

    QualityWeight() = default;
    explicit QualityWeight(double v);
};

// Affine map of mean utilization: lower -> 1, upper -> w_q.
QualityWeight quality_weight(double q_bar, double lower, double upper, double w_q);

// Straight-line proxy: 1 - max_cost / max_possible_cost.
IndifferenceProbability max_cost_to_indifference(double max_cost, double max_possible_cost);
double indifference_to_max_cost(IndifferenceProbability p_i, double max_possible_cost);

// Lower bound on a usable indifference probability: (c_ref - L) / (H - L).
double indifference_lower_bound(double c_ref, double lower, double upper);

// w_c * U_cost(cost_target) + w * U_quality(quality_target).
double attribute_total_utility(double cost_target, double quality_target, double w_c, QualityWeight w,
                               const UtilityCurve& cost_curve, const UtilityCurve& quality_curve);

} // namespace strategizer
