#include "strategizer/utility_curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace strategizer {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

void require_domain(double lower, double upper) {
    if (!(std::isfinite(lower) && std::isfinite(upper) && lower < upper))
        throw DomainError("utility domain requires lower < upper, got [" + fmt(lower) + ", " + fmt(upper) + "]");
}

// Increasing member of curvature r at offset d from the lower end of a span D.
double unit_value(double d, double span, double curvature) noexcept {
    if (curvature == 0.0)
        return d / span;
    if (curvature > 0.0)
        return std::expm1(-curvature * d) / std::expm1(-curvature * span);
    // (e^{s d} - 1) / (e^{s D} - 1) rewritten so nothing overflows for large s.
    const double s = -curvature;
    return std::exp(-s * (span - d)) * (std::expm1(-s * d) / std::expm1(-s * span));
}

} // namespace

std::string_view to_string(Direction direction) noexcept {
    return direction == Direction::Increasing ? "Increasing" : "Decreasing";
}

double UtilityCurve::curvature() const noexcept {
    return linear ? 0.0 : 1.0 / k;
}

double increasing_unit_value(double lower, double upper, double curvature, double x) noexcept {
    return unit_value(x - lower, upper - lower, curvature);
}

UtilityCurve make_linear_curve(double lower, double upper, Direction direction) {
    require_domain(lower, upper);
    UtilityCurve c;
    c.lower = lower;
    c.upper = upper;
    c.k = std::numeric_limits<double>::infinity();
    c.a = std::numeric_limits<double>::quiet_NaN();
    c.b = std::numeric_limits<double>::quiet_NaN();
    c.direction = direction;
    c.linear = true;
    return c;
}

UtilityCurve make_curve(double lower, double upper, double k, Direction direction) {
    require_domain(lower, upper);
    if (!std::isfinite(k))
        return make_linear_curve(lower, upper, direction);
    if (k == 0.0)
        throw DomainError("convergence constant must be non-zero");

    UtilityCurve c;
    c.lower = lower;
    c.upper = upper;
    c.k = k;
    c.direction = direction;
    // Increasing coefficients: a = 1/(1 - e^{-(H-L)/k}), b = e^{L/k} a.
    const double denom = -std::expm1(-(upper - lower) / k);
    const double a_inc = 1.0 / denom;
    const double b_inc = std::exp(lower / k) / denom;
    if (direction == Direction::Increasing) {
        c.a = a_inc;
        c.b = b_inc;
    } else {
        c.a = 1.0 - a_inc;
        c.b = -b_inc;
    }
    return c;
}

double evaluate_unit_utility(const UtilityCurve& curve, double x) {
    if (!(x >= curve.lower && x <= curve.upper))
        throw DomainError("x = " + fmt(x) + " outside utility domain [" + fmt(curve.lower) + ", " +
                          fmt(curve.upper) + "]");
    const double span = curve.upper - curve.lower;
    // 1 - f_r(x - L) = f_{-r}(H - x), without the cancellation near 0.
    const double v = curve.direction == Direction::Increasing
                         ? unit_value(x - curve.lower, span, curve.curvature())
                         : unit_value(curve.upper - x, span, -curve.curvature());
    return std::clamp(v, 0.0, 1.0);
}

UtilityCurve solve_convergence_constant(double lower, double upper, double c_ref, double p_i,
                                        Direction direction, const FitOptions& options) {
    require_domain(lower, upper);
    if (!(c_ref > lower && c_ref < upper))
        throw DomainError("c_ref = " + fmt(c_ref) + " must lie strictly inside (" + fmt(lower) + ", " +
                          fmt(upper) + ")");
    if (!(options.tolerance > 0.0))
        throw DomainError("fit tolerance must be positive");
    if (!(p_i > 0.0 && p_i < 1.0))
        throw ConstraintViolation("indifference probability " + fmt(p_i) + " must lie strictly inside (0, 1)");
    if (direction == Direction::Decreasing) {
        const double bound = indifference_lower_bound(c_ref, lower, upper);
        if (p_i < bound)
            throw ConstraintViolation("indifference probability " + fmt(p_i) + " is below the lower bound " +
                                      fmt(bound) + " for c_ref = " + fmt(c_ref));
    }

    const double tol = options.tolerance;
    const double span = upper - lower;
    // Work on the increasing member: its value at c_ref must equal `target`.
    const double target = direction == Direction::Increasing ? p_i : 1.0 - p_i;
    auto residual = [&](double r) { return increasing_unit_value(lower, upper, r, c_ref) - target; };

    if (std::abs(residual(0.0)) <= tol)
        return make_linear_curve(lower, upper, direction);

    // residual is strictly increasing in r; bracket the root on the right side of 0.
    const double r_max = options.max_curvature_factor / span;
    const double sign = residual(0.0) < 0.0 ? 1.0 : -1.0;
    double inner = 0.0;
    double outer = sign / span;
    while (sign * residual(outer) < 0.0) {
        inner = outer;
        outer *= 2.0;
        if (std::abs(outer) > r_max) {
            outer = sign * r_max;
            if (sign * residual(outer) < 0.0)
                throw ConvergenceFailure("no convergence constant reaches p_i = " + fmt(p_i) + " at c_ref = " +
                                         fmt(c_ref) + " within |1/K| <= " + fmt(r_max));
            break;
        }
    }

    double lo = std::min(inner, outer);
    double hi = std::max(inner, outer);
    double r = 0.5 * (lo + hi);
    const double target_residual = tol * 0.01;
    for (int iter = 0; iter < 400; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (!(lo < mid && mid < hi))
            break;  // bracket exhausted at double precision
        r = mid;
        const double g = residual(r);
        if (std::abs(g) <= target_residual)
            break;
        if (g < 0.0)
            lo = r;
        else
            hi = r;
    }

    const double k = 1.0 / r;
    UtilityCurve fitted = make_curve(lower, upper, k, direction);
    const double achieved = std::abs(evaluate_unit_utility(fitted, c_ref) - p_i);
    if (std::abs(k) > options.k_cap_factor * span) {
        if (std::abs(residual(0.0)) <= tol)
            return make_linear_curve(lower, upper, direction);
    }
    if (achieved > tol)
        throw ConvergenceFailure("anchor residual " + fmt(achieved) + " exceeds tolerance " + fmt(tol));
    return fitted;
}

IndifferenceProbability::IndifferenceProbability(double v) : value(v) {
    if (!(v >= 0.0 && v <= 1.0))
        throw DomainError("indifference probability " + fmt(v) + " outside [0, 1]");
}

QualityWeight::QualityWeight(double v) : value(v) {
    if (!(v >= 1.0 && std::isfinite(v)))
        throw DomainError("quality weight " + fmt(v) + " must be >= 1");
}

QualityWeight quality_weight(double q_bar, double lower, double upper, double w_q) {
    require_domain(lower, upper);
    if (!(w_q >= 1.0))
        throw DomainError("w_q = " + fmt(w_q) + " must be >= 1");
    if (!(q_bar >= lower && q_bar <= upper))
        throw DomainError("mean utilization " + fmt(q_bar) + " outside [" + fmt(lower) + ", " + fmt(upper) + "]");
    return QualityWeight(((w_q - 1.0) * (q_bar - lower) + upper - lower) / (upper - lower));
}

IndifferenceProbability max_cost_to_indifference(double max_cost, double max_possible_cost) {
    if (!(max_possible_cost > 0.0))
        throw DomainError("maximum possible cost must be positive");
    if (!(max_cost >= 0.0 && max_cost <= max_possible_cost))
        throw DomainError("maximum cost " + fmt(max_cost) + " outside [0, " + fmt(max_possible_cost) + "]");
    return IndifferenceProbability(1.0 - max_cost / max_possible_cost);
}

double indifference_to_max_cost(IndifferenceProbability p_i, double max_possible_cost) {
    if (!(max_possible_cost > 0.0))
        throw DomainError("maximum possible cost must be positive");
    return (1.0 - p_i.value) * max_possible_cost;
}

double indifference_lower_bound(double c_ref, double lower, double upper) {
    require_domain(lower, upper);
    if (!(c_ref >= lower && c_ref <= upper))
        throw DomainError("c_ref = " + fmt(c_ref) + " outside [" + fmt(lower) + ", " + fmt(upper) + "]");
    return (c_ref - lower) / (upper - lower);
}

double attribute_total_utility(double cost_target, double quality_target, double w_c, QualityWeight w,
                               const UtilityCurve& cost_curve, const UtilityCurve& quality_curve) {
    if (!(w_c >= 1.0))
        throw DomainError("w_c = " + fmt(w_c) + " must be >= 1");
    return w_c * evaluate_unit_utility(cost_curve, cost_target) +
           w.value * evaluate_unit_utility(quality_curve, quality_target);
}

} // namespace strategizer
