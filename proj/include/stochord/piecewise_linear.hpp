#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stochord/common.hpp"
#include "stochord/step_quantile.hpp"

namespace stochord {

/// Continuous piecewise-linear function on [0,1] with strictly increasing
/// knots, knots.front() == 0 and knots.back() == 1. The stored values at 0
/// and 1 are the one-sided limits of the function on (0,1).
class PiecewiseLinearFn {
 public:
  PiecewiseLinearFn(std::vector<double> knots, std::vector<double> values);

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t pieces() const { return knots_.size() - 1; }

  double value(double u) const;
  /// Slope of piece i, i.e. on (knots[i], knots[i+1]).
  double slope(std::size_t piece) const;

  bool is_concave(double tol = kDefaultTol) const;
  bool is_convex(double tol = kDefaultTol) const;

  friend bool operator==(const PiecewiseLinearFn&,
                         const PiecewiseLinearFn&) = default;

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
};

/// Q(u) = integral of q over (u, 1]; concave, Q(1) = 0, Q(0) = mean.
/// Knots are {0} plus the breakpoints of q; knot values are exact backward
/// accumulations of value * mass.
PiecewiseLinearFn integrated_quantile(const StepQuantile& q);

/// Reflected integrated quantile: -Q of the negated law; convex, 0 at 1,
/// mean at 0.
PiecewiseLinearFn reflected_integrated(const StepQuantile& q);

/// Inverse of integrated_quantile: q = -(left derivative of Q).
/// Requires Q concave within tol and Q(1) = 0 within tol.
StepQuantile quantile_from_integrated(const PiecewiseLinearFn& fn,
                                      double tol = kDefaultTol);

/// Inverse of reflected_integrated for convex V with V(1) = 0:
/// q+(t) = -(slope of V just left of 1-t), reassembled canonically.
StepQuantile quantile_from_reflected(const PiecewiseLinearFn& fn,
                                     double tol = kDefaultTol);

/// Exact pointwise maximum of piecewise-linear functions. Knots are the
/// merged input knots plus every pairwise crossing, so the result is the
/// true upper envelope (convex whenever all inputs are convex).
PiecewiseLinearFn pointwise_max(std::span<const PiecewiseLinearFn> fns);

}  // namespace stochord
