#pragma once

#include <span>
#include <vector>

#include "stochord/common.hpp"
#include "stochord/orders.hpp"
#include "stochord/piecewise_linear.hpp"
#include "stochord/step_quantile.hpp"

namespace stochord {

/// Non-empty finite family of quantile functions together with the sorted
/// union of their interior breakpoints.
class QuantileFamily {
 public:
  explicit QuantileFamily(std::vector<StepQuantile> members);

  const std::vector<StepQuantile>& members() const { return members_; }
  /// Union of interior breakpoints (strictly inside (0,1)).
  const std::vector<double>& merged_grid() const { return merged_grid_; }
  std::size_t size() const { return members_.size(); }

  /// Largest single-member jump at an interior breakpoint (0 elsewhere).
  double max_jump_at(double u) const;

 private:
  std::vector<StepQuantile> members_;
  std::vector<double> merged_grid_;
};

/// Smallest concave majorant of the pointwise maximum of concave functions
/// that vanish at 1. Upper hull (monotone chain) of the merged knot points,
/// with endpoints (0, max of values at 0) and (1, 0).
PiecewiseLinearFn concave_envelope(std::span<const PiecewiseLinearFn> fns,
                                   double tol = kDefaultTol);

/// Supremum of the family in the given order's lattice.
///   st   - pointwise max of quantiles on the merged grid.
///   icx  - concave envelope of integrated quantiles, inverted.
///   cx   - icx with the equal-means precondition (throws otherwise).
///   icv  - pointwise max of reflected integrated quantiles, inverted.
///   disp - cumulative maximal jumps, anchored at q(0+) = 0.
StepQuantile sup_order(OrderRelation rel, const QuantileFamily& fam,
                       double tol = kDefaultTol);

/// Total variation of the family over [u,v): the sum of family-wise maximal
/// jumps at merged breakpoints w with u <= w < v. Requires 0 <= u < v <= 1.
double total_variation(const QuantileFamily& fam, double u, double v);

}  // namespace stochord
