#pragma once

#include "stochord/maxitive.hpp"
#include "stochord/random_laws.hpp"

namespace stochord {

struct CurveGenParams {
  int max_interior = 4;
  double value_lo = -3.0;
  double value_hi = 3.0;
  /// Round knots/values to dyadic grids (2^-12 / 2^-8) so that penalty
  /// evaluations on dyadic laws stay exact.
  bool dyadic = false;
};

/// Left-continuous step penalty curve with finite values.
PenaltyCurve random_step_curve(Rng& rng, const CurveGenParams& params = {});

/// Continuous piecewise-linear curve, arbitrary slopes.
PenaltyCurve random_pl_curve(Rng& rng, const CurveGenParams& params = {});

/// Concave piecewise-linear curve (non-increasing slopes); roughly a third
/// of the draws end at alpha(1) = 0, exercising the analytic u -> 1 branch.
PenaltyCurve random_concave_curve(Rng& rng, const CurveGenParams& params = {});

/// Monotone level-indexed family suited to the relation (concave curves
/// for icx, unconstrained for st/icv).
PenaltyFamily random_penalty_family(Rng& rng, OrderRelation relation,
                                    const CurveGenParams& params = {});

}  // namespace stochord
