#pragma once

#include <optional>
#include <string>

#include "stochord/common.hpp"
#include "stochord/step_quantile.hpp"

namespace stochord {

enum class OrderRelation { st, icx, cx, icv, disp };

std::string to_string(OrderRelation rel);
OrderRelation order_relation_from_string(const std::string& s);

/// Outcome of a dominance check. margin is the minimal slack over the
/// constraint set when the relation holds and the (negative) worst violation
/// when it does not. A witness is present exactly when holds is false; disp
/// witnesses carry a pair 0 < u < v < 1, the others a single point.
struct OrderVerdict {
  bool holds = false;
  double margin = 0.0;
  std::optional<double> witness_u;
  std::optional<double> witness_v;
};

/// Decides a <= b in the given order, exactly on the merged breakpoint /
/// knot grid (dominance up to +tol everywhere).
OrderVerdict check_order(OrderRelation rel, const StepQuantile& a,
                         const StepQuantile& b, double tol = kDefaultTol);

}  // namespace stochord
