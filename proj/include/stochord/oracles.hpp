#pragma once

#include <span>
#include <vector>

#include "stochord/common.hpp"
#include "stochord/lattice.hpp"
#include "stochord/orders.hpp"
#include "stochord/piecewise_linear.hpp"

namespace stochord {
// Deliberately slow reference implementations, structurally unlike the
// production code (uniform grids and partition enumeration instead of
// merged-breakpoint exactness). Used by tests and the verify suites only.
namespace oracles {

struct GridSpec {
  int points = 401;        // >= 3
  double epsilon = 1e-7;   // offset for one-sided limits
};

/// Upper concave envelope sampled at `points` uniform grid points on [0,1]:
/// at each u the supremum of chords lambda*g(a) + (1-lambda)*g(b) over grid
/// pairs a <= u <= b, where g is the pointwise max of the inputs.
std::vector<double> envelope_oracle(std::span<const PiecewiseLinearFn> fns,
                                    const GridSpec& grid = {});
/// The grid the sampled envelope lives on.
std::vector<double> envelope_grid(const GridSpec& grid = {});

struct TvOracleResult {
  double upper_sum = 0.0;  // max over partitions of S_pi
  double lower_sum = 0.0;  // max over partitions of S-underline_pi (q+ form)
};

/// Maximum of the partition sums over all partitions of [u,v] whose interior
/// points come from the merged breakpoints and the midpoints between them.
/// Precondition: at most max_points merged breakpoints inside [u,v].
TvOracleResult tv_partition_oracle(const QuantileFamily& fam, double u,
                                   double v, int max_points = 12);

/// Checks the defining inequalities of the relation on a dense grid
/// (uniform points plus breakpoints and breakpoints +- epsilon). For disp
/// the scan runs over candidate pairs derived from the merged breakpoints,
/// checking both the increment form and the q+ form.
bool grid_order_oracle(OrderRelation rel, const StepQuantile& a,
                       const StepQuantile& b, const GridSpec& grid = {},
                       double tol = kDefaultTol);

/// The two dispersive-order characterizations, each quantified exhaustively
/// over the candidate pattern space (midpoints and breakpoints).
bool disp_increment_form(const StepQuantile& a, const StepQuantile& b,
                         double tol = kDefaultTol);
bool disp_upper_quantile_form(const StepQuantile& a, const StepQuantile& b,
                              double tol = kDefaultTol);

}  // namespace oracles
}  // namespace stochord
