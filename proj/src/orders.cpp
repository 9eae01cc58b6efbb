#include "stochord/orders.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "stochord/piecewise_linear.hpp"

namespace stochord {

std::string to_string(OrderRelation rel) {
  switch (rel) {
    case OrderRelation::st: return "st";
    case OrderRelation::icx: return "icx";
    case OrderRelation::cx: return "cx";
    case OrderRelation::icv: return "icv";
    case OrderRelation::disp: return "disp";
  }
  throw std::invalid_argument("unknown relation tag");
}

OrderRelation order_relation_from_string(const std::string& s) {
  if (s == "st") return OrderRelation::st;
  if (s == "icx") return OrderRelation::icx;
  if (s == "cx") return OrderRelation::cx;
  if (s == "icv") return OrderRelation::icv;
  if (s == "disp") return OrderRelation::disp;
  throw std::invalid_argument("unknown relation tag: " + s);
}

namespace {

std::vector<double> merged_sorted_unique(const std::vector<double>& a,
                                         const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Step functions are constant on the merged intervals, so comparing the
// values at each merged breakpoint discharges the (0,1) quantifier exactly.
OrderVerdict check_st(const StepQuantile& a, const StepQuantile& b,
                      double tol) {
  const auto grid = merged_sorted_unique(a.breakpoints(), b.breakpoints());
  OrderVerdict verdict;
  verdict.margin = std::numeric_limits<double>::infinity();
  double worst_lo = 0.0, worst_hi = 1.0;
  double prev = 0.0;
  for (double w : grid) {
    const double slack = b.value(w) - a.value(w);
    if (slack < verdict.margin) {
      verdict.margin = slack;
      worst_lo = prev;
      worst_hi = w;
    }
    prev = w;
  }
  verdict.holds = verdict.margin >= -tol;
  if (!verdict.holds) verdict.witness_u = 0.5 * (worst_lo + worst_hi);
  return verdict;
}

// Piecewise-linear difference attains its extrema at merged knots; the tie
// at u = 1 is structural (both integrals vanish) and excluded from margins.
OrderVerdict check_linear_dominance(const PiecewiseLinearFn& fa,
                                    const PiecewiseLinearFn& fb, double tol) {
  const auto grid = merged_sorted_unique(fa.knots(), fb.knots());
  OrderVerdict verdict;
  verdict.margin = std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (double w : grid) {
    if (w == 1.0) continue;
    const double slack = fb.value(w) - fa.value(w);
    if (slack < verdict.margin) {
      verdict.margin = slack;
      worst = w;
    }
  }
  verdict.holds = verdict.margin >= -tol;
  if (!verdict.holds) verdict.witness_u = worst;
  return verdict;
}

// Windows of consecutive merged interior breakpoints carry the jump-mass
// comparison; O(m^2) over prefix sums.
OrderVerdict check_disp(const StepQuantile& a, const StepQuantile& b,
                        double tol) {
  std::vector<double> interior;
  for (double w : a.breakpoints())
    if (w != 1.0) interior.push_back(w);
  for (double w : b.breakpoints())
    if (w != 1.0) interior.push_back(w);
  std::sort(interior.begin(), interior.end());
  interior.erase(std::unique(interior.begin(), interior.end()),
                 interior.end());

  OrderVerdict verdict;
  const std::size_t m = interior.size();
  if (m == 0) {
    verdict.holds = true;
    verdict.margin = 0.0;
    return verdict;
  }
  std::vector<double> prefix(m + 1, 0.0);
  for (std::size_t k = 0; k < m; ++k)
    prefix[k + 1] =
        prefix[k] + (b.jump_at(interior[k]) - a.jump_at(interior[k]));

  verdict.margin = std::numeric_limits<double>::infinity();
  std::size_t worst_p = 0, worst_r = 0;
  for (std::size_t p = 1; p <= m; ++p) {
    for (std::size_t r = p; r <= m; ++r) {
      const double window = prefix[r] - prefix[p - 1];
      if (window < verdict.margin) {
        verdict.margin = window;
        worst_p = p;
        worst_r = r;
      }
    }
  }
  verdict.holds = verdict.margin >= -tol;
  if (!verdict.holds) {
    // Map the offending window into an open pair 0 < u < v < 1 so that the
    // q+ characterization exhibits the same violation.
    const double below = worst_p >= 2 ? interior[worst_p - 2] : 0.0;
    const double above = worst_r < m ? interior[worst_r] : 1.0;
    verdict.witness_u = 0.5 * (below + interior[worst_p - 1]);
    verdict.witness_v = 0.5 * (interior[worst_r - 1] + above);
  }
  return verdict;
}

}  // namespace

OrderVerdict check_order(OrderRelation rel, const StepQuantile& a,
                         const StepQuantile& b, double tol) {
  switch (rel) {
    case OrderRelation::st:
      return check_st(a, b, tol);
    case OrderRelation::icx:
      return check_linear_dominance(integrated_quantile(a),
                                    integrated_quantile(b), tol);
    case OrderRelation::cx: {
      const double dm = a.mean() - b.mean();
      if (std::fabs(dm) > tol) {
        OrderVerdict verdict;
        verdict.holds = false;
        verdict.margin = -std::fabs(dm);
        verdict.witness_u = 0.0;
        return verdict;
      }
      return check_linear_dominance(integrated_quantile(a),
                                    integrated_quantile(b), tol);
    }
    case OrderRelation::icv:
      return check_linear_dominance(reflected_integrated(a),
                                    reflected_integrated(b), tol);
    case OrderRelation::disp:
      return check_disp(a, b, tol);
  }
  throw std::invalid_argument("unknown relation tag");
}

}  // namespace stochord
