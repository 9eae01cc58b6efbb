#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stochord/common.hpp"
#include "stochord/lattice.hpp"
#include "stochord/orders.hpp"
#include "stochord/piecewise_linear.hpp"
#include "stochord/random_laws.hpp"
#include "stochord/step_quantile.hpp"

namespace stochord {

/// Penalty curve alpha on (0,1), codomain [-inf, +inf).
///
/// step_left: grid holds k interior cut points; values holds k+1 entries,
/// one per interval (0,g1], (g1,g2], ..., (gk,1); -inf entries allowed.
/// piecewise_linear: grid holds knots 0 = g0 < ... < gm = 1 with one finite
/// value per knot; the endpoint values declare the one-sided limits at 0
/// and 1.
struct PenaltyCurve {
  enum class Kind { step_left, piecewise_linear };

  Kind kind = Kind::step_left;
  std::vector<double> grid;
  std::vector<double> values;

  static PenaltyCurve step(std::vector<double> grid,
                           std::vector<double> values);
  static PenaltyCurve piecewise(std::vector<double> knots,
                                std::vector<double> values);
  static PenaltyCurve constant(double c);

  /// alpha(u+) for u in [0,1).
  double right_limit(double u) const;
  /// alpha(u-) for u in (0,1].
  double left_limit(double u) const;
  /// Slope of the final piece (0 for step curves); used for the u -> 1
  /// limit of penalty objectives.
  double terminal_slope() const;
  /// Interior points where the curve changes pieces.
  std::vector<double> interior_points() const;

  bool has_minus_inf() const;
  bool is_concave(double tol = kDefaultTol) const;
  /// b dominates *this pointwise (up to tol); exact per merged piece.
  bool dominated_by(const PenaltyCurve& b, double tol = kDefaultTol) const;

  friend bool operator==(const PenaltyCurve&, const PenaltyCurve&) = default;
};

/// Level-indexed penalty family alpha(s, .), right-continuous step in s:
/// alpha(s, .) = curves[j] for s in [s_levels[j], s_levels[j+1]). Inputs
/// below s_levels.front() are truncated to the lowest level.
struct PenaltyFamily {
  std::vector<double> s_levels;
  std::vector<PenaltyCurve> curves;

  /// Throws unless levels are strictly increasing and curves are pointwise
  /// non-decreasing in the level index.
  void validate(double tol = kDefaultTol) const;

  friend bool operator==(const PenaltyFamily&, const PenaltyFamily&) = default;
};

enum class FunctionalTag {
  var,
  es,
  es_bar,
  penalty_st,
  penalty_icx,
  penalty_icv,
  g_family
};

std::string to_string(FunctionalTag tag);

/// Declarative description of a maxitive functional.
struct FunctionalSpec {
  FunctionalTag tag = FunctionalTag::var;
  double level = 0.5;                     // var / es / es_bar
  std::optional<PenaltyCurve> curve;      // penalty_*
  std::optional<PenaltyFamily> family;    // g_family
  OrderRelation g_relation = OrderRelation::st;

  static FunctionalSpec var_at(double u);
  static FunctionalSpec es_at(double u);
  static FunctionalSpec es_bar_at(double u);
  static FunctionalSpec penalty(FunctionalTag tag, PenaltyCurve curve);
  static FunctionalSpec g_transform(PenaltyFamily family, OrderRelation rel);

  friend bool operator==(const FunctionalSpec&,
                         const FunctionalSpec&) = default;
};

/// VaR_u = q(u), u in (0,1).
double var(const StepQuantile& q, double u);
/// ES_u = Q(u) / (1-u), u in (0,1).
double es(const StepQuantile& q, double u);
/// Reflected expected shortfall -ES_u(-xi) = Qbar(u) / (1-u).
double es_bar(const StepQuantile& q, double u);

/// Exact supremum over (0,1) of the penalty-form objective; +inf possible
/// (never -inf). spec.tag must be one of the penalty_* tags.
double eval_penalty(const FunctionalSpec& spec, const StepQuantile& q,
                    double tol = kDefaultTol);

/// sup_u G(t(u), u) with G(t,u) = inf{s : t <= alpha+(s,u)}; the statistic
/// is q, Q or Qbar according to relation (st, icx, icv). +inf iff the
/// statistic exceeds the top curve somewhere; values below the lowest
/// curve truncate to s_levels.front().
double g_transform_eval(const PenaltyFamily& fam, const StepQuantile& q,
                        OrderRelation relation, double tol = kDefaultTol);

/// Evaluates any FunctionalSpec.
double evaluate(const FunctionalSpec& spec, const StepQuantile& q,
                double tol = kDefaultTol);

/// Minimal penalty of an acceptance family: the pointwise supremum of the
/// order's statistic over the members (st: quantiles; icx: concave envelope
/// of integrated quantiles; icv: pointwise max of reflected integrated
/// quantiles; disp: the non-decreasing beta with beta(t) = TV over [0,t),
/// whose increments beta(v)-beta(u) form the two-argument penalty).
PenaltyCurve alpha_min_from_set(OrderRelation rel, const QuantileFamily& fam,
                                double tol = kDefaultTol);

/// Leveled variant: one acceptance family per level; levels must be nested
/// (curves non-decreasing, and disp-increment-monotone for disp).
PenaltyFamily alpha_min_from_set(OrderRelation rel,
                                 std::span<const QuantileFamily> levels,
                                 std::span<const double> s_levels,
                                 double tol = kDefaultTol);

struct MaxitivityCounterexample {
  std::vector<StepQuantile> family;
  double psi_sup = 0.0;
  double psi_max = 0.0;
};

struct MaxitivityReport {
  int trials = 0;
  double max_deviation = 0.0;
  int violations = 0;
  std::optional<MaxitivityCounterexample> counterexample;
  std::uint64_t seed = 0;
};

struct MaxitivityParams {
  int family_size = 5;
  /// Deviations above this count as violations.
  double deviation_tol = kDefaultTol;
  LawGenParams laws;
};

/// Seeded sampling check of psi(sup Y) = max psi(Y) plus monotonicity on
/// ordered pairs. Deterministic for a given seed; +inf on both sides is
/// consistent, +inf on one side only is a violation. Throws if the spec is
/// not monotone for the relation (e.g. penalty_st under icx).
MaxitivityReport check_maxitivity(OrderRelation rel, const FunctionalSpec& spec,
                                  int trials, std::uint64_t seed,
                                  const MaxitivityParams& params = {},
                                  double tol = kDefaultTol);

/// True when the functional is monotone w.r.t. the relation, hence a legal
/// check_maxitivity combination.
bool spec_valid_for(OrderRelation rel, const FunctionalSpec& spec);

}  // namespace stochord
