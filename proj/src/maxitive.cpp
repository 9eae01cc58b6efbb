#include "stochord/maxitive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stochord {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double interp(const std::vector<double>& xs, const std::vector<double>& ys,
              double u) {
  auto it = std::lower_bound(xs.begin(), xs.end(), u);
  auto i = static_cast<std::size_t>(it - xs.begin());
  if (it != xs.end() && *it == u) return ys[i];
  const double t = (u - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

}  // namespace

PenaltyCurve PenaltyCurve::step(std::vector<double> grid,
                                std::vector<double> values) {
  PenaltyCurve c;
  c.kind = Kind::step_left;
  c.grid = std::move(grid);
  c.values = std::move(values);
  require(c.values.size() == c.grid.size() + 1,
          "PenaltyCurve: step curve needs one value per interval");
  for (double g : c.grid)
    require(std::isfinite(g) && g > 0.0 && g < 1.0,
            "PenaltyCurve: grid point outside (0,1)");
  for (std::size_t i = 1; i < c.grid.size(); ++i)
    require(c.grid[i] > c.grid[i - 1],
            "PenaltyCurve: grid not strictly increasing");
  for (double v : c.values)
    require(std::isfinite(v) || v == -kInf,
            "PenaltyCurve: values must be finite or -inf");
  return c;
}

PenaltyCurve PenaltyCurve::piecewise(std::vector<double> knots,
                                     std::vector<double> values) {
  PenaltyCurve c;
  c.kind = Kind::piecewise_linear;
  c.grid = std::move(knots);
  c.values = std::move(values);
  require(c.grid.size() >= 2 && c.grid.size() == c.values.size(),
          "PenaltyCurve: piecewise-linear curve needs matching knots/values");
  require(c.grid.front() == 0.0 && c.grid.back() == 1.0,
          "PenaltyCurve: piecewise-linear knots must span [0,1]");
  for (std::size_t i = 1; i < c.grid.size(); ++i)
    require(c.grid[i] > c.grid[i - 1],
            "PenaltyCurve: knots not strictly increasing");
  for (double v : c.values)
    require(std::isfinite(v),
            "PenaltyCurve: piecewise-linear values must be finite");
  return c;
}

PenaltyCurve PenaltyCurve::constant(double c) { return step({}, {c}); }

double PenaltyCurve::right_limit(double u) const {
  if (kind == Kind::piecewise_linear) return interp(grid, values, u);
  auto it = std::upper_bound(grid.begin(), grid.end(), u);
  return values[static_cast<std::size_t>(it - grid.begin())];
}

double PenaltyCurve::left_limit(double u) const {
  if (kind == Kind::piecewise_linear) return interp(grid, values, u);
  auto it = std::lower_bound(grid.begin(), grid.end(), u);
  return values[static_cast<std::size_t>(it - grid.begin())];
}

double PenaltyCurve::terminal_slope() const {
  if (kind == Kind::step_left) return 0.0;
  const std::size_t m = grid.size();
  return (values[m - 1] - values[m - 2]) / (grid[m - 1] - grid[m - 2]);
}

std::vector<double> PenaltyCurve::interior_points() const {
  if (kind == Kind::step_left) return grid;
  return std::vector<double>(grid.begin() + 1, grid.end() - 1);
}

bool PenaltyCurve::has_minus_inf() const {
  for (double v : values)
    if (v == -kInf) return true;
  return false;
}

bool PenaltyCurve::is_concave(double tol) const {
  if (kind == Kind::step_left) return values.size() == 1;
  for (std::size_t i = 2; i < grid.size(); ++i) {
    const double s0 = (values[i - 1] - values[i - 2]) / (grid[i - 1] - grid[i - 2]);
    const double s1 = (values[i] - values[i - 1]) / (grid[i] - grid[i - 1]);
    if (s1 > s0 + tol) return false;
  }
  return true;
}

bool PenaltyCurve::dominated_by(const PenaltyCurve& b, double tol) const {
  std::vector<double> cuts = interior_points();
  const auto bi = b.interior_points();
  cuts.insert(cuts.end(), bi.begin(), bi.end());
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double lo = 0.0;
  for (double hi : cuts) {
    if (right_limit(lo) > b.right_limit(lo) + tol) return false;
    if (left_limit(hi) > b.left_limit(hi) + tol) return false;
    lo = hi;
  }
  return true;
}

void PenaltyFamily::validate(double tol) const {
  require(!s_levels.empty(), "PenaltyFamily: empty levels");
  require(s_levels.size() == curves.size(),
          "PenaltyFamily: levels/curves size mismatch");
  for (std::size_t i = 1; i < s_levels.size(); ++i)
    require(s_levels[i] > s_levels[i - 1],
            "PenaltyFamily: levels not strictly increasing");
  for (std::size_t i = 1; i < curves.size(); ++i)
    require(curves[i - 1].dominated_by(curves[i], tol),
            "PenaltyFamily: curves not monotone in the level");
}

FunctionalSpec FunctionalSpec::var_at(double u) {
  return FunctionalSpec{FunctionalTag::var, u, {}, {}, OrderRelation::st};
}
FunctionalSpec FunctionalSpec::es_at(double u) {
  return FunctionalSpec{FunctionalTag::es, u, {}, {}, OrderRelation::st};
}
FunctionalSpec FunctionalSpec::es_bar_at(double u) {
  return FunctionalSpec{FunctionalTag::es_bar, u, {}, {}, OrderRelation::st};
}
FunctionalSpec FunctionalSpec::penalty(FunctionalTag tag, PenaltyCurve curve) {
  require(tag == FunctionalTag::penalty_st || tag == FunctionalTag::penalty_icx ||
              tag == FunctionalTag::penalty_icv,
          "FunctionalSpec::penalty: not a penalty tag");
  FunctionalSpec s;
  s.tag = tag;
  s.curve = std::move(curve);
  return s;
}
FunctionalSpec FunctionalSpec::g_transform(PenaltyFamily family,
                                           OrderRelation rel) {
  FunctionalSpec s;
  s.tag = FunctionalTag::g_family;
  s.family = std::move(family);
  s.g_relation = rel;
  return s;
}

std::string to_string(FunctionalTag tag) {
  switch (tag) {
    case FunctionalTag::var: return "var";
    case FunctionalTag::es: return "es";
    case FunctionalTag::es_bar: return "es_bar";
    case FunctionalTag::penalty_st: return "penalty_st";
    case FunctionalTag::penalty_icx: return "penalty_icx";
    case FunctionalTag::penalty_icv: return "penalty_icv";
    case FunctionalTag::g_family: return "g_family";
  }
  throw std::invalid_argument("unknown functional tag");
}

double var(const StepQuantile& q, double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("var: u outside (0,1)");
  return q.value(u);
}

double es(const StepQuantile& q, double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("es: u outside (0,1)");
  return integrated_quantile(q).value(u) / (1.0 - u);
}

double es_bar(const StepQuantile& q, double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("es_bar: u outside (0,1)");
  return reflected_integrated(q).value(u) / (1.0 - u);
}

namespace {

std::vector<double> merge_cuts(std::vector<double> a,
                               const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<double> interior_knots(const PiecewiseLinearFn& f) {
  return {f.knots().begin() + 1, f.knots().end() - 1};
}

std::vector<double> interior_breakpoints(const StepQuantile& q) {
  std::vector<double> out;
  for (double w : q.breakpoints())
    if (w != 1.0) out.push_back(w);
  return out;
}

// sup over (0,1) of q(u) - alpha(u): both sides are one-sided-constant or
// linear on each merged interval, so the endpoint limits attain the sup.
double penalty_st_value(const StepQuantile& q, const PenaltyCurve& alpha) {
  const auto cuts =
      merge_cuts(interior_breakpoints(q), alpha.interior_points());
  double best = -kInf;
  double lo = 0.0;
  for (std::size_t k = 0; k <= cuts.size(); ++k) {
    const double hi = k < cuts.size() ? cuts[k] : 1.0;
    const double vq = q.upper_value(lo);
    const double ra = alpha.right_limit(lo);
    const double lb = alpha.left_limit(hi);
    if (ra == -kInf || lb == -kInf) return kInf;
    best = std::max(best, std::max(vq - ra, vq - lb));
    lo = hi;
  }
  return best;
}

// sup over (0,1) of (S(u) - alpha(u)) / (1-u): a ratio of affine functions
// per merged interval, hence monotone there; the u -> 1 limit depends on
// the sign of alpha(1-).
double penalty_ratio_value(const PiecewiseLinearFn& S,
                           const PenaltyCurve& alpha, double stat_end) {
  const auto cuts = merge_cuts(interior_knots(S), alpha.interior_points());
  double best = -kInf;
  double lo = 0.0;
  for (std::size_t k = 0; k <= cuts.size(); ++k) {
    const double hi = k < cuts.size() ? cuts[k] : 1.0;
    const double ra = alpha.right_limit(lo);
    if (ra == -kInf) return kInf;
    best = std::max(best, (S.value(lo) - ra) / (1.0 - lo));
    if (hi < 1.0) {
      const double lb = alpha.left_limit(hi);
      if (lb == -kInf) return kInf;
      best = std::max(best, (S.value(hi) - lb) / (1.0 - hi));
    } else {
      const double a1 = alpha.left_limit(1.0);
      if (a1 == -kInf || a1 < 0.0) return kInf;
      if (a1 == 0.0) best = std::max(best, stat_end + alpha.terminal_slope());
    }
    lo = hi;
  }
  return best;
}

}  // namespace

double eval_penalty(const FunctionalSpec& spec, const StepQuantile& q,
                    double tol) {
  require(spec.curve.has_value(), "eval_penalty: missing curve");
  const PenaltyCurve& alpha = *spec.curve;
  switch (spec.tag) {
    case FunctionalTag::penalty_st:
      return penalty_st_value(q, alpha);
    case FunctionalTag::penalty_icx:
      require(alpha.is_concave(tol),
              "eval_penalty: penalty_icx needs a concave curve");
      return penalty_ratio_value(integrated_quantile(q), alpha, q.max());
    case FunctionalTag::penalty_icv:
      return penalty_ratio_value(reflected_integrated(q), alpha, q.min());
    default:
      throw std::invalid_argument("eval_penalty: not a penalty spec");
  }
}

double g_transform_eval(const PenaltyFamily& fam, const StepQuantile& q,
                        OrderRelation relation, double tol) {
  fam.validate(tol);

  std::optional<PiecewiseLinearFn> stat;
  std::vector<double> cuts;
  if (relation == OrderRelation::st) {
    cuts = interior_breakpoints(q);
  } else if (relation == OrderRelation::icx) {
    stat = integrated_quantile(q);
    cuts = interior_knots(*stat);
  } else if (relation == OrderRelation::icv) {
    stat = reflected_integrated(q);
    cuts = interior_knots(*stat);
  } else {
    throw std::invalid_argument("g_transform_eval: relation must be st/icx/icv");
  }
  for (const auto& c : fam.curves) cuts = merge_cuts(cuts, c.interior_points());

  const std::size_t levels = fam.curves.size();
  std::vector<double> da(levels), db(levels);
  std::vector<double> taus;

  double best = -kInf;
  double lo = 0.0;
  for (std::size_t k = 0; k <= cuts.size(); ++k) {
    const double hi = k < cuts.size() ? cuts[k] : 1.0;
    double ta, tb;
    if (stat) {
      ta = stat->value(lo);
      tb = stat->value(hi);
    } else {
      ta = tb = q.upper_value(lo);
    }

    taus.assign({0.0, 1.0});
    for (std::size_t j = 0; j < levels; ++j) {
      const double ca = fam.curves[j].right_limit(lo);
      const double cb = fam.curves[j].left_limit(hi);
      if (ca == -kInf || cb == -kInf) {
        da[j] = db[j] = -kInf;  // step curves are -inf on whole intervals
        continue;
      }
      da[j] = ca - ta;
      db[j] = cb - tb;
      if ((da[j] > 0.0 && db[j] < 0.0) || (da[j] < 0.0 && db[j] > 0.0))
        taus.push_back(da[j] / (da[j] - db[j]));
    }
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

    // The level diffs are affine per interval: a level covers a piece iff
    // it is nonnegative at both piece endpoints.
    for (std::size_t p = 0; p + 1 < taus.size(); ++p) {
      const double x = taus[p], y = taus[p + 1];
      double g = kInf;
      for (std::size_t j = 0; j < levels; ++j) {
        if (da[j] == -kInf) continue;
        const double dx = da[j] + x * (db[j] - da[j]);
        const double dy = da[j] + y * (db[j] - da[j]);
        if (dx >= 0.0 && dy >= 0.0) {
          g = fam.s_levels[j];
          break;
        }
      }
      if (g == kInf) return kInf;
      best = std::max(best, g);
    }
    lo = hi;
  }
  return best;
}

double evaluate(const FunctionalSpec& spec, const StepQuantile& q, double tol) {
  switch (spec.tag) {
    case FunctionalTag::var: return var(q, spec.level);
    case FunctionalTag::es: return es(q, spec.level);
    case FunctionalTag::es_bar: return es_bar(q, spec.level);
    case FunctionalTag::penalty_st:
    case FunctionalTag::penalty_icx:
    case FunctionalTag::penalty_icv:
      return eval_penalty(spec, q, tol);
    case FunctionalTag::g_family:
      require(spec.family.has_value(), "evaluate: missing g family");
      return g_transform_eval(*spec.family, q, spec.g_relation, tol);
  }
  throw std::invalid_argument("unknown functional tag");
}

PenaltyCurve alpha_min_from_set(OrderRelation rel, const QuantileFamily& fam,
                                double tol) {
  switch (rel) {
    case OrderRelation::st: {
      const StepQuantile sup = sup_order(OrderRelation::st, fam, tol);
      std::vector<double> grid(sup.breakpoints().begin(),
                               sup.breakpoints().end() - 1);
      return PenaltyCurve::step(std::move(grid), sup.values());
    }
    case OrderRelation::icx: {
      std::vector<PiecewiseLinearFn> fns;
      for (const auto& q : fam.members()) fns.push_back(integrated_quantile(q));
      const PiecewiseLinearFn env = concave_envelope(fns, tol);
      return PenaltyCurve::piecewise(env.knots(), env.values());
    }
    case OrderRelation::icv: {
      std::vector<PiecewiseLinearFn> fns;
      for (const auto& q : fam.members()) fns.push_back(reflected_integrated(q));
      const PiecewiseLinearFn pm = pointwise_max(fns);
      return PenaltyCurve::piecewise(pm.knots(), pm.values());
    }
    case OrderRelation::disp: {
      // beta(t) = TV over [0,t): the anchored dispersive supremum read as a
      // step curve; the two-argument penalty is beta(v) - beta(u).
      const StepQuantile sup = sup_order(OrderRelation::disp, fam, tol);
      std::vector<double> grid(sup.breakpoints().begin(),
                               sup.breakpoints().end() - 1);
      return PenaltyCurve::step(std::move(grid), sup.values());
    }
    default:
      throw std::invalid_argument("alpha_min_from_set: unsupported relation");
  }
}

PenaltyFamily alpha_min_from_set(OrderRelation rel,
                                 std::span<const QuantileFamily> level_sets,
                                 std::span<const double> s_levels,
                                 double tol) {
  require(!level_sets.empty() && level_sets.size() == s_levels.size(),
          "alpha_min_from_set: levels/sets size mismatch");
  PenaltyFamily fam;
  fam.s_levels.assign(s_levels.begin(), s_levels.end());
  for (const auto& set : level_sets)
    fam.curves.push_back(alpha_min_from_set(rel, set, tol));
  if (rel == OrderRelation::disp) {
    for (std::size_t i = 1; i < level_sets.size(); ++i) {
      const auto lo = sup_order(OrderRelation::disp, level_sets[i - 1], tol);
      const auto hi = sup_order(OrderRelation::disp, level_sets[i], tol);
      require(check_order(OrderRelation::disp, lo, hi, tol).holds,
              "alpha_min_from_set: acceptance sets not nested for disp");
    }
  }
  fam.validate(tol);  // rejects non-nested leveled families
  return fam;
}

bool spec_valid_for(OrderRelation rel, const FunctionalSpec& spec) {
  using T = FunctionalTag;
  switch (rel) {
    case OrderRelation::st:
      return true;  // st dominance implies every statistic's dominance
    case OrderRelation::icx:
    case OrderRelation::cx:
      return spec.tag == T::es || spec.tag == T::penalty_icx ||
             (spec.tag == T::g_family && spec.g_relation == OrderRelation::icx);
    case OrderRelation::icv:
      return spec.tag == T::es_bar || spec.tag == T::penalty_icv ||
             (spec.tag == T::g_family && spec.g_relation == OrderRelation::icv);
    case OrderRelation::disp:
      return false;
  }
  return false;
}

MaxitivityReport check_maxitivity(OrderRelation rel, const FunctionalSpec& spec,
                                  int trials, std::uint64_t seed,
                                  const MaxitivityParams& params, double tol) {
  if (!spec_valid_for(rel, spec))
    throw std::invalid_argument(
        "check_maxitivity: functional is not monotone for the relation");
  MaxitivityReport rep;
  rep.trials = trials;
  rep.seed = seed;

  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const int size =
        static_cast<int>(rng.uniform_int(2, std::max(2, params.family_size)));
    auto members = random_family(rng, size, params.laws);
    if (rel == OrderRelation::cx) {
      const double r = members[0].mean();
      for (std::size_t i = 1; i < members.size(); ++i)
        members[i] = members[i].translated(r - members[i].mean());
    }
    const QuantileFamily fam(members);
    const StepQuantile sup = sup_order(rel, fam, tol);

    const double psi_sup = evaluate(spec, sup, tol);
    double psi_max = -kInf;
    bool mono_ok = true;
    for (const auto& m : fam.members()) {
      const double v = evaluate(spec, m, tol);
      psi_max = std::max(psi_max, v);
      if (std::isinf(v) && std::isinf(psi_sup)) continue;
      if (v > psi_sup + params.deviation_tol) mono_ok = false;
    }

    double deviation;
    if (std::isinf(psi_sup) && std::isinf(psi_max))
      deviation = 0.0;  // consistently +inf: skip
    else if (std::isinf(psi_sup) != std::isinf(psi_max))
      deviation = kInf;
    else
      deviation = std::fabs(psi_sup - psi_max);

    rep.max_deviation = std::max(rep.max_deviation, deviation);
    if (deviation > params.deviation_tol || !mono_ok) {
      ++rep.violations;
      if (!rep.counterexample)
        rep.counterexample =
            MaxitivityCounterexample{fam.members(), psi_sup, psi_max};
    }
  }
  return rep;
}

}  // namespace stochord
