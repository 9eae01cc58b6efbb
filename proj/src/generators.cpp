#include "stochord/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace stochord {

namespace {

double snap(double x, bool dyadic, double unit = 0x1.0p-8) {
  if (dyadic) return std::round(x / unit) * unit;
  return std::round(x * 1000.0) / 1000.0;
}

std::vector<double> random_interior_knots(Rng& rng, int count, bool dyadic) {
  std::set<std::int64_t> ticks;
  const std::int64_t denom = dyadic ? 4096 : 1000;
  while (static_cast<int>(ticks.size()) < count)
    ticks.insert(rng.uniform_int(1, denom - 1));
  std::vector<double> out;
  for (std::int64_t t : ticks)
    out.push_back(static_cast<double>(t) / static_cast<double>(denom));
  return out;
}

}  // namespace

PenaltyCurve random_step_curve(Rng& rng, const CurveGenParams& params) {
  const int k = static_cast<int>(rng.uniform_int(0, params.max_interior));
  auto grid = random_interior_knots(rng, k, params.dyadic);
  std::vector<double> values(static_cast<std::size_t>(k) + 1);
  for (double& v : values)
    v = snap(rng.uniform(params.value_lo, params.value_hi), params.dyadic);
  return PenaltyCurve::step(std::move(grid), std::move(values));
}

PenaltyCurve random_pl_curve(Rng& rng, const CurveGenParams& params) {
  const int k = static_cast<int>(rng.uniform_int(0, params.max_interior));
  std::vector<double> knots{0.0};
  for (double g : random_interior_knots(rng, k, params.dyadic))
    knots.push_back(g);
  knots.push_back(1.0);
  std::vector<double> values(knots.size());
  values[0] = snap(rng.uniform(params.value_lo, params.value_hi), params.dyadic);
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const double slope = snap(rng.uniform(-4.0, 4.0), params.dyadic);
    values[i] = values[i - 1] + slope * (knots[i] - knots[i - 1]);
  }
  return PenaltyCurve::piecewise(std::move(knots), std::move(values));
}

PenaltyCurve random_concave_curve(Rng& rng, const CurveGenParams& params) {
  const int k = static_cast<int>(rng.uniform_int(1, params.max_interior));
  std::vector<double> knots{0.0};
  for (double g : random_interior_knots(rng, k, params.dyadic))
    knots.push_back(g);
  knots.push_back(1.0);

  // Strictly decreasing dyadic-or-millesimal slopes keep the curve exactly
  // concave under any tolerance.
  std::vector<double> slopes(knots.size() - 1);
  double s = snap(rng.uniform(1.0, 4.0), params.dyadic);
  for (double& sl : slopes) {
    sl = s;
    s -= snap(rng.uniform(0.25, 2.0), params.dyadic);
  }

  std::vector<double> values(knots.size());
  values[0] = 0.0;
  for (std::size_t i = 1; i < knots.size(); ++i)
    values[i] = values[i - 1] + slopes[i - 1] * (knots[i] - knots[i - 1]);

  // Pin the endpoint: a third of the curves end exactly at 0, the rest get
  // a positive or (occasionally) negative terminal value.
  double target;
  const auto pick = rng.uniform_int(0, 5);
  if (pick <= 1)
    target = 0.0;
  else if (pick <= 4)
    target = snap(rng.uniform(0.25, params.value_hi), params.dyadic);
  else
    target = snap(rng.uniform(params.value_lo, -0.25), params.dyadic);
  const double shift = target - values.back();
  for (double& v : values) v += shift;
  return PenaltyCurve::piecewise(std::move(knots), std::move(values));
}

PenaltyFamily random_penalty_family(Rng& rng, OrderRelation relation,
                                    const CurveGenParams& params) {
  const int m = static_cast<int>(rng.uniform_int(2, 4));
  PenaltyCurve base =
      relation == OrderRelation::icx || relation == OrderRelation::cx
          ? random_concave_curve(rng, params)
          : (rng.coin() ? random_step_curve(rng, params)
                        : random_pl_curve(rng, params));

  PenaltyFamily fam;
  double level = snap(rng.uniform(-1.0, 1.0), params.dyadic);
  double offset = 0.0;
  for (int j = 0; j < m; ++j) {
    fam.s_levels.push_back(level);
    level += snap(rng.uniform(0.25, 1.5), params.dyadic);
    PenaltyCurve c = base;
    for (double& v : c.values) v += offset;
    fam.curves.push_back(std::move(c));
    offset += snap(rng.uniform(0.25, 1.5), params.dyadic);
  }
  fam.validate();
  return fam;
}

}  // namespace stochord
