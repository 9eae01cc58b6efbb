#include "stochord/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stochord {

QuantileFamily::QuantileFamily(std::vector<StepQuantile> members)
    : members_(std::move(members)) {
  if (members_.empty())
    throw std::invalid_argument("QuantileFamily: empty family");
  for (const auto& q : members_)
    for (double w : q.breakpoints())
      if (w != 1.0) merged_grid_.push_back(w);
  std::sort(merged_grid_.begin(), merged_grid_.end());
  merged_grid_.erase(std::unique(merged_grid_.begin(), merged_grid_.end()),
                     merged_grid_.end());
}

double QuantileFamily::max_jump_at(double u) const {
  double best = 0.0;
  for (const auto& q : members_) best = std::max(best, q.jump_at(u));
  return best;
}

PiecewiseLinearFn concave_envelope(std::span<const PiecewiseLinearFn> fns,
                                   double tol) {
  if (fns.empty()) throw std::invalid_argument("concave_envelope: empty input");
  for (const auto& f : fns) {
    if (!f.is_concave(tol))
      throw std::invalid_argument("concave_envelope: input not concave");
    if (std::fabs(f.values().back()) > tol)
      throw std::invalid_argument("concave_envelope: input not 0 at 1");
  }

  std::vector<double> knots;
  for (const auto& f : fns)
    knots.insert(knots.end(), f.knots().begin(), f.knots().end());
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  std::vector<double> maxvals(knots.size());
  for (std::size_t k = 0; k < knots.size(); ++k) {
    double m = fns[0].value(knots[k]);
    for (std::size_t i = 1; i < fns.size(); ++i)
      m = std::max(m, fns[i].value(knots[k]));
    maxvals[k] = m;
  }
  maxvals.back() = 0.0;

  // Upper hull, monotone chain. Pops on cross >= 0 exactly: dropping a
  // near-collinear true vertex could push the hull below a member by more
  // than the working tolerance on narrow pieces.
  std::vector<std::size_t> hull;
  for (std::size_t k = 0; k < knots.size(); ++k) {
    while (hull.size() >= 2) {
      const std::size_t p = hull[hull.size() - 2], q = hull.back();
      const double cross = (knots[q] - knots[p]) * (maxvals[k] - maxvals[p]) -
                           (maxvals[q] - maxvals[p]) * (knots[k] - knots[p]);
      if (cross >= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(k);
  }

  std::vector<double> hk(hull.size()), hv(hull.size());
  for (std::size_t i = 0; i < hull.size(); ++i) {
    hk[i] = knots[hull[i]];
    hv[i] = maxvals[hull[i]];
  }
  return PiecewiseLinearFn(std::move(hk), std::move(hv));
}

namespace {

StepQuantile sup_st(const QuantileFamily& fam) {
  std::vector<double> bps(fam.merged_grid());
  bps.push_back(1.0);
  std::vector<double> vals(bps.size());
  for (std::size_t k = 0; k < bps.size(); ++k) {
    double m = fam.members()[0].value(bps[k]);
    for (std::size_t i = 1; i < fam.size(); ++i)
      m = std::max(m, fam.members()[i].value(bps[k]));
    vals[k] = m;
  }
  return StepQuantile(std::move(bps), std::move(vals));
}

StepQuantile sup_icx(const QuantileFamily& fam, double tol) {
  std::vector<PiecewiseLinearFn> fns;
  fns.reserve(fam.size());
  for (const auto& q : fam.members()) fns.push_back(integrated_quantile(q));
  return quantile_from_integrated(concave_envelope(fns, tol), tol);
}

StepQuantile sup_icv(const QuantileFamily& fam, double tol) {
  std::vector<PiecewiseLinearFn> fns;
  fns.reserve(fam.size());
  for (const auto& q : fam.members()) fns.push_back(reflected_integrated(q));
  return quantile_from_reflected(pointwise_max(fns), tol);
}

StepQuantile sup_disp(const QuantileFamily& fam) {
  const auto& grid = fam.merged_grid();
  std::vector<double> bps, vals;
  bps.reserve(grid.size() + 1);
  vals.reserve(grid.size() + 1);
  double level = 0.0;
  for (double w : grid) {
    bps.push_back(w);
    vals.push_back(level);
    level += fam.max_jump_at(w);
  }
  bps.push_back(1.0);
  vals.push_back(level);
  return StepQuantile(std::move(bps), std::move(vals));
}

}  // namespace

StepQuantile sup_order(OrderRelation rel, const QuantileFamily& fam,
                       double tol) {
  switch (rel) {
    case OrderRelation::st:
      return sup_st(fam);
    case OrderRelation::icx:
      return sup_icx(fam, tol);
    case OrderRelation::cx: {
      const double r = fam.members()[0].mean();
      for (const auto& q : fam.members())
        if (std::fabs(q.mean() - r) > tol)
          throw std::invalid_argument("sup_order: cx requires equal means");
      return sup_icx(fam, tol);
    }
    case OrderRelation::icv:
      return sup_icv(fam, tol);
    case OrderRelation::disp:
      return sup_disp(fam);
  }
  throw std::invalid_argument("unknown relation tag");
}

double total_variation(const QuantileFamily& fam, double u, double v) {
  if (!(u >= 0.0 && v <= 1.0 && u < v))
    throw std::invalid_argument("total_variation: need 0 <= u < v <= 1");
  double tv = 0.0;
  for (double w : fam.merged_grid())
    if (w >= u && w < v) tv += fam.max_jump_at(w);
  return tv;
}

}  // namespace stochord
