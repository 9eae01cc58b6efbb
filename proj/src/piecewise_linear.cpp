#include "stochord/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stochord {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double clean_zero(double x) { return x == 0.0 ? 0.0 : x; }

}  // namespace

PiecewiseLinearFn::PiecewiseLinearFn(std::vector<double> knots,
                                     std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
  require(knots_.size() >= 2, "PiecewiseLinearFn: need at least two knots");
  require(knots_.size() == values_.size(),
          "PiecewiseLinearFn: knots/values size mismatch");
  require(knots_.front() == 0.0 && knots_.back() == 1.0,
          "PiecewiseLinearFn: knots must span [0,1]");
  for (std::size_t i = 1; i < knots_.size(); ++i)
    require(knots_[i] > knots_[i - 1],
            "PiecewiseLinearFn: knots not strictly increasing");
  for (double v : values_)
    require(std::isfinite(v), "PiecewiseLinearFn: non-finite value");
  for (double& v : values_) v = clean_zero(v);
}

double PiecewiseLinearFn::value(double u) const {
  if (!(u >= 0.0 && u <= 1.0))
    throw std::domain_error("PiecewiseLinearFn::value: u outside [0,1]");
  auto it = std::lower_bound(knots_.begin(), knots_.end(), u);
  auto i = static_cast<std::size_t>(it - knots_.begin());
  if (it != knots_.end() && *it == u) return values_[i];
  const double a = knots_[i - 1], b = knots_[i];
  const double t = (u - a) / (b - a);
  return values_[i - 1] + t * (values_[i] - values_[i - 1]);
}

double PiecewiseLinearFn::slope(std::size_t piece) const {
  return (values_[piece + 1] - values_[piece]) /
         (knots_[piece + 1] - knots_[piece]);
}

bool PiecewiseLinearFn::is_concave(double tol) const {
  for (std::size_t i = 0; i + 1 < pieces(); ++i)
    if (slope(i + 1) > slope(i) + tol) return false;
  return true;
}

bool PiecewiseLinearFn::is_convex(double tol) const {
  for (std::size_t i = 0; i + 1 < pieces(); ++i)
    if (slope(i + 1) < slope(i) - tol) return false;
  return true;
}

PiecewiseLinearFn integrated_quantile(const StepQuantile& q) {
  const auto& bps = q.breakpoints();
  const std::size_t n = bps.size();
  std::vector<double> knots(n + 1), vals(n + 1);
  knots[0] = 0.0;
  std::copy(bps.begin(), bps.end(), knots.begin() + 1);
  vals[n] = 0.0;
  for (std::size_t i = n; i-- > 0;)
    vals[i] = vals[i + 1] + q.values()[i] * q.mass(i);
  return PiecewiseLinearFn(std::move(knots), std::move(vals));
}

PiecewiseLinearFn reflected_integrated(const StepQuantile& q) {
  PiecewiseLinearFn neg = integrated_quantile(q.negated());
  std::vector<double> vals(neg.values());
  for (double& v : vals) v = v == 0.0 ? 0.0 : -v;
  return PiecewiseLinearFn(neg.knots(), std::move(vals));
}

namespace {

// Shared slope-extraction step: turns per-piece slopes into a canonical
// StepQuantile, clamping monotonicity wobble within tol and rejecting
// anything worse.
StepQuantile quantile_from_slopes(std::vector<double> bps,
                                  std::vector<double> vals, double tol,
                                  const char* what) {
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (vals[i] < vals[i - 1]) {
      if (vals[i - 1] - vals[i] > tol) throw std::invalid_argument(what);
      vals[i] = vals[i - 1];
    }
  }
  return StepQuantile(std::move(bps), std::move(vals));
}

}  // namespace

StepQuantile quantile_from_integrated(const PiecewiseLinearFn& fn, double tol) {
  if (std::fabs(fn.values().back()) > tol)
    throw std::invalid_argument("quantile_from_integrated: value at 1 not 0");
  if (!fn.is_concave(tol))
    throw std::invalid_argument("quantile_from_integrated: not concave");
  const std::size_t m = fn.pieces();
  std::vector<double> bps(m), vals(m);
  for (std::size_t i = 0; i < m; ++i) {
    bps[i] = fn.knots()[i + 1];
    vals[i] = -fn.slope(i);
  }
  return quantile_from_slopes(std::move(bps), std::move(vals), tol,
                              "quantile_from_integrated: slopes not monotone");
}

StepQuantile quantile_from_reflected(const PiecewiseLinearFn& fn, double tol) {
  if (std::fabs(fn.values().back()) > tol)
    throw std::invalid_argument("quantile_from_reflected: value at 1 not 0");
  if (!fn.is_convex(tol))
    throw std::invalid_argument("quantile_from_reflected: not convex");
  // V'(u) = -q+(1-u): piece j of V maps to the quantile interval
  // (1-knot[j+1], 1-knot[j]] with value -slope(j), read off back to front.
  const std::size_t m = fn.pieces();
  std::vector<double> bps(m), vals(m);
  for (std::size_t j = 0; j < m; ++j) {
    bps[j] = 1.0 - fn.knots()[m - 1 - j];
    vals[j] = -fn.slope(m - 1 - j);
  }
  bps[m - 1] = 1.0;
  return quantile_from_slopes(std::move(bps), std::move(vals), tol,
                              "quantile_from_reflected: slopes not monotone");
}

PiecewiseLinearFn pointwise_max(std::span<const PiecewiseLinearFn> fns) {
  if (fns.empty()) throw std::invalid_argument("pointwise_max: empty input");
  if (fns.size() == 1) return fns[0];

  std::vector<double> knots;
  for (const auto& f : fns)
    knots.insert(knots.end(), f.knots().begin(), f.knots().end());
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  // Crossings of member segments become knots of the true upper envelope.
  std::vector<double> candidates(knots);
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double a = knots[k], b = knots[k + 1];
    for (std::size_t i = 0; i < fns.size(); ++i) {
      const double fia = fns[i].value(a), fib = fns[i].value(b);
      for (std::size_t j = i + 1; j < fns.size(); ++j) {
        const double fja = fns[j].value(a), fjb = fns[j].value(b);
        const double da = fia - fja, db = fib - fjb;
        if ((da > 0.0 && db < 0.0) || (da < 0.0 && db > 0.0)) {
          const double t = da / (da - db);
          const double u = a + t * (b - a);
          if (u > a && u < b) candidates.push_back(u);
        }
      }
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  std::vector<double> vals(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    double m = fns[0].value(candidates[k]);
    for (std::size_t i = 1; i < fns.size(); ++i)
      m = std::max(m, fns[i].value(candidates[k]));
    vals[k] = m;
  }
  return PiecewiseLinearFn(std::move(candidates), std::move(vals));
}

}  // namespace stochord
