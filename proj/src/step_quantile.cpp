#include "stochord/step_quantile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stochord {

namespace {

double clean_zero(double x) { return x == 0.0 ? 0.0 : x; }

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

StepQuantile::StepQuantile(std::vector<double> breakpoints,
                           std::vector<double> values, double tol) {
  require(!breakpoints.empty(), "StepQuantile: empty breakpoints");
  require(breakpoints.size() == values.size(),
          "StepQuantile: breakpoints/values size mismatch");
  for (double b : breakpoints)
    require(std::isfinite(b) && b > 0.0 && b <= 1.0 + tol,
            "StepQuantile: breakpoint outside (0,1]");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    require(breakpoints[i] > breakpoints[i - 1],
            "StepQuantile: breakpoints not strictly increasing");
  require(std::fabs(breakpoints.back() - 1.0) <= tol,
          "StepQuantile: last breakpoint must be 1");
  breakpoints.back() = 1.0;
  for (double v : values)
    require(std::isfinite(v), "StepQuantile: non-finite value");
  for (std::size_t i = 1; i < values.size(); ++i)
    require(values[i] >= values[i - 1],
            "StepQuantile: values not non-decreasing");

  // Canonical form: merge adjacent intervals sharing a value (the merged
  // interval keeps the later breakpoint).
  breakpoints_.reserve(breakpoints.size());
  values_.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values_.empty() && values[i] == values_.back()) {
      breakpoints_.back() = breakpoints[i];
    } else {
      breakpoints_.push_back(breakpoints[i]);
      values_.push_back(clean_zero(values[i]));
    }
  }
  for (double& b : breakpoints_) b = clean_zero(b);
}

StepQuantile StepQuantile::constant(double c) {
  return StepQuantile({1.0}, {c});
}

double StepQuantile::value(double u) const {
  if (!(u > 0.0 && u <= 1.0))
    throw std::domain_error("StepQuantile::value: u outside (0,1]");
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), u);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double StepQuantile::upper_value(double u) const {
  if (!(u >= 0.0 && u < 1.0))
    throw std::domain_error("StepQuantile::upper_value: u outside [0,1)");
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), u);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double StepQuantile::cdf(double x) const {
  auto it = std::upper_bound(values_.begin(), values_.end(), x);
  if (it == values_.begin()) return 0.0;
  return breakpoints_[static_cast<std::size_t>(it - values_.begin()) - 1];
}

double StepQuantile::cdf_left(double x) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), x);
  if (it == values_.begin()) return 0.0;
  return breakpoints_[static_cast<std::size_t>(it - values_.begin()) - 1];
}

double StepQuantile::mean() const {
  double acc = 0.0;
  for (std::size_t i = values_.size(); i-- > 0;) acc += values_[i] * mass(i);
  return acc;
}

double StepQuantile::mass(std::size_t i) const {
  return i == 0 ? breakpoints_[0] : breakpoints_[i] - breakpoints_[i - 1];
}

double StepQuantile::jump_at(double u) const {
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), u);
  if (it == breakpoints_.end() || *it != u) return 0.0;
  auto i = static_cast<std::size_t>(it - breakpoints_.begin());
  if (i + 1 >= values_.size()) return 0.0;  // the breakpoint at 1 never jumps
  return values_[i + 1] - values_[i];
}

StepQuantile StepQuantile::translated(double c) const {
  std::vector<double> shifted(values_);
  for (double& v : shifted) v += c;
  return StepQuantile(breakpoints_, std::move(shifted));
}

StepQuantile StepQuantile::negated() const {
  const std::size_t n = values_.size();
  std::vector<double> bps(n), vals(n);
  double cum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = n - 1 - j;
    cum += mass(i);
    bps[j] = cum;
    vals[j] = -values_[i];
  }
  bps[n - 1] = 1.0;
  return StepQuantile(std::move(bps), std::move(vals));
}

StepQuantile build_distribution(std::span<const double> values,
                                std::span<const double> weights, double tol) {
  if (values.empty()) throw std::invalid_argument("build_distribution: empty input");
  if (values.size() != weights.size())
    throw std::invalid_argument("build_distribution: values/weights size mismatch");
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("build_distribution: non-positive weight");
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("build_distribution: non-finite value");

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  // Accumulate in sorted order; the running total doubles as the weight sum
  // so the final breakpoint renormalizes to exactly 1.
  std::vector<double> bps, vals;
  bps.reserve(values.size());
  vals.reserve(values.size());
  double cum = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    cum += weights[order[k]];
    const double v = values[order[k]];
    if (!vals.empty() && vals.back() == v) {
      bps.back() = cum;
    } else {
      bps.push_back(cum);
      vals.push_back(v);
    }
  }
  if (std::fabs(cum - 1.0) > tol)
    throw std::invalid_argument("build_distribution: weights do not sum to 1");
  for (double& b : bps) b /= cum;
  bps.back() = 1.0;
  return StepQuantile(std::move(bps), std::move(vals));
}

StepQuantile build_distribution(std::span<const double> values, double tol) {
  if (values.empty()) throw std::invalid_argument("build_distribution: empty input");
  std::vector<double> w(values.size(), 1.0 / static_cast<double>(values.size()));
  return build_distribution(values, w, tol);
}

}  // namespace stochord
