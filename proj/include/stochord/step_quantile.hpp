#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stochord/common.hpp"

namespace stochord {

/// Left-continuous non-decreasing step function on (0,1]; the canonical
/// representation of a finitely supported law through its quantile function.
///
/// q(u) = values[i] for u in (breakpoints[i-1], breakpoints[i]], with
/// breakpoints[-1] := 0 and breakpoints.back() == 1. Canonical form merges
/// adjacent intervals with equal values, so values are strictly increasing.
class StepQuantile {
 public:
  // Canonicalizes on construction; throws std::invalid_argument on
  // malformed input (sizes, ordering, terminal breakpoint off 1 beyond tol).
  StepQuantile(std::vector<double> breakpoints, std::vector<double> values,
               double tol = kDefaultTol);

  static StepQuantile constant(double c);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  /// q(u) for u in (0,1]; q(1) means the left limit q(1-).
  double value(double u) const;
  /// q+(u) = inf{x : F(x) > u} for u in [0,1); q+(0) means q(0+).
  double upper_value(double u) const;
  /// F(x) = max{breakpoint i : values[i] <= x}, 0 below the support.
  double cdf(double x) const;
  /// F(x-) = sup_{y<x} F(y).
  double cdf_left(double x) const;

  /// Expectation; accumulated back-to-front so it matches the integrated
  /// quantile's knot value at 0 bit for bit.
  double mean() const;
  double min() const { return values_.front(); }  // q(0+)
  double max() const { return values_.back(); }   // q(1-)

  /// Probability mass of atom i.
  double mass(std::size_t i) const;
  /// Jump q+(u) - q(u) at an interior breakpoint; 0 if u is not one.
  double jump_at(double u) const;

  StepQuantile translated(double c) const;
  /// Law of the negated random variable (atom-exact, no re-sorting).
  StepQuantile negated() const;

  friend bool operator==(const StepQuantile&, const StepQuantile&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// Canonical quantile of the discrete law given by samples and positive
/// weights. Weights must sum to 1 within tol and are renormalized exactly.
StepQuantile build_distribution(std::span<const double> values,
                                std::span<const double> weights,
                                double tol = kDefaultTol);

/// Equally weighted samples.
StepQuantile build_distribution(std::span<const double> values,
                                double tol = kDefaultTol);

}  // namespace stochord
