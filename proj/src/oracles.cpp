#include "stochord/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stochord {
namespace oracles {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// q with the endpoint conventions q(0) := q(0+), q(1) := q(1-).
double q_at(const StepQuantile& q, double t) {
  if (t <= 0.0) return q.min();
  if (t >= 1.0) return q.max();
  return q.value(t);
}

double q_plus_at(const StepQuantile& q, double t) {
  if (t <= 0.0) return q.min();
  if (t >= 1.0) return q.max();
  return q.upper_value(t);
}

// Midpoints and breakpoints: every inclusion pattern of jumps in an
// interval is realized by endpoints drawn from this set.
std::vector<double> candidate_points(const StepQuantile& a,
                                     const StepQuantile& b) {
  std::vector<double> bps;
  for (double w : a.breakpoints())
    if (w != 1.0) bps.push_back(w);
  for (double w : b.breakpoints())
    if (w != 1.0) bps.push_back(w);
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  std::vector<double> pts;
  double prev = 0.0;
  for (double w : bps) {
    pts.push_back(0.5 * (prev + w));
    pts.push_back(w);
    prev = w;
  }
  pts.push_back(0.5 * (prev + 1.0));
  return pts;
}

}  // namespace

std::vector<double> envelope_grid(const GridSpec& grid) {
  if (grid.points < 3)
    throw std::invalid_argument("GridSpec: need at least 3 points");
  if (!(grid.epsilon > 0.0))
    throw std::invalid_argument("GridSpec: epsilon must be positive");
  std::vector<double> us(static_cast<std::size_t>(grid.points));
  for (int i = 0; i < grid.points; ++i)
    us[static_cast<std::size_t>(i)] =
        static_cast<double>(i) / static_cast<double>(grid.points - 1);
  return us;
}

std::vector<double> envelope_oracle(std::span<const PiecewiseLinearFn> fns,
                                    const GridSpec& grid) {
  if (fns.empty()) throw std::invalid_argument("envelope_oracle: empty input");
  const auto us = envelope_grid(grid);
  const std::size_t n = us.size();

  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    double m = fns[0].value(us[i]);
    for (std::size_t k = 1; k < fns.size(); ++k)
      m = std::max(m, fns[k].value(us[i]));
    g[i] = m;
  }

  std::vector<double> env(n);
  for (std::size_t i = 0; i < n; ++i) {
    double best = g[i];
    for (std::size_t a = 0; a <= i; ++a) {
      for (std::size_t b = i; b < n; ++b) {
        if (a == b) continue;
        const double lambda = (us[b] - us[i]) / (us[b] - us[a]);
        best = std::max(best, lambda * g[a] + (1.0 - lambda) * g[b]);
      }
    }
    env[i] = best;
  }
  return env;
}

namespace {

double partition_sum(const QuantileFamily& fam, const std::vector<double>& pts,
                     bool lower_form) {
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    double inc = -kInf;
    for (const auto& q : fam.members()) {
      const double left =
          lower_form ? q_plus_at(q, pts[i - 1]) : q_at(q, pts[i - 1]);
      inc = std::max(inc, q_at(q, pts[i]) - left);
    }
    total += inc;
  }
  return total;
}

// Max over partitions with interior points from `candidates`, either by
// exhaustive subset enumeration or, beyond 20 candidates, by the
// equivalent shortest-path style sweep.
double max_over_partitions(const QuantileFamily& fam, double u, double v,
                           const std::vector<double>& candidates,
                           bool lower_form) {
  const std::size_t c = candidates.size();
  if (c <= 20) {
    double best = -kInf;
    std::vector<double> pts;
    for (std::uint64_t mask = 0; mask < (1ull << c); ++mask) {
      pts.clear();
      pts.push_back(u);
      for (std::size_t i = 0; i < c; ++i)
        if (mask & (1ull << i)) pts.push_back(candidates[i]);
      pts.push_back(v);
      best = std::max(best, partition_sum(fam, pts, lower_form));
    }
    return best;
  }
  // best[j] = max partition sum from u to point j.
  std::vector<double> nodes;
  nodes.push_back(u);
  nodes.insert(nodes.end(), candidates.begin(), candidates.end());
  nodes.push_back(v);
  std::vector<double> best(nodes.size(), -kInf);
  best[0] = 0.0;
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      double inc = -kInf;
      for (const auto& q : fam.members()) {
        const double left =
            lower_form ? q_plus_at(q, nodes[i]) : q_at(q, nodes[i]);
        inc = std::max(inc, q_at(q, nodes[j]) - left);
      }
      best[j] = std::max(best[j], best[i] + inc);
    }
  }
  return best.back();
}

}  // namespace

TvOracleResult tv_partition_oracle(const QuantileFamily& fam, double u,
                                   double v, int max_points) {
  if (!(u >= 0.0 && v <= 1.0 && u < v))
    throw std::invalid_argument("tv_partition_oracle: need 0 <= u < v <= 1");
  std::vector<double> inside;
  for (double w : fam.merged_grid())
    if (w > u && w < v) inside.push_back(w);
  if (static_cast<int>(inside.size()) > max_points)
    throw std::invalid_argument("tv_partition_oracle: grid too large");

  std::vector<double> candidates;
  double prev = u;
  for (double w : inside) {
    candidates.push_back(0.5 * (prev + w));
    candidates.push_back(w);
    prev = w;
  }
  candidates.push_back(0.5 * (prev + v));

  TvOracleResult res;
  res.upper_sum = max_over_partitions(fam, u, v, candidates, false);
  res.lower_sum = max_over_partitions(fam, u, v, candidates, true);
  return res;
}

bool disp_increment_form(const StepQuantile& a, const StepQuantile& b,
                         double tol) {
  const auto pts = candidate_points(a, b);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i; j < pts.size(); ++j) {
      const double u = pts[i], v = pts[j];
      if (a.value(v) - a.value(u) > b.value(v) - b.value(u) + tol)
        return false;
    }
  }
  return true;
}

bool disp_upper_quantile_form(const StepQuantile& a, const StepQuantile& b,
                              double tol) {
  const auto pts = candidate_points(a, b);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double u = pts[i], v = pts[j];
      if (a.value(v) - a.upper_value(u) > b.value(v) - b.upper_value(u) + tol)
        return false;
    }
  }
  return true;
}

namespace {

std::vector<double> scan_grid(const StepQuantile& a, const StepQuantile& b,
                              const GridSpec& grid) {
  std::vector<double> us;
  us.reserve(static_cast<std::size_t>(grid.points) + 6 * a.size());
  for (int i = 1; i + 1 < grid.points; ++i)
    us.push_back(static_cast<double>(i) / static_cast<double>(grid.points - 1));
  auto add_around = [&](double w) {
    for (double x : {w - grid.epsilon, w, w + grid.epsilon})
      if (x > 0.0 && x < 1.0) us.push_back(x);
  };
  for (double w : a.breakpoints()) add_around(w);
  for (double w : b.breakpoints()) add_around(w);
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  return us;
}

// Backward Riemann sums of the quantile on the scan grid; independent of
// the production integrated_quantile.
std::vector<double> riemann_integrated(const StepQuantile& q,
                                       const std::vector<double>& us) {
  std::vector<double> out(us.size(), 0.0);
  double acc = 0.0;
  for (std::size_t i = us.size(); i-- > 0;) {
    const double hi = i + 1 < us.size() ? us[i + 1] : 1.0;
    const double mid = 0.5 * (us[i] + hi);
    acc += q.value(mid) * (hi - us[i]);
    out[i] = acc;
  }
  return out;
}

}  // namespace

bool grid_order_oracle(OrderRelation rel, const StepQuantile& a,
                       const StepQuantile& b, const GridSpec& grid,
                       double tol) {
  if (grid.points < 3 || !(grid.epsilon > 0.0))
    throw std::invalid_argument("GridSpec: invalid grid");
  switch (rel) {
    case OrderRelation::st: {
      for (double u : scan_grid(a, b, grid))
        if (a.value(u) > b.value(u) + tol) return false;
      return true;
    }
    case OrderRelation::icx:
    case OrderRelation::cx: {
      const auto us = scan_grid(a, b, grid);
      const auto qa = riemann_integrated(a, us);
      const auto qb = riemann_integrated(b, us);
      if (rel == OrderRelation::cx) {
        // Riemann means over the full grid.
        double ma = qa.front() + a.value(0.5 * us.front()) * us.front();
        double mb = qb.front() + b.value(0.5 * us.front()) * us.front();
        if (std::fabs(ma - mb) > tol + 1.0 / static_cast<double>(grid.points))
          return false;
      }
      for (std::size_t i = 0; i < us.size(); ++i)
        if (qa[i] > qb[i] + tol) return false;
      return true;
    }
    case OrderRelation::icv: {
      // icv iff -b <=_icx -a; the negated quantile is sampled through the
      // identity q_{-x}(u) = -q+_x(1-u) rather than by rebuilding atoms.
      const auto us = scan_grid(a, b, grid);
      double acc_a = 0.0, acc_b = 0.0;
      for (std::size_t i = us.size(); i-- > 0;) {
        const double hi = i + 1 < us.size() ? us[i + 1] : 1.0;
        const double mid = 0.5 * (us[i] + hi);
        acc_a += -a.upper_value(1.0 - mid) * (hi - us[i]);
        acc_b += -b.upper_value(1.0 - mid) * (hi - us[i]);
        if (acc_b > acc_a + tol) return false;  // Q_{-b} <= Q_{-a}
      }
      return true;
    }
    case OrderRelation::disp:
      return disp_increment_form(a, b, tol) &&
             disp_upper_quantile_form(a, b, tol);
  }
  throw std::invalid_argument("unknown relation tag");
}

}  // namespace oracles
}  // namespace stochord
