#include "stochord/random_laws.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace stochord {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& s : s_) s = splitmix64(x);
}

std::uint64_t Rng::next_u64() {
  // xoshiro256++
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next_u64() % span);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t x = master ^ (0x9e3779b97f4a7c15ull * (index + 1));
  std::uint64_t a = splitmix64(x);
  return splitmix64(x) ^ a;
}

StepQuantile random_law(Rng& rng, const LawGenParams& params) {
  const int n = static_cast<int>(
      rng.uniform_int(params.min_support, params.max_support));

  if (params.dyadic) {
    // Breakpoints on k/4096, values on k/256: masses, products and their
    // partial sums are all exactly representable, so integration and slope
    // extraction invert each other bit for bit.
    std::set<std::int64_t> cuts;
    while (static_cast<int>(cuts.size()) < n - 1)
      cuts.insert(rng.uniform_int(1, 4095));
    std::set<std::int64_t> vticks;
    const auto vlo = static_cast<std::int64_t>(std::ceil(params.value_lo * 256.0));
    const auto vhi = static_cast<std::int64_t>(std::floor(params.value_hi * 256.0));
    while (static_cast<int>(vticks.size()) < n)
      vticks.insert(rng.uniform_int(vlo, vhi));
    std::vector<double> bps, vals;
    for (std::int64_t c : cuts) bps.push_back(static_cast<double>(c) * 0x1.0p-12);
    bps.push_back(1.0);
    for (std::int64_t v : vticks) vals.push_back(static_cast<double>(v) * 0x1.0p-8);
    return StepQuantile(std::move(bps), std::move(vals));
  }

  if (params.grid_denominator > 0) {
    const std::int64_t denom = params.grid_denominator;
    std::set<std::int64_t> cuts;
    while (static_cast<int>(cuts.size()) < std::min(n, static_cast<int>(denom)) - 1)
      cuts.insert(rng.uniform_int(1, denom - 1));
    std::set<std::int64_t> vticks;
    const auto vlo = static_cast<std::int64_t>(std::ceil(params.value_lo * 1000.0));
    const auto vhi = static_cast<std::int64_t>(std::floor(params.value_hi * 1000.0));
    while (static_cast<int>(vticks.size()) < static_cast<int>(cuts.size()) + 1)
      vticks.insert(rng.uniform_int(vlo, vhi));
    std::vector<double> bps, vals;
    for (std::int64_t c : cuts)
      bps.push_back(static_cast<double>(c) / static_cast<double>(denom));
    bps.push_back(1.0);
    for (std::int64_t v : vticks) vals.push_back(static_cast<double>(v) / 1000.0);
    return StepQuantile(std::move(bps), std::move(vals));
  }

  // Values on a 1e-3 grid, Dirichlet-like integer weights renormalized.
  std::vector<double> values(n), weights(n);
  const auto lo = static_cast<std::int64_t>(std::ceil(params.value_lo * 1000.0));
  const auto hi = static_cast<std::int64_t>(std::floor(params.value_hi * 1000.0));
  for (int i = 0; i < n; ++i)
    values[i] = static_cast<double>(rng.uniform_int(lo, hi)) / 1000.0;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    weights[i] = static_cast<double>(rng.uniform_int(1, 1000));
    total += weights[i];
  }
  for (double& w : weights) w /= total;
  return build_distribution(values, weights);
}

std::vector<StepQuantile> random_family(Rng& rng, int size,
                                        const LawGenParams& params) {
  std::vector<StepQuantile> fam;
  fam.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) fam.push_back(random_law(rng, params));
  return fam;
}

StepQuantile random_law_with_mean(Rng& rng, double mean,
                                  const LawGenParams& params) {
  StepQuantile q = random_law(rng, params);
  return q.translated(mean - q.mean());
}

}  // namespace stochord
