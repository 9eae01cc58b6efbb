#pragma once

#include <cstdint>
#include <vector>

#include "stochord/step_quantile.hpp"

namespace stochord {

/// Deterministic stream of uniforms/integers; identical output on every
/// platform for a given seed (no std::*_distribution involved).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform double in [0,1).
  double uniform();
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool coin() { return (next_u64() & 1u) != 0; }

 private:
  std::uint64_t s_[4];
};

/// Per-trial seed derived from a master seed (splittable, order-free).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct LawGenParams {
  int min_support = 2;
  int max_support = 8;
  double value_lo = -5.0;
  double value_hi = 5.0;
  /// Dyadic mode draws breakpoints on a 2^-12 grid and values on a 2^-8
  /// grid, making integration/differentiation roundtrips exact in binary
  /// floating point. Otherwise values land on a 1e-3 grid and weights come
  /// from an integer Dirichlet-like draw, renormalized.
  bool dyadic = false;
  /// When positive, breakpoints are drawn as ticks/denominator. Chord
  /// oracles resolve such laws exactly when the denominator matches the
  /// oracle grid spacing.
  int grid_denominator = 0;
};

StepQuantile random_law(Rng& rng, const LawGenParams& params = {});

/// Family of the given size; all members share params.
std::vector<StepQuantile> random_family(Rng& rng, int size,
                                        const LawGenParams& params = {});

/// Random law translated so its mean equals `mean` exactly enough for cx
/// work (exact in dyadic mode).
StepQuantile random_law_with_mean(Rng& rng, double mean,
                                  const LawGenParams& params = {});

}  // namespace stochord
