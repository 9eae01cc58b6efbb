#pragma once

namespace stochord {

// Absolute tolerance used by order predicates, concavity checks and
// ingestion validation unless the caller overrides it.
inline constexpr double kDefaultTol = 1e-9;

}  // namespace stochord
