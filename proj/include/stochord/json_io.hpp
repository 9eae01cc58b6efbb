#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "stochord/maxitive.hpp"
#include "stochord/orders.hpp"
#include "stochord/step_quantile.hpp"

namespace stochord {

/// Raised on any schema or invariant violation during ingestion.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using nlohmann::json;

// Distribution: {"kind":"samples","values":[...],"weights":[...]} (weights
// optional, default uniform) or {"kind":"quantile","breakpoints":[...,1.0],
// "values":[...]}.
json distribution_to_json(const StepQuantile& q);
StepQuantile distribution_from_json(const json& j, double tol = kDefaultTol);

json verdict_to_json(OrderRelation rel, const OrderVerdict& v);

// Curves: {"kind":"step-left","grid":[...],"values":[...]} with "-inf"
// allowed among values, or {"kind":"piecewise-linear","grid":[0,...,1],
// "values":[...]}.
json curve_to_json(const PenaltyCurve& c);
PenaltyCurve curve_from_json(const json& j);

json family_to_json(const PenaltyFamily& f);
PenaltyFamily family_from_json(const json& j);

// {"tag":"es","u":0.9} | {"tag":"penalty_st","curve":{...}} |
// {"tag":"g_family","levels":[...],"curves":[...],"relation":"st"}.
json functional_to_json(const FunctionalSpec& s);
FunctionalSpec functional_from_json(const json& j);

json report_to_json(const MaxitivityReport& r);

/// +inf <-> "inf" (JSON has no infinities); -inf <-> "-inf".
json number_to_json(double x);
double number_from_json(const json& j);

}  // namespace stochord
