#include "stochord/json_io.hpp"

#include <cmath>
#include <limits>

namespace stochord {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> number_array(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) throw ParseError(std::string(what) + ": expected numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field: ") + key);
  return *it;
}

}  // namespace

json number_to_json(double x) {
  if (x == kInf) return json("inf");
  if (x == -kInf) return json("-inf");
  return json(x);
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ParseError("expected a number or \"inf\"/\"-inf\"");
}

json distribution_to_json(const StepQuantile& q) {
  return json{{"kind", "quantile"},
              {"breakpoints", q.breakpoints()},
              {"values", q.values()}};
}

StepQuantile distribution_from_json(const json& j, double tol) {
  if (!j.is_object()) throw ParseError("distribution: expected an object");
  const auto kind = field(j, "kind").get<std::string>();
  try {
    if (kind == "samples") {
      const auto values = number_array(field(j, "values"), "values");
      if (j.contains("weights")) {
        const auto weights = number_array(j["weights"], "weights");
        return build_distribution(values, weights, tol);
      }
      return build_distribution(values, tol);
    }
    if (kind == "quantile") {
      return StepQuantile(number_array(field(j, "breakpoints"), "breakpoints"),
                          number_array(field(j, "values"), "values"), tol);
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  throw ParseError("distribution: unknown kind \"" + kind + "\"");
}

json verdict_to_json(OrderRelation rel, const OrderVerdict& v) {
  json j{{"relation", to_string(rel)}, {"holds", v.holds}, {"margin", v.margin}};
  if (v.witness_u) {
    json w{{"u", *v.witness_u}};
    if (v.witness_v) w["v"] = *v.witness_v;
    j["witness"] = w;
  }
  return j;
}

json curve_to_json(const PenaltyCurve& c) {
  json values = json::array();
  for (double v : c.values) values.push_back(number_to_json(v));
  return json{{"kind", c.kind == PenaltyCurve::Kind::step_left
                           ? "step-left"
                           : "piecewise-linear"},
              {"grid", c.grid},
              {"values", values}};
}

PenaltyCurve curve_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("curve: expected an object");
  const auto kind = field(j, "kind").get<std::string>();
  auto grid = number_array(field(j, "grid"), "grid");
  std::vector<double> values;
  for (const auto& e : field(j, "values")) values.push_back(number_from_json(e));
  try {
    if (kind == "step-left") return PenaltyCurve::step(std::move(grid), std::move(values));
    if (kind == "piecewise-linear")
      return PenaltyCurve::piecewise(std::move(grid), std::move(values));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  throw ParseError("curve: unknown kind \"" + kind + "\"");
}

json family_to_json(const PenaltyFamily& f) {
  json curves = json::array();
  for (const auto& c : f.curves) curves.push_back(curve_to_json(c));
  return json{{"levels", f.s_levels}, {"curves", curves}};
}

PenaltyFamily family_from_json(const json& j) {
  PenaltyFamily f;
  f.s_levels = number_array(field(j, "levels"), "levels");
  for (const auto& e : field(j, "curves")) f.curves.push_back(curve_from_json(e));
  try {
    f.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return f;
}

json functional_to_json(const FunctionalSpec& s) {
  json j{{"tag", to_string(s.tag)}};
  switch (s.tag) {
    case FunctionalTag::var:
    case FunctionalTag::es:
    case FunctionalTag::es_bar:
      j["u"] = s.level;
      break;
    case FunctionalTag::penalty_st:
    case FunctionalTag::penalty_icx:
    case FunctionalTag::penalty_icv:
      j["curve"] = curve_to_json(*s.curve);
      break;
    case FunctionalTag::g_family:
      j["levels"] = s.family->s_levels;
      j["curves"] = json::array();
      for (const auto& c : s.family->curves) j["curves"].push_back(curve_to_json(c));
      j["relation"] = to_string(s.g_relation);
      break;
  }
  return j;
}

FunctionalSpec functional_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("functional: expected an object");
  const auto tag = field(j, "tag").get<std::string>();
  try {
    if (tag == "var") return FunctionalSpec::var_at(field(j, "u").get<double>());
    if (tag == "es") return FunctionalSpec::es_at(field(j, "u").get<double>());
    if (tag == "es_bar")
      return FunctionalSpec::es_bar_at(field(j, "u").get<double>());
    if (tag == "penalty_st" || tag == "penalty_icx" || tag == "penalty_icv") {
      const FunctionalTag t = tag == "penalty_st"   ? FunctionalTag::penalty_st
                              : tag == "penalty_icx" ? FunctionalTag::penalty_icx
                                                     : FunctionalTag::penalty_icv;
      return FunctionalSpec::penalty(t, curve_from_json(field(j, "curve")));
    }
    if (tag == "g_family") {
      PenaltyFamily fam;
      fam.s_levels = number_array(field(j, "levels"), "levels");
      for (const auto& e : field(j, "curves"))
        fam.curves.push_back(curve_from_json(e));
      fam.validate();
      const auto rel =
          order_relation_from_string(field(j, "relation").get<std::string>());
      return FunctionalSpec::g_transform(std::move(fam), rel);
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  throw ParseError("functional: unknown tag \"" + tag + "\"");
}

json report_to_json(const MaxitivityReport& r) {
  json counter = nullptr;
  if (r.counterexample) {
    json fam = json::array();
    for (const auto& q : r.counterexample->family)
      fam.push_back(distribution_to_json(q));
    counter = json{{"family", fam},
                   {"psi_sup", number_to_json(r.counterexample->psi_sup)},
                   {"psi_max", number_to_json(r.counterexample->psi_max)}};
  }
  return json{{"trials", r.trials},
              {"max_deviation", number_to_json(r.max_deviation)},
              {"violations", r.violations},
              {"counterexample", counter},
              {"seed", r.seed}};
}

}  // namespace stochord
