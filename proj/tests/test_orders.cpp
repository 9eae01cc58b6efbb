#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "stochord/lattice.hpp"
#include "stochord/oracles.hpp"
#include "stochord/orders.hpp"
#include "stochord/random_laws.hpp"

using namespace stochord;

namespace {

constexpr int kTrials = 200;

StepQuantile d01() { return build_distribution(std::vector<double>{0, 1}); }
StepQuantile dm12() { return build_distribution(std::vector<double>{-1, 2}); }

StepQuantile dominating(OrderRelation rel, const StepQuantile& a, Rng& rng) {
  StepQuantile r = random_law(rng);
  if (rel == OrderRelation::cx) r = r.translated(a.mean() - r.mean());
  return sup_order(rel, QuantileFamily({a, r}));
}

}  // namespace

TEST_CASE("st verdicts on the canonical pairs") {
  const OrderVerdict holds =
      check_order(OrderRelation::st, StepQuantile::constant(0.0), d01());
  CHECK(holds.holds);
  CHECK(holds.margin == 0.0);
  CHECK_FALSE(holds.witness_u.has_value());

  const OrderVerdict fails = check_order(OrderRelation::st, d01(), dm12());
  CHECK_FALSE(fails.holds);
  CHECK(fails.margin == -1.0);
  REQUIRE(fails.witness_u.has_value());
  CHECK(*fails.witness_u > 0.0);
  CHECK(*fails.witness_u <= 0.5);  // the interval where q_a = 0 > -1 = q_b
}

TEST_CASE("icx and cx on the canonical pair") {
  CHECK(check_order(OrderRelation::icx, d01(), dm12()).holds);
  CHECK(check_order(OrderRelation::cx, d01(), dm12()).holds);  // equal means
  CHECK_FALSE(check_order(OrderRelation::icx, dm12(), d01()).holds);

  // Mean mismatch defeats cx even when icx holds.
  const StepQuantile shifted = dm12().translated(1.0);
  CHECK(check_order(OrderRelation::icx, d01(), shifted).holds);
  const OrderVerdict v = check_order(OrderRelation::cx, d01(), shifted);
  CHECK_FALSE(v.holds);
  CHECK(v.margin == doctest::Approx(-1.0));
}

TEST_CASE("disp basics") {
  CHECK(check_order(OrderRelation::disp, StepQuantile::constant(5.0), d01())
            .holds);
  CHECK_FALSE(
      check_order(OrderRelation::disp, d01(), StepQuantile::constant(5.0))
          .holds);
  CHECK(check_order(OrderRelation::disp, d01(), dm12()).holds);
  const OrderVerdict v = check_order(OrderRelation::disp, dm12(), d01());
  CHECK_FALSE(v.holds);
  CHECK(v.margin == doctest::Approx(-2.0));
  REQUIRE(v.witness_u.has_value());
  REQUIRE(v.witness_v.has_value());
  CHECK(*v.witness_u < *v.witness_v);
  CHECK(*v.witness_u > 0.0);
  CHECK(*v.witness_v < 1.0);
}

TEST_CASE("verdicts agree with the grid oracle") {
  oracles::GridSpec grid;
  grid.points = 2001;
  const OrderRelation rels[] = {OrderRelation::st, OrderRelation::icx,
                                OrderRelation::cx, OrderRelation::icv,
                                OrderRelation::disp};
  for (int t = 0; t < kTrials; ++t) {
    Rng rng(derive_seed(21, static_cast<std::uint64_t>(t)));
    const StepQuantile a = random_law(rng);
    for (OrderRelation rel : rels) {
      const StepQuantile b =
          rng.coin() ? random_law(rng) : dominating(rel, a, rng);
      const OrderVerdict v = check_order(rel, a, b);
      const bool oracle = oracles::grid_order_oracle(rel, a, b, grid);
      if (v.holds != oracle) CHECK(std::fabs(v.margin) <= 1e-8);
    }
  }
}

TEST_CASE("preorder structure: reflexive, transitive, implications") {
  const OrderRelation rels[] = {OrderRelation::st, OrderRelation::icx,
                                OrderRelation::cx, OrderRelation::icv,
                                OrderRelation::disp};
  for (int t = 0; t < kTrials; ++t) {
    Rng rng(derive_seed(22, static_cast<std::uint64_t>(t)));
    const StepQuantile a = random_law(rng);
    for (OrderRelation rel : rels) {
      CHECK(check_order(rel, a, a).holds);
      const StepQuantile b = dominating(rel, a, rng);
      const StepQuantile c = dominating(rel, b, rng);
      CHECK(check_order(rel, a, c).holds);
    }
    const StepQuantile b = dominating(OrderRelation::st, a, rng);
    CHECK(check_order(OrderRelation::icx, a, b).holds);
    CHECK(check_order(OrderRelation::icv, a, b).holds);

    const StepQuantile d = random_law(rng);
    CHECK(check_order(OrderRelation::icv, a, d).holds ==
          check_order(OrderRelation::icx, d.negated(), a.negated()).holds);
    CHECK(check_order(OrderRelation::cx, a, d).holds ==
          (std::fabs(a.mean() - d.mean()) <= kDefaultTol &&
           check_order(OrderRelation::icx, a, d).holds));
  }
}

TEST_CASE("disp window decision matches both characterizations") {
  for (int t = 0; t < kTrials; ++t) {
    Rng rng(derive_seed(23, static_cast<std::uint64_t>(t)));
    const StepQuantile a = random_law(rng);
    const StepQuantile b =
        rng.coin() ? random_law(rng) : dominating(OrderRelation::disp, a, rng);
    const bool window = check_order(OrderRelation::disp, a, b).holds;
    CHECK(window == oracles::disp_increment_form(a, b));
    CHECK(window == oracles::disp_upper_quantile_form(a, b));

    const double c = rng.uniform(-4.0, 4.0), e = rng.uniform(-4.0, 4.0);
    CHECK(window ==
          check_order(OrderRelation::disp, a.translated(c), b.translated(e))
              .holds);
  }
}

TEST_CASE("disp is a preorder, not antisymmetric") {
  const StepQuantile a = d01();
  const StepQuantile b = d01().translated(3.0);
  CHECK(check_order(OrderRelation::disp, a, b).holds);
  CHECK(check_order(OrderRelation::disp, b, a).holds);
  CHECK_FALSE(a == b);
}
