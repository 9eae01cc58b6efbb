#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "stochord/lattice.hpp"
#include "stochord/oracles.hpp"
#include "stochord/random_laws.hpp"

using namespace stochord;

namespace {

constexpr int kTrials = 200;

StepQuantile d01() { return build_distribution(std::vector<double>{0, 1}); }
StepQuantile dm12() { return build_distribution(std::vector<double>{-1, 2}); }
StepQuantile dcross() {
  return build_distribution(std::vector<double>{-0.5, 1.2});
}

}  // namespace

TEST_CASE("st supremum is the pointwise max") {
  const StepQuantile sup =
      sup_order(OrderRelation::st, QuantileFamily({d01(), dm12()}));
  CHECK(sup.breakpoints() == std::vector<double>{0.5, 1.0});
  CHECK(sup.values() == std::vector<double>{0.0, 2.0});
}

TEST_CASE("icx supremum goes through the concave envelope") {
  const StepQuantile sup =
      sup_order(OrderRelation::icx, QuantileFamily({d01(), dcross()}));
  CHECK(sup.breakpoints() == std::vector<double>{0.5, 1.0});
  CHECK(sup.values()[0] == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(sup.values()[1] == doctest::Approx(1.2).epsilon(1e-12));

  // Dominated family: the envelope is the dominating member.
  std::vector<PiecewiseLinearFn> fns{integrated_quantile(d01()),
                                     integrated_quantile(dm12())};
  CHECK(concave_envelope(fns) == integrated_quantile(dm12()));
  CHECK(concave_envelope({fns.data(), 1}) == fns[0]);
  CHECK_THROWS_AS(concave_envelope({fns.data(), 0}), std::invalid_argument);
}

TEST_CASE("disp supremum accumulates maximal jumps from zero") {
  const StepQuantile sup =
      sup_order(OrderRelation::disp, QuantileFamily({d01(), dm12()}));
  CHECK(sup.breakpoints() == std::vector<double>{0.5, 1.0});
  CHECK(sup.values() == std::vector<double>{0.0, 3.0});
}

TEST_CASE("cx supremum needs equal means") {
  CHECK(sup_order(OrderRelation::cx, QuantileFamily({d01(), dm12()})) ==
        sup_order(OrderRelation::icx, QuantileFamily({d01(), dm12()})));
  CHECK_THROWS_AS(sup_order(OrderRelation::cx,
                            QuantileFamily({d01(), dm12().translated(1.0)})),
                  std::invalid_argument);
}

TEST_CASE("total variation on the worked family") {
  const QuantileFamily fam({d01(), dm12()});
  CHECK(total_variation(fam, 0.0, 1.0) == 3.0);
  CHECK(total_variation(fam, 0.0, 0.5) == 0.0);  // jump at 0.5 not in [0,0.5)
  CHECK(total_variation(fam, 0.5, 1.0) == 3.0);
  const QuantileFamily single({dm12()});
  CHECK(total_variation(single, 0.0, 1.0) == dm12().max() - dm12().min());
  const QuantileFamily consts({StepQuantile::constant(1.0),
                               StepQuantile::constant(-2.0)});
  CHECK(total_variation(consts, 0.0, 1.0) == 0.0);
  CHECK_THROWS_AS(total_variation(fam, 0.7, 0.3), std::invalid_argument);
}

TEST_CASE("supremum is an upper bound and least among constructed bounds") {
  const OrderRelation rels[] = {OrderRelation::st, OrderRelation::icx,
                                OrderRelation::cx, OrderRelation::icv,
                                OrderRelation::disp};
  LawGenParams lp;
  lp.max_support = 5;
  for (int t = 0; t < kTrials; ++t) {
    Rng rng(derive_seed(31, static_cast<std::uint64_t>(t)));
    for (OrderRelation rel : rels) {
      auto members =
          random_family(rng, static_cast<int>(rng.uniform_int(1, 4)), lp);
      if (rel == OrderRelation::cx)
        for (std::size_t i = 1; i < members.size(); ++i)
          members[i] =
              members[i].translated(members[0].mean() - members[i].mean());
      const QuantileFamily fam(members);
      const StepQuantile sup = sup_order(rel, fam);
      for (const auto& m : fam.members())
        CHECK(check_order(rel, m, sup).holds);

      StepQuantile extra = random_law(rng, lp);
      if (rel == OrderRelation::cx)
        extra = extra.translated(sup.mean() - extra.mean());
      const StepQuantile ub = sup_order(rel, QuantileFamily({sup, extra}));
      CHECK(check_order(rel, sup, ub).holds);

      if (rel == OrderRelation::disp) {
        CHECK(sup.min() == 0.0);
        // Inflating every jump is a valid upper perturbation for disp.
        std::vector<double> inflated(sup.values());
        const double lambda = 1.0 + rng.uniform(0.0, 1.0);
        for (double& v : inflated) v *= lambda;
        CHECK(check_order(rel, sup,
                          StepQuantile(sup.breakpoints(), std::move(inflated)))
                  .holds);
      }
      if (rel == OrderRelation::cx)
        CHECK(sup.mean() ==
              doctest::Approx(fam.members()[0].mean()).epsilon(1e-12));
    }
  }
}

TEST_CASE("supremum is order-independent and idempotent") {
  LawGenParams dyadic;
  dyadic.dyadic = true;
  dyadic.max_support = 5;
  const OrderRelation rels[] = {OrderRelation::st, OrderRelation::icx,
                                OrderRelation::icv, OrderRelation::disp};
  for (int t = 0; t < kTrials; ++t) {
    Rng rng(derive_seed(32, static_cast<std::uint64_t>(t)));
    auto members =
        random_family(rng, static_cast<int>(rng.uniform_int(2, 4)), dyadic);
    for (OrderRelation rel : rels) {
      const StepQuantile sup = sup_order(rel, QuantileFamily(members));
      auto rev = members;
      std::reverse(rev.begin(), rev.end());
      CHECK(sup_order(rel, QuantileFamily(rev)) == sup);

      const StepQuantile x = members[0];
      if (rel == OrderRelation::disp)
        CHECK(sup_order(rel, QuantileFamily({x})) ==
              x.translated(-x.min()));
      else
        CHECK(sup_order(rel, QuantileFamily({x})) == x);
    }
  }
}

TEST_CASE("envelope oracle fixed points") {
  oracles::GridSpec grid;
  const auto us = oracles::envelope_grid(grid);
  // A single concave function is its own envelope.
  const PiecewiseLinearFn q = integrated_quantile(dm12());
  const std::vector<PiecewiseLinearFn> one{q};
  const auto self = oracles::envelope_oracle(one, grid);
  for (std::size_t i = 0; i < us.size(); ++i)
    CHECK(self[i] == doctest::Approx(q.value(us[i])).epsilon(1e-9));
  // A dominated pair collapses onto the dominating member.
  const std::vector<PiecewiseLinearFn> pair{integrated_quantile(d01()), q};
  const auto dom = oracles::envelope_oracle(pair, grid);
  for (std::size_t i = 0; i < us.size(); ++i)
    CHECK(dom[i] == doctest::Approx(q.value(us[i])).epsilon(1e-9));
}

TEST_CASE("icx supremum matches the chord oracle") {
  oracles::GridSpec grid;  // 401 points
  const auto us = oracles::envelope_grid(grid);
  // The oracle's chords live on the grid, so it resolves laws whose
  // breakpoints are grid-aligned; values stay arbitrary.
  LawGenParams aligned;
  aligned.grid_denominator = grid.points - 1;
  for (int t = 0; t < 50; ++t) {
    Rng rng(derive_seed(33, static_cast<std::uint64_t>(t)));
    const auto members = random_family(rng, 2, aligned);
    const StepQuantile sup =
        sup_order(OrderRelation::icx, QuantileFamily(members));
    const PiecewiseLinearFn got = integrated_quantile(sup);
    std::vector<PiecewiseLinearFn> fns;
    for (const auto& m : members) fns.push_back(integrated_quantile(m));
    const auto expected = oracles::envelope_oracle(fns, grid);
    for (std::size_t i = 0; i < us.size(); ++i)
      CHECK(got.value(us[i]) == doctest::Approx(expected[i]).epsilon(1e-9));
  }
}

TEST_CASE("total variation matches the partition oracle") {
  LawGenParams lp;
  lp.max_support = 4;
  for (int t = 0; t < 100; ++t) {
    Rng rng(derive_seed(34, static_cast<std::uint64_t>(t)));
    const QuantileFamily fam(
        random_family(rng, static_cast<int>(rng.uniform_int(1, 3)), lp));
    if (fam.merged_grid().size() > 12) continue;
    const auto o = oracles::tv_partition_oracle(fam, 0.0, 1.0);
    CHECK(total_variation(fam, 0.0, 1.0) ==
          doctest::Approx(o.upper_sum).epsilon(1e-12));
    CHECK(o.upper_sum == doctest::Approx(o.lower_sum).epsilon(1e-12));

    // Additivity and left-continuity at a random cut.
    const double u = rng.uniform(0.1, 0.9);
    CHECK(total_variation(fam, 0.0, 1.0) ==
          doctest::Approx(total_variation(fam, 0.0, u) +
                          total_variation(fam, u, 1.0))
              .epsilon(1e-12));
    for (double w : fam.merged_grid())
      if (w > 1e-6)
        CHECK(total_variation(fam, 0.0, w) ==
              total_variation(fam, 0.0, w - 1e-7));
  }
}

TEST_CASE("icv supremum equals the pointwise max of reflections on a grid") {
  LawGenParams lp;
  lp.max_support = 6;
  for (int t = 0; t < 100; ++t) {
    Rng rng(derive_seed(36, static_cast<std::uint64_t>(t)));
    const auto members =
        random_family(rng, static_cast<int>(rng.uniform_int(2, 5)), lp);
    const StepQuantile sup =
        sup_order(OrderRelation::icv, QuantileFamily(members));
    const PiecewiseLinearFn got = reflected_integrated(sup);
    for (int i = 1; i < 200; ++i) {
      const double u = static_cast<double>(i) / 200.0;
      double want = reflected_integrated(members[0]).value(u);
      for (std::size_t m = 1; m < members.size(); ++m)
        want = std::max(want, reflected_integrated(members[m]).value(u));
      CHECK(got.value(u) == doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("icx supremum matches the chord oracle on larger families") {
  oracles::GridSpec grid;
  const auto us = oracles::envelope_grid(grid);
  LawGenParams aligned;
  aligned.grid_denominator = grid.points - 1;
  aligned.max_support = 6;
  for (int t = 0; t < 20; ++t) {
    Rng rng(derive_seed(37, static_cast<std::uint64_t>(t)));
    const auto members =
        random_family(rng, static_cast<int>(rng.uniform_int(3, 5)), aligned);
    const StepQuantile sup =
        sup_order(OrderRelation::icx, QuantileFamily(members));
    const PiecewiseLinearFn got = integrated_quantile(sup);
    std::vector<PiecewiseLinearFn> fns;
    for (const auto& m : members) fns.push_back(integrated_quantile(m));
    const auto expected = oracles::envelope_oracle(fns, grid);
    for (std::size_t i = 0; i < us.size(); ++i)
      CHECK(got.value(us[i]) == doctest::Approx(expected[i]).epsilon(1e-9));
  }
}

TEST_CASE("suprema behave at scale and with shared breakpoints") {
  LawGenParams big;
  big.min_support = 8;
  big.max_support = 32;
  big.value_lo = -1e6;
  big.value_hi = 1e6;
  const OrderRelation rels[] = {OrderRelation::st, OrderRelation::icx,
                                OrderRelation::icv, OrderRelation::disp};
  for (int t = 0; t < 40; ++t) {
    Rng rng(derive_seed(38, static_cast<std::uint64_t>(t)));
    auto members = random_family(rng, 3, big);
    // Shared breakpoints: one member reuses another's grid with new values.
    members.push_back(members[0].translated(rng.uniform(-1e3, 1e3)));
    const QuantileFamily fam(members);
    for (OrderRelation rel : rels) {
      const StepQuantile sup = sup_order(rel, fam, 1e-3);
      for (const auto& m : fam.members())
        CHECK(check_order(rel, m, sup, 1e-3).holds);
    }
  }
}

TEST_CASE("dispersive supremum realizes the running total variation") {
  for (int t = 0; t < 100; ++t) {
    Rng rng(derive_seed(35, static_cast<std::uint64_t>(t)));
    const QuantileFamily fam(
        random_family(rng, static_cast<int>(rng.uniform_int(2, 4))));
    const StepQuantile sup = sup_order(OrderRelation::disp, fam);
    double prev = 0.0;
    for (double w : sup.breakpoints()) {
      const double mid = 0.5 * (prev + w);
      if (mid > 0.0 && mid < 1.0)
        CHECK(sup.value(mid) ==
              doctest::Approx(total_variation(fam, 0.0, mid)).epsilon(1e-12));
      prev = w;
    }
  }
}
