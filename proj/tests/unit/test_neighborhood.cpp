#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "frontier/neighborhood.hpp"
#include "frontier/sampling.hpp"

using namespace frontier;
using frontier::testing::portfolio_of;
using frontier::testing::standin_spec;

namespace {

std::set<std::size_t> assets_of(const Portfolio& p) {
  std::set<std::size_t> s;
  for (const auto& h : p.holdings()) s.insert(h.asset);
  return s;
}

std::multiset<double> weights_of(const Portfolio& p) {
  std::multiset<double> s;
  for (const auto& h : p.holdings()) s.insert(h.weight);
  return s;
}

}  // namespace

TEST_CASE("replace_asset") {
  SUBCASE("the only move on N = 2, K = 1") {
    const ProblemSpec spec(frontier::testing::universe_of({0.1, 0.2}, {0.1, 0.2}, {{1, 0}, {0, 1}}), 1, 0.01, 2);
    RngStream rng(1);
    const auto r = replace_asset(portfolio_of({{0, 1.0}}), spec, rng);
    REQUIRE(r);
    CHECK(r->first == portfolio_of({{1, 1.0}}));
    CHECK(r->second.out == 0);
    CHECK(r->second.in == 1);
  }
  SUBCASE("empty when K = N") {
    const auto spec = standin_spec(0, 31);
    RngStream rng(2);
    const auto p = random_portfolio_sequential(spec, rng);
    CHECK_FALSE(replace_asset(p, spec, rng));
  }
  SUBCASE("10^5 applications stay feasible, change one asset and keep the weights") {
    const auto spec = standin_spec(0);
    RngStream rng(3);
    auto p = random_portfolio_sequential(spec, rng);
    std::size_t bad = 0;
    for (int t = 0; t < 100000; ++t) {
      const auto r = replace_asset(p, spec, rng);
      REQUIRE(r);
      const auto before = assets_of(p), after = assets_of(r->first);
      std::vector<std::size_t> gone;
      std::set_difference(before.begin(), before.end(), after.begin(), after.end(), std::back_inserter(gone));
      if (!check_feasible(r->first, spec).feasible() || gone.size() != 1 || gone[0] != r->second.out ||
          weights_of(p) != weights_of(r->first) || p.contains(r->second.in)) {
        ++bad;
      }
      p = r->first;
    }
    CHECK(bad == 0);
  }
  SUBCASE("the incoming asset is uniform over the unheld ones") {
    const auto spec = standin_spec(0);
    RngStream rng(4);
    const auto p = random_portfolio_sequential(spec, rng);
    std::vector<int> counts(31, 0);
    const int n = 210000;
    for (int t = 0; t < n; ++t) ++counts[replace_asset(p, spec, rng)->second.in];
    const double expect = n / 21.0, se = std::sqrt(expect * (1 - 1 / 21.0));
    for (std::size_t a = 0; a < 31; ++a) {
      if (p.contains(a)) {
        CHECK(counts[a] == 0);
      } else {
        CHECK(std::abs(counts[a] - expect) <= 4.5 * se);
      }
    }
  }
}

TEST_CASE("change_weights") {
  SUBCASE("pinned pairs leave the neighborhood empty") {
    const ProblemSpec spec(frontier::testing::universe_of({0.1, 0.2}, {0.1, 0.2}, {{1, 0}, {0, 1}}), 2, 0.5, 2);
    RngStream rng(5);
    CHECK_FALSE(change_weights(portfolio_of({{0, 0.5}, {1, 0.5}}), spec, rng));
    const ProblemSpec single(spec.universe_ptr(), 1, 0.01, 2);
    CHECK_FALSE(change_weights(portfolio_of({{0, 1.0}}), single, rng));
  }
  SUBCASE("a (0.5, 0.3) pair moves inside [l, 0.8 - l]") {
    const auto spec = standin_spec(0, 3);
    RngStream rng(6);
    const auto p = portfolio_of({{0, 0.5}, {1, 0.3}, {2, 0.2}});
    int seen = 0;
    for (int t = 0; t < 20000; ++t) {
      const auto r = change_weights(p, spec, rng);
      REQUIRE(r);
      if (r->first[2].weight != 0.2) continue;
      ++seen;
      const double x = r->first[0].weight;
      CHECK(x >= 0.01);
      CHECK(x <= 0.79);
      CHECK(x + r->first[1].weight == doctest::Approx(0.8).epsilon(1e-15));
    }
    CHECK(seen > 5000);
  }
  SUBCASE("10^5 applications conserve the pair sum and leave other weights untouched") {
    const auto spec = standin_spec(0);
    RngStream rng(7);
    auto p = random_portfolio_sequential(spec, rng);
    std::size_t bad = 0;
    for (int t = 0; t < 100000; ++t) {
      const auto r = change_weights(p, spec, rng);
      REQUIRE(r);
      const Move& m = r->second;
      const double before = p[m.slot].weight + p[m.other_slot].weight;
      const double after = r->first[m.slot].weight + r->first[m.other_slot].weight;
      bool ok = check_feasible(r->first, spec).feasible() && std::abs(before - after) <= 1e-15;
      ok = ok && m.delta > 0.0 && m.slot != m.other_slot && m.from_weight >= spec.min_weight() - 1e-12;
      for (std::size_t s = 0; s < p.size(); ++s) {
        if (s != m.slot && s != m.other_slot) ok = ok && p[s] == r->first[s];
      }
      ok = ok && assets_of(p) == assets_of(r->first);
      if (!ok) ++bad;
      p = r->first;
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("move tags") {
  const auto p = portfolio_of({{3, 0.4}, {7, 0.6}});
  const Move down = make_transfer(p, 0, 1, 0.3);
  CHECK(down.from == 3);
  CHECK(down.to == 7);
  CHECK(down.delta == doctest::Approx(0.1));
  CHECK(down.tags()[0].attribute == Attribute::WeightDown);
  CHECK(down.tags()[0].asset == 3);
  CHECK(down.tags()[1].attribute == Attribute::WeightUp);
  CHECK(down.tags()[1].asset == 7);
  const Move up = make_transfer(p, 0, 1, 0.5);
  CHECK(up.from == 7);
  CHECK(up.to == 3);

  Move r;
  r.kind = MoveKind::AssetReplacement;
  r.out = 4;
  r.in = 9;
  CHECK(r.tags()[0].attribute == Attribute::AssetOut);
  CHECK(r.tags()[0].asset == 4);
  CHECK(r.tags()[1].attribute == Attribute::AssetIn);
  CHECK(r.tags()[1].asset == 9);
}

TEST_CASE("scale_weights") {
  SUBCASE("already summing to one is unchanged") {
    const std::vector<Holding> raw{{0, 0.25}, {1, 0.5}, {2, 0.25}};
    CHECK(scale_weights(raw, 0.01) == raw);
  }
  SUBCASE("two weights of 0.6 become 0.5 each") {
    const auto out = scale_weights({{0, 0.6}, {1, 0.6}}, 0.01);
    CHECK(out[0].weight == doctest::Approx(0.01 + 0.59 * (0.98 / 1.18)).epsilon(1e-15));
    CHECK(out[0].weight == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(out[1].weight == doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("zero free mass") {
    std::vector<Holding> raw;
    for (std::size_t i = 0; i < 10; ++i) raw.push_back({i, 0.1});
    CHECK(scale_weights(raw, 0.1) == raw);
  }
  SUBCASE("no mass above l falls back to equal weights") {
    const auto out = scale_weights({{0, 0.01}, {1, 0.01}, {2, 0.01}, {3, 0.01}}, 0.01);
    for (const auto& h : out) CHECK(h.weight == 0.25);
  }
  SUBCASE("weights below l are rejected") {
    CHECK_THROWS(scale_weights({{0, 0.005}, {1, 0.9}}, 0.01));
  }
  SUBCASE("rounding deficits below l are not amplified") {
    // Large rescale factor: nine holdings a hair under l and one just above it.
    std::vector<Holding> raw;
    for (std::size_t i = 0; i < 9; ++i) raw.push_back({i, 0.01 - 1e-13});
    raw.push_back({9, 0.011});
    for (int round = 0; round < 1000; ++round) {
      const auto out = scale_weights(raw, 0.01);
      double sum = 0.0;
      for (const auto& h : out) {
        REQUIRE(h.weight >= 0.01 - 1e-15);
        sum += h.weight;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-15);
      raw = out;
      for (std::size_t i = 0; i < 9; ++i) raw[i].weight = 0.01 - 1e-13;
      raw[9].weight = 0.011;
    }
  }
  SUBCASE("sum is one, weights stay above l, and the operation is idempotent") {
    RngStream rng(8);
    for (int t = 0; t < 10000; ++t) {
      std::vector<Holding> raw;
      for (std::size_t i = 0; i < 10; ++i) raw.push_back({i, rng.uniform(0.01, 0.5)});
      const auto once = scale_weights(raw, 0.01);
      double sum = 0.0;
      for (const auto& h : once) {
        CHECK(h.weight >= 0.01 - 1e-12);
        sum += h.weight;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-15);
      const auto twice = scale_weights(once, 0.01);
      for (std::size_t i = 0; i < once.size(); ++i) CHECK(std::abs(twice[i].weight - once[i].weight) <= 1e-15);
    }
  }
}

TEST_CASE("crossover") {
  const auto spec = standin_spec(1);
  RngStream rng(9);

  SUBCASE("identical parents reproduce the parent") {
    for (int t = 0; t < 1000; ++t) {
      const auto p = random_portfolio_sequential(spec, rng);
      const auto child = crossover(p, p, spec, rng);
      CHECK(assets_of(child) == assets_of(p));
      for (const auto& h : child.holdings()) {
        CHECK(h.weight == doctest::Approx(p[p.slot_of(h.asset)].weight).epsilon(1e-14));
      }
    }
  }
  SUBCASE("disjoint parents give a feasible child over 10^4 trials") {
    std::size_t bad = 0;
    for (int t = 0; t < 10000; ++t) {
      const auto p1 = random_portfolio_sequential(spec, rng);
      Portfolio p2;
      do {
        p2 = random_portfolio_sequential(spec, rng);
      } while (std::any_of(p2.holdings().begin(), p2.holdings().end(),
                           [&](const Holding& h) { return p1.contains(h.asset); }));
      const auto child = crossover(p1, p2, spec, rng);
      if (!check_feasible(child, spec).feasible()) ++bad;
    }
    CHECK(bad == 0);
  }
  SUBCASE("child assets come from the parents unless padding was needed") {
    for (int t = 0; t < 10000; ++t) {
      const auto p1 = random_portfolio_sequential(spec, rng);
      const auto p2 = random_portfolio_sequential(spec, rng);
      const auto child = crossover(p1, p2, spec, rng);
      REQUIRE(check_feasible(child, spec).feasible());
      std::size_t from_parents = 0;
      for (const auto& h : child.holdings()) from_parents += (p1.contains(h.asset) || p2.contains(h.asset)) ? 1 : 0;
      std::set<std::size_t> uni = assets_of(p1);
      for (const auto a : assets_of(p2)) uni.insert(a);
      // Padding only fills the gap left by the parents' surviving assets.
      CHECK(from_parents <= spec.k());
      if (uni.size() < spec.k()) CHECK(from_parents <= uni.size());
    }
  }
  SUBCASE("a shared asset with equal weights keeps that weight before rescaling") {
    // Both parents hold asset 0 at 0.5; with everything else equal the child is the parent.
    const auto p = portfolio_of({{0, 0.5}, {1, 0.05}, {2, 0.05}, {3, 0.05}, {4, 0.05},
                                 {5, 0.05}, {6, 0.05}, {7, 0.05}, {8, 0.1}, {9, 0.05}});
    const auto child = crossover(p, p, spec, rng);
    CHECK(child[child.slot_of(0)].weight == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("mutate") {
  const auto spec = standin_spec(0);
  RngStream rng(10);
  const auto p = random_portfolio_sequential(spec, rng);

  SUBCASE("zero probabilities are a no-op") {
    for (int t = 0; t < 1000; ++t) {
      const auto m = mutate(p, spec, rng, 0.0, 0.0);
      CHECK(m.portfolio == p);
      CHECK_FALSE(m.replaced);
      CHECK_FALSE(m.reweighted);
    }
  }
  SUBCASE("probability one applies both moves") {
    for (int t = 0; t < 1000; ++t) {
      const auto m = mutate(p, spec, rng, 1.0, 1.0);
      CHECK(m.replaced);
      CHECK(m.reweighted);
      std::vector<std::size_t> gone;
      const auto a = assets_of(p), b = assets_of(m.portfolio);
      std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(gone));
      CHECK(gone.size() == 1);
      CHECK(check_feasible(m.portfolio, spec).feasible());
    }
  }
  SUBCASE("default rates are 0.1 each") {
    const int n = 100000;
    int replaced = 0, reweighted = 0;
    for (int t = 0; t < n; ++t) {
      const auto m = mutate(p, spec, rng);
      replaced += m.replaced;
      reweighted += m.reweighted;
    }
    const double se = std::sqrt(0.1 * 0.9 / n);
    CHECK(std::abs(replaced / double(n) - 0.1) <= 3 * se);
    CHECK(std::abs(reweighted / double(n) - 0.1) <= 3 * se);
  }
}

TEST_CASE("10^5 mixed moves stay feasible on every instance") {
  for (std::size_t d = 0; d < 5; ++d) {
    const auto spec = standin_spec(d);
    RngStream rng(1000 + d);
    std::vector<Portfolio> pool;
    for (int i = 0; i < 8; ++i) pool.push_back(random_portfolio_sequential(spec, rng));
    std::size_t bad = 0;
    for (int t = 0; t < 20000; ++t) {
      const std::size_t i = rng.below(pool.size());
      Portfolio next;
      switch (rng.below(4)) {
        case 0: next = replace_asset(pool[i], spec, rng)->first; break;
        case 1: next = change_weights(pool[i], spec, rng)->first; break;
        case 2: next = crossover(pool[i], pool[rng.below(pool.size())], spec, rng); break;
        default: next = mutate(pool[i], spec, rng, 0.5, 0.5).portfolio; break;
      }
      if (!check_feasible(next, spec).feasible()) ++bad;
      pool[i] = std::move(next);
    }
    CHECK(bad == 0);
  }
}
