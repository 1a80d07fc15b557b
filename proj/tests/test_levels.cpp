#include <catch_amalgamated.hpp>

#include <supdeg/levels.hpp>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace supdeg;

namespace {

using Ids = std::vector<std::string>;

PreferenceRelation rel(std::vector<std::pair<std::string, std::string>> pairs) {
  return PreferenceRelation::from_pairs(fixtures::abc(), pairs);
}

PreferenceRelation diagonal() { return rel({{"a", "a"}, {"b", "b"}, {"c", "c"}}); }

}  // namespace

TEST_CASE("level relation", "[levels]") {
  const auto t = fixtures::transitive();
  CHECK(level_relation(t, 1.5) == rel({{"a", "b"}, {"a", "c"}}));
  CHECK(level_relation(t, 0.0) == union_of(rel({{"a", "b"}, {"a", "c"}, {"b", "c"}}), diagonal()));
  CHECK(level_relation(t, 3.5).empty());
  CHECK_THROWS_AS(level_relation(t, -0.1), InvalidArgument);

  // R(0) is connected and non-strict; positive levels are strict
  gen::Rng rng(31);
  for (int k = 0; k < 200; ++k) {
    const auto m = gen::sd(rng, gen::size_in(rng, 2, 7), -5, 5, 1.0);
    CHECK(is_connected(level_relation(m, 0.0)));
    const auto r = level_relation(m, gen::real_in(rng, 0.01, 5.0));
    CHECK(strict_part(r) == r);
    CHECK(inverse_level_relation(m, 0.5) == inverse(level_relation(m, 0.5)));
  }
}

TEST_CASE("identity relation", "[levels]") {
  CHECK(identity_relation(fixtures::transitive()) == diagonal());
  CHECK(identity_relation(SDMatrix::zero(fixtures::abc())) == PreferenceRelation::full(fixtures::abc()));
  CHECK(identity_relation(fixtures::cycle()) == diagonal());

  gen::Rng rng(32);
  for (int k = 0; k < 200; ++k) {
    const auto m = gen::potential_sd(rng, gen::size_in(rng, 1, 7), 2);
    CHECK(is_transitive(identity_relation(m)));
  }
}

TEST_CASE("non-strict level relation", "[levels]") {
  const auto t = fixtures::transitive();
  CHECK(nonstrict_level_relation(t, 1.5) == union_of(rel({{"a", "b"}, {"a", "c"}}), diagonal()));
  CHECK(nonstrict_level_relation(SDMatrix::zero(fixtures::abc()), 0.7) == PreferenceRelation::full(fixtures::abc()));
  CHECK(nonstrict_level_relation(t, 4.0) == diagonal());
  CHECK_THROWS_AS(nonstrict_level_relation(t, 0.0), InvalidArgument);
  CHECK_FALSE(is_connected(nonstrict_level_relation(t, 1.5)));
}

TEST_CASE("ladder of the transitive fixture", "[levels]") {
  const auto chain = ladder(fixtures::transitive());
  REQUIRE(chain.rungs.size() == 4);
  CHECK(chain.top_level == 3.0);
  std::vector<double> levels;
  std::vector<Ids> cores;
  for (const auto& r : chain.rungs) {
    levels.push_back(r.level);
    cores.push_back(r.core.ids());
    CHECK(r.core.members() == oracle::level_core(fixtures::transitive(), 3, r.level));
  }
  CHECK(levels == std::vector<double>{0, 1, 2, 3});
  // φ(a,b) = 2 still clears ℓ = 2; only (a,c) survives at ℓ = 3
  CHECK(cores == std::vector<Ids>{{"a"}, {"a"}, {"a"}, {"a", "b"}});
}

TEST_CASE("ladder edge cases", "[levels]") {
  const auto flat = ladder(SDMatrix::zero(fixtures::abc()));
  REQUIRE(flat.rungs.size() == 1);
  CHECK(flat.rungs[0].level == 0.0);
  CHECK(flat.rungs[0].core.size() == 3);

  const auto cyc = ladder(fixtures::cycle());
  REQUIRE(cyc.rungs.size() == 2);
  CHECK(cyc.rungs[0].core.empty());
  CHECK(cyc.rungs[1].level == 1.0);
  CHECK(cyc.rungs[1].core.empty());
  CHECK(core(level_relation(fixtures::cycle(), 1.0 + 1e-9)).size() == 3);

  const AlternativeSet one{"a"};
  const auto single = ladder(SDMatrix::zero(one));
  REQUIRE(single.rungs.size() == 1);
  CHECK(single.rungs[0].core.ids() == Ids{"a"});
}

TEST_CASE("meet and join of level cuts", "[levels]") {
  const auto t = fixtures::transitive();
  const auto lo = level_cut(t, 1.5);
  const auto hi = level_cut(t, 2.5);
  CHECK(meet(lo, hi).relation == rel({{"a", "c"}}));
  CHECK(meet(lo, hi).level == 2.5);
  CHECK(join(lo, hi).relation == rel({{"a", "b"}, {"a", "c"}}));
  CHECK(meet(lo, lo).relation == lo.relation);
  CHECK(join(level_cut(t, 0.0), hi).relation == level_relation(t, 0.0));
  CHECK_THROWS_AS(meet(lo, level_cut(fixtures::cycle(), 1.0)), InvalidArgument);
}

TEST_CASE("ladder laws on random matrices", "[levels][property]") {
  gen::Rng rng(33);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = gen::size_in(rng, 1, 7);
    const auto m = gen::sd(rng, n, -10, 10, gen::coin(rng) ? 1.0 : 0.0);
    const auto chain = ladder(m);
    REQUIRE(chain.top_level == m.phi_star());
    for (std::size_t i = 0; i < chain.rungs.size(); ++i) {
      const auto& ri = chain.rungs[i];
      REQUIRE(ri.core.members() == oracle::level_core(m, n, ri.level));
      for (std::size_t j = i + 1; j < chain.rungs.size(); ++j) {
        const auto& rj = chain.rungs[j];
        REQUIRE(rj.level > ri.level);
        REQUIRE(rj.relation.is_subset_of(ri.relation));
        REQUIRE(ri.core.is_subset_of(rj.core));
        const auto a = level_cut(m, ri.level);
        const auto b = level_cut(m, rj.level);
        REQUIRE(meet(a, b).relation == rj.relation);
        REQUIRE(join(a, b).relation == ri.relation);
      }
    }
  }
}

TEST_CASE("transitive and max-transitive matrices give transitive cuts", "[levels][property]") {
  gen::Rng rng(34);
  for (int k = 0; k < 300; ++k) {
    const auto m = gen::potential_sd(rng, gen::size_in(rng, 1, 7), 5);
    REQUIRE(classify(m).in_t);
    for (const auto& r : ladder(m).rungs) {
      REQUIRE(is_transitive(r.relation));
      REQUIRE_FALSE(r.core.empty());
    }
  }
  int s_only = 0;
  for (int k = 0; k < 3000; ++k) {
    const auto m = gen::sd(rng, gen::size_in(rng, 3, 5), -3, 3, 1.0);
    const auto flags = classify(m);
    if (!flags.in_s) continue;
    s_only += flags.in_t ? 0 : 1;
    for (const auto& r : ladder(m).rungs) REQUIRE(is_transitive(r.relation));
  }
  CHECK(s_only > 0);
}
