#pragma once

// Shared three-alternative fixtures.

#include <supdeg/group.hpp>
#include <supdeg/interval.hpp>
#include <supdeg/superiority.hpp>

namespace fixtures {

inline supdeg::AlternativeSet abc() { return supdeg::AlternativeSet{"a", "b", "c"}; }

// φ(a,b) = φ(b,c) = φ(c,a) = 1
inline supdeg::SDMatrix cycle() { return supdeg::SDMatrix::from_upper(abc(), {1.0, -1.0, 1.0}); }

// φ(a,b) = 2, φ(a,c) = 1, φ(b,c) = 1; in H, not in T
inline supdeg::SDMatrix non_transitive() { return supdeg::SDMatrix::from_upper(abc(), {2.0, 1.0, 1.0}); }

// f = (3, 1, 0): φ(a,b) = 2, φ(a,c) = 3, φ(b,c) = 1
inline supdeg::SDMatrix transitive() { return supdeg::SDMatrix::from_upper(abc(), {2.0, 3.0, 1.0}); }

inline supdeg::Ballot ranked(std::string id, std::vector<std::string> order) {
  return supdeg::Ballot{std::move(id), std::move(order), {}};
}

// E1: a≻b≻c, E2: a≻c≻b, E3: b≻a≻c
inline std::vector<supdeg::Ballot> group_ballots() {
  return {ranked("E1", {"a", "b", "c"}), ranked("E2", {"a", "c", "b"}), ranked("E3", {"b", "a", "c"})};
}

// E1: a≻b≻c, E2: b≻c≻a, E3: c≻a≻b
inline std::vector<supdeg::Ballot> condorcet_ballots() {
  return {ranked("E1", {"a", "b", "c"}), ranked("E2", {"b", "c", "a"}), ranked("E3", {"c", "a", "b"})};
}

inline supdeg::VectorPreferenceRelation group_panel() {
  return supdeg::VectorPreferenceRelation::from_ballots(abc(), group_ballots());
}

inline supdeg::VectorPreferenceRelation condorcet_panel() {
  return supdeg::VectorPreferenceRelation::from_ballots(abc(), condorcet_ballots());
}

// only φ(a,b) = 1 known, φ* = 1
inline supdeg::PartialSDMatrix partial() {
  return supdeg::PartialSDMatrix::unknown(abc(), 1.0).with(0, 1, 1.0);
}

}  // namespace fixtures
