#pragma once

// ℓ-level preference relations cut from a superiority-degree matrix.
//
// R(ℓ) holds the pairs with φ(x, y) ≥ ℓ. The threshold is inclusive at every
// level, so R(0) is connected (it carries all zero-degree pairs as ties) and
// R(ℓ) for ℓ > 0 is strict. Raising ℓ shrinks R(ℓ) and grows its core, which
// gives a nested ladder of cores ending at ℓ* = φ*.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "relations.hpp"
#include "superiority.hpp"

namespace supdeg {

inline void require_level(double level) {
  if (!(level >= 0.0) || !std::isfinite(level))
    throw InvalidArgument("level must be a finite nonnegative number, got " + std::to_string(level));
}

/// R(ℓ) = {(x, y) : φ(x, y) ≥ ℓ}. Levels above φ* give the empty relation.
inline PreferenceRelation level_relation(const SDMatrix& m, double level) {
  require_level(level);
  PreferenceRelation r(m.base());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m(i, j) >= level) r.insert(i, j);
  return r;
}

/// R⁻¹(ℓ) = {(x, y) : φ(x, y) ≤ −ℓ}.
inline PreferenceRelation inverse_level_relation(const SDMatrix& m, double level) {
  require_level(level);
  PreferenceRelation r(m.base());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m(i, j) <= -level) r.insert(i, j);
  return r;
}

/// Pairs with |φ(x, y)| ≤ eps; an equivalence when `m` is in T.
inline PreferenceRelation identity_relation(const SDMatrix& m, double eps = kTolerance) {
  PreferenceRelation r(m.base());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (std::abs(m(i, j)) <= eps) r.insert(i, j);
  return r;
}

/// Q(ℓ) = identity ∪ R(ℓ), defined for ℓ > 0 only.
inline PreferenceRelation nonstrict_level_relation(const SDMatrix& m, double level, double eps = kTolerance) {
  if (!(level > 0.0) || !std::isfinite(level))
    throw InvalidArgument("non-strict level relation needs a positive level, got " + std::to_string(level));
  return union_of(identity_relation(m, eps), level_relation(m, level));
}

/// A level relation that remembers the matrix and level it was cut from.
struct LevelCut {
  SDMatrix source;
  double level = 0.0;
  PreferenceRelation relation;
};

inline LevelCut level_cut(const SDMatrix& m, double level) { return {m, level, level_relation(m, level)}; }

inline void require_same_source(const LevelCut& a, const LevelCut& b) {
  if (!(a.source == b.source)) throw InvalidArgument("level relations were cut from different matrices");
}

/// R(ℓ₁) ∩ R(ℓ₂), which is R(max{ℓ₁, ℓ₂}).
inline LevelCut meet(const LevelCut& a, const LevelCut& b) {
  require_same_source(a, b);
  return {a.source, std::max(a.level, b.level), intersection(a.relation, b.relation)};
}

/// R(ℓ₁) ∪ R(ℓ₂), which is R(min{ℓ₁, ℓ₂}).
inline LevelCut join(const LevelCut& a, const LevelCut& b) {
  require_same_source(a, b);
  return {a.source, std::min(a.level, b.level), union_of(a.relation, b.relation)};
}

struct Rung {
  double level = 0.0;
  PreferenceRelation relation;
  Core core;
};

/// Rungs at 0 and at each distinct positive |φ(x, y)|, ascending. R(ℓ) is
/// constant between consecutive rungs.
struct LevelChain {
  SDMatrix source;
  WeightVector weights;
  double top_level = 0.0;  // ℓ* = φ*
  std::vector<Rung> rungs;
};

/// Distinct positive entry magnitudes of `m`, ascending.
inline std::vector<double> breakpoints(const SDMatrix& m) {
  std::vector<double> levels;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m(i, j) > 0.0) levels.push_back(m(i, j));
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

inline Rung rung_at(const SDMatrix& m, double level) {
  auto r = level_relation(m, level);
  auto c = core(r);
  return {level, std::move(r), std::move(c)};
}

inline LevelChain ladder(const SDMatrix& m, const WeightVector& w) {
  require_same_base(m.base(), w.base(), "ladder");
  LevelChain chain{m, w, m.phi_star(), {}};
  chain.rungs.push_back(rung_at(m, 0.0));
  for (double level : breakpoints(m)) chain.rungs.push_back(rung_at(m, level));
  return chain;
}

inline LevelChain ladder(const SDMatrix& m) { return ladder(m, WeightVector::uniform(m.base())); }

}  // namespace supdeg
