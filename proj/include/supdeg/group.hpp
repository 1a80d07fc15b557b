#pragma once

// Group decisions over a panel of expert preference relations.
//
// Each expert ν contributes δ_ij = 1 when only (x_i, x_j) is held, ½ on ties,
// 0 when only (x_j, x_i) is held. The tally n_ij = Σ_ν δ_ij drives majority
// voting, the Copeland K-procedure, the group degree Z_ij = n_ij − n_ji and its
// integral F_ij = Σ_s (Z_is − Z_js) = V_i − V_j with V_i = Σ_s Z_is.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "levels.hpp"
#include "relations.hpp"
#include "superiority.hpp"

namespace supdeg {

enum class Verdict { x, y, tie, abstain };

struct PairVerdict {
  std::string x;
  std::string y;
  Verdict verdict = Verdict::tie;

  bool operator==(const PairVerdict&) const = default;
};

/// One expert's input: a full ranking, or verdicts on individual pairs.
struct Ballot {
  std::string id;
  std::optional<std::vector<std::string>> order;
  std::vector<PairVerdict> pairs;

  bool operator==(const Ballot&) const = default;
};

/// Strict relation of a linear order plus reflexive ties. `order` must list
/// every alternative exactly once.
inline PreferenceRelation relation_from_order(const AlternativeSet& base, const std::vector<std::string>& order) {
  if (order.size() != base.size())
    throw InvariantViolation("ballot.order", "order must rank all " + std::to_string(base.size()) + " alternatives");
  std::vector<std::size_t> idx;
  std::set<std::size_t> seen;
  for (const auto& id : order) {
    auto i = base.index_of(id);
    if (!seen.insert(i).second) throw InvariantViolation("ballot.order", "'" + id + "' ranked twice");
    idx.push_back(i);
  }
  PreferenceRelation r(base);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    r.insert(idx[a], idx[a]);
    for (std::size_t b = a + 1; b < idx.size(); ++b) r.insert(idx[a], idx[b]);
  }
  return r;
}

/// Relation from pair verdicts. Pairs without a verdict stay incomparable.
inline PreferenceRelation relation_from_verdicts(const AlternativeSet& base, const std::vector<PairVerdict>& verdicts) {
  PreferenceRelation r(base);
  for (std::size_t i = 0; i < base.size(); ++i) r.insert(i, i);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& v : verdicts) {
    const auto i = base.index_of(v.x);
    const auto j = base.index_of(v.y);
    if (i == j) throw InvariantViolation("ballot.pairs", "verdict on '" + v.x + "' against itself");
    if (!seen.insert(std::minmax(i, j)).second)
      throw InvariantViolation("ballot.pairs", "more than one verdict on pair (" + v.x + "," + v.y + ")");
    switch (v.verdict) {
      case Verdict::x: r.insert(i, j); break;
      case Verdict::y: r.insert(j, i); break;
      case Verdict::tie: r.insert(i, j).insert(j, i); break;
      case Verdict::abstain: break;
    }
  }
  return r;
}

inline PreferenceRelation ballot_relation(const AlternativeSet& base, const Ballot& ballot) {
  if (ballot.order && !ballot.pairs.empty())
    throw InvariantViolation("ballot.shape", "ballot '" + ballot.id + "' has both an order and pairs");
  return ballot.order ? relation_from_order(base, *ballot.order) : relation_from_verdicts(base, ballot.pairs);
}

/// One relation per expert over a shared base; transitivity is not required.
class VectorPreferenceRelation {
 public:
  VectorPreferenceRelation() = default;

  VectorPreferenceRelation(AlternativeSet base, std::vector<PreferenceRelation> experts)
      : base_(std::move(base)), experts_(std::move(experts)) {
    if (experts_.empty()) throw InvariantViolation("panel.nonempty", "a panel needs at least one expert");
    for (const auto& e : experts_) require_same_base(base_, e.base(), "panel");
  }

  static VectorPreferenceRelation from_ballots(AlternativeSet base, const std::vector<Ballot>& ballots) {
    std::vector<PreferenceRelation> experts;
    for (const auto& b : ballots) experts.push_back(ballot_relation(base, b));
    return VectorPreferenceRelation(std::move(base), std::move(experts));
  }

  const AlternativeSet& base() const noexcept { return base_; }
  std::size_t experts() const noexcept { return experts_.size(); }
  const PreferenceRelation& expert(std::size_t v) const { return experts_.at(v); }
  const std::vector<PreferenceRelation>& relations() const noexcept { return experts_; }

  /// Every expert compares every pair.
  bool complete() const {
    for (const auto& e : experts_)
      if (!is_connected(e)) return false;
    return true;
  }

 private:
  AlternativeSet base_;
  std::vector<PreferenceRelation> experts_;
};

struct TallyMatrix {
  AlternativeSet base;
  RealMatrix votes;  // n_ij; the diagonal holds N/2 by the tie convention
  std::size_t experts = 0;

  double operator()(std::size_t i, std::size_t j) const { return votes(i, j); }
};

/// δ_ij for one expert's relation on a comparable pair.
inline double preference_share(const PreferenceRelation& r, std::size_t i, std::size_t j) {
  const bool fwd = r.contains(i, j);
  const bool bwd = r.contains(j, i);
  if (fwd && bwd) return 0.5;
  return fwd ? 1.0 : 0.0;
}

/// Complete-information tally. A panel with an incomparable pair must go
/// through abstention_tally instead.
inline TallyMatrix tally(const VectorPreferenceRelation& vpr) {
  const std::size_t n = vpr.base().size();
  TallyMatrix t{vpr.base(), RealMatrix(n, 0.0), vpr.experts()};
  for (std::size_t v = 0; v < vpr.experts(); ++v) {
    const auto& r = vpr.expert(v);
    if (!is_connected(r))
      throw WrongDataKind("expert " + std::to_string(v + 1) +
                          " leaves a pair incomparable; use abstention_tally for incomplete panels");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t.votes(i, j) += i == j ? 0.5 : preference_share(r, i, j);
  }
  return t;
}

/// Voting by majority: strict pairs n_ij > n_ji joined with ties n_ij = n_ji.
inline PreferenceRelation majority(const TallyMatrix& t) {
  PreferenceRelation r(t.base);
  for (std::size_t i = 0; i < t.base.size(); ++i)
    for (std::size_t j = 0; j < t.base.size(); ++j)
      if (t(i, j) >= t(j, i)) r.insert(i, j);
  return r;
}

struct CopelandResult {
  UtilityVector scores;      // φ_i = Σ_j (n_ij − n_ji)
  PreferenceRelation order;  // {(x_i, x_j) : φ_i ≥ φ_j}
};

inline CopelandResult copeland(const TallyMatrix& t) {
  const std::size_t n = t.base.size();
  std::vector<double> scores(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scores[i] += t(i, j) - t(j, i);
  PreferenceRelation order(t.base);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (scores[i] >= scores[j]) order.insert(i, j);
  return {UtilityVector(t.base, std::move(scores)), std::move(order)};
}

/// Z_ij = n_ij − n_ji.
inline SDMatrix group_sd(const TallyMatrix& t) {
  const std::size_t n = t.base.size();
  RealMatrix z(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z(i, j) = i == j ? 0.0 : t(i, j) - t(j, i);
  return SDMatrix(t.base, std::move(z));
}

/// F_ij = Σ_s (Z_is − Z_js), unweighted.
inline SDMatrix group_isd(const SDMatrix& z) {
  const std::size_t n = z.size();
  RealMatrix f(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += z(i, k) - z(j, k);
      f(i, j) = s;
    }
  return SDMatrix(z.base(), std::move(f));
}

/// V_i = Σ_s Z_is; equals the Copeland index.
inline UtilityVector group_potential(const SDMatrix& z) {
  std::vector<double> v(z.size(), 0.0);
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t k = 0; k < z.size(); ++k) v[i] += z(i, k);
  return UtilityVector(z.base(), std::move(v));
}

struct GroupLevel {
  SDMatrix integral;  // F
  double level = 0.0;
  PreferenceRelation relation;  // G(ℓ) = {F_ij ≥ ℓ}
  Core core;
};

inline GroupLevel group_level(const TallyMatrix& t, double level) {
  require_level(level);
  auto f = group_isd(group_sd(t));
  auto r = level_relation(f, level);
  auto c = core(r);
  return {std::move(f), level, std::move(r), std::move(c)};
}

/// Rungs of G(ℓ) at 0 and every distinct positive F_ij.
inline std::vector<Rung> group_ladder(const TallyMatrix& t) {
  const auto f = group_isd(group_sd(t));
  std::vector<Rung> rungs{rung_at(f, 0.0)};
  for (double level : breakpoints(f)) rungs.push_back(rung_at(f, level));
  return rungs;
}

/// Z_ij = Z_is + Z_sj for all triples; sufficient for majority voting to be
/// transitive and to agree with the K-procedure.
inline bool additivity_check(const SDMatrix& z, double eps = kTolerance) { return classify(z, eps).in_t; }

}  // namespace supdeg
