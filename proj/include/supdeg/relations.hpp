#pragma once

// Binary preference relations over a finite set of alternatives.
//
// A relation R is a subset of X × X stored as a dense membership matrix.
// Every R splits into an identity part R ∩ R⁻¹ and a strict part R \ R⁻¹.
// The core (Pareto set) holds the alternatives that no other alternative
// strictly dominates.

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "alternatives.hpp"
#include "matrix.hpp"

namespace supdeg {

class PreferenceRelation {
 public:
  PreferenceRelation() = default;

  /// Empty relation over `base`.
  explicit PreferenceRelation(AlternativeSet base) : base_(std::move(base)), member_(base_.size(), 0) {}

  /// All of E = X × X.
  static PreferenceRelation full(AlternativeSet base) {
    PreferenceRelation r(std::move(base));
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < r.size(); ++j) r.member_(i, j) = 1;
    return r;
  }

  static PreferenceRelation from_pairs(AlternativeSet base,
                                       const std::vector<std::pair<std::string, std::string>>& pairs) {
    PreferenceRelation r(std::move(base));
    for (const auto& [x, y] : pairs) r.insert(r.base_.index_of(x), r.base_.index_of(y));
    return r;
  }

  const AlternativeSet& base() const noexcept { return base_; }
  std::size_t size() const noexcept { return base_.size(); }

  bool contains(std::size_t i, std::size_t j) const { return member_(i, j) != 0; }
  bool contains(std::string_view x, std::string_view y) const {
    return contains(base_.index_of(x), base_.index_of(y));
  }

  PreferenceRelation& insert(std::size_t i, std::size_t j) {
    member_(i, j) = 1;
    return *this;
  }
  PreferenceRelation& erase(std::size_t i, std::size_t j) {
    member_(i, j) = 0;
    return *this;
  }

  bool empty() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (contains(i, j)) return false;
    return true;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) c += contains(i, j) ? 1 : 0;
    return c;
  }

  /// Member pairs as index pairs, row-major.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (contains(i, j)) out.emplace_back(i, j);
    return out;
  }

  std::vector<std::pair<std::string, std::string>> named_pairs() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (auto [i, j] : pairs()) out.emplace_back(base_.id(i), base_.id(j));
    return out;
  }

  bool is_subset_of(const PreferenceRelation& other) const {
    require_same_base(base_, other.base_, "relation inclusion");
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (contains(i, j) && !other.contains(i, j)) return false;
    return true;
  }

  bool operator==(const PreferenceRelation&) const = default;

 private:
  AlternativeSet base_;
  BoolMatrix member_;
};

/// Subset of the alternatives, kept in base order.
class Core {
 public:
  Core() = default;
  Core(AlternativeSet base, std::vector<std::size_t> members) : base_(std::move(base)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  const AlternativeSet& base() const noexcept { return base_; }
  const std::vector<std::size_t>& members() const noexcept { return members_; }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t size() const noexcept { return members_.size(); }

  bool contains(std::size_t i) const { return std::binary_search(members_.begin(), members_.end(), i); }
  bool contains(std::string_view id) const { return contains(base_.index_of(id)); }

  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    out.reserve(members_.size());
    for (auto i : members_) out.push_back(base_.id(i));
    return out;
  }

  bool is_subset_of(const Core& other) const {
    require_same_base(base_, other.base_, "core inclusion");
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
  }

  bool operator==(const Core&) const = default;

 private:
  AlternativeSet base_;
  std::vector<std::size_t> members_;
};

inline PreferenceRelation inverse(const PreferenceRelation& r) {
  PreferenceRelation out(r.base());
  for (auto [i, j] : r.pairs()) out.insert(j, i);
  return out;
}

inline PreferenceRelation intersection(const PreferenceRelation& a, const PreferenceRelation& b) {
  require_same_base(a.base(), b.base(), "relation intersection");
  PreferenceRelation out(a.base());
  for (auto [i, j] : a.pairs())
    if (b.contains(i, j)) out.insert(i, j);
  return out;
}

inline PreferenceRelation union_of(const PreferenceRelation& a, const PreferenceRelation& b) {
  require_same_base(a.base(), b.base(), "relation union");
  PreferenceRelation out = a;
  for (auto [i, j] : b.pairs()) out.insert(i, j);
  return out;
}

inline PreferenceRelation difference(const PreferenceRelation& a, const PreferenceRelation& b) {
  require_same_base(a.base(), b.base(), "relation difference");
  PreferenceRelation out(a.base());
  for (auto [i, j] : a.pairs())
    if (!b.contains(i, j)) out.insert(i, j);
  return out;
}

/// R ∩ R⁻¹: pairs held in both directions, reflexive pairs included.
inline PreferenceRelation identity_part(const PreferenceRelation& r) {
  PreferenceRelation out(r.base());
  for (auto [i, j] : r.pairs())
    if (r.contains(j, i)) out.insert(i, j);
  return out;
}

/// R \ R⁻¹.
inline PreferenceRelation strict_part(const PreferenceRelation& r) {
  PreferenceRelation out(r.base());
  for (auto [i, j] : r.pairs())
    if (!r.contains(j, i)) out.insert(i, j);
  return out;
}

struct Decomposition {
  PreferenceRelation identity;
  PreferenceRelation strict;
};

inline Decomposition decompose(const PreferenceRelation& r) { return {identity_part(r), strict_part(r)}; }

/// Every pair of distinct alternatives is comparable in at least one direction.
inline bool is_connected(const PreferenceRelation& r) {
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j)
      if (!r.contains(i, j) && !r.contains(j, i)) return false;
  return true;
}

inline bool is_transitive(const PreferenceRelation& r) {
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!r.contains(i, j)) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (r.contains(j, k) && !r.contains(i, k)) return false;
    }
  return true;
}

/// Alternatives not strictly dominated by any other. May be empty when the
/// strict part has cycles; never empty for a transitive relation.
inline Core core(const PreferenceRelation& r) {
  const std::size_t n = r.size();
  std::vector<std::size_t> members;
  for (std::size_t x = 0; x < n; ++x) {
    bool dominated = false;
    for (std::size_t y = 0; y < n && !dominated; ++y) dominated = r.contains(y, x) && !r.contains(x, y);
    if (!dominated) members.push_back(x);
  }
  return Core(r.base(), std::move(members));
}

/// R1 is coordinated with R2 when both parts of R1 sit inside the matching parts
/// of R2. Then core(R2) ⊆ core(R1).
inline bool is_coordinated(const PreferenceRelation& r1, const PreferenceRelation& r2) {
  require_same_base(r1.base(), r2.base(), "is_coordinated");
  return strict_part(r1).is_subset_of(strict_part(r2)) && identity_part(r1).is_subset_of(identity_part(r2));
}

}  // namespace supdeg
