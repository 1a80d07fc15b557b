#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "errors.hpp"

namespace supdeg {

/// Ordered set of decision alternatives. The order fixes matrix indexing.
class AlternativeSet {
 public:
  AlternativeSet() = default;

  explicit AlternativeSet(std::vector<std::string> ids) : ids_(std::move(ids)) {
    if (ids_.empty()) throw InvariantViolation("alternatives", "at least one alternative is required");
    std::unordered_set<std::string_view> seen;
    for (const auto& id : ids_) {
      if (id.empty()) throw InvariantViolation("alternatives", "empty identifier");
      if (!seen.insert(id).second) throw InvariantViolation("alternatives", "duplicate identifier '" + id + "'");
    }
  }

  AlternativeSet(std::initializer_list<std::string> ids) : AlternativeSet(std::vector<std::string>(ids)) {}

  std::size_t size() const noexcept { return ids_.size(); }
  const std::string& id(std::size_t i) const { return ids_.at(i); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  std::optional<std::size_t> find(std::string_view id) const {
    for (std::size_t i = 0; i < ids_.size(); ++i)
      if (ids_[i] == id) return i;
    return std::nullopt;
  }

  std::size_t index_of(std::string_view id) const {
    if (auto i = find(id)) return *i;
    throw InvalidArgument("unknown alternative '" + std::string(id) + "'");
  }

  bool operator==(const AlternativeSet&) const = default;

 private:
  std::vector<std::string> ids_;
};

inline void require_same_base(const AlternativeSet& a, const AlternativeSet& b, std::string_view what) {
  if (!(a == b)) throw DimensionError(std::string(what) + ": alternative sets differ");
}

}  // namespace supdeg
