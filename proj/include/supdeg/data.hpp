#pragma once

#include <string>
#include <variant>
#include <vector>

#include "group.hpp"
#include "interval.hpp"
#include "superiority.hpp"

namespace supdeg {

/// Ballots as supplied, kept verbatim so they can be written back out.
struct BallotSet {
  AlternativeSet base;
  std::vector<Ballot> ballots;

  VectorPreferenceRelation panel() const { return VectorPreferenceRelation::from_ballots(base, ballots); }
  bool operator==(const BallotSet&) const = default;
};

/// Analysable payload of a session.
using SessionData = std::variant<SDMatrix, PartialSDMatrix, BallotSet, CriterionFamily>;

enum class DataKind { sd, partial, panel, abstention, criteria };

inline DataKind kind_of(const SessionData& data) {
  struct Visitor {
    DataKind operator()(const SDMatrix&) const { return DataKind::sd; }
    DataKind operator()(const PartialSDMatrix&) const { return DataKind::partial; }
    DataKind operator()(const BallotSet& b) const { return b.panel().complete() ? DataKind::panel : DataKind::abstention; }
    DataKind operator()(const CriterionFamily&) const { return DataKind::criteria; }
  };
  return std::visit(Visitor{}, data);
}

inline const char* kind_name(DataKind kind) {
  switch (kind) {
    case DataKind::sd: return "sd";
    case DataKind::partial: return "partial";
    case DataKind::panel: return "panel";
    case DataKind::abstention: return "abstention";
    case DataKind::criteria: return "criteria";
  }
  return "unknown";
}

inline const AlternativeSet& base_of(const SessionData& data) {
  return std::visit(
      [](const auto& d) -> const AlternativeSet& {
        if constexpr (std::is_same_v<std::decay_t<decltype(d)>, BallotSet>)
          return d.base;
        else
          return d.base();
      },
      data);
}

}  // namespace supdeg
