#pragma once

// A session pairs validated input data with an append-only log of
// refinements and level bookmarks. The current state is always the initial
// data with the log replayed over it.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "data.hpp"
#include "io.hpp"
#include "levels.hpp"

namespace supdeg {

struct HistoryEvent {
  enum class Type { refine, bookmark };
  Type type = Type::refine;
  // refine
  std::string x, y;
  double value = 0.0;
  // bookmark
  std::string name;
  double level = 0.0;

  static HistoryEvent refinement(std::string x, std::string y, double value) {
    return {Type::refine, std::move(x), std::move(y), quantize(value), {}, 0.0};
  }
  static HistoryEvent bookmark(std::string name, double level) {
    return {Type::bookmark, {}, {}, 0.0, std::move(name), quantize(level)};
  }

  bool operator==(const HistoryEvent&) const = default;
};

class Session {
 public:
  Session(std::string id, SessionData initial, std::optional<WeightVector> weights = {})
      : id_(std::move(id)), initial_(std::move(initial)), explicit_weights_(std::move(weights)), current_(initial_) {
    if (explicit_weights_) require_same_base(base(), explicit_weights_->base(), "session weights");
    weights_ = explicit_weights_ ? *explicit_weights_ : WeightVector::uniform(base());
  }

  const std::string& id() const noexcept { return id_; }
  const AlternativeSet& base() const { return base_of(initial_); }
  const SessionData& initial() const noexcept { return initial_; }
  const SessionData& current() const noexcept { return current_; }
  DataKind kind() const { return kind_of(current_); }
  const WeightVector& weights() const noexcept { return weights_; }
  const std::optional<WeightVector>& explicit_weights() const noexcept { return explicit_weights_; }
  const std::vector<HistoryEvent>& history() const noexcept { return history_; }
  const std::map<std::string, double>& bookmarks() const noexcept { return bookmarks_; }

  /// Records a comparison for an absent pair of a partial matrix.
  const PartialSDMatrix& refine(std::string_view x, std::string_view y, double value) {
    apply(HistoryEvent::refinement(std::string(x), std::string(y), value));
    return std::get<PartialSDMatrix>(current_);
  }

  /// Names a level; re-using a name moves the bookmark.
  void bookmark(std::string_view name, double level) { apply(HistoryEvent::bookmark(std::string(name), level)); }

  json to_json() const {
    json history = json::array();
    for (const auto& e : history_) {
      if (e.type == HistoryEvent::Type::refine)
        history.push_back({{"type", "refine"}, {"x", e.x}, {"y", e.y}, {"value", e.value}});
      else
        history.push_back({{"type", "bookmark"}, {"name", e.name}, {"level", e.level}});
    }
    return {{"schema", kSchemaVersion},
            {"id", id_},
            {"data", data_to_json(initial_)},
            {"weights", explicit_weights_ ? weights_to_json(*explicit_weights_) : json(nullptr)},
            {"history", std::move(history)}};
  }

  /// Rebuilds a session by replaying its stored history.
  static Session from_json(const json& j) {
    const auto& schema = detail::member(j, "schema");
    if (!schema.is_number_integer() || schema.get<int>() != kSchemaVersion)
      throw ParseError("unsupported session schema " + schema.dump());
    auto data = data_from_json(detail::member(j, "data"));
    std::optional<WeightVector> weights;
    if (j.contains("weights") && !j.at("weights").is_null()) weights = weights_from_json(j.at("weights"), base_of(data));
    Session s(detail::get_as<std::string>(detail::member(j, "id"), "id"), std::move(data), std::move(weights));
    const auto& history = detail::member(j, "history");
    if (!history.is_array()) throw ParseError("'history' must be an array");
    for (const auto& e : history) {
      const auto type = detail::get_as<std::string>(detail::member(e, "type"), "event type");
      if (type == "refine") {
        s.apply(HistoryEvent::refinement(detail::get_as<std::string>(detail::member(e, "x"), "x"),
                                         detail::get_as<std::string>(detail::member(e, "y"), "y"),
                                         detail::real_of(detail::member(e, "value"), "value")));
      } else if (type == "bookmark") {
        s.apply(HistoryEvent::bookmark(detail::get_as<std::string>(detail::member(e, "name"), "name"),
                                       detail::real_of(detail::member(e, "level"), "level")));
      } else {
        throw ParseError("unknown history event '" + type + "'");
      }
    }
    return s;
  }

  std::string save() const { return dump(to_json()); }

 private:
  void apply(HistoryEvent e) {
    if (e.type == HistoryEvent::Type::refine) {
      auto* p = std::get_if<PartialSDMatrix>(&current_);
      if (!p) throw WrongDataKind(std::string("refinement needs partial data, session holds ") + kind_name(kind()));
      current_ = supdeg::refine(*p, e.x, e.y, e.value);
    } else {
      if (e.name.empty()) throw InvalidArgument("bookmark name must not be empty");
      require_level(e.level);
      bookmarks_[e.name] = e.level;
    }
    history_.push_back(std::move(e));
  }

  std::string id_;
  SessionData initial_;
  std::optional<WeightVector> explicit_weights_;
  WeightVector weights_;
  SessionData current_;
  std::vector<HistoryEvent> history_;
  std::map<std::string, double> bookmarks_;
};

/// Starts a session from any data document, or resumes a saved one.
inline Session load_session(std::string_view text, Format format, std::string id,
                            std::optional<double> phi_star = {}) {
  if (format == Format::automatic) format = detect_format(text);
  if (format == Format::session_json) return Session::from_json(parse_json(text));
  auto loaded = load_data(text, format, phi_star);
  return Session(std::move(id), std::move(loaded.data), std::move(loaded.weights));
}

}  // namespace supdeg
