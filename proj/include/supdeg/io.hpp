#pragma once

// File formats.
//
//   SD CSV        header row of ids, then one row per id: `a,0,2,3`
//   partial CSV   same grid; empty cells or NA mark incomparable pairs;
//                 an optional `# phi_star=<bound>` comment sets φ*
//   relation JSON {"alternatives": [...], "pairs": [["a","b"], ...]}
//   ballots JSON  {"alternatives": [...], "experts": [{"id", "order"} | {"id", "pairs"}]}
//   criteria JSON {"alternatives": [...], "criteria": [{"weight", "matrix"}]}
//   weights JSON  {"a": 0.5, "b": 0.25, ...}
//
// Data JSON documents may carry a top-level "weights" object. Every real read
// or written is rounded to 12 significant digits.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "data.hpp"
#include "errors.hpp"
#include "relations.hpp"

namespace supdeg {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Rounds to 12 significant digits; -0 becomes 0.
inline double quantize(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double q = std::strtod(buf, nullptr);
  return q == 0.0 ? 0.0 : q;
}

inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", quantize(v));
  return buf;
}

enum class Format {
  automatic,
  sd_csv,
  partial_csv,
  sd_json,
  partial_json,
  relation_json,
  ballots_json,
  criteria_json,
  weights_json,
  session_json,
};

inline const char* format_name(Format f) {
  switch (f) {
    case Format::automatic: return "auto";
    case Format::sd_csv: return "sd-csv";
    case Format::partial_csv: return "partial-csv";
    case Format::sd_json: return "sd-json";
    case Format::partial_json: return "partial-json";
    case Format::relation_json: return "relation-json";
    case Format::ballots_json: return "ballots-json";
    case Format::criteria_json: return "criteria-json";
    case Format::weights_json: return "weights-json";
    case Format::session_json: return "session-json";
  }
  return "unknown";
}

inline Format parse_format_name(std::string_view name) {
  for (auto f : {Format::automatic, Format::sd_csv, Format::partial_csv, Format::sd_json, Format::partial_json,
                 Format::relation_json, Format::ballots_json, Format::criteria_json, Format::weights_json,
                 Format::session_json})
    if (name == format_name(f)) return f;
  throw ParseError("unknown format '" + std::string(name) + "'");
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
  out << text;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  std::string out(s.substr(b, e - b + 1));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

inline bool is_missing(std::string_view cell) { return cell.empty() || cell == "NA" || cell == "na"; }

inline std::optional<double> parse_real(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v)) return std::nullopt;
  return quantize(v);
}

struct Grid {
  AlternativeSet base;
  RealMatrix values;
  BoolMatrix present;
  std::optional<double> phi_star;
  // first absent off-diagonal cell, for error messages
  std::optional<std::pair<std::size_t, std::size_t>> first_gap;
};

inline std::optional<double> phi_star_comment(std::string_view comment, std::size_t line) {
  std::string body = trim(comment.substr(1));
  std::string lower = body;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (std::string_view key : {"phi_star", "phi*"}) {
    if (lower.rfind(key, 0) != 0) continue;
    auto rest = trim(std::string_view(body).substr(key.size()));
    if (rest.empty() || (rest.front() != '=' && rest.front() != ':')) continue;
    rest = trim(std::string_view(rest).substr(1));
    auto v = parse_real(rest);
    if (!v) throw ParseError("phi_star comment needs a number", line);
    return v;
  }
  return std::nullopt;
}

inline Grid read_grid(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  std::optional<double> phi_star;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto stripped = trim(line);
    if (stripped.empty()) continue;
    if (stripped.front() == '#') {
      if (auto v = phi_star_comment(stripped, line_no)) phi_star = v;
      continue;
    }
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.emplace_back(line_no, std::move(cells));
  }
  if (rows.empty()) throw ParseError("empty matrix file");

  const auto& [header_line, header] = rows.front();
  if (header.size() < 2) throw ParseError("header row needs at least one alternative", header_line);
  std::vector<std::string> ids(header.begin() + 1, header.end());
  AlternativeSet base;
  try {
    base = AlternativeSet(ids);
  } catch (const InvariantViolation& e) {
    throw ParseError(std::string("header: ") + e.what(), header_line);
  }
  const std::size_t n = base.size();
  if (rows.size() != n + 1)
    throw ParseError("expected " + std::to_string(n) + " matrix rows, found " + std::to_string(rows.size() - 1),
                     rows.back().first);

  Grid grid{base, RealMatrix(n, 0.0), BoolMatrix(n, 0), phi_star, std::nullopt};
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [line, cells] = rows[i + 1];
    if (cells.size() != n + 1)
      throw ParseError("expected " + std::to_string(n + 1) + " cells, found " + std::to_string(cells.size()), line);
    if (cells[0] != base.id(i))
      throw ParseError("row label '" + cells[0] + "' does not match column '" + base.id(i) + "'", line, 1);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& cell = cells[j + 1];
      if (is_missing(cell)) {
        if (i == j) {
          grid.present(i, i) = 1;
        } else if (!grid.first_gap) {
          grid.first_gap = {{line, j + 2}};
        }
        continue;
      }
      const auto v = parse_real(cell);
      if (!v) throw ParseError("'" + cell + "' is not a number", line, j + 2);
      grid.values(i, j) = *v;
      grid.present(i, j) = 1;
    }
  }
  return grid;
}

inline std::string write_grid(const AlternativeSet& base, const RealMatrix& values, const BoolMatrix* present,
                              std::optional<double> phi_star) {
  std::string out;
  if (phi_star) out += "# phi_star=" + format_real(*phi_star) + "\n";
  for (const auto& id : base.ids()) out += "," + id;
  out += "\n";
  for (std::size_t i = 0; i < base.size(); ++i) {
    out += base.id(i);
    for (std::size_t j = 0; j < base.size(); ++j)
      out += "," + ((present && !(*present)(i, j)) ? std::string("NA") : format_real(values(i, j)));
    out += "\n";
  }
  return out;
}

template <typename T>
T get_as(const json& j, std::string_view what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string(what) + " has the wrong type");
  }
}

inline const json& member(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  return obj.at(key);
}

inline double real_of(const json& j, std::string_view what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  return quantize(j.get<double>());
}

inline AlternativeSet alternatives_of(const json& obj) {
  return AlternativeSet(get_as<std::vector<std::string>>(member(obj, "alternatives"), "alternatives"));
}

// n×n array of numbers; null entries allowed when `present` is given.
inline RealMatrix matrix_of(const json& j, std::size_t n, BoolMatrix* present) {
  if (!j.is_array() || j.size() != n) throw ParseError("matrix must have " + std::to_string(n) + " rows");
  RealMatrix m(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != n)
      throw ParseError("matrix row " + std::to_string(i + 1) + " must have " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) {
      if (row[k].is_null()) {
        if (!present) throw ParseError("matrix entry (" + std::to_string(i + 1) + "," + std::to_string(k + 1) + ") is null");
        if (i == k) (*present)(i, k) = 1;
        continue;
      }
      m(i, k) = real_of(row[k], "matrix entry");
      if (present) (*present)(i, k) = 1;
    }
  }
  return m;
}

inline json matrix_json(const RealMatrix& m, const BoolMatrix* present = nullptr) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (present && !(*present)(i, k))
        row.push_back(nullptr);
      else
        row.push_back(quantize(m(i, k)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

// ---- JSON text ------------------------------------------------------------

/// Parses JSON text, reporting syntax errors with line and column.
inline json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw ParseError(msg, line, column);
  }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---- SD matrices --------------------------------------------------------

inline SDMatrix read_sd_csv(std::string_view text) {
  auto grid = detail::read_grid(text);
  if (grid.first_gap) throw ParseError("SD matrix cell is empty", grid.first_gap->first, grid.first_gap->second);
  return SDMatrix(std::move(grid.base), std::move(grid.values));
}

inline std::string write_sd_csv(const SDMatrix& m) { return detail::write_grid(m.base(), m.values(), nullptr, {}); }

inline PartialSDMatrix read_partial_csv(std::string_view text, std::optional<double> phi_star = {}) {
  auto grid = detail::read_grid(text);
  return PartialSDMatrix(std::move(grid.base), std::move(grid.values), std::move(grid.present),
                         phi_star ? std::optional<double>(quantize(*phi_star)) : grid.phi_star);
}

inline std::string write_partial_csv(const PartialSDMatrix& p) {
  return detail::write_grid(p.base(), p.values(), &p.mask(), p.phi_star());
}

inline SDMatrix sd_from_json(const json& j) {
  auto base = detail::alternatives_of(j);
  auto m = detail::matrix_of(detail::member(j, "matrix"), base.size(), nullptr);
  return SDMatrix(std::move(base), std::move(m));
}

inline json sd_to_json(const SDMatrix& m) {
  return {{"alternatives", m.base().ids()}, {"matrix", detail::matrix_json(m.values())}};
}

inline PartialSDMatrix partial_from_json(const json& j) {
  auto base = detail::alternatives_of(j);
  BoolMatrix present(base.size(), 0);
  auto m = detail::matrix_of(detail::member(j, "matrix"), base.size(), &present);
  std::optional<double> bound;
  if (j.contains("phi_star")) bound = detail::real_of(j.at("phi_star"), "phi_star");
  return PartialSDMatrix(std::move(base), std::move(m), std::move(present), bound);
}

inline json partial_to_json(const PartialSDMatrix& p) {
  return {{"alternatives", p.base().ids()},
          {"matrix", detail::matrix_json(p.values(), &p.mask())},
          {"phi_star", quantize(p.phi_star())}};
}

// ---- relations ----------------------------------------------------------

inline PreferenceRelation relation_from_json(const json& j) {
  auto base = detail::alternatives_of(j);
  PreferenceRelation r(base);
  const auto& pairs = detail::member(j, "pairs");
  if (!pairs.is_array()) throw ParseError("'pairs' must be an array");
  for (const auto& p : pairs) {
    auto xy = detail::get_as<std::vector<std::string>>(p, "pair");
    if (xy.size() != 2) throw ParseError("each pair must have two alternatives");
    r.insert(base.index_of(xy[0]), base.index_of(xy[1]));
  }
  return r;
}

inline json pairs_json(const PreferenceRelation& r) {
  json pairs = json::array();
  for (const auto& [x, y] : r.named_pairs()) pairs.push_back({x, y});
  return pairs;
}

inline json relation_to_json(const PreferenceRelation& r) {
  return {{"alternatives", r.base().ids()}, {"pairs", pairs_json(r)}};
}

// ---- weights ------------------------------------------------------------

inline WeightVector weights_from_json(const json& j, const AlternativeSet& base) {
  if (!j.is_object()) throw ParseError("weights must be an object mapping alternatives to numbers");
  std::vector<double> values(base.size(), 0.0);
  std::vector<bool> seen(base.size(), false);
  for (const auto& [id, v] : j.items()) {
    const auto i = base.find(id);
    if (!i) throw InvariantViolation("weights.alternatives", "weight given for unknown alternative '" + id + "'");
    values[*i] = detail::real_of(v, "weight");
    seen[*i] = true;
  }
  for (std::size_t i = 0; i < base.size(); ++i)
    if (!seen[i]) throw InvariantViolation("weights.alternatives", "no weight for '" + base.id(i) + "'");
  return WeightVector(base, std::move(values));
}

inline json weights_to_json(const WeightVector& w) {
  json out = json::object();
  for (std::size_t i = 0; i < w.size(); ++i) out[w.base().id(i)] = quantize(w[i]);
  return out;
}

// ---- ballots ------------------------------------------------------------

inline Verdict parse_verdict(std::string_view s) {
  if (s == "x") return Verdict::x;
  if (s == "y") return Verdict::y;
  if (s == "tie") return Verdict::tie;
  if (s == "abstain") return Verdict::abstain;
  throw ParseError("verdict must be one of x, y, tie, abstain; got '" + std::string(s) + "'");
}

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::x: return "x";
    case Verdict::y: return "y";
    case Verdict::tie: return "tie";
    case Verdict::abstain: return "abstain";
  }
  return "?";
}

inline BallotSet ballots_from_json(const json& j) {
  BallotSet set{detail::alternatives_of(j), {}};
  const auto& experts = detail::member(j, "experts");
  if (!experts.is_array() || experts.empty()) throw ParseError("'experts' must be a nonempty array");
  for (const auto& e : experts) {
    Ballot b;
    b.id = detail::get_as<std::string>(detail::member(e, "id"), "expert id");
    if (e.contains("order")) b.order = detail::get_as<std::vector<std::string>>(e.at("order"), "order");
    if (e.contains("pairs")) {
      for (const auto& p : e.at("pairs")) {
        b.pairs.push_back({detail::get_as<std::string>(detail::member(p, "x"), "x"),
                           detail::get_as<std::string>(detail::member(p, "y"), "y"),
                           parse_verdict(detail::get_as<std::string>(detail::member(p, "verdict"), "verdict"))});
      }
    }
    if (!b.order && !e.contains("pairs")) throw ParseError("expert '" + b.id + "' needs 'order' or 'pairs'");
    set.ballots.push_back(std::move(b));
  }
  set.panel();  // validates every ballot
  return set;
}

inline json ballots_to_json(const BallotSet& set) {
  json experts = json::array();
  for (const auto& b : set.ballots) {
    json e = {{"id", b.id}};
    if (b.order) {
      e["order"] = *b.order;
    } else {
      json pairs = json::array();
      for (const auto& p : b.pairs) pairs.push_back({{"x", p.x}, {"y", p.y}, {"verdict", verdict_name(p.verdict)}});
      e["pairs"] = std::move(pairs);
    }
    experts.push_back(std::move(e));
  }
  return {{"alternatives", set.base.ids()}, {"experts", std::move(experts)}};
}

// ---- criteria -----------------------------------------------------------

inline CriterionFamily criteria_from_json(const json& j) {
  auto base = detail::alternatives_of(j);
  const auto& list = detail::member(j, "criteria");
  if (!list.is_array()) throw ParseError("'criteria' must be an array");
  std::vector<SDMatrix> criteria;
  std::vector<double> weights;
  for (const auto& c : list) {
    criteria.emplace_back(base, detail::matrix_of(detail::member(c, "matrix"), base.size(), nullptr));
    weights.push_back(detail::real_of(detail::member(c, "weight"), "criterion weight"));
  }
  return CriterionFamily(std::move(criteria), std::move(weights));
}

inline json criteria_to_json(const CriterionFamily& fam) {
  json list = json::array();
  for (std::size_t c = 0; c < fam.size(); ++c)
    list.push_back({{"weight", quantize(fam.weights()[c])}, {"matrix", detail::matrix_json(fam.criteria()[c].values())}});
  return {{"alternatives", fam.base().ids()}, {"criteria", std::move(list)}};
}

// ---- format dispatch ----------------------------------------------------

inline Format detect_format(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ParseError("empty input");
  if (text[first] != '{') {
    const auto grid = detail::read_grid(text);
    return grid.first_gap || grid.phi_star ? Format::partial_csv : Format::sd_csv;
  }
  const auto j = parse_json(text);
  if (j.contains("history") && j.contains("data")) return Format::session_json;
  if (j.contains("experts")) return Format::ballots_json;
  if (j.contains("criteria")) return Format::criteria_json;
  if (j.contains("pairs")) return Format::relation_json;
  if (j.contains("matrix")) {
    if (j.contains("phi_star")) return Format::partial_json;
    for (const auto& row : j.at("matrix"))
      for (const auto& v : row)
        if (v.is_null()) return Format::partial_json;
    return Format::sd_json;
  }
  if (!j.empty() && std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_number(); }))
    return Format::weights_json;
  throw ParseError("cannot tell what kind of document this is");
}

/// Session payload parsed from a document, with any weights it carries.
struct LoadedData {
  SessionData data;
  std::optional<WeightVector> weights;
};

inline std::optional<WeightVector> embedded_weights(const json& j, const AlternativeSet& base) {
  if (!j.contains("weights") || j.at("weights").is_null()) return std::nullopt;
  return weights_from_json(j.at("weights"), base);
}

inline LoadedData load_data(std::string_view text, Format format, std::optional<double> phi_star = {}) {
  if (format == Format::automatic) format = detect_format(text);
  switch (format) {
    case Format::sd_csv: return {read_sd_csv(text), std::nullopt};
    case Format::partial_csv: return {read_partial_csv(text, phi_star), std::nullopt};
    case Format::sd_json: {
      const auto j = parse_json(text);
      auto m = sd_from_json(j);
      auto w = embedded_weights(j, m.base());
      return {std::move(m), std::move(w)};
    }
    case Format::partial_json: {
      auto j = parse_json(text);
      if (phi_star) j["phi_star"] = *phi_star;
      auto p = partial_from_json(j);
      auto w = embedded_weights(j, p.base());
      return {std::move(p), std::move(w)};
    }
    case Format::ballots_json: {
      const auto j = parse_json(text);
      auto b = ballots_from_json(j);
      auto w = embedded_weights(j, b.base);
      return {std::move(b), std::move(w)};
    }
    case Format::criteria_json: {
      const auto j = parse_json(text);
      auto c = criteria_from_json(j);
      auto w = embedded_weights(j, c.base());
      return {std::move(c), std::move(w)};
    }
    default:
      throw WrongDataKind(std::string(format_name(format)) + " documents cannot seed a session");
  }
}

/// JSON form of a session payload, tagged with its format.
inline json data_to_json(const SessionData& data) {
  struct Visitor {
    json operator()(const SDMatrix& m) const { return {{"format", format_name(Format::sd_json)}, {"content", sd_to_json(m)}}; }
    json operator()(const PartialSDMatrix& p) const {
      return {{"format", format_name(Format::partial_json)}, {"content", partial_to_json(p)}};
    }
    json operator()(const BallotSet& b) const {
      return {{"format", format_name(Format::ballots_json)}, {"content", ballots_to_json(b)}};
    }
    json operator()(const CriterionFamily& c) const {
      return {{"format", format_name(Format::criteria_json)}, {"content", criteria_to_json(c)}};
    }
  };
  return std::visit(Visitor{}, data);
}

inline SessionData data_from_json(const json& j) {
  const auto format = parse_format_name(detail::get_as<std::string>(detail::member(j, "format"), "format"));
  const auto& content = detail::member(j, "content");
  switch (format) {
    case Format::sd_json: return sd_from_json(content);
    case Format::partial_json: return partial_from_json(content);
    case Format::ballots_json: return ballots_from_json(content);
    case Format::criteria_json: return criteria_from_json(content);
    default: throw ParseError(std::string("unsupported session data format '") + format_name(format) + "'");
  }
}

/// Canonical text of a payload in `format`.
inline std::string save_data(const SessionData& data, Format format, const std::optional<WeightVector>& weights = {}) {
  auto with_weights = [&](json j) {
    if (weights) j["weights"] = weights_to_json(*weights);
    return dump(j);
  };
  switch (format) {
    case Format::sd_csv: return write_sd_csv(std::get<SDMatrix>(data));
    case Format::partial_csv: return write_partial_csv(std::get<PartialSDMatrix>(data));
    case Format::sd_json: return with_weights(sd_to_json(std::get<SDMatrix>(data)));
    case Format::partial_json: return with_weights(partial_to_json(std::get<PartialSDMatrix>(data)));
    case Format::ballots_json: return with_weights(ballots_to_json(std::get<BallotSet>(data)));
    case Format::criteria_json: return with_weights(criteria_to_json(std::get<CriterionFamily>(data)));
    default: throw WrongDataKind(std::string("cannot save session data as ") + format_name(format));
  }
}

}  // namespace supdeg
