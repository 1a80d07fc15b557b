#pragma once

// JSON reports over a session's current state. Output depends only on the
// session contents, so identical sessions give byte-identical reports.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "group.hpp"
#include "interval.hpp"
#include "io.hpp"
#include "levels.hpp"
#include "session.hpp"

namespace supdeg {

namespace report_detail {

inline json real(double v) { return quantize(v); }

inline json vector_json(const AlternativeSet& base, const std::vector<double>& v) {
  json out = json::object();
  for (std::size_t i = 0; i < base.size(); ++i) out[base.id(i)] = real(v[i]);
  return out;
}

inline json utility_json(const UtilityVector& u) { return vector_json(u.base(), u.values()); }

inline json flags_json(const ClassFlags& f) { return {{"H", f.in_h}, {"T", f.in_t}, {"S", f.in_s}}; }

inline json rung_json(double level, const PreferenceRelation& relation, const Core& core) {
  return {{"level", real(level)}, {"core", core.ids()}, {"strict_pairs", pairs_json(strict_part(relation))}};
}

inline json rungs_json(const std::vector<Rung>& rungs) {
  json out = json::array();
  for (const auto& r : rungs) out.push_back(rung_json(r.level, r.relation, r.core));
  return out;
}

/// True when the strict part of `r` contains a directed cycle.
inline bool has_cycle(const PreferenceRelation& r) {
  const auto s = strict_part(r);
  const std::size_t n = s.base().size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) reach[i][j] = s.contains(i, j);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (reach[i][i]) return true;
  return false;
}

inline json intervals_json(const IntervalEstimate& est) {
  json out = json::array();
  for (std::size_t i = 0; i < est.size(); ++i)
    out.push_back({{"id", est.base.id(i)},
                   {"lower", real(est.lower[i])},
                   {"upper", real(est.upper[i])},
                   {"missing_mass", real(est.missing_mass[i])}});
  return out;
}

inline json missing_json(const MissingInfo& m) {
  return {{"A_mean", real(m.mean)}, {"A_max", real(m.max)}, {"A_sum", real(m.sum)}};
}

// Shared section for anything that reduces to one SD matrix.
inline void sd_section(json& out, const SDMatrix& m, const WeightVector& w) {
  const auto chain = ladder(m, w);
  const auto q = utility(m, w);
  out["classes"] = flags_json(classify(m));
  out["phi_star"] = real(m.phi_star());
  out["matrix"] = detail::matrix_json(m.values());
  out["isd"] = detail::matrix_json(isd(m, w).values());
  out["potential"] = utility_json(potential(m, w));
  out["utilities"] = utility_json(q);
  out["ranking"] = q.ranking();
  out["top_level"] = real(chain.top_level);
  out["ladder"] = rungs_json(chain.rungs);
  if (has_cycle(level_relation(m, 0.0))) out["warnings"].push_back("cycle");
}

inline json tally_section(const TallyMatrix& t) {
  const auto maj = majority(t);
  const auto cop = copeland(t);
  const auto z = group_sd(t);
  const auto g0 = group_level(t, 0.0);
  json out = {{"experts", t.experts}, {"tally", detail::matrix_json(t.votes)}};
  out["majority"] = {{"strict_pairs", pairs_json(strict_part(maj))},
                     {"core", core(maj).ids()},
                     {"transitive", is_transitive(maj)}};
  out["copeland"] = {{"scores", utility_json(cop.scores)}, {"ranking", cop.scores.ranking()}};
  out["group_sd"] = detail::matrix_json(z.values());
  out["group_isd"] = detail::matrix_json(g0.integral.values());
  out["additive"] = additivity_check(z);
  out["ladder"] = rungs_json(group_ladder(t));
  if (has_cycle(maj)) out["warnings"].push_back("cycle");
  return out;
}

// Relation and core for a bookmarked or requested level, per data kind.
inline std::optional<std::pair<PreferenceRelation, Core>> cut_at(const Session& s, double level) {
  require_level(level);
  const auto& data = s.current();
  if (const auto* m = std::get_if<SDMatrix>(&data)) {
    auto r = rung_at(*m, level);
    return std::pair{std::move(r.relation), std::move(r.core)};
  }
  if (const auto* c = std::get_if<CriterionFamily>(&data)) {
    auto r = rung_at(aggregate(*c), level);
    return std::pair{std::move(r.relation), std::move(r.core)};
  }
  if (const auto* b = std::get_if<BallotSet>(&data)) {
    const auto panel = b->panel();
    if (!panel.complete()) return std::nullopt;
    auto g = group_level(tally(panel), level);
    return std::pair{std::move(g.relation), std::move(g.core)};
  }
  return std::nullopt;
}

}  // namespace report_detail

/// Pair to ask about next: the absent pair with the largest λ(x)·λ(y), ties
/// going to the lexicographically first (x, y) taken in base order.
inline std::optional<std::pair<std::string, std::string>> suggest_next_pair(const PartialSDMatrix& p,
                                                                            const WeightVector& w) {
  require_same_base(p.base(), w.base(), "suggest_next_pair");
  std::optional<std::pair<std::string, std::string>> best;
  double best_score = -1.0;
  for (const auto& [i, j] : p.absent_pairs()) {
    const auto& a = p.base().id(i);
    const auto& b = p.base().id(j);
    const double score = w[i] * w[j];
    if (!best || score > best_score + kTolerance ||
        (std::abs(score - best_score) <= kTolerance && std::pair(a, b) < *best)) {
      best = std::pair(a, b);
      best_score = score;
    }
  }
  return best;
}

inline std::optional<std::pair<std::string, std::string>> suggest_next_pair(const Session& s) {
  const auto* p = std::get_if<PartialSDMatrix>(&s.current());
  if (!p) throw WrongDataKind(std::string("suggestions need partial data, session holds ") + kind_name(s.kind()));
  return suggest_next_pair(*p, s.weights());
}

inline json suggestion_json(const Session& s) {
  const auto pair = suggest_next_pair(s);
  if (!pair) return {{"pair", nullptr}, {"complete", true}};
  return {{"pair", {pair->first, pair->second}}, {"complete", false}};
}

/// Decomposition and order properties of a single relation.
inline json relation_report(const PreferenceRelation& r) {
  return {{"schema", kSchemaVersion},
          {"kind", "relation"},
          {"alternatives", r.base().ids()},
          {"identity_pairs", pairs_json(identity_part(r))},
          {"strict_pairs", pairs_json(strict_part(r))},
          {"connected", is_connected(r)},
          {"transitive", is_transitive(r)},
          {"core", core(r).ids()}};
}

/// Full analysis of the session's current state.
inline json analyze(const Session& s) {
  using namespace report_detail;
  const auto& w = s.weights();
  json out = {{"schema", kSchemaVersion},
              {"kind", kind_name(s.kind())},
              {"alternatives", s.base().ids()},
              {"weights", weights_to_json(w)},
              {"warnings", json::array()}};

  const auto& data = s.current();
  if (const auto* m = std::get_if<SDMatrix>(&data)) {
    sd_section(out, *m, w);
  } else if (const auto* c = std::get_if<CriterionFamily>(&data)) {
    const auto agg = aggregate(*c);
    sd_section(out, agg, w);
    const auto conv = convolution(*c, w);
    json per = json::array();
    for (std::size_t k = 0; k < c->size(); ++k)
      per.push_back({{"weight", real(c->weights()[k])},
                     {"classes", flags_json(classify(c->criteria()[k]))},
                     {"potential", utility_json(conv.per_criterion[k])}});
    out["criteria"] = std::move(per);
    out["convolution"] = {{"total", utility_json(conv.total)},
                          {"ranking", conv.total.ranking()},
                          {"aggregate_in_t", conv.aggregate_in_t}};
    if (!conv.aggregate_in_t) out["warnings"].push_back("convolution_not_faithful");
  } else if (const auto* b = std::get_if<BallotSet>(&data)) {
    const auto panel = b->panel();
    if (panel.complete()) {
      auto section = tally_section(tally(panel));
      for (const auto& warning : section["warnings"]) out["warnings"].push_back(warning);
      section.erase("warnings");
      out["group"] = std::move(section);
    } else {
      const auto t = abstention_tally(panel);
      const auto bnd = abstention_bounds(t);
      const auto est = group_intervals(t, w);
      out["abstention"] = {{"experts", t.experts},
                           {"a", detail::matrix_json(t.a)},
                           {"b", detail::matrix_json(t.b)},
                           {"p", detail::matrix_json(t.p)},
                           {"degree", detail::matrix_json(bnd.degree)},
                           {"lower", detail::matrix_json(bnd.lower)},
                           {"upper", detail::matrix_json(bnd.upper)}};
      out["intervals"] = intervals_json(est);
      out["missing_info"] = missing_json(missing_info(est, w));
      out["interval_order"] = pairs_json(interval_order(est));
    }
  } else {
    const auto& p = std::get<PartialSDMatrix>(data);
    const auto est = interval_utilities(p, w);
    const auto ib = integral_bounds(p, w);
    json absent = json::array();
    for (const auto& [i, j] : p.absent_pairs()) absent.push_back({p.base().id(i), p.base().id(j)});
    out["phi_star"] = real(p.phi_star());
    out["absent_pairs"] = std::move(absent);
    out["complete"] = p.is_complete();
    out["intervals"] = intervals_json(est);
    out["missing_info"] = missing_json(missing_info(est, w));
    out["integral_bounds"] = {{"upper", detail::matrix_json(ib.upper)}, {"lower", detail::matrix_json(ib.lower)}};
    out["interval_order"] = pairs_json(interval_order(est));
    out["suggestion"] = suggestion_json(s)["pair"];
    if (p.is_complete()) out["utilities"] = utility_json(utility(p.to_sd(), w));
  }

  json marks = json::array();
  for (const auto& [name, level] : s.bookmarks()) {
    json mark = {{"name", name}, {"level", real(level)}};
    if (auto cut = cut_at(s, level)) mark["core"] = cut->second.ids();
    marks.push_back(std::move(mark));
  }
  out["bookmarks"] = std::move(marks);
  return out;
}

/// Ladder rungs, or the single cut at `level` when given.
inline json ladder_report(const Session& s, std::optional<double> level = {}) {
  using namespace report_detail;
  json out = {{"schema", kSchemaVersion}, {"kind", kind_name(s.kind())}};
  if (level) {
    auto cut = cut_at(s, *level);
    if (!cut) throw WrongDataKind(std::string("no level relation for ") + kind_name(s.kind()) + " data");
    out["rung"] = rung_json(*level, cut->first, cut->second);
    return out;
  }
  const auto& data = s.current();
  std::vector<Rung> rungs;
  double top = 0.0;
  if (const auto* m = std::get_if<SDMatrix>(&data)) {
    rungs = ladder(*m, s.weights()).rungs;
    top = m->phi_star();
  } else if (const auto* c = std::get_if<CriterionFamily>(&data)) {
    const auto agg = aggregate(*c);
    rungs = ladder(agg, s.weights()).rungs;
    top = agg.phi_star();
  } else if (const auto* b = std::get_if<BallotSet>(&data); b && b->panel().complete()) {
    const auto t = tally(b->panel());
    rungs = group_ladder(t);
    top = group_isd(group_sd(t)).phi_star();
  } else {
    throw WrongDataKind(std::string("no ladder for ") + kind_name(s.kind()) + " data");
  }
  out["top_level"] = real(top);
  out["rungs"] = rungs_json(rungs);
  return out;
}

}  // namespace supdeg
