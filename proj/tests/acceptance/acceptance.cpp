// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <supdeg/group.hpp>
#include <supdeg/interval.hpp>
#include <supdeg/io.hpp>
#include <supdeg/levels.hpp>
#include <supdeg/report.hpp>
#include <supdeg/session.hpp>
#include <supdeg/superiority.hpp>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace supdeg;

namespace {

// Collects the first few violations of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (first_.empty()) first_ = what;
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream ss;
    ss << what << ": got " << got << ", want " << want;
    expect(std::abs(got - want) <= tol, ss.str());
  }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::ostringstream ss;
    ss << checks_ << " checks";
    if (failures_) ss << ", " << failures_ << " failed; first: " << first_;
    return ss.str();
  }
  void note(const std::string& s) { extra_ += "; " + s; }
  const std::string& extra() const { return extra_; }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::string first_;
  std::string extra_;
};

std::string cell(std::size_t i, std::size_t j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

// 1. The integral degree of any skew-symmetric matrix is skew-symmetric and additive.
void isd_repair(Check& c) {
  gen::Rng rng(1001);
  const auto start = std::chrono::steady_clock::now();
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = gen::size_in(rng, 2, 8);
    const auto m = gen::sd(rng, n, -10.0, 10.0);
    const auto f = isd(m, WeightVector::uniform(m.base()));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        c.expect(std::abs(f(x, y) + f(y, x)) <= 1e-9, "skew at " + cell(x, y));
        for (std::size_t z = 0; z < n; ++z)
          c.expect(std::abs(f(x, z) + f(z, y) - f(x, y)) <= 1e-9, "additivity at " + cell(x, y));
      }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < 5.0, "runtime " + std::to_string(secs) + " s");
  c.note("runtime " + std::to_string(secs) + " s");
}

// 2. Additive input is its own integral degree; utility equals potential.
void fixed_point(Check& c) {
  gen::Rng rng(1002);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = gen::size_in(rng, 1, 8);
    std::vector<double> f(n);
    for (auto& v : f) v = gen::real_in(rng, -10.0, 10.0);
    const auto m = SDMatrix::from_potential(gen::alternatives(n), f);
    const auto w = gen::coin(rng) ? WeightVector::uniform(m.base()) : gen::weights(rng, n);
    c.expect(classify(m).in_t, "potential difference not classified in T");
    const auto F = isd(m, w);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) c.near(F(x, y), m(x, y), 1e-9, "isd " + cell(x, y));
    const auto q = utility(m, w);
    const auto p = potential(m, w);
    for (std::size_t x = 0; x < n; ++x) c.near(q[x], p[x], 1e-9, "utility " + std::to_string(x));
  }
}

// 3. The cyclic fixture carries no integral preference.
void cycle_collapse(Check& c) {
  const auto m = fixtures::cycle();
  const auto w = WeightVector::uniform(m.base());
  const auto F = isd(m, w);
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y) c.near(F(x, y), 0.0, 1e-12, "F" + cell(x, y));
  const auto q = utility(m, w);
  for (std::size_t x = 0; x < 3; ++x) c.near(q[x], 0.0, 1e-12, "q(" + m.base().id(x) + ")");
}

// 4. G(0) is the Copeland weak order; reference panels.
void copeland_equivalence(Check& c) {
  gen::Rng rng(1004);
  for (int k = 0; k < 500; ++k) {
    const auto vpr = gen::panel(rng, gen::size_in(rng, 1, 7), gen::size_in(rng, 1, 6));
    const auto t = tally(vpr);
    c.expect(group_level(t, 0.0).relation == copeland(t).order, "G(0) differs from Copeland on panel " + std::to_string(k));
  }

  const auto grp = copeland(tally(fixtures::group_panel()));
  c.expect(grp.scores.values() == std::vector<double>{4, 0, -4}, "reference panel scores");
  c.expect(grp.scores.ranking() == std::vector<std::vector<std::string>>{{"a"}, {"b"}, {"c"}}, "reference ranking");

  const auto base = fixtures::abc();
  const auto t = tally(fixtures::condorcet_panel());
  const auto maj = majority(t);
  c.expect(strict_part(maj) == PreferenceRelation::from_pairs(base, {{"a", "b"}, {"b", "c"}, {"c", "a"}}),
           "Condorcet majority is not the cycle a>b>c>a");
  c.expect(core(maj).empty(), "Condorcet majority core not empty");
  const auto cond = copeland(t);
  c.expect(cond.scores.values() == std::vector<double>{0, 0, 0}, "Condorcet Copeland scores not all zero");
  c.expect(cond.order == PreferenceRelation::full(base), "Condorcet Copeland order not a full tie");
}

// 5. Level relations shrink, cores grow, cuts form a lattice; cores match a scan.
void ladder_laws(Check& c) {
  gen::Rng rng(1005);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = gen::size_in(rng, 1, 7);
    const auto m = gen::sd(rng, n, -10.0, 10.0, gen::coin(rng) ? 1.0 : 0.0);
    const auto chain = ladder(m);
    const auto tag = " in matrix " + std::to_string(k);
    for (std::size_t i = 0; i < chain.rungs.size(); ++i) {
      const auto& ri = chain.rungs[i];
      c.expect(ri.core.members() == oracle::level_core(m, n, ri.level), "core differs from scan" + tag);
      for (std::size_t j = i + 1; j < chain.rungs.size(); ++j) {
        const auto& rj = chain.rungs[j];
        c.expect(rj.relation.is_subset_of(ri.relation), "relations not anti-monotone" + tag);
        c.expect(ri.core.is_subset_of(rj.core), "cores not monotone" + tag);
        const auto a = level_cut(m, ri.level);
        const auto b = level_cut(m, rj.level);
        c.expect(intersection(a.relation, b.relation) == level_relation(m, std::max(ri.level, rj.level)),
                 "intersection identity" + tag);
        c.expect(union_of(a.relation, b.relation) == level_relation(m, std::min(ri.level, rj.level)),
                 "union identity" + tag);
        c.expect(meet(a, b).relation == rj.relation && join(a, b).relation == ri.relation, "meet/join" + tag);
      }
    }
  }
}

// 6. Integral bounds, widths, refinement monotonicity, complete limit.
void interval_laws(Check& c) {
  gen::Rng rng(1006);
  const double tol = 1e-9;
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = gen::size_in(rng, 2, 7);
    const auto p = gen::partial(rng, n, gen::real_in(rng, 0.0, 1.0), gen::real_in(rng, 1.0, 10.0));
    const auto w = gen::coin(rng) ? WeightVector::uniform(p.base()) : gen::weights(rng, n);
    const auto est = interval_utilities(p, w);
    const auto ib = integral_bounds(p, w);
    const auto tag = " in matrix " + std::to_string(k);
    for (std::size_t x = 0; x < n; ++x) {
      c.near(est.width(x), 2.0 * est.missing_mass[x] * p.phi_star(), tol, "width law" + tag);
      for (std::size_t y = 0; y < n; ++y) {
        c.near(ib.upper(x, y), est.upper[x] - est.lower[y], tol, "U = f_u - f_d" + tag);
        c.near(ib.lower(x, y), est.lower[x] - est.upper[y], tol, "D = f_d - f_u" + tag);
        c.near(ib.upper(x, y), -ib.lower(y, x), tol, "U(x,y) = -D(y,x)" + tag);
        const bool missing = est.missing_mass[x] + est.missing_mass[y] > 0.0;
        c.expect(missing ? ib.upper(x, y) > ib.lower(x, y) : std::abs(ib.upper(x, y) - ib.lower(x, y)) <= tol,
                 "U > D" + tag);
        for (std::size_t r = 0; r < n; ++r) {
          c.near(ib.upper(x, r) + ib.upper(r, y), ib.upper(x, y) + ib.upper(r, r), tol, "U additivity" + tag);
          c.near(ib.lower(x, r) + ib.lower(r, y), ib.lower(x, y) + ib.lower(r, r), tol, "D additivity" + tag);
        }
      }
    }

    const auto absent = p.absent_pairs();
    if (!absent.empty()) {
      const auto [i, j] = absent[gen::size_in(rng, 0, absent.size() - 1)];
      const auto q = refine(p, p.base().id(i), p.base().id(j), gen::real_in(rng, -p.phi_star(), p.phi_star()));
      const auto after = interval_utilities(q, w);
      c.expect(est.contains(after), "refinement widened an interval" + tag);
      const auto before_info = missing_info(est, w);
      const auto after_info = missing_info(after, w);
      c.expect(after_info.mean <= before_info.mean + tol, "A_mean increased" + tag);
      c.expect(after_info.max <= before_info.max + tol, "A_max increased" + tag);
      c.expect(after_info.sum <= before_info.sum + tol, "A_sum increased" + tag);
    }

    const auto m = gen::sd(rng, n);
    const auto full = interval_utilities(PartialSDMatrix::complete(m), w);
    const auto pot = potential(m, w);
    for (std::size_t x = 0; x < n; ++x) {
      c.near(full.width(x), 0.0, tol, "complete width" + tag);
      c.near(full.lower[x], pot[x], tol, "complete interval vs potential" + tag);
    }
  }
}

// 7. The partial fixture reproduces its intervals and criteria.
void partial_fixture(Check& c) {
  const auto p = fixtures::partial();
  const auto w = WeightVector::uniform(p.base());
  const auto est = interval_utilities(p, w);
  const double third = 1.0 / 3.0;
  const double tol = 1e-12;
  c.near(est.lower[0], 0.0, tol, "f_d(a)");
  c.near(est.upper[0], 2 * third, tol, "f_u(a)");
  c.near(est.lower[1], -2 * third, tol, "f_d(b)");
  c.near(est.upper[1], 0.0, tol, "f_u(b)");
  c.near(est.lower[2], -2 * third, tol, "f_d(c)");
  c.near(est.upper[2], 2 * third, tol, "f_u(c)");
  const auto info = missing_info(est, w);
  c.near(info.mean, 4.0 / 9.0, tol, "A_mean");
  c.near(info.max, 2 * third, tol, "A_max");
  c.near(info.sum, 1.0, tol, "A_sum");
  c.near(integral_bounds(p, w).upper(0, 1), 4 * third, tol, "U(a,b)");
}

// 8. The degree sits midway between the abstention bounds.
void abstention_midpoint(Check& c) {
  gen::Rng rng(1008);
  for (int k = 0; k < 500; ++k) {
    const auto vpr = gen::panel(rng, gen::size_in(rng, 1, 7), gen::size_in(rng, 2, 6), gen::real_in(rng, 0.1, 0.6));
    const auto b = abstention_bounds(abstention_tally(vpr));
    const std::size_t n = vpr.base().size();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        c.expect(b.degree(x, y) == (b.lower(x, y) + b.upper(x, y)) / 2, "midpoint in panel " + std::to_string(k));
  }

  // three experts prefer a, one prefers b, one cannot compare
  const AlternativeSet ab{"a", "b"};
  const auto pa = relation_from_order(ab, {"a", "b"});
  const auto pb = relation_from_order(ab, {"b", "a"});
  const auto none = PreferenceRelation::from_pairs(ab, {{"a", "a"}, {"b", "b"}});
  const auto t = abstention_tally(VectorPreferenceRelation(ab, {pa, pa, pa, pb, none}));
  c.expect(t.a(0, 1) == 3 && t.b(0, 1) == 1 && t.p(0, 1) == 1, "tally a=3, b=1, p=1");
  const auto b = abstention_bounds(t);
  c.expect(b.lower(0, 1) == 1.0, "d = 1");
  c.expect(b.upper(0, 1) == 3.0, "u = 3");
}

// 9. Every format survives load → save → load; saved sessions replay to the same report.
void round_trip(Check& c) {
  gen::Rng rng(1009);
  auto idempotent = [&](const SessionData& data, Format format, const std::optional<WeightVector>& w,
                        const std::string& tag) {
    const auto first = save_data(data, format, w);
    const auto a = load_data(first, format);
    const auto second = save_data(a.data, format, a.weights);
    const auto b = load_data(second, format);
    c.expect(second == first, std::string(format_name(format)) + " text changed" + tag);
    c.expect(a.data == b.data && a.weights == b.weights, std::string(format_name(format)) + " value changed" + tag);
    c.expect(detect_format(first) == format,
             std::string(format_name(format)) + " not detected" + tag);
  };

  for (int k = 0; k < 200; ++k) {
    const std::size_t n = gen::size_in(rng, 1, 7);
    const auto tag = " in instance " + std::to_string(k);
    std::optional<WeightVector> w;
    if (gen::coin(rng)) w = gen::weights(rng, n);
    const auto m = gen::sd(rng, n, -10, 10, gen::coin(rng) ? 0.5 : 0.0);
    const auto p = gen::partial(rng, n, gen::real_in(rng, 0, 1), gen::real_in(rng, 10, 20));
    const BallotSet b{gen::alternatives(n), gen::ballots(rng, gen::size_in(rng, 1, 6), n)};
    const auto cf = gen::criteria(rng, gen::size_in(rng, 1, 4), n);
    idempotent(m, Format::sd_csv, {}, tag);
    idempotent(m, Format::sd_json, w, tag);
    idempotent(p, Format::partial_csv, {}, tag);
    idempotent(p, Format::partial_json, w, tag);
    idempotent(b, Format::ballots_json, w, tag);
    idempotent(cf, Format::criteria_json, w, tag);

    const auto r = gen::relation(rng, n);
    const auto rt = dump(relation_to_json(r));
    const auto r2 = relation_from_json(parse_json(rt));
    c.expect(dump(relation_to_json(r2)) == rt && r2 == r, "relation-json" + tag);

    const auto wv = gen::weights(rng, n);
    const auto wt = dump(weights_to_json(wv));
    const auto w2 = weights_from_json(parse_json(wt), wv.base());
    c.expect(dump(weights_to_json(w2)) == wt && weights_from_json(parse_json(dump(weights_to_json(w2))), wv.base()) == w2,
             "weights-json" + tag);

    // sessions: mutate, save, reload, compare reports byte for byte
    for (const SessionData& data : {SessionData(p), SessionData(m), SessionData(b), SessionData(cf)}) {
      const auto format = std::holds_alternative<PartialSDMatrix>(data) ? Format::partial_json
                          : std::holds_alternative<SDMatrix>(data)      ? Format::sd_json
                          : std::holds_alternative<BallotSet>(data)     ? Format::ballots_json
                                                                        : Format::criteria_json;
      Session s = load_session(save_data(data, format, w), format, "s");
      for (int step = 0; step < 3; ++step) {
        if (s.kind() == DataKind::partial) {
          if (const auto pair = suggest_next_pair(s)) {
            const double phi = std::get<PartialSDMatrix>(s.current()).phi_star();
            s.refine(pair->first, pair->second, gen::real_in(rng, -phi, phi));
          }
        }
        s.bookmark("b" + std::to_string(step), gen::real_in(rng, 0, 4));
      }
      const auto saved = s.save();
      const auto replayed = load_session(saved, Format::session_json, "other");
      c.expect(replayed.save() == saved, "session text changed" + tag);
      c.expect(dump(analyze(replayed)) == dump(analyze(s)), "replayed report differs" + tag);
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "ISD repair: skew-symmetric and additive on 1000 random matrices, under 5 s", isd_repair},
      {2, "fixed point: additive input unchanged, utility = potential on 200 matrices", fixed_point},
      {3, "cycle fixture collapses to zero degrees and utilities", cycle_collapse},
      {4, "G(0) equals the Copeland order on 500 panels; reference panels reproduced", copeland_equivalence},
      {5, "ladder laws and brute-force cores on 500 matrices", ladder_laws},
      {6, "interval laws on 500 partial matrices", interval_laws},
      {7, "partial fixture intervals and criteria", partial_fixture},
      {8, "abstention midpoint on 500 panels; a=3, b=1, p=1 gives d=1, u=3", abstention_midpoint},
      {9, "every format round-trips; session replay reproduces reports", round_trip},
  };

  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s [%d] %s (%s%s)\n", c.ok() ? "PASS" : "FAIL", cr.number, cr.name, c.summary().c_str(),
                c.extra().c_str());
    failed += c.ok() ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
