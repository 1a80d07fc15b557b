#include <catch_amalgamated.hpp>

#include <supdeg/io.hpp>

#include "fixtures.hpp"
#include "generators.hpp"

using namespace supdeg;

namespace {

std::string sample(const std::string& name) { return read_file(std::string(SUPDEG_SAMPLES_DIR) + "/" + name); }

template <typename F>
ParseError parse_error_of(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError("unreachable");
}

// load → save → load reproduces both the value and the text.
template <typename T, typename Save, typename Load>
void check_round_trip(const T& value, Save save, Load load) {
  const std::string first = save(value);
  const T reloaded = load(first);
  const std::string second = save(reloaded);
  REQUIRE(second == first);
  REQUIRE(load(second) == reloaded);
}

}  // namespace

TEST_CASE("quantize", "[io]") {
  CHECK(quantize(1.0 / 3.0) == 0.333333333333);
  CHECK(quantize(-0.0) == 0.0);
  CHECK_FALSE(std::signbit(quantize(-0.0)));
  CHECK(format_real(5.0 / 3.0) == "1.66666666667");
  CHECK(format_real(2.0) == "2");
  gen::Rng rng(51);
  for (int k = 0; k < 2000; ++k) {
    const double v = gen::real_in(rng, -1e6, 1e6) * std::pow(10.0, gen::real_in(rng, -12, 0));
    REQUIRE(quantize(quantize(v)) == quantize(v));
    REQUIRE(std::abs(quantize(v) - v) <= 1e-11 * std::abs(v));
    REQUIRE(quantize(-v) == -quantize(v));
  }
}

TEST_CASE("SD matrix CSV", "[io]") {
  CHECK(read_sd_csv(sample("fix_t.csv")) == fixtures::transitive());
  CHECK(read_sd_csv(sample("fix_cycle.csv")) == fixtures::cycle());
  CHECK(read_sd_csv(" , a , b\r\n# note\n\na, 0, 1.5\nb,-1.5,0\n").at("a", "b") == 1.5);
  CHECK(write_sd_csv(fixtures::transitive()) == ",a,b,c\na,0,2,3\nb,-2,0,1\nc,-3,-1,0\n");

  SECTION("skew-symmetry violations name the cell") {
    try {
      read_sd_csv(sample("bad_skew.csv"));
      FAIL("accepted a non-skew matrix");
    } catch (const InvariantViolation& e) {
      CHECK(e.invariant() == "sd.skew_symmetry");
      CHECK(std::string(e.what()).find("(a,b)") != std::string::npos);
    }
    CHECK_THROWS_AS(read_sd_csv(",a,b\na,1,0\nb,0,0\n"), InvariantViolation);
  }

  SECTION("malformed text reports its position") {
    auto e = parse_error_of([] { read_sd_csv(",a,b\na,0,x\nb,0,0\n"); });
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);

    e = parse_error_of([] { read_sd_csv(",a,b\na,0,1\nb,-1\n"); });
    CHECK(e.line() == 3);

    e = parse_error_of([] { read_sd_csv(",a,b\nb,0,1\na,-1,0\n"); });
    CHECK(e.line() == 2);
    CHECK(e.column() == 1);

    e = parse_error_of([] { read_sd_csv("# only a comment\n,a,b\na,0,\nb,0,0\n"); });
    CHECK(e.line() == 3);
    CHECK(e.column() == 3);

    CHECK_THROWS_AS(read_sd_csv(",a,a\na,0,0\na,0,0\n"), ParseError);
    CHECK_THROWS_AS(read_sd_csv(",a,b\na,0,1\n"), ParseError);
    CHECK_THROWS_AS(read_sd_csv(""), ParseError);
    CHECK_THROWS_AS(read_sd_csv(",a,b\na,0,1e999\nb,0,0\n"), ParseError);
  }
}

TEST_CASE("partial matrix CSV", "[io]") {
  const auto p = read_partial_csv(sample("fix_part.csv"));
  CHECK(p == fixtures::partial());
  CHECK(p.phi_star() == 1.0);
  CHECK(read_partial_csv(sample("fix_part.csv"), 4.0).phi_star() == 4.0);
  CHECK(write_partial_csv(p) == "# phi_star=1\n,a,b,c\na,0,1,NA\nb,-1,0,NA\nc,NA,NA,0\n");

  // bound defaults to the largest known magnitude
  CHECK(read_partial_csv(",a,b,c\na,0,2,\nb,-2,0,\nc,,,0\n").phi_star() == 2.0);
  CHECK_THROWS_AS(read_partial_csv(",a,b\na,0,NA\nb,0,0\n"), InvariantViolation);
  CHECK_THROWS_AS(read_partial_csv("# phi_star=0.5\n,a,b\na,0,1\nb,-1,0\n"), InvariantViolation);
  CHECK_THROWS_AS(read_partial_csv("# phi_star=lots\n,a,b\na,0,1\nb,-1,0\n"), ParseError);
}

TEST_CASE("JSON documents", "[io]") {
  SECTION("syntax errors carry a position") {
    const auto e = parse_error_of([] { parse_json("{\n  \"alternatives\": [\"a\",\n  ]\n}"); });
    CHECK(e.line() == 3);
    CHECK(e.column() >= 1);
  }
  SECTION("SD and partial matrices") {
    const auto m = sd_from_json(parse_json(R"({"alternatives":["a","b","c"],"matrix":[[0,2,3],[-2,0,1],[-3,-1,0]]})"));
    CHECK(m == fixtures::transitive());
    const auto p = partial_from_json(
        parse_json(R"({"alternatives":["a","b","c"],"matrix":[[0,1,null],[-1,0,null],[null,null,0]],"phi_star":1})"));
    CHECK(p == fixtures::partial());
    CHECK_THROWS_AS(sd_from_json(parse_json(R"({"alternatives":["a","b"],"matrix":[[0,null],[0,0]]})")), ParseError);
    CHECK_THROWS_AS(sd_from_json(parse_json(R"({"alternatives":["a","b"],"matrix":[[0,1]]})")), ParseError);
    CHECK_THROWS_AS(sd_from_json(parse_json(R"({"matrix":[[0]]})")), ParseError);
    CHECK_THROWS_AS(sd_from_json(parse_json(R"({"alternatives":["a"],"matrix":[["zero"]]})")), ParseError);
  }
  SECTION("ballots") {
    const auto grp = ballots_from_json(parse_json(sample("fix_grp.json")));
    CHECK(grp.ballots == fixtures::group_ballots());
    CHECK(kind_of(grp) == DataKind::panel);
    const auto abst = ballots_from_json(parse_json(sample("abstain.json")));
    CHECK(kind_of(abst) == DataKind::abstention);
    CHECK_THROWS_AS(ballots_from_json(parse_json(R"({"alternatives":["a","b"],"experts":[{"id":"E1"}]})")),
                    ParseError);
    CHECK_THROWS_AS(
        ballots_from_json(parse_json(
            R"({"alternatives":["a","b"],"experts":[{"id":"E1","pairs":[{"x":"a","y":"b","verdict":"maybe"}]}]})")),
        ParseError);
    CHECK_THROWS_AS(ballots_from_json(parse_json(R"({"alternatives":["a","b"],"experts":[{"id":"E1","order":["a"]}]})")),
                    InvariantViolation);
  }
  SECTION("relations and weights") {
    const auto r = relation_from_json(parse_json(sample("relation.json")));
    CHECK(r.count() == 7);
    CHECK(r.contains("b", "a"));
    const auto w = weights_from_json(parse_json(sample("weights.json")), fixtures::abc());
    CHECK(w.at("a") == 0.6);
    CHECK_THROWS_AS(weights_from_json(parse_json(R"({"a":0.5,"b":0.5,"c":0.5})"), fixtures::abc()), InvariantViolation);
    CHECK_THROWS_AS(weights_from_json(parse_json(R"({"a":0.5,"b":0.5})"), fixtures::abc()), InvariantViolation);
    CHECK_THROWS_AS(weights_from_json(parse_json(R"({"a":0.5,"b":0.5,"z":0})"), fixtures::abc()), InvariantViolation);
  }
  SECTION("embedded weights") {
    const auto loaded = load_data(
        R"({"alternatives":["a","b"],"matrix":[[0,1],[-1,0]],"weights":{"a":0.25,"b":0.75}})", Format::automatic);
    REQUIRE(loaded.weights);
    CHECK(loaded.weights->at("b") == 0.75);
  }
}

TEST_CASE("format detection", "[io]") {
  CHECK(detect_format(sample("fix_t.csv")) == Format::sd_csv);
  CHECK(detect_format(sample("fix_part.csv")) == Format::partial_csv);
  CHECK(detect_format(sample("fix_grp.json")) == Format::ballots_json);
  CHECK(detect_format(sample("criteria.json")) == Format::criteria_json);
  CHECK(detect_format(sample("relation.json")) == Format::relation_json);
  CHECK(detect_format(sample("weights.json")) == Format::weights_json);
  CHECK(detect_format(R"({"alternatives":["a"],"matrix":[[0]]})") == Format::sd_json);
  CHECK(detect_format(R"({"alternatives":["a","b"],"matrix":[[0,null],[null,0]],"phi_star":1})") ==
        Format::partial_json);
  CHECK_THROWS_AS(detect_format("{\"what\": \"is this\"}"), ParseError);
  CHECK_THROWS_AS(detect_format("   "), ParseError);
  CHECK_THROWS_AS(load_data(sample("relation.json"), Format::automatic), WrongDataKind);
  CHECK_THROWS_AS(parse_format_name("xml"), ParseError);
  CHECK(parse_format_name("partial-csv") == Format::partial_csv);
}

TEST_CASE("every format round-trips", "[io][property]") {
  gen::Rng rng(52);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = gen::size_in(rng, 1, 7);
    const auto m = gen::sd(rng, n, -10, 10, gen::coin(rng) ? 0.5 : 0.0);
    check_round_trip(m, write_sd_csv, read_sd_csv);
    check_round_trip(
        m, [](const SDMatrix& x) { return dump(sd_to_json(x)); },
        [](const std::string& t) { return sd_from_json(parse_json(t)); });

    const auto p = gen::partial(rng, n, gen::real_in(rng, 0, 1), gen::real_in(rng, 10, 20));
    check_round_trip(
        p, [](const PartialSDMatrix& x) { return write_partial_csv(x); },
        [](const std::string& t) { return read_partial_csv(t); });
    check_round_trip(
        p, [](const PartialSDMatrix& x) { return dump(partial_to_json(x)); },
        [](const std::string& t) { return partial_from_json(parse_json(t)); });

    const BallotSet b{gen::alternatives(n), gen::ballots(rng, gen::size_in(rng, 1, 5), n)};
    check_round_trip(
        b, [](const BallotSet& x) { return dump(ballots_to_json(x)); },
        [](const std::string& t) { return ballots_from_json(parse_json(t)); });

    const auto c = gen::criteria(rng, gen::size_in(rng, 1, 4), n);
    check_round_trip(
        c, [](const CriterionFamily& x) { return dump(criteria_to_json(x)); },
        [](const std::string& t) { return criteria_from_json(parse_json(t)); });

    const auto r = gen::relation(rng, n);
    check_round_trip(
        r, [](const PreferenceRelation& x) { return dump(relation_to_json(x)); },
        [](const std::string& t) { return relation_from_json(parse_json(t)); });

    const auto w = gen::weights(rng, n);
    const auto base = w.base();
    check_round_trip(
        w, [](const WeightVector& x) { return dump(weights_to_json(x)); },
        [&](const std::string& t) { return weights_from_json(parse_json(t), base); });

    // the generic dispatch agrees with the typed readers
    const auto text = save_data(SessionData(p), Format::partial_json, w);
    const auto loaded = load_data(text, Format::automatic);
    REQUIRE(std::get<PartialSDMatrix>(loaded.data) == partial_from_json(parse_json(text)));
    REQUIRE(save_data(loaded.data, Format::partial_json, loaded.weights) == text);
  }
}
