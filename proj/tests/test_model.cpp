#include "afcm/cad.hpp"
#include "afcm/model.hpp"

#include <doctest.h>

#include <algorithm>

using namespace afcm;

namespace {

// u1 -> x1 -> y, u2 -> y.
char const *const kSmall = R"({
  "meta": {"name": "small", "version": "1"},
  "concepts": [
    {"id": "u1", "label": "first input", "kind": "input", "group": "x1"},
    {"id": "u2", "label": "second input", "kind": "input"},
    {"id": "x1", "label": "state", "kind": "state"},
    {"id": "y", "label": "output", "kind": "output"}
  ],
  "encodings": {"u1": [["no", 0], ["yes", 1]], "u2": [["low", 0], ["mid", 0.5], ["high", 1]]},
  "edges": [
    {"from": "u1", "to": "x1", "weight": "S"},
    {"from": "x1", "to": "y", "weight": "M"},
    {"from": "u2", "to": "y", "weight": "-W", "provenance": "default"}
  ],
  "rules": [
    {"id": "boost", "description": "high u2 boosts u1", "when": [{"attr": "u2", "equals": "high"}],
     "then": [{"scale": 1.5, "select": {"source": ["u1"]}}]}
  ]
})";

bool has_code(ValidationReport const &r, std::string const &code)
{
  return std::any_of(r.violations.begin(), r.violations.end(), [&](Violation const &v) { return v.code == code; });
}

} // namespace

TEST_CASE("linguistic weights")
{
  auto const w = LinguisticWeight::parse("-S");
  CHECK(w.negative);
  CHECK(w.magnitude == Magnitude::Strong);
  CHECK(w.str() == "-S");
  CHECK(LinguisticWeight::parse("+VW").str() == "VW");
  CHECK(LinguisticWeight::parse("VS").magnitude == Magnitude::VeryStrong);
  CHECK_THROWS_AS(LinguisticWeight::parse("X"), ParseError);
  CHECK_THROWS_AS(LinguisticWeight::parse(""), ParseError);
}

TEST_CASE("numeric weights use the scale and clamp")
{
  WeightScale const scale;
  Edge e{"a", "b", LinguisticWeight::parse("S"), Gate::Always, 1.0, ""};
  CHECK(numeric_weight(e, scale) == 0.7);
  e.weight.negative = true;
  CHECK(numeric_weight(e, scale) == -0.7);
  e.multiplier = 1.5;
  CHECK(numeric_weight(e, scale) == -1.0);
  e.weight = LinguisticWeight::parse("W");
  e.multiplier = 0.5;
  CHECK(numeric_weight(e, scale) == doctest::Approx(0.15).epsilon(1e-15));
}

TEST_CASE("load, validate and round-trip a document")
{
  auto const m = load_model(kSmall);
  CHECK(m.concepts.size() == 4);
  CHECK(m.at("u2").domain.size() == 3);
  CHECK(m.edges[2].provenance == "default");
  CHECK(m.rules.front().actions.front().factor == 1.5);
  CHECK(m.has_incoming("y"));
  CHECK_FALSE(m.has_incoming("u1"));
  CHECK(load_model(serialize_model(m)) == m);
}

TEST_CASE("built-in model round-trips and validates")
{
  auto const m = cad::builtin_model();
  CHECK(validate_model(m).ok());
  CHECK(load_model(serialize_model(m)) == m);
  CHECK(serialize_model(load_model(serialize_model(m))) == serialize_model(m));
}

TEST_CASE("parse errors")
{
  CHECK_THROWS_AS(load_model("{"), ParseError);
  CHECK_THROWS_AS(load_model(R"({"concepts": [], "extra": 1})"), ParseError);
  CHECK_THROWS_AS(load_model(R"({"concepts": [{"id": "a", "kind": "widget"}]})"), ParseError);
  CHECK_THROWS_AS(load_model(R"({"concepts": [{"id": "a", "kind": "input", "colour": "red"}]})"), ParseError);
}

TEST_CASE("validation names each violated invariant")
{
  auto base = load_model(kSmall);

  SUBCASE("self-edge")
  {
    base.edges.push_back({"x1", "x1", LinguisticWeight::parse("W"), Gate::Always, 1.0, ""});
    CHECK(has_code(validate_model(base), "self-edge"));
  }
  SUBCASE("unknown concept names the id")
  {
    base.edges.push_back({"u1", "ghost", LinguisticWeight::parse("W"), Gate::Always, 1.0, ""});
    auto const r = validate_model(base);
    CHECK(has_code(r, "unknown concept"));
    CHECK(r.str().find("ghost") != std::string::npos);
  }
  SUBCASE("illegal edge kinds")
  {
    base.edges.push_back({"y", "x1", LinguisticWeight::parse("W"), Gate::Always, 1.0, ""});
    base.edges.push_back({"x1", "u1", LinguisticWeight::parse("W"), Gate::Always, 1.0, ""});
    CHECK(has_code(validate_model(base), "illegal edge kind"));
  }
  SUBCASE("duplicate id and edge")
  {
    base.concepts.push_back(base.concepts.front());
    base.edges.push_back(base.edges.front());
    auto const r = validate_model(base);
    CHECK(has_code(r, "duplicate id"));
    CHECK(has_code(r, "duplicate edge"));
  }
  SUBCASE("domains")
  {
    base.concepts[0].domain.clear();
    base.concepts[2].domain = {{"a", 0.0}};
    base.concepts[1].domain = {{"low", 0.5}, {"high", 0.2}};
    auto const r = validate_model(base);
    CHECK(has_code(r, "input without domain"));
    CHECK(has_code(r, "state with value domain"));
    CHECK(has_code(r, "encoding not increasing"));
  }
  SUBCASE("gates only on state to output")
  {
    base.edges[0].gate = Gate::PositiveSource;
    CHECK(has_code(validate_model(base), "gate outside state->output"));
  }
  SUBCASE("rule references")
  {
    base.rules.front().condition.all.front().attributes = {"u9"};
    base.rules.front().actions.front().factor = 0.0;
    auto const r = validate_model(base);
    CHECK(has_code(r, "unknown attribute"));
    CHECK(has_code(r, "non-positive factor"));
  }
  SUBCASE("scale and labels")
  {
    base.scale.values = {0.1, 0.3, 0.3, 0.7, 0.9};
    base.labels = {{0.5, "low"}};
    auto const r = validate_model(base);
    CHECK(has_code(r, "scale not increasing"));
    CHECK(has_code(r, "label scale"));
  }
  SUBCASE("invalid documents are rejected on load")
  {
    base.edges.push_back({"x1", "x1", LinguisticWeight::parse("W"), Gate::Always, 1.0, ""});
    CHECK_THROWS_AS(load_model(serialize_model(base)), ValidationError);
  }
}

TEST_CASE("state subsets rewire members to the output")
{
  auto const m = load_model(kSmall);
  auto const flat = with_states(m, {});
  CHECK(flat.find("x1") == nullptr);
  CHECK(flat.at("u1").group.empty());
  auto const it = std::find_if(flat.edges.begin(), flat.edges.end(), [](Edge const &e) { return e.source == "u1"; });
  REQUIRE(it != flat.edges.end());
  CHECK(it->target == "y");
  CHECK(it->weight.str() == "S");
  CHECK(validate_model(flat).ok());
  CHECK(with_states(m, {"x1"}) == m);
  CHECK_THROWS_AS(with_states(m, {"u1"}), ValidationError);
}

TEST_CASE("two-output split")
{
  auto const split = with_two_outputs(load_model(kSmall));
  CHECK(validate_model(split).ok());
  CHECK(split.find("y") == nullptr);
  REQUIRE(split.find(std::string(kHealthyOutput)) != nullptr);
  int gated = 0;
  for (auto const &e : split.edges) {
    if (e.source == "u2") {
      CHECK(e.target == kHealthyOutput);
      CHECK_FALSE(e.weight.negative);
    }
    if (e.source == "x1") {
      ++gated;
      bool const toDiseased = e.target == kDiseasedOutput;
      CHECK(e.gate == (toDiseased ? Gate::PositiveSource : Gate::NegativeSource));
    }
  }
  CHECK(gated == 2);
}

TEST_CASE("CAD model structure")
{
  auto const m = cad::builtin_model();
  CHECK(m.ids_of(ConceptKind::Input).size() == 31);
  CHECK(m.ids_of(ConceptKind::State) == std::vector<std::string>{"A32", "A33", "A34", "A35"});
  CHECK(m.ids_of(ConceptKind::Output).size() == 1);
  CHECK(m.rules.size() == 6);
  WeightScale const scale;
  double a33 = 0.0;
  for (auto const &e : m.edges) {
    if (e.target == "A33") { a33 += std::abs(numeric_weight(e, scale)); }
  }
  CHECK(a33 == doctest::Approx(1.3).epsilon(1e-12));
}
