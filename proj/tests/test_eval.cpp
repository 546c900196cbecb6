#include "afcm/cad.hpp"
#include "afcm/eval.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <sstream>

using namespace afcm;

namespace {

std::string fixture_path() { return std::string(AFCM_SOURCE_DIR) + "/data/fixture.csv"; }

std::string header()
{
  std::string h;
  for (int i = 1; i <= 31; ++i) { h += "A" + std::to_string(i) + ","; }
  return h + "label\n";
}

std::string row(char const *a8, char const *label)
{
  std::string r;
  for (int i = 1; i <= 31; ++i) { r += std::string(i == 8 ? a8 : "no") + ","; }
  return r + label + "\n";
}

} // namespace

TEST_CASE("metrics on the published confusion matrix")
{
  auto const m = metrics(ConfusionMatrix{167, 24, 20, 92});
  auto const ref = oracle::rates(167, 24, 20, 92);
  CHECK(*m.accuracy == doctest::Approx(ref.accuracy).epsilon(1e-15));
  CHECK(*m.sensitivity == doctest::Approx(ref.sensitivity).epsilon(1e-15));
  CHECK(*m.specificity == doctest::Approx(ref.specificity).epsilon(1e-15));
  CHECK(*m.ppv == doctest::Approx(ref.ppv).epsilon(1e-15));
  CHECK(*m.npv == doctest::Approx(ref.npv).epsilon(1e-15));
  CHECK(format_percent(m.accuracy) == "85.48%");
  CHECK(format_percent(m.sensitivity) == "89.30%");
  CHECK(format_percent(m.specificity) == "79.31%");
  CHECK(format_percent(m.ppv) == "87.43%");
  CHECK(format_percent(m.npv) == "82.14%");
}

TEST_CASE("undefined ratios")
{
  auto const m = metrics(ConfusionMatrix{0, 0, 0, 5});
  CHECK_FALSE(m.sensitivity.has_value());
  CHECK_FALSE(m.ppv.has_value());
  CHECK(*m.specificity == 1.0);
  CHECK(format_percent(m.ppv) == "n/a");
}

TEST_CASE("confusion counts")
{
  using D = DecisionClass;
  auto const cm = confusion({D::Diseased, D::Diseased, D::Healthy, D::Healthy, D::Diseased},
                            {D::Diseased, D::Healthy, D::Diseased, D::Healthy, D::Diseased});
  CHECK(cm == ConfusionMatrix{2, 1, 1, 1});
  CHECK(cm.total() == 5);
  CHECK_THROWS_AS(confusion({D::Healthy}, {}), DimensionError);
}

TEST_CASE("dataset loading")
{
  auto const model = cad::builtin_model();
  {
    std::istringstream in(header() + row("no", "Healthy") + row("yes", "diseased"));
    auto const ds = load_dataset(in, model);
    REQUIRE(ds.records.size() == 2);
    CHECK(ds.records[1].line == 3);
    CHECK(ds.records[1].label == DecisionClass::Diseased);
  }
  auto message = [&](std::string const &text) {
    std::istringstream in(text);
    try {
      load_dataset(in, model);
    } catch (Error const &e) {
      return std::string(e.what());
    }
    return std::string("accepted");
  };
  CHECK(message("").find("no records") == 0);
  CHECK(message(header()).find("no records") == 0);
  CHECK(message("A1,label\nno,Healthy\n").find("bad header") == 0);
  CHECK(message(header() + row("no", "Healthy") + row("maybe", "Healthy")).find("row 3, A8") == 0);
  CHECK(message(header() + row("no", "")).find("row 2, label: missing label") == 0);
  CHECK_THROWS_AS(load_dataset_file("/nonexistent/data.csv", model), ValidationError);
}

TEST_CASE("bundled fixture loads and round-trips")
{
  auto const model = cad::builtin_model();
  auto const ds = load_dataset_file(fixture_path(), model);
  CHECK(ds.records.size() == 60);
  CHECK(to_csv(ds) == to_csv(cad::fixture_dataset()));
}

TEST_CASE("case evaluation")
{
  auto const model = cad::builtin_model();
  auto const ds = cad::fixture_dataset();
  auto const report = evaluate_case(cad::case_config("Case9"), ds, model);
  CHECK(report.decisions.size() == 60);
  CHECK(report.metrics.counts.total() == 60);
  CHECK(render_text(report, false) == render_text(evaluate_case(cad::case_config("Case9"), ds, model), false));

  auto const table = compare_cases({cad::case_config("Case4"), cad::case_config("Case9")}, ds, model);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[1].metrics.counts == report.metrics.counts);
  auto const text = render_text(table);
  CHECK(text.find("Case4") != std::string::npos);
  CHECK(render_json(table).find("\"accuracy\"") != std::string::npos);
  CHECK_THROWS_AS(compare_cases({}, ds, model), ValidationError);
}
