#include "afcm/cad.hpp"
#include "afcm/fuzzy_io.hpp"

#include <doctest.h>

using namespace afcm;

TEST_CASE("evenly spaced encodings")
{
  auto const three = evenly_spaced({"no", "occasionally", "yes"});
  REQUIRE(three.size() == 3);
  CHECK(three[0].crisp == 0.0);
  CHECK(three[1].crisp == 0.5);
  CHECK(three[2].crisp == 1.0);

  auto const five = evenly_spaced({"a", "b", "c", "d", "e"});
  for (std::size_t i = 0; i < 5; ++i) { CHECK(five[i].crisp == 0.25 * static_cast<double>(i)); }
  CHECK(evenly_spaced({"only"}).front().crisp == 1.0);
}

TEST_CASE("CAD encodings")
{
  auto const model = cad::builtin_model();
  auto const table = EncodingTable::of(model);
  CHECK(table.attributes.size() == 31);
  CHECK(table.at("A31").size() == 5);
  CHECK(table.at("A31")[3].value == "abnormal");
  CHECK(table.at("A31")[3].crisp == 0.75);
  CHECK(table.at("A15")[1].crisp == 0.5);
  CHECK_THROWS_AS(static_cast<void>(table.at("A99")), AttributeError);

  auto r = cad::baseline_record(model);
  r["A1"] = "yes";
  r["A31"] = "definitely abnormal";
  auto const u = encode_record(r, table);
  CHECK(u.size() == 31);
  CHECK(u(0) == 1.0);
  CHECK(u(30) == 1.0);
  CHECK(u.segment(1, 29).isZero(0));
}

TEST_CASE("record errors name the attribute")
{
  auto const model = cad::builtin_model();
  auto const table = EncodingTable::of(model);
  auto const base = cad::baseline_record(model);

  auto expect_attr = [&](Record const &r, std::string const &attr) {
    try {
      check_record(r, table);
      FAIL("accepted a bad record");
    } catch (AttributeError const &e) {
      CHECK(e.attribute() == attr);
      CHECK(std::string(e.what()).find(attr) != std::string::npos);
    }
  };

  auto unknown = base;
  unknown["A99"] = "yes";
  expect_attr(unknown, "A99");

  auto missing = base;
  missing.erase("A20");
  expect_attr(missing, "A20");

  auto badValue = base;
  badValue["A20"] = "maybe";
  expect_attr(badValue, "A20");

  CHECK_NOTHROW(check_record(base, table));
}

TEST_CASE("output labels")
{
  auto const scale = default_label_scale();
  CHECK(label_output(0.85, scale) == "Definitely Abnormal Situation");
  CHECK(label_output(0.0, scale) == "Normal Situation");
  CHECK(label_output(0.2, scale) == "Normal Situation");
  CHECK(label_output(0.2000001, scale) == "Doubtful Situation");
  CHECK(label_output(0.5, scale) == "Little Abnormal Situation");
  CHECK(label_output(0.8, scale) == "Abnormal Situation");
  CHECK(label_output(1.0, scale) == "Definitely Abnormal Situation");
  CHECK_THROWS_AS(label_output(1.01, scale), ValidationError);
  CHECK_THROWS_AS(label_output(-0.01, scale), ValidationError);
}
