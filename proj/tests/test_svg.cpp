#include <doctest.h>

#include <string>
#include <vector>

#include "planvec/error.hpp"
#include "planvec/svg.hpp"
#include "planvec/synth.hpp"

using namespace planvec;

namespace {

VectorPlan random_plan(SplitMix64& rng) {
  VectorPlan plan;
  plan.canvas_width = 16 + static_cast<int>(rng.below(2033));
  plan.canvas_height = 16 + static_cast<int>(rng.below(2033));
  const int n = static_cast<int>(rng.below(15));
  for (int i = 0; i < n; ++i) {
    const int x0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(plan.canvas_width - 1)));
    const int y0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(plan.canvas_height - 1)));
    const int x1 = x0 + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(plan.canvas_width - x0)));
    const int y1 = y0 + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(plan.canvas_height - y0)));
    plan.walls.push_back({x0, y0, x1, y1, 0.97});
  }
  return plan;
}

}  // namespace

TEST_CASE("to_svg emits the exact dialect") {
  VectorPlan plan;
  plan.canvas_width = 100;
  plan.canvas_height = 80;
  plan.walls = {{0, 0, 20, 4}, {5, 10, 9, 70}};
  const std::string expected =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"100\" height=\"80\" "
      "viewBox=\"0 0 100 80\">\n"
      "<path d=\"M 0 0 H 20 V 4 H 0 Z\" fill=\"#000000\"/>\n"
      "<path d=\"M 5 10 H 9 V 70 H 5 Z\" fill=\"#000000\"/>\n"
      "</svg>\n";
  CHECK(to_svg(plan) == expected);

  // Byte determinism: repeated serialization is identical.
  CHECK(to_svg(plan) == expected);

  VectorPlan empty;
  empty.canvas_width = 100;
  empty.canvas_height = 100;
  const std::string empty_doc = to_svg(empty);
  CHECK(empty_doc ==
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"100\" height=\"100\" "
        "viewBox=\"0 0 100 100\">\n</svg>\n");
  CHECK(parse_svg(empty_doc).walls.empty());

  VectorPlan bad;
  bad.canvas_width = 0;
  bad.canvas_height = 10;
  CHECK_THROWS_AS(to_svg(bad), std::invalid_argument);
}

TEST_CASE("parse_svg round trips random plans") {
  SplitMix64 rng(91);
  for (int i = 0; i < 1000; ++i) {
    const VectorPlan plan = random_plan(rng);
    const VectorPlan back = parse_svg(to_svg(plan));
    CHECK(back.canvas_width == plan.canvas_width);
    CHECK(back.canvas_height == plan.canvas_height);
    REQUIRE(back.walls.size() == plan.walls.size());
    for (std::size_t w = 0; w < plan.walls.size(); ++w)
      CHECK(back.walls[w] == plan.walls[w]);
  }
}

TEST_CASE("parse_svg accepts a missing trailing newline") {
  VectorPlan plan;
  plan.canvas_width = 50;
  plan.canvas_height = 50;
  plan.walls = {{1, 2, 30, 6}};
  std::string doc = to_svg(plan);
  doc.pop_back();
  const VectorPlan back = parse_svg(doc);
  CHECK(back.walls.size() == 1);
}

TEST_CASE("parse_svg rejects foreign documents with line numbers") {
  const std::string good =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"40\" height=\"30\" "
      "viewBox=\"0 0 40 30\">\n"
      "<path d=\"M 1 2 H 11 V 6 H 1 Z\" fill=\"#000000\"/>\n"
      "</svg>\n";
  CHECK(parse_svg(good).walls.size() == 1);

  auto expect_error_on_line = [](const std::string& doc, const char* line_tag) {
    try {
      parse_svg(doc);
      FAIL_CHECK("expected a parse error");
    } catch (const FormatError& e) {
      CHECK(std::string(e.what()).find(line_tag) != std::string::npos);
    }
  };

  // Wrong root attribute order / missing xmlns.
  expect_error_on_line("<svg width=\"40\" height=\"30\" viewBox=\"0 0 40 30\">\n</svg>\n",
                       "line 1");
  // viewBox disagreeing with width/height.
  expect_error_on_line(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"40\" height=\"30\" "
      "viewBox=\"0 0 41 30\">\n</svg>\n",
      "line 1");
  // A transform attribute is outside the dialect.
  std::string transformed = good;
  transformed.replace(transformed.find(" fill=\"#000000\""), 0, " transform=\"rotate(3)\"");
  expect_error_on_line(transformed, "line 2");
  // Non-integer coordinates.
  expect_error_on_line(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"40\" height=\"30\" "
      "viewBox=\"0 0 40 30\">\n"
      "<path d=\"M 1.5 2 H 11 V 6 H 1.5 Z\" fill=\"#000000\"/>\n</svg>\n",
      "line 2");
  // Negative coordinates.
  expect_error_on_line(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"40\" height=\"30\" "
      "viewBox=\"0 0 40 30\">\n"
      "<path d=\"M -1 2 H 11 V 6 H -1 Z\" fill=\"#000000\"/>\n</svg>\n",
      "line 2");
  // Path that does not close on its start column.
  expect_error_on_line(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"40\" height=\"30\" "
      "viewBox=\"0 0 40 30\">\n"
      "<path d=\"M 1 2 H 11 V 6 H 2 Z\" fill=\"#000000\"/>\n</svg>\n",
      "line 2");
  // Degenerate rectangle (x1 == x0).
  expect_error_on_line(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"40\" height=\"30\" "
      "viewBox=\"0 0 40 30\">\n"
      "<path d=\"M 1 2 H 1 V 6 H 1 Z\" fill=\"#000000\"/>\n</svg>\n",
      "line 2");
  // Wall outside the canvas.
  expect_error_on_line(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"40\" height=\"30\" "
      "viewBox=\"0 0 40 30\">\n"
      "<path d=\"M 1 2 H 41 V 6 H 1 Z\" fill=\"#000000\"/>\n</svg>\n",
      "line 2");
  // A foreign element.
  expect_error_on_line(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"40\" height=\"30\" "
      "viewBox=\"0 0 40 30\">\n"
      "<rect x=\"0\" y=\"0\" width=\"5\" height=\"5\"/>\n</svg>\n",
      "line 2");
  // Content after the closing tag.
  expect_error_on_line(good + "<!-- trailing -->\n", "line 4");
  // Truncated document.
  expect_error_on_line(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"40\" height=\"30\" "
      "viewBox=\"0 0 40 30\">\n",
      "line 2");
}
