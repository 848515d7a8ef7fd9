#include "planvec/svg.hpp"

#include <stdexcept>
#include <string_view>

#include "planvec/error.hpp"

namespace planvec {

std::string to_svg(const VectorPlan& plan) {
  if (plan.canvas_width <= 0 || plan.canvas_height <= 0)
    throw std::invalid_argument("to_svg: plan has no canvas size");
  const std::string w = std::to_string(plan.canvas_width);
  const std::string h = std::to_string(plan.canvas_height);
  std::string out;
  out.reserve(128 + plan.walls.size() * 64);
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w +
         "\" height=\"" + h + "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
  for (const WallRect& r : plan.walls) {
    out += "<path d=\"M " + std::to_string(r.x0) + " " + std::to_string(r.y0) +
           " H " + std::to_string(r.x1) + " V " + std::to_string(r.y1) +
           " H " + std::to_string(r.x0) + " Z\" fill=\"#000000\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;

  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError("svg parse error at line " + std::to_string(line) + ": " + what);
  }
  void expect(std::string_view token) {
    if (text.substr(pos, token.size()) != token)
      fail("expected '" + std::string(token) + "'");
    pos += token.size();
  }
  bool peek(std::string_view token) const {
    return text.substr(pos, token.size()) == token;
  }
  int integer() {
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) fail("expected an unsigned integer");
    if (pos - start > 9) fail("coordinate out of range");
    long v = 0;
    for (std::size_t i = start; i < pos; ++i) v = v * 10 + (text[i] - '0');
    return static_cast<int>(v);
  }
  void newline() {
    if (pos >= text.size() || text[pos] != '\n') fail("expected end of line");
    ++pos;
    ++line;
  }
  bool at_end() const { return pos == text.size(); }
};

}  // namespace

VectorPlan parse_svg(const std::string& text) {
  Cursor c{text};
  VectorPlan plan;

  c.expect("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"");
  plan.canvas_width = c.integer();
  c.expect("\" height=\"");
  plan.canvas_height = c.integer();
  c.expect("\" viewBox=\"0 0 ");
  if (c.integer() != plan.canvas_width) c.fail("viewBox width disagrees with width");
  c.expect(" ");
  if (c.integer() != plan.canvas_height) c.fail("viewBox height disagrees with height");
  c.expect("\">");
  if (plan.canvas_width <= 0 || plan.canvas_height <= 0)
    c.fail("canvas dimensions must be positive");
  c.newline();

  while (!c.peek("</svg>")) {
    if (c.at_end()) c.fail("unterminated document");
    WallRect r;
    c.expect("<path d=\"M ");
    r.x0 = c.integer();
    c.expect(" ");
    r.y0 = c.integer();
    c.expect(" H ");
    r.x1 = c.integer();
    c.expect(" V ");
    r.y1 = c.integer();
    c.expect(" H ");
    if (c.integer() != r.x0) c.fail("path does not close on its start column");
    c.expect(" Z\" fill=\"#000000\"/>");
    if (r.x0 >= r.x1 || r.y0 >= r.y1) c.fail("degenerate path rectangle");
    if (r.x1 > plan.canvas_width || r.y1 > plan.canvas_height)
      c.fail("path leaves the canvas");
    c.newline();
    plan.walls.push_back(r);
  }
  c.expect("</svg>");
  if (!c.at_end()) {
    c.newline();
    if (!c.at_end()) c.fail("trailing content after </svg>");
  }
  return plan;
}

}  // namespace planvec
