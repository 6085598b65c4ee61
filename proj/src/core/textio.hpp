#pragma once

// Line-oriented chart text format.
//
//   chart <name> degree=<n>
//   v <id> kind=(white|black|cross|anchor)
//   e <id> label=<int> from=<vid> to=<vid>
//   rot <vid>: <eid>.(t|h) <eid>.(t|h) ...        counterclockwise
//   embed <vid> in=<eid>.(t|h) side=(left|right)
//         [out=<eid>.(t|h) out-side=(left|right)]
//   inf at=<eid>.(t|h) side=(left|right) | inf everywhere
//
// '#' starts a comment. <eid>.t names the dart leaving the tail (the edge
// traversed forward), <eid>.h the dart leaving the head; side=left selects
// the face on that dart's left, side=right the face on the other side. The
// out= pair is required whenever the embedded component has more than one
// face (which face turns outward is independent data there).

#include <string>
#include <string_view>

#include "chart.hpp"

namespace cf {

struct ParseError {
  int line = 0;
  std::string message;
};

struct ParseResult {
  Chart chart;
  bool ok = false;
  ParseError error;
};

ParseResult parse_chart(std::string_view text);
ParseResult parse_chart_file(const std::string& path);

std::string serialize_chart(const Chart& c);

}  // namespace cf
