#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/textio.hpp"
#include "support/fixtures.hpp"

using namespace cf;

namespace {

Chart must_parse(const std::string& text) {
  ParseResult r = parse_chart(text);
  REQUIRE_MESSAGE(r.ok, r.error.message << " (line " << r.error.line << ")");
  return r.chart;
}

void expect_error(const std::string& text, const std::string& needle) {
  ParseResult r = parse_chart(text);
  REQUIRE(!r.ok);
  CHECK_MESSAGE(r.error.message.find(needle) != std::string::npos, r.error.message);
}

}  // namespace

TEST_CASE("parse a minimal chart") {
  Chart c = must_parse(
      "# a free edge\n"
      "chart demo degree=4\n"
      "v b1 kind=black\n"
      "v b2 kind=black\n"
      "e f label=2 from=b1 to=b2\n"
      "rot b1: f.t\n"
      "rot b2: f.h\n");
  CHECK(c.name == "demo");
  CHECK(c.degree == 4);
  CHECK(c.nv() == 2);
  CHECK(c.ne() == 1);
  CHECK(validate(c).empty());
}

TEST_CASE("round trip: serialize then parse is stable") {
  for (const Chart& c : {cft::free_edge_chart(), cft::hoop_chart(), cft::star_chart(),
                         cft::two_circles_chart(), cft::star_with_junk_chart(),
                         cft::hoop_around_star_chart()}) {
    std::string s1 = serialize_chart(c);
    Chart c2 = must_parse(s1);
    std::string s2 = serialize_chart(c2);
    CHECK(s1 == s2);
    CHECK(c2.nv() == c.nv());
    CHECK(c2.ne() == c.ne());
    CHECK(c2.embeds.size() == c.embeds.size());
    CHECK(c2.inf_dart == c.inf_dart);
    CHECK(validate(c2).size() == validate(c).size());
  }
}

TEST_CASE("embed and inf lines") {
  Chart c = must_parse(
      "chart nest degree=4\n"
      "v w kind=white\n"
      "v b1 kind=black\nv b2 kind=black\nv b3 kind=black\n"
      "v b4 kind=black\nv b5 kind=black\nv b6 kind=black\n"
      "e e1 label=2 from=b1 to=w\ne e2 label=3 from=b2 to=w\ne e3 label=2 from=b3 to=w\n"
      "e e4 label=3 from=w to=b4\ne e5 label=2 from=w to=b5\ne e6 label=3 from=w to=b6\n"
      "rot w: e1.h e2.h e3.h e4.t e5.t e6.t\n"
      "rot b1: e1.t\nrot b2: e2.t\nrot b3: e3.t\n"
      "rot b4: e4.h\nrot b5: e5.h\nrot b6: e6.h\n"
      "v a kind=anchor\n"
      "e h label=1 from=a to=a\n"
      "rot a: h.t h.h\n"
      "embed a in=e1.t side=left out=h.t out-side=left\n"
      "inf at=e1.t side=left\n");
  CHECK(c.embeds.size() == 1);
  CHECK(c.embeds[0].in_dart == make_dart(c.edge_index("e1"), false));
  CHECK(c.embeds[0].out_dart == make_dart(c.edge_index("h"), false));
  CHECK(c.inf_dart == make_dart(c.edge_index("e1"), false));
  CHECK(validate(c).empty());

  // side=right flips to the other dart
  Chart d = must_parse(
      "chart s degree=4\nv a kind=anchor\ne h label=1 from=a to=a\nrot a: h.t h.h\n"
      "inf at=h.t side=right\n");
  CHECK(d.inf_dart == make_dart(0, true));
}

TEST_CASE("inf everywhere on the empty chart") {
  Chart c = must_parse("chart empty degree=4\ninf everywhere\n");
  CHECK(c.inf_dart == -1);
  CHECK(c.nv() == 0);
  CHECK(serialize_chart(c).find("inf everywhere") != std::string::npos);
}

TEST_CASE("parse errors") {
  expect_error("chart x degree=4\nv b kind=gray\n", "kind");
  expect_error("chart x degree=4\nv b kind=black\nv b kind=black\n", "duplicate vertex");
  expect_error("chart x degree=4\ne f label=1 from=p to=q\n", "unknown vertex");
  expect_error("chart x degree=4\nv b kind=black\nrot c: \n", "unknown vertex");
  expect_error("chart x degree=4\nv b1 kind=black\nv b2 kind=black\n"
               "e f label=2 from=b1 to=b2\nrot b1: f.t\nrot b1: f.h\n",
               "duplicate rotation");
  expect_error("chart x degree=4\nv b1 kind=black\nv b2 kind=black\n"
               "e f label=2 from=b1 to=b2\nrot b1: f.t\nrot b2: f.t\n",
               "two rotations");
  expect_error("chart x degree=4\nwhat now\n", "unknown directive");
  expect_error("chart x\n", "degree");
  expect_error("chart x degree=4\nchart y degree=4\n", "duplicate chart");
  expect_error("chart x degree=4\nv b.1 kind=black\n", "'.'");
  expect_error("chart x degree=4\nv b kind=black\ninf everywhere\ninf everywhere\n",
               "duplicate inf");
  expect_error("chart x degree=4\nv b1 kind=black\nv b2 kind=black\n"
               "e f label=2 from=b1 to=b2\nrot b1: f.x\n",
               "expected <edge>");
}

TEST_CASE("missing rotation is a validation problem, not a parse error") {
  ParseResult r = parse_chart(
      "chart x degree=4\nv b1 kind=black\nv b2 kind=black\ne f label=2 from=b1 to=b2\n"
      "rot b1: f.t\n");
  REQUIRE(r.ok);
  CHECK(!validate(r.chart).empty());
}
