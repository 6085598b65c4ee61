#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/canon.hpp"
#include "support/fixtures.hpp"
#include "support/iso_oracle.hpp"
#include "support/permute.hpp"

using namespace cf;

namespace {

// Two disjoint circles labelled la/lb. The annulus between them is glued from
// the chosen side of each: in_right picks the face of h1, out_right of h2.
// root_second describes the same picture with the roles of h1/h2 swapped.
Chart two_hoops(int la, int lb, bool in_right, bool out_right, bool root_second = false) {
  cft::Builder b(4, "nest");
  b.v("a1", VertexKind::Anchor).v("a2", VertexKind::Anchor);
  b.e("h1", la, "a1", "a1").e("h2", lb, "a2", "a2");
  b.rot("a1", {"h1.t", "h1.h"}).rot("a2", {"h2.t", "h2.h"});
  if (root_second)
    b.embed("a1", "h2", out_right, "h1", in_right);
  else
    b.embed("a2", "h1", in_right, "h2", out_right);
  return b.done();
}

}  // namespace

TEST_CASE("id strings do not matter") {
  Chart a = cft::free_edge_chart();
  Chart b = a;
  b.vertices[0].id = "zebra";
  b.vertices[1].id = "yak";
  b.edges[0].id = "q";
  CHECK(canonical_code(a) == canonical_code(b));
}

TEST_CASE("labels and kinds do matter") {
  Chart a = cft::free_edge_chart();
  Chart b = a;
  b.edges[0].label = 1;
  CHECK(canonical_code(a) != canonical_code(b));
  CHECK(canonical_code(Chart{}) == "empty");
}

TEST_CASE("invariance under re-presentation") {
  for (const Chart& c : {cft::free_edge_chart(), cft::hoop_chart(), cft::star_chart(),
                         cft::two_circles_chart(), cft::star_with_junk_chart(),
                         cft::hoop_around_star_chart()}) {
    std::string code = canonical_code(c);
    for (std::uint32_t seed = 1; seed <= 8; ++seed)
      CHECK(canonical_code(cft::permuted(c, seed)) == code);
  }
}

TEST_CASE("oracle agreement on connected charts") {
  std::vector<Chart> pool = {cft::free_edge_chart(), cft::hoop_chart(), cft::star_chart(),
                             cft::two_circles_chart()};
  Chart relabeled = cft::permuted(cft::star_chart(), 42);
  pool.push_back(relabeled);
  Chart otherlabel = cft::free_edge_chart();
  otherlabel.edges[0].label = 1;
  pool.push_back(otherlabel);
  for (const Chart& x : pool)
    for (const Chart& y : pool) {
      bool by_code = canonical_code(x) == canonical_code(y);
      bool by_oracle = cft::oracle_isomorphic(x, y);
      CHECK(by_code == by_oracle);
    }
}

TEST_CASE("infinity placement is presentation data") {
  Chart a = cft::hoop_chart();
  Chart b = a;
  a.inf_dart = make_dart(0, false);
  b.inf_dart = make_dart(0, true);
  CHECK(canonical_code(a) == canonical_code(b));
}

TEST_CASE("containment root choice is presentation data") {
  // Annulus glued from (left of h1, right of h2), described from either root.
  Chart x1 = two_hoops(1, 2, false, true, false);
  Chart x2 = two_hoops(1, 2, false, true, true);
  CHECK(canonical_code(x1) == canonical_code(x2));
}

TEST_CASE("which faces meet the shared region matters") {
  Chart left_left = two_hoops(1, 2, false, false);
  Chart left_right = two_hoops(1, 2, false, true);
  CHECK(canonical_code(left_left) != canonical_code(left_right));
  // left-left is symmetric under swapping the circles, so a label swap is
  // invisible there but visible on the asymmetric gluing.
  Chart ll_swap = two_hoops(2, 1, false, false);
  Chart lr_swap = two_hoops(2, 1, false, true);
  CHECK(canonical_code(left_left) == canonical_code(ll_swap));
  CHECK(canonical_code(left_right) != canonical_code(lr_swap));
}

TEST_CASE("sibling may be described through either neighbor") {
  // Free edge A with hoop B and free edge C in the same region.
  cft::Builder b1(4, "sib");
  b1.v("b1", VertexKind::Black).v("b2", VertexKind::Black);
  b1.e("f", 2, "b1", "b2");
  b1.rot("b1", {"f.t"}).rot("b2", {"f.h"});
  b1.v("a", VertexKind::Anchor);
  b1.e("h", 1, "a", "a");
  b1.rot("a", {"h.t", "h.h"});
  b1.v("c1", VertexKind::Black).v("c2", VertexKind::Black);
  b1.e("g", 2, "c1", "c2");
  b1.rot("c1", {"g.t"}).rot("c2", {"g.h"});
  cft::Builder b2 = b1;
  b1.embed("a", "f", false, "h", false);
  b1.embed("c1", "f", false);  // C described against A
  b2.embed("a", "f", false, "h", false);
  b2.embed("c1", "h", false);  // C described against B's outer face
  CHECK(canonical_code(b1.done()) == canonical_code(b2.done()));
}

TEST_CASE("reflection is not quotiented") {
  Chart nested = two_hoops(1, 1, false, false);
  CHECK(canonical_code(reflected(nested)) != canonical_code(nested));
  CHECK(canonical_code(reflected(reflected(nested))) == canonical_code(nested));
  // The six-terminal star happens to be reflection-symmetric.
  Chart star = cft::star_chart();
  CHECK(canonical_code(reflected(star)) == canonical_code(star));
  CHECK(validate(reflected(star)).empty());
}

TEST_CASE("orientation reversal is not quotiented") {
  Chart nested = two_hoops(1, 1, false, false);
  CHECK(canonical_code(orientation_reversed(nested)) != canonical_code(nested));
  CHECK(canonical_code(orientation_reversed(orientation_reversed(nested))) ==
        canonical_code(nested));
  CHECK(validate(orientation_reversed(cft::star_chart())).empty());
}

TEST_CASE("label flip") {
  Chart f = cft::free_edge_chart();  // label 2 of 1..3: fixed point
  CHECK(canonical_code(label_flipped(f)) == canonical_code(f));
  Chart h = cft::hoop_chart();  // label 1 -> 3
  CHECK(canonical_code(label_flipped(h)) != canonical_code(h));
  CHECK(canonical_code(label_flipped(label_flipped(h))) == canonical_code(h));
}

TEST_CASE("junk stripping changes the code") {
  Chart c = cft::star_with_junk_chart();
  CHECK(canonical_code(working_chart(c)) != canonical_code(c));
  CHECK(canonical_code(working_chart(c)) == canonical_code(cft::star_chart()));
}

TEST_CASE("digests separate distinct codes") {
  Digest d1 = digest_of(canonical_code(cft::star_chart()));
  Digest d2 = digest_of(canonical_code(cft::hoop_chart()));
  CHECK(d1 == digest_of(canonical_code(cft::star_chart())));
  CHECK(!(d1 == d2));
}
