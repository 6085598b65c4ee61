#pragma once

// Hand-built charts with independently computed face/region counts. Each
// fixture's comments carry the expected numbers used by the tests.

#include <string>
#include <vector>

#include "core/chart.hpp"

namespace cft {

struct Builder {
  cf::Chart c;

  explicit Builder(int degree, std::string name = "t") {
    c.degree = degree;
    c.name = std::move(name);
  }
  Builder& v(const std::string& id, cf::VertexKind k) {
    c.vertices.push_back({id, k, {}});
    return *this;
  }
  Builder& e(const std::string& id, int label, const std::string& from, const std::string& to) {
    c.edges.push_back({id, label, c.vertex_index(from), c.vertex_index(to)});
    return *this;
  }
  // End token "<edge>.t" / "<edge>.h".
  std::int32_t end(const std::string& tok) const {
    auto dot = tok.rfind('.');
    return cf::make_end(c.edge_index(tok.substr(0, dot)), tok[dot + 1] == 'h');
  }
  Builder& rot(const std::string& vid, const std::vector<std::string>& ends) {
    auto& r = c.vertices[c.vertex_index(vid)].rot;
    for (const auto& t : ends) r.push_back(end(t));
    return *this;
  }
  // side: false = left of the forward dart, true = right.
  std::int32_t face_dart(const std::string& eid, bool right) const {
    return cf::make_dart(c.edge_index(eid), right);
  }
  Builder& embed(const std::string& child, const std::string& in_edge, bool in_right,
                 const std::string& out_edge = "", bool out_right = false) {
    c.embeds.push_back({c.vertex_index(child), face_dart(in_edge, in_right),
                        out_edge.empty() ? -1 : face_dart(out_edge, out_right)});
    return *this;
  }
  Builder& inf(const std::string& eid, bool right) {
    c.inf_dart = face_dart(eid, right);
    return *this;
  }
  cf::Chart done() const { return c; }
};

// Free edge: two blacks, one edge. 1 face, complexity (0,-1).
inline cf::Chart free_edge_chart() {
  Builder b(4, "free");
  b.v("b1", cf::VertexKind::Black).v("b2", cf::VertexKind::Black);
  b.e("f", 2, "b1", "b2");
  b.rot("b1", {"f.t"}).rot("b2", {"f.h"});
  return b.done();
}

// Hoop: one anchor, one self-edge. 2 faces.
inline cf::Chart hoop_chart() {
  Builder b(4, "hoop");
  b.v("a", cf::VertexKind::Anchor);
  b.e("h", 1, "a", "a");
  b.rot("a", {"h.t", "h.h"});
  return b.done();
}

// Star: one white, six terminal edges, labels 2,3 alternating, first three
// inward. 7 vertices, 6 edges, 1 face, complexity (1,0).
inline cf::Chart star_chart() {
  Builder b(4, "star");
  b.v("w", cf::VertexKind::White);
  for (int i = 1; i <= 6; ++i) b.v("b" + std::to_string(i), cf::VertexKind::Black);
  b.e("e1", 2, "b1", "w").e("e2", 3, "b2", "w").e("e3", 2, "b3", "w");
  b.e("e4", 3, "w", "b4").e("e5", 2, "w", "b5").e("e6", 3, "w", "b6");
  b.rot("w", {"e1.h", "e2.h", "e3.h", "e4.t", "e5.t", "e6.t"});
  for (int i = 1; i <= 3; ++i) b.rot("b" + std::to_string(i), {"e" + std::to_string(i) + ".t"});
  for (int i = 4; i <= 6; ++i) b.rot("b" + std::to_string(i), {"e" + std::to_string(i) + ".h"});
  return b.done();
}

// Two transverse circles (labels 1 and 3) through two crossings. Valid,
// 4 faces; {a1,a2} is a simple closed curve, {a1} alone is not.
inline cf::Chart two_circles_chart() {
  Builder b(4, "circles");
  b.v("c1", cf::VertexKind::Crossing).v("c2", cf::VertexKind::Crossing);
  b.e("a1", 1, "c1", "c2").e("a2", 1, "c2", "c1");
  b.e("b1", 3, "c1", "c2").e("b2", 3, "c2", "c1");
  b.rot("c1", {"a1.t", "b1.t", "a2.h", "b2.h"});
  b.rot("c2", {"a2.t", "b1.h", "a1.h", "b2.t"});
  return b.done();
}

// A loop of label 2 at one white plus terminal edges filling the rotation:
// rot(w) = L.h(2), t1.h(3), t2.h(2), t3.t(3), L.t(2), t5.t(3). Two faces; the
// side of the loop away from t2 is its associated disk and holds only t5.
inline cf::Chart loop_chart() {
  Builder b(4, "loop");
  b.v("w", cf::VertexKind::White);
  for (const char* id : {"b1", "b2", "b3", "b5"}) b.v(id, cf::VertexKind::Black);
  b.e("L", 2, "w", "w");
  b.e("t1", 3, "b1", "w").e("t2", 2, "b2", "w");
  b.e("t3", 3, "w", "b3").e("t5", 3, "w", "b5");
  b.rot("w", {"L.h", "t1.h", "t2.h", "t3.t", "L.t", "t5.t"});
  b.rot("b1", {"t1.t"}).rot("b2", {"t2.t"}).rot("b3", {"t3.h"}).rot("b5", {"t5.h"});
  return b.done();
}

// Star at the root, a free edge parked in its face, a hoop parked inside the
// free edge's region. Working chart = the star alone.
inline cf::Chart star_with_junk_chart() {
  Builder b(4, "junked");
  cf::Chart star = star_chart();
  b.c = star;
  b.c.name = "junked";
  b.v("p1", cf::VertexKind::Black).v("p2", cf::VertexKind::Black);
  b.e("f", 2, "p1", "p2");
  b.rot("p1", {"f.t"}).rot("p2", {"f.h"});
  b.v("a", cf::VertexKind::Anchor);
  b.e("h", 1, "a", "a");
  b.rot("a", {"h.t", "h.h"});
  b.embed("p1", "e1", false);             // free edge into the star's face
  b.embed("a", "f", false, "h", false);   // hoop beside it, outer face = left of h.t
  return b.done();
}

// Two whites joined by a pair of label-1 edges. The 2-gon face is empty of
// label-1 material (one label-2 stub hangs into it at each corner); the two
// label-1 terminal stubs sU, sV sit on the outer side. 2 faces.
inline cf::Chart bigon_chart() {
  Builder b(3, "bigon");
  b.v("u", cf::VertexKind::White).v("v", cf::VertexKind::White);
  for (const char* id : {"c1", "c2", "c3", "p", "d1", "d2", "d3", "q"})
    b.v(id, cf::VertexKind::Black);
  b.e("A", 1, "u", "v").e("B", 1, "v", "u");
  b.e("t1", 2, "u", "c1").e("t2", 2, "c2", "u").e("sU", 1, "p", "u").e("t3", 2, "u", "c3");
  b.e("u1", 2, "d1", "v").e("u2", 2, "d2", "v").e("sV", 1, "v", "q").e("u3", 2, "v", "d3");
  b.rot("u", {"A.t", "t1.t", "B.h", "t2.h", "sU.h", "t3.t"});
  b.rot("v", {"B.t", "u1.h", "A.h", "u2.h", "sV.t", "u3.t"});
  b.rot("c1", {"t1.h"}).rot("c2", {"t2.t"}).rot("p", {"sU.t"}).rot("c3", {"t3.h"});
  b.rot("d1", {"u1.t"}).rot("d2", {"u2.t"}).rot("q", {"sV.h"}).rot("d3", {"u3.h"});
  return b.done();
}

// Lens between e1 (label 2) and e2 (label 3): the pure 2-gon face
// {e1 fwd, e2 bwd} is the lens side; e1 is the middle arc at both corners
// (condition (ii)). 2 faces.
inline cf::Chart lens_cond_ii_chart() {
  Builder b(4, "lens-ii");
  b.v("u", cf::VertexKind::White).v("v", cf::VertexKind::White);
  for (const char* id : {"p1", "p2", "p3", "p4", "q1", "q2", "q3", "q4"})
    b.v(id, cf::VertexKind::Black);
  b.e("e1", 2, "v", "u").e("e2", 3, "v", "u");
  b.e("a1", 3, "p1", "u").e("a2", 2, "u", "p2").e("a3", 3, "u", "p3").e("a4", 2, "u", "p4");
  b.e("b1", 2, "q1", "v").e("b2", 3, "q2", "v").e("b3", 2, "q3", "v").e("b4", 3, "v", "q4");
  b.rot("u", {"e1.h", "a1.h", "a2.t", "a3.t", "a4.t", "e2.h"});
  b.rot("v", {"e2.t", "b1.h", "b2.h", "b3.h", "b4.t", "e1.t"});
  b.rot("p1", {"a1.t"}).rot("p2", {"a2.h"}).rot("p3", {"a3.h"}).rot("p4", {"a4.h"});
  b.rot("q1", {"b1.t"}).rot("q2", {"b2.t"}).rot("q3", {"b3.t"}).rot("q4", {"b4.h"});
  return b.done();
}

// Same shape but neither e1 nor e2 carries a middle arc (condition (i)).
inline cf::Chart lens_cond_i_chart() {
  Builder b(4, "lens-i");
  b.v("u", cf::VertexKind::White).v("v", cf::VertexKind::White);
  for (const char* id : {"p1", "p2", "p3", "p4", "q1", "q2", "q3", "q4"})
    b.v(id, cf::VertexKind::Black);
  b.e("e1", 2, "v", "u").e("e2", 3, "u", "v");
  b.e("a1", 3, "p1", "u").e("a2", 2, "p2", "u").e("a3", 3, "u", "p3").e("a4", 2, "u", "p4");
  b.e("b1", 2, "q1", "v").e("b2", 3, "q2", "v").e("b3", 2, "v", "q3").e("b4", 3, "v", "q4");
  b.rot("u", {"e1.h", "a1.h", "a2.h", "a3.t", "a4.t", "e2.t"});
  b.rot("v", {"e2.h", "b1.h", "b2.h", "b3.t", "b4.t", "e1.t"});
  b.rot("p1", {"a1.t"}).rot("p2", {"a2.t"}).rot("p3", {"a3.h"}).rot("p4", {"a4.h"});
  b.rot("q1", {"b1.t"}).rot("q2", {"b2.t"}).rot("q3", {"b3.h"}).rot("q4", {"b4.h"});
  return b.done();
}

// The empty 2-gon is there but e1/e2 are middle at one corner each, so
// neither lens condition holds.
inline cf::Chart lens_neither_chart() {
  Builder b(4, "lens-no");
  b.v("u", cf::VertexKind::White).v("v", cf::VertexKind::White);
  for (const char* id : {"p1", "p2", "p3", "p4", "q1", "q2", "q3", "q4"})
    b.v(id, cf::VertexKind::Black);
  b.e("e1", 2, "v", "u").e("e2", 3, "v", "u");
  b.e("a1", 3, "p1", "u").e("a2", 2, "u", "p2").e("a3", 3, "u", "p3").e("a4", 2, "u", "p4");
  b.e("b1", 2, "v", "q1").e("b2", 3, "q2", "v").e("b3", 2, "q3", "v").e("b4", 3, "q4", "v");
  b.rot("u", {"e1.h", "a1.h", "a2.t", "a3.t", "a4.t", "e2.h"});
  b.rot("v", {"e2.t", "b1.t", "b2.h", "b3.h", "b4.h", "e1.t"});
  b.rot("p1", {"a1.t"}).rot("p2", {"a2.h"}).rot("p3", {"a3.h"}).rot("p4", {"a4.h"});
  b.rot("q1", {"b1.h"}).rot("q2", {"b2.t"}).rot("q3", {"b3.t"}).rot("q4", {"b4.t"});
  return b.done();
}

// Square of label-2 edges with both diagonals crossing at X: e5 = g1+g2
// (label 1, w1-w3), e6 = g3+g4 (label 3, w2-w4). All stubs hang outside.
// 17 vertices, 20 edges, 5 faces.
inline cf::Chart m4_chart() {
  Builder b(4, "m4");
  for (const char* id : {"w1", "w2", "w3", "w4"}) b.v(id, cf::VertexKind::White);
  b.v("X", cf::VertexKind::Crossing);
  for (const char* id : {"A1", "A2", "A3", "B1", "B2", "B3", "C1", "C2", "C3", "D1", "D2", "D3"})
    b.v(id, cf::VertexKind::Black);
  b.e("E1", 2, "w1", "w2").e("E2", 2, "w2", "w3").e("E3", 2, "w3", "w4").e("E4", 2, "w1", "w4");
  b.e("g1", 1, "w1", "X").e("g2", 1, "X", "w3").e("g3", 3, "w2", "X").e("g4", 3, "X", "w4");
  b.e("x1", 1, "A1", "w1").e("x2", 2, "A2", "w1").e("x3", 1, "A3", "w1");
  b.e("z1", 3, "B1", "w2").e("z2", 2, "B2", "w2").e("z3", 3, "w2", "B3");
  b.e("y1", 1, "C1", "w3").e("y2", 2, "w3", "C2").e("y3", 1, "w3", "C3");
  b.e("v1", 3, "w4", "D1").e("v2", 2, "w4", "D2").e("v3", 3, "w4", "D3");
  b.rot("w1", {"E1.t", "g1.t", "E4.t", "x1.h", "x2.h", "x3.h"});
  b.rot("w2", {"E2.t", "g3.t", "E1.h", "z1.h", "z2.h", "z3.t"});
  b.rot("w3", {"E3.t", "g2.h", "E2.h", "y1.h", "y2.t", "y3.t"});
  b.rot("w4", {"E3.h", "v1.t", "v2.t", "v3.t", "E4.h", "g4.h"});
  b.rot("X", {"g2.t", "g4.t", "g1.h", "g3.h"});
  b.rot("A1", {"x1.t"}).rot("A2", {"x2.t"}).rot("A3", {"x3.t"});
  b.rot("B1", {"z1.t"}).rot("B2", {"z2.t"}).rot("B3", {"z3.h"});
  b.rot("C1", {"y1.t"}).rot("C2", {"y2.h"}).rot("C3", {"y3.h"});
  b.rot("D1", {"v1.h"}).rot("D2", {"v2.h"}).rot("D3", {"v3.h"});
  return b.done();
}

// Square with the label-1 diagonal d5 only; label 3 reaches the interior as
// two terminal stubs (ta into the south-east part, tb into the north-west),
// so the label-3 side of the M4 conditions fails. 3 faces.
inline cf::Chart m4_two_stub_chart() {
  Builder b(4, "m4-stubs");
  for (const char* id : {"w1", "w2", "w3", "w4"}) b.v(id, cf::VertexKind::White);
  for (const char* id :
       {"A1", "A2", "A3", "B1", "B2", "B3", "C1", "C2", "C3", "D1", "D2", "D3", "P", "Q"})
    b.v(id, cf::VertexKind::Black);
  b.e("E1", 2, "w1", "w2").e("E2", 2, "w2", "w3").e("E3", 2, "w3", "w4").e("E4", 2, "w1", "w4");
  b.e("d5", 1, "w1", "w3").e("ta", 3, "w2", "P").e("tb", 3, "Q", "w4");
  b.e("x1", 1, "A1", "w1").e("x2", 2, "A2", "w1").e("x3", 1, "A3", "w1");
  b.e("z1", 3, "B1", "w2").e("z2", 2, "B2", "w2").e("z3", 3, "w2", "B3");
  b.e("y1", 1, "C1", "w3").e("y2", 2, "w3", "C2").e("y3", 1, "w3", "C3");
  b.e("v1", 3, "w4", "D1").e("v2", 2, "w4", "D2").e("v3", 3, "w4", "D3");
  b.rot("w1", {"E1.t", "d5.t", "E4.t", "x1.h", "x2.h", "x3.h"});
  b.rot("w2", {"E2.t", "ta.t", "E1.h", "z1.h", "z2.h", "z3.t"});
  b.rot("w3", {"E3.t", "d5.h", "E2.h", "y1.h", "y2.t", "y3.t"});
  b.rot("w4", {"E3.h", "v1.t", "v2.t", "v3.t", "E4.h", "tb.h"});
  b.rot("A1", {"x1.t"}).rot("A2", {"x2.t"}).rot("A3", {"x3.t"});
  b.rot("B1", {"z1.t"}).rot("B2", {"z2.t"}).rot("B3", {"z3.h"});
  b.rot("C1", {"y1.t"}).rot("C2", {"y2.h"}).rot("C3", {"y3.h"});
  b.rot("D1", {"v1.h"}).rot("D2", {"v2.h"}).rot("D3", {"v3.h"});
  b.rot("P", {"ta.h"}).rot("Q", {"tb.t"});
  return b.done();
}

// m4_chart with a floating white component embedded in the south triangle
// (the face left of E1 forward); kills M4 condition (iii).
inline cf::Chart m4_inner_white_chart() {
  Builder b(4, "m4-innerw");
  b.c = m4_chart();
  b.c.name = "m4-innerw";
  b.v("u0", cf::VertexKind::White);
  for (const char* id : {"F1", "F2", "F3", "F4", "F5", "F6"}) b.v(id, cf::VertexKind::Black);
  b.e("c1", 1, "F1", "u0").e("c2", 2, "F2", "u0").e("c3", 1, "F3", "u0");
  b.e("c4", 2, "u0", "F4").e("c5", 1, "u0", "F5").e("c6", 2, "u0", "F6");
  b.rot("u0", {"c1.h", "c2.h", "c3.h", "c4.t", "c5.t", "c6.t"});
  b.rot("F1", {"c1.t"}).rot("F2", {"c2.t"}).rot("F3", {"c3.t"});
  b.rot("F4", {"c4.h"}).rot("F5", {"c5.h"}).rot("F6", {"c6.h"});
  b.embed("u0", "E1", false);
  return b.done();
}

// Bigon of label 1 whose lower edge runs through two crossings; a label-3
// arc gP+gm+gQ enters at X1 and leaves at X2 with gm inside the bigon.
// 14 vertices, 15 edges, 3 faces.
inline cf::Chart dalpha_chart() {
  Builder b(4, "dalpha");
  b.v("u", cf::VertexKind::White).v("v", cf::VertexKind::White);
  b.v("X1", cf::VertexKind::Crossing).v("X2", cf::VertexKind::Crossing);
  for (const char* id : {"P", "Q", "bm1", "bs", "bm2", "bm3", "bn1", "bn2", "bn3", "bsv"})
    b.v(id, cf::VertexKind::Black);
  b.e("A", 1, "u", "v");
  b.e("b1", 1, "v", "X1").e("b2", 1, "X1", "X2").e("b3", 1, "X2", "u");
  b.e("gP", 3, "P", "X1").e("gm", 3, "X1", "X2").e("gQ", 3, "X2", "Q");
  b.e("m1", 2, "u", "bm1").e("sU", 1, "u", "bs").e("m2", 2, "bm2", "u").e("m3", 2, "bm3", "u");
  b.e("n1", 2, "bn1", "v").e("n2", 2, "v", "bn2").e("n3", 2, "bn3", "v").e("sV", 1, "v", "bsv");
  b.rot("u", {"A.t", "m1.t", "sU.t", "m2.h", "b3.h", "m3.h"});
  b.rot("v", {"A.h", "n1.h", "b1.t", "n2.t", "sV.t", "n3.h"});
  b.rot("X1", {"b1.h", "gm.t", "b2.t", "gP.h"});
  b.rot("X2", {"b2.h", "gm.h", "b3.t", "gQ.t"});
  b.rot("P", {"gP.t"}).rot("Q", {"gQ.h"});
  b.rot("bm1", {"m1.h"}).rot("bs", {"sU.h"}).rot("bm2", {"m2.t"}).rot("bm3", {"m3.t"});
  b.rot("bn1", {"n1.t"}).rot("bn2", {"n2.h"}).rot("bn3", {"n3.t"}).rot("bsv", {"sV.h"});
  return b.done();
}

// Hoop wrapping the star: the hoop is not junk because its inner region
// carries real content. Nothing is parked.
inline cf::Chart hoop_around_star_chart() {
  Builder b(4, "wrapped");
  b.v("a", cf::VertexKind::Anchor);
  b.e("h", 1, "a", "a");
  b.rot("a", {"h.t", "h.h"});
  cf::Chart star = star_chart();
  for (const auto& v : star.vertices) b.c.vertices.push_back(v);
  for (auto e : star.edges) {
    e.tail += 1;  // one vertex (the anchor) precedes the star's block
    e.head += 1;
    b.c.edges.push_back(e);
  }
  // Rebuild star rotations against the merged edge list.
  for (std::size_t v = 1; v < b.c.vertices.size(); ++v) {
    auto& r = b.c.vertices[v].rot;
    r.clear();
    for (std::int32_t x : star.vertices[v - 1].rot)
      r.push_back(cf::make_end(cf::end_edge(x) + 1, cf::end_is_head(x)));
  }
  b.embed("w", "h", true);      // star into the face right of h.t (the inner one)
  b.inf("h", false);            // infinity on the hoop's other side
  return b.done();
}

// Exact host of the square-rewrite catalog's before-fragment at k = 2: a
// label-2 square w1..w4, lone half-diagonals (labels 1 and 3) through the
// centre crossing X, and twelve black-terminated legs. 17 vertices, 20
// edges, 5 faces.
inline cf::Chart square_diag_chart() {
  Builder b(4, "sqdiag");
  b.v("w1", cf::VertexKind::White).v("w2", cf::VertexKind::White);
  b.v("w3", cf::VertexKind::White).v("w4", cf::VertexKind::White);
  b.v("X", cf::VertexKind::Crossing);
  for (int i = 1; i <= 12; ++i) b.v("P" + std::to_string(i), cf::VertexKind::Black);
  b.e("E1", 2, "w2", "w1").e("E2", 2, "w2", "w3");
  b.e("E3", 2, "w3", "w4").e("E4", 2, "w4", "w1");
  b.e("g5a", 1, "w3", "X").e("g5b", 1, "X", "w1");
  b.e("g6a", 3, "w2", "X").e("g6b", 3, "X", "w4");
  b.e("la1", 1, "w1", "P1").e("lt1", 2, "w1", "P2").e("lb1", 1, "w1", "P3");
  b.e("la2", 3, "P4", "w2").e("lt2", 2, "P5", "w2").e("lb2", 3, "P6", "w2");
  b.e("la3", 1, "P7", "w3").e("lt3", 2, "P8", "w3").e("lb3", 1, "w3", "P9");
  b.e("la4", 3, "P10", "w4").e("lt4", 2, "w4", "P11").e("lb4", 3, "w4", "P12");
  b.rot("w1", {"E1.h", "g5b.h", "E4.h", "la1.t", "lt1.t", "lb1.t"});
  b.rot("w2", {"E2.t", "g6a.t", "E1.t", "la2.h", "lt2.h", "lb2.h"});
  b.rot("w3", {"E3.t", "g5a.t", "E2.h", "la3.h", "lt3.h", "lb3.t"});
  b.rot("w4", {"E4.t", "g6b.h", "E3.h", "la4.h", "lt4.t", "lb4.t"});
  b.rot("X", {"g5a.h", "g6b.t", "g5b.t", "g6a.h"});
  const char* leg_end[12] = {"la1.h", "lt1.h", "lb1.h", "la2.t", "lt2.t", "lb2.t",
                             "la3.t", "lt3.t", "lb3.h", "la4.t", "lt4.h", "lb4.h"};
  for (int i = 1; i <= 12; ++i) b.rot("P" + std::to_string(i), {leg_end[i - 1]});
  return b.done();
}

// Three circles (labels 1, 3, 5) crossing pairwise twice: the octahedron
// arrangement. 6 crossings, 12 edges, 8 triangular faces. Degree 6.
inline cf::Chart octa_chart() {
  Builder b(6, "octa");
  for (const char* id : {"px", "py", "nx", "ny", "pz", "nz"})
    b.v(id, cf::VertexKind::Crossing);
  b.e("a1", 1, "px", "py").e("a2", 1, "py", "nx").e("a3", 1, "nx", "ny").e("a4", 1, "ny", "px");
  b.e("b1", 3, "px", "pz").e("b2", 3, "pz", "nx").e("b3", 3, "nx", "nz").e("b4", 3, "nz", "px");
  b.e("c1", 5, "py", "pz").e("c2", 5, "pz", "ny").e("c3", 5, "ny", "nz").e("c4", 5, "nz", "py");
  b.rot("px", {"a1.t", "b1.t", "a4.h", "b4.h"});
  b.rot("py", {"c1.t", "a1.h", "c4.h", "a2.t"});
  b.rot("nx", {"a2.h", "b3.t", "a3.t", "b2.h"});
  b.rot("ny", {"c2.h", "a3.h", "c3.t", "a4.t"});
  b.rot("pz", {"b1.h", "c1.h", "b2.t", "c2.t"});
  b.rot("nz", {"b4.t", "c3.h", "b3.h", "c4.t"});
  return b.done();
}

// A label-3 loop J at the crossing X encircles the black end of the label-1
// piece bp; pulling b back through X must turn the loop into an anchored
// hoop. 8 vertices, 8 edges, 2 faces.
inline cf::Chart cii_loop_chart() {
  Builder b(4, "ciiloop");
  b.v("w", cf::VertexKind::White).v("X", cf::VertexKind::Crossing).v("b", cf::VertexKind::Black);
  for (const char* id : {"B1", "B2", "B3", "B4", "B5"}) b.v(id, cf::VertexKind::Black);
  b.e("wp", 1, "w", "X").e("J", 3, "X", "X").e("bp", 1, "X", "b");
  b.e("t1", 2, "w", "B1").e("t2", 1, "B2", "w").e("t3", 2, "B3", "w");
  b.e("t4", 1, "B4", "w").e("t5", 2, "w", "B5");
  b.rot("w", {"wp.t", "t1.t", "t2.h", "t3.h", "t4.h", "t5.t"});
  b.rot("X", {"J.h", "wp.h", "J.t", "bp.t"});
  b.rot("b", {"bp.h"});
  b.rot("B1", {"t1.h"}).rot("B2", {"t2.t"}).rot("B3", {"t3.t"});
  b.rot("B4", {"t4.t"}).rot("B5", {"t5.h"});
  return b.done();
}

// Theta: two whites joined by a label-2 and a label-3 strand, four terminal
// stubs at each white. 10 vertices, 10 edges, 2 faces. One face holds
// ta/tb/te/tf, the other tc/td/tg/th.
inline cf::Chart theta_chart() {
  Builder b(4, "theta");
  b.v("w1", cf::VertexKind::White).v("w2", cf::VertexKind::White);
  for (const char* id : {"Ba", "Bb", "Bc", "Bd", "Be", "Bf", "Bg", "Bh"})
    b.v(id, cf::VertexKind::Black);
  b.e("P", 2, "w1", "w2").e("Q", 3, "w2", "w1");
  b.e("ta", 3, "w1", "Ba").e("tb", 2, "w1", "Bb").e("tc", 2, "Bc", "w1").e("td", 3, "Bd", "w1");
  b.e("te", 2, "w2", "Be").e("tf", 3, "w2", "Bf").e("tg", 3, "Bg", "w2").e("th", 2, "Bh", "w2");
  b.rot("w1", {"P.t", "ta.t", "tb.t", "Q.h", "tc.h", "td.h"});
  b.rot("w2", {"Q.t", "te.t", "tf.t", "P.h", "tg.h", "th.h"});
  b.rot("Ba", {"ta.h"}).rot("Bb", {"tb.h"}).rot("Bc", {"tc.t"}).rot("Bd", {"td.t"});
  b.rot("Be", {"te.h"}).rot("Bf", {"tf.h"}).rot("Bg", {"tg.t"}).rot("Bh", {"th.t"});
  return b.done();
}

}  // namespace cft
