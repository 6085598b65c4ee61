#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <tuple>

#include "core/canon.hpp"
#include "core/disks.hpp"
#include "support/fixtures.hpp"

using namespace cf;

namespace {

Topology must_analyze(const Chart& c) {
  Topology t = analyze(c);
  REQUIRE(t.ok);
  return t;
}

const AngledDisk& side_with_edge(const Chart& c, const Topology& t, const DiskEnumResult& r,
                                 const std::string& eid) {
  std::int32_t e = c.edge_index(eid);
  REQUIRE(e >= 0);
  for (const AngledDisk& d : r.disks)
    if (edge_side(t, d.region.split, e) == d.region.side) return d;
  REQUIRE(false);
  return r.disks.front();
}

int feeler_count(const AngledDisk& d) { return (int)d.feelers.size(); }

}  // namespace

TEST_CASE("new fixtures are valid charts") {
  for (const Chart& c :
       {cft::bigon_chart(), cft::lens_cond_ii_chart(), cft::lens_cond_i_chart(),
        cft::lens_neither_chart(), cft::m4_chart(), cft::m4_two_stub_chart(),
        cft::m4_inner_white_chart(), cft::dalpha_chart()}) {
    CAPTURE(c.name);
    CHECK(validate(c).empty());
  }
}

TEST_CASE("bigon: one curve, sides with 0 and 2 feelers") {
  Chart c = cft::bigon_chart();
  Topology t = must_analyze(c);
  DiskEnumResult r = enumerate_disk_regions(c, t, 1);
  CHECK(!r.capped);
  CHECK(r.n_curves == 1);
  REQUIRE(r.disks.size() == 2);
  std::vector<int> counts{feeler_count(r.disks[0]), feeler_count(r.disks[1])};
  std::sort(counts.begin(), counts.end());
  CHECK(counts == std::vector<int>{0, 2});
  for (const AngledDisk& d : r.disks) {
    CHECK(d.k == 2);
    CHECK(d.label == 1);
    CHECK(d.region.interior_whites == 0);
    CHECK(d.special);  // feelers, when present, are the terminal stubs
    for (const Feeler& f : d.feelers) CHECK(f.role == TrackRole::Terminal);
    CHECK(disk_euler(c, t, d.region) == 1);
  }
  CHECK(enumerate_disk_regions(c, t, 2).n_curves == 0);
  CHECK(find_lenses(c, t).empty());  // boundary labels must differ by one
}

TEST_CASE("loop: associated disk avoids the third edge") {
  Chart c = cft::loop_chart();
  Topology t = must_analyze(c);
  TrackSet ts = tracks_of_label(c, t, 2);
  const Track* loop = nullptr;
  const Track* term = nullptr;
  for (const Track& tr : ts.tracks) {
    if (tr.role == TrackRole::Loop) loop = &tr;
    if (tr.role == TrackRole::Terminal) term = &tr;
  }
  REQUIRE(loop);
  REQUIRE(term);
  CHECK(!associated_disk(c, t, *term));  // not a loop

  auto ad = associated_disk(c, t, *loop);
  REQUIRE(ad);
  CHECK(ad->boundary_whites == std::vector<std::int32_t>{c.vertex_index("w")});
  CHECK(ad->interior_whites == 0);
  CHECK(disk_euler(c, t, *ad) == 1);
  // t2 is the third label-2 edge at w; its side is not the associated one
  CHECK(edge_side(t, ad->split, c.edge_index("t2")) != ad->side);
  CHECK(ad->vertex_inside(c.vertex_index("b5")));
  CHECK(!ad->vertex_inside(c.vertex_index("b2")));

  DiskEnumResult r = enumerate_disk_regions(c, t, 2);
  REQUIRE(r.disks.size() == 2);
  const AngledDisk& t2_side = side_with_edge(c, t, r, "t2");
  CHECK(t2_side.feelers.size() == 1);
  CHECK(t2_side.feelers[0].role == TrackRole::Terminal);
  CHECK(t2_side.special);
}

TEST_CASE("closed tracks give 0-angled regions") {
  Chart c = cft::two_circles_chart();
  Topology t = must_analyze(c);
  for (int m : {1, 3}) {
    DiskEnumResult r = enumerate_disk_regions(c, t, m);
    CHECK(r.n_curves == 1);
    REQUIRE(r.disks.size() == 2);
    for (const AngledDisk& d : r.disks) {
      CHECK(d.k == 0);
      CHECK(d.feelers.empty());
      CHECK(d.special);
      CHECK(disk_euler(c, t, d.region) == 1);
    }
  }

  Chart h = cft::hoop_chart();
  Topology th = must_analyze(h);
  DiskEnumResult r = enumerate_disk_regions(h, th, 1);
  REQUIRE(r.disks.size() == 2);
  CHECK((r.disks[0].region.has_inf ^ r.disks[1].region.has_inf));
}

TEST_CASE("euler check handles swallowed components") {
  Chart c = cft::hoop_around_star_chart();
  Topology t = must_analyze(c);
  DiskEnumResult r = enumerate_disk_regions(c, t, 1);
  REQUIRE(r.disks.size() == 2);
  for (const AngledDisk& d : r.disks) CHECK(disk_euler(c, t, d.region) == 1);
  int iw[2] = {r.disks[0].region.interior_whites, r.disks[1].region.interior_whites};
  CHECK(iw[0] + iw[1] == 1);  // the star's white sits strictly on one side
}

TEST_CASE("lens detection records the matched condition") {
  {
    Chart c = cft::lens_cond_ii_chart();
    Topology t = must_analyze(c);
    auto ls = find_lenses(c, t);
    REQUIRE(ls.size() == 1);
    const Lens& L = ls[0];
    CHECK(L.m == 2);
    CHECK(L.e1.label == 2);
    CHECK(L.e2.label == 3);
    CHECK(L.cond_ii);
    CHECK(!L.cond_i);
    CHECK(L.region.interior_whites == 0);
    CHECK(disk_euler(c, t, L.region) == 1);
    std::vector<std::int32_t> ws{L.w1, L.w2};
    std::sort(ws.begin(), ws.end());
    CHECK(ws == std::vector<std::int32_t>{c.vertex_index("u"), c.vertex_index("v")});
  }
  {
    Chart c = cft::lens_cond_i_chart();
    Topology t = must_analyze(c);
    auto ls = find_lenses(c, t);
    REQUIRE(ls.size() == 1);
    CHECK(ls[0].cond_i);
    CHECK(!ls[0].cond_ii);
  }
  {
    Chart c = cft::lens_neither_chart();
    Topology t = must_analyze(c);
    CHECK(find_lenses(c, t).empty());  // middles at one corner each
  }
}

TEST_CASE("m4 disk detection") {
  Chart c = cft::m4_chart();
  Topology t = must_analyze(c);
  auto ms = find_m4_disks(c, t);
  REQUIRE(ms.size() == 1);
  const M4Disk& m = ms[0];
  CHECK(m.disk.label == 2);
  CHECK(m.disk.k == 4);
  CHECK(m.disk.region.interior_whites == 0);
  CHECK(m.e5.label == 1);
  CHECK(m.e6.label == 3);
  std::vector<std::int32_t> p5{m.e5.v_from, m.e5.v_to};
  std::sort(p5.begin(), p5.end());
  CHECK(p5 == std::vector<std::int32_t>{c.vertex_index("w1"), c.vertex_index("w3")});
  CHECK(m.disk.feelers.empty());

  // both diagonals are nice edges of the square side
  auto nice = find_nice_edges(c, t, m.disk);
  REQUIRE(nice.size() == 2);
  std::vector<int> labels{nice[0].label, nice[1].label};
  std::sort(labels.begin(), labels.end());
  CHECK(labels == std::vector<int>{1, 3});
}

TEST_CASE("m4 negatives") {
  {
    // label 3 reaches the interior as two stubs: condition (ii) fails
    Chart c = cft::m4_two_stub_chart();
    Topology t = must_analyze(c);
    CHECK(find_m4_disks(c, t).empty());
    // but the lone diagonal d5 is still a nice edge of the square side
    DiskEnumResult r = enumerate_disk_regions(c, t, 2);
    REQUIRE(r.disks.size() == 2);
    const AngledDisk& inner = side_with_edge(c, t, r, "d5");
    auto nice = find_nice_edges(c, t, inner);
    REQUIRE(nice.size() == 1);
    CHECK(nice[0].label == 1);
    // the stub-fed entries are feelers of other labels, not label-2 ones
    CHECK(inner.feelers.empty());
  }
  {
    // a white inside the square: condition (iii) fails
    Chart c = cft::m4_inner_white_chart();
    Topology t = must_analyze(c);
    CHECK(find_m4_disks(c, t).empty());
    DiskEnumResult r = enumerate_disk_regions(c, t, 2);
    REQUIRE(r.disks.size() == 2);
    const AngledDisk& inner = side_with_edge(c, t, r, "g1");
    CHECK(inner.region.interior_whites == 1);
    CHECK(disk_euler(c, t, inner.region) == 1);
  }
  {
    // no 4-angled disks at all
    Chart c = cft::lens_cond_i_chart();
    Topology t = must_analyze(c);
    CHECK(find_m4_disks(c, t).empty());
  }
}

TEST_CASE("d-alpha arcs") {
  Chart c = cft::dalpha_chart();
  Topology t = must_analyze(c);
  DiskEnumResult r = enumerate_disk_regions(c, t, 1);
  CHECK(r.n_curves == 1);
  REQUIRE(r.disks.size() == 2);
  const AngledDisk& inner = side_with_edge(c, t, r, "gm");
  CHECK(inner.k == 2);
  CHECK(inner.feelers.empty());
  CHECK(disk_euler(c, t, inner.region) == 1);

  int bseg = -1;
  for (std::size_t i = 0; i < inner.region.boundary.size(); ++i)
    if (inner.region.boundary[i].track.through.size() == 2) bseg = (int)i;
  REQUIRE(bseg >= 0);

  auto arcs = find_d_alpha_arcs(c, t, inner.region, {bseg, 0, 2}, 3);
  REQUIRE(arcs);
  REQUIRE(arcs->size() == 1);
  CHECK((*arcs)[0].darts == std::vector<std::int32_t>{make_dart(c.edge_index("gm"), false)});

  // a single covered crossing cannot host both endpoints
  for (int first : {0, 1}) {
    auto one = find_d_alpha_arcs(c, t, inner.region, {bseg, first, 1}, 3);
    REQUIRE(one);
    CHECK(one->empty());
  }
  // the arc lives on the inner side only
  const AngledDisk& outer = r.disks[&inner == &r.disks[0] ? 1 : 0];
  auto out_arcs = find_d_alpha_arcs(c, t, outer.region, {bseg, 0, 2}, 3);
  REQUIRE(out_arcs);
  CHECK(out_arcs->empty());
  // no label-2 arcs anywhere
  auto k2 = find_d_alpha_arcs(c, t, inner.region, {bseg, 0, 2}, 2);
  REQUIRE(k2);
  CHECK(k2->empty());

  // malformed alpha windows
  CHECK(!find_d_alpha_arcs(c, t, inner.region, {1 - bseg, 0, 1}, 3));  // host has no crossings
  CHECK(!find_d_alpha_arcs(c, t, inner.region, {5, 0, 1}, 3));
  CHECK(!find_d_alpha_arcs(c, t, inner.region, {bseg, 1, 2}, 3));
}

TEST_CASE("enumeration cap reports truncation") {
  cft::Builder b(3, "hoops2");
  b.v("a1", VertexKind::Anchor).v("a2", VertexKind::Anchor);
  b.e("h1", 1, "a1", "a1").e("h2", 1, "a2", "a2");
  b.rot("a1", {"h1.t", "h1.h"}).rot("a2", {"h2.t", "h2.h"});
  b.embed("a2", "h1", false, "h2", false);
  Chart c = b.done();
  Topology t = must_analyze(c);

  DiskEnumResult full = enumerate_disk_regions(c, t, 1);
  CHECK(!full.capped);
  CHECK(full.n_curves == 2);
  CHECK(full.disks.size() == 4);

  DiskEnumOptions opts;
  opts.max_curves = 1;
  DiskEnumResult cut = enumerate_disk_regions(c, t, 1, opts);
  CHECK(cut.capped);
  CHECK(cut.n_curves == 1);
  CHECK(cut.disks.size() == 2);
}

TEST_CASE("side pairing invariants across the pool") {
  for (const Chart& c :
       {cft::bigon_chart(), cft::lens_cond_ii_chart(), cft::lens_cond_i_chart(),
        cft::lens_neither_chart(), cft::m4_chart(), cft::m4_two_stub_chart(),
        cft::m4_inner_white_chart(), cft::dalpha_chart(), cft::loop_chart(),
        cft::two_circles_chart(), cft::hoop_chart(), cft::hoop_around_star_chart(),
        cft::star_with_junk_chart(), cft::star_chart()}) {
    CAPTURE(c.name);
    Topology t = must_analyze(c);
    for (int m = 1; m < c.degree; ++m) {
      DiskEnumResult r = enumerate_disk_regions(c, t, m);
      CHECK(!r.capped);
      REQUIRE(r.disks.size() == 2 * r.n_curves);
      for (std::size_t i = 0; i + 1 < r.disks.size(); i += 2) {
        const AngledDisk& d0 = r.disks[i];
        const AngledDisk& d1 = r.disks[i + 1];
        CHECK(d0.k == (int)d0.region.boundary_whites.size());
        CHECK(d0.k == d1.k);
        // one feeler per boundary white, split between the two sides
        CHECK((int)(d0.feelers.size() + d1.feelers.size()) == d0.k);
        CHECK(d0.region.faces.size() + d1.region.faces.size() == t.faces.size());
        CHECK((d0.region.has_inf ^ d1.region.has_inf));
        CHECK(d0.region.interior_whites + d1.region.interior_whites +
                  (int)d0.region.boundary_whites.size() ==
              complexity(c).whites);
        for (const AngledDisk* d : {&d0, &d1}) {
          CHECK(disk_euler(c, t, d->region) == 1);
          for (const Feeler& f : d->feelers) {
            CHECK(germ_side(t, d->region.split, f.end) == d->region.side);
            CHECK(std::count(d->region.boundary_whites.begin(), d->region.boundary_whites.end(),
                             f.white) == 1);
          }
        }
      }
    }
  }
}

TEST_CASE("reflection and orientation reversal map features bijectively") {
  using Sig = std::tuple<int, int, int, bool, int>;
  auto disk_sigs = [](const Chart& c) {
    Topology t = analyze(c);
    REQUIRE(t.ok);
    std::vector<Sig> out;
    for (int m = 1; m < c.degree; ++m)
      for (const AngledDisk& d : enumerate_disk_regions(c, t, m).disks)
        out.emplace_back(m, d.k, (int)d.feelers.size(), d.special, d.region.interior_whites);
    std::sort(out.begin(), out.end());
    return out;
  };
  using LSig = std::tuple<int, bool, bool, int>;
  auto lens_sigs = [](const Chart& c) {
    Topology t = analyze(c);
    std::vector<LSig> out;
    for (const Lens& L : find_lenses(c, t))
      out.emplace_back(L.m, L.cond_i, L.cond_ii, L.region.interior_whites);
    std::sort(out.begin(), out.end());
    return out;
  };
  for (const Chart& c :
       {cft::bigon_chart(), cft::lens_cond_ii_chart(), cft::lens_cond_i_chart(), cft::m4_chart(),
        cft::m4_two_stub_chart(), cft::dalpha_chart(), cft::loop_chart()}) {
    CAPTURE(c.name);
    for (const Chart& g : {reflected(c), orientation_reversed(c)}) {
      CHECK(validate(g).empty());
      CHECK(disk_sigs(c) == disk_sigs(g));
      CHECK(lens_sigs(c) == lens_sigs(g));
      Topology t = analyze(c);
      Topology tg = analyze(g);
      CHECK(find_m4_disks(c, t).size() == find_m4_disks(g, tg).size());
    }
  }
}
