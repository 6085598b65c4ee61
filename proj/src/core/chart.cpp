#include "chart.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace cf {

const char* kind_name(VertexKind k) {
  switch (k) {
    case VertexKind::White: return "white";
    case VertexKind::Black: return "black";
    case VertexKind::Crossing: return "cross";
    case VertexKind::Anchor: return "anchor";
  }
  return "?";
}

std::int32_t Chart::vertex_index(const std::string& id) const {
  for (std::int32_t i = 0; i < nv(); ++i)
    if (vertices[i].id == id) return i;
  return -1;
}

std::int32_t Chart::edge_index(const std::string& id) const {
  for (std::int32_t i = 0; i < ne(); ++i)
    if (edges[i].id == id) return i;
  return -1;
}

namespace {

struct Dsu {
  std::vector<std::int32_t> p;
  explicit Dsu(std::int32_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::int32_t find(std::int32_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

std::int32_t default_inf_dart(const Chart& c) {
  if (c.ne() == 0) return -1;
  std::int32_t best = 0;
  for (std::int32_t i = 1; i < c.ne(); ++i)
    if (c.edges[i].id < c.edges[best].id) best = i;
  return make_dart(best, false);
}

}  // namespace

bool comp_is_free_edge(const Chart& c, const Topology& t, int comp) {
  std::int32_t edge = -1;
  for (std::int32_t e = 0; e < c.ne(); ++e) {
    if (t.vertex_comp[c.edges[e].tail] != comp) continue;
    if (edge != -1) return false;  // more than one edge
    edge = e;
  }
  if (edge == -1) return false;
  const Edge& E = c.edges[edge];
  if (E.tail == E.head) return false;
  return c.vertices[E.tail].kind == VertexKind::Black &&
         c.vertices[E.head].kind == VertexKind::Black;
}

bool comp_is_hoop(const Chart& c, const Topology& t, int comp) {
  std::int32_t edge = -1;
  for (std::int32_t e = 0; e < c.ne(); ++e) {
    if (t.vertex_comp[c.edges[e].tail] != comp) continue;
    if (edge != -1) return false;
    edge = e;
  }
  if (edge == -1) return false;
  const Edge& E = c.edges[edge];
  return E.tail == E.head && c.vertices[E.tail].kind == VertexKind::Anchor;
}

Topology analyze(const Chart& c) {
  Topology t;
  const std::int32_t V = c.nv(), E = c.ne(), NE = 2 * E;

  t.end_vertex.assign(NE, -1);
  t.end_pos.assign(NE, -1);
  bool structural = false;
  for (std::int32_t v = 0; v < V; ++v) {
    const auto& rot = c.vertices[v].rot;
    for (std::int32_t p = 0; p < (std::int32_t)rot.size(); ++p) {
      std::int32_t x = rot[p];
      if (x < 0 || x >= NE) {
        t.problems.push_back({"structure", c.vertices[v].id, "rotation references a missing edge end"});
        structural = true;
        continue;
      }
      if (t.end_vertex[x] != -1) {
        t.problems.push_back({"structure", c.edges[end_edge(x)].id,
                              "edge end listed in two rotations"});
        structural = true;
        continue;
      }
      t.end_vertex[x] = v;
      t.end_pos[x] = p;
    }
  }
  for (std::int32_t x = 0; x < NE; ++x)
    if (t.end_vertex[x] == -1) {
      t.problems.push_back({"structure", c.edges[end_edge(x)].id,
                            "edge end missing from all rotations"});
      structural = true;
    }
  for (std::int32_t e = 0; e < E; ++e)
    if (c.edges[e].tail < 0 || c.edges[e].tail >= V || c.edges[e].head < 0 ||
        c.edges[e].head >= V) {
      t.problems.push_back({"structure", c.edges[e].id, "edge endpoint out of range"});
      structural = true;
    }
  if (!structural)
    for (std::int32_t e = 0; e < E; ++e) {
      if (t.end_vertex[make_end(e, false)] != c.edges[e].tail)
        t.problems.push_back({"structure", c.edges[e].id,
                              "tail end not in the tail vertex rotation"}),
            structural = true;
      if (t.end_vertex[make_end(e, true)] != c.edges[e].head)
        t.problems.push_back({"structure", c.edges[e].id,
                              "head end not in the head vertex rotation"}),
            structural = true;
    }
  if (structural) return t;
  t.ok = true;

  // Faces: orbits of next(d) = depart through the end preceding the arrival
  // end in ccw order; face(d) lies left of d.
  t.dart_face.assign(NE, -1);
  t.dart_next.assign(NE, -1);
  for (std::int32_t d = 0; d < NE; ++d) {
    std::int32_t a = dart_arrive_end(d);
    std::int32_t v = t.end_vertex[a];
    const auto& rot = c.vertices[v].rot;
    std::int32_t deg = (std::int32_t)rot.size();
    t.dart_next[d] = rot[(t.end_pos[a] - 1 + deg) % deg];
  }
  for (std::int32_t d0 = 0; d0 < NE; ++d0) {
    if (t.dart_face[d0] != -1) continue;
    std::int32_t f = (std::int32_t)t.faces.size();
    t.faces.emplace_back();
    std::int32_t d = d0;
    do {
      t.dart_face[d] = f;
      t.faces[f].push_back(d);
      d = t.dart_next[d];
    } while (d != d0);
  }

  // Connected components over vertices.
  Dsu vd(V);
  for (const auto& e : c.edges) vd.unite(e.tail, e.head);
  t.vertex_comp.assign(V, -1);
  for (std::int32_t v = 0; v < V; ++v) {
    std::int32_t r = vd.find(v);
    if (t.vertex_comp[r] == -1) t.vertex_comp[r] = t.n_comp++;
    t.vertex_comp[v] = t.vertex_comp[r];
  }
  t.face_comp.assign(t.faces.size(), -1);
  for (std::size_t f = 0; f < t.faces.size(); ++f)
    t.face_comp[f] = t.vertex_comp[t.end_vertex[t.faces[f][0]]];

  // Containment records -> global regions.
  bool cont_bad = false;
  auto note = [&](const std::string& w, const std::string& msg) {
    t.problems.push_back({"containment", w, msg});
    cont_bad = true;
  };
  std::vector<std::int32_t> comp_embed(t.n_comp, -1);
  std::vector<std::int32_t> child_out(c.embeds.size(), -1);
  for (std::size_t i = 0; i < c.embeds.size(); ++i) {
    const Embed& em = c.embeds[i];
    if (em.child_vertex < 0 || em.child_vertex >= V || em.in_dart < 0 || em.in_dart >= NE ||
        em.out_dart < -1 || em.out_dart >= NE) {
      note("", "containment record references missing material");
      continue;
    }
    std::int32_t child = t.vertex_comp[em.child_vertex];
    if (comp_embed[child] != -1) {
      note(c.vertices[em.child_vertex].id, "component embedded twice");
      continue;
    }
    if (t.vertex_comp[t.end_vertex[dart_depart_end(em.in_dart)]] == child) {
      note(c.vertices[em.child_vertex].id, "component embedded into its own face");
      continue;
    }
    std::int32_t out = em.out_dart;
    if (out == -1) {
      // Derivable only when the child has a unique face.
      std::int32_t the_face = -1;
      int nfaces = 0;
      for (std::size_t f = 0; f < t.faces.size(); ++f)
        if (t.face_comp[f] == child) the_face = (std::int32_t)f, ++nfaces;
      if (nfaces != 1) {
        note(c.vertices[em.child_vertex].id,
             "outward face omitted for a multi-face component");
        continue;
      }
      out = t.faces[the_face][0];
    } else if (t.vertex_comp[t.end_vertex[dart_depart_end(out)]] != child) {
      note(c.vertices[em.child_vertex].id, "outward face not on the embedded component");
      continue;
    }
    comp_embed[child] = (std::int32_t)i;
    child_out[i] = out;
  }
  int roots = 0;
  for (std::int32_t k = 0; k < t.n_comp; ++k)
    if (comp_embed[k] == -1) ++roots;
  if (t.n_comp > 0 && roots != 1)
    note("", roots == 0 ? "no root component" : "several components lack containment records");
  // Acyclicity: walk parents.
  if (!cont_bad)
    for (std::int32_t k = 0; k < t.n_comp; ++k) {
      std::int32_t cur = k;
      int steps = 0;
      while (cur != -1 && comp_embed[cur] != -1) {
        const Embed& em = c.embeds[comp_embed[cur]];
        cur = t.vertex_comp[t.end_vertex[dart_depart_end(em.in_dart)]];
        if (++steps > t.n_comp) {
          note("", "containment records form a cycle");
          break;
        }
      }
      if (cont_bad) break;
    }

  Dsu fd((std::int32_t)t.faces.size());
  if (!cont_bad)
    for (std::size_t i = 0; i < c.embeds.size(); ++i)
      if (child_out[i] != -1)
        fd.unite(t.dart_face[c.embeds[i].in_dart], t.dart_face[child_out[i]]);
  t.face_region.assign(t.faces.size(), -1);
  for (std::size_t f = 0; f < t.faces.size(); ++f) {
    std::int32_t r = fd.find((std::int32_t)f);
    if (t.face_region[r] == -1) t.face_region[r] = t.n_regions++;
    t.face_region[f] = t.face_region[r];
  }

  std::int32_t infd = c.inf_dart;
  if (infd >= NE) {
    t.problems.push_back({"structure", "", "infinity marker out of range"});
    infd = -1;
  }
  if (infd < 0) infd = default_inf_dart(c);
  t.inf_region = infd >= 0 ? t.face_region[t.dart_face[infd]] : -1;

  // Region/component incidence tree and the infinity-parked junk set.
  t.comp_out_region.assign(t.n_comp, -1);
  t.comp_regions.assign(t.n_comp, {});
  t.comp_parked.assign(t.n_comp, 0);
  if (cont_bad || t.inf_region < 0) return t;
  for (std::size_t f = 0; f < t.faces.size(); ++f) {
    auto& rs = t.comp_regions[t.face_comp[f]];
    if (std::find(rs.begin(), rs.end(), t.face_region[f]) == rs.end())
      rs.push_back(t.face_region[f]);
  }
  std::vector<std::vector<std::int32_t>> region_comps(t.n_regions);
  for (std::int32_t k = 0; k < t.n_comp; ++k)
    for (std::int32_t r : t.comp_regions[k]) region_comps[r].push_back(k);
  // BFS over the bipartite incidence tree from the infinity region.
  std::vector<char> comp_seen(t.n_comp, 0), region_seen(t.n_regions, 0);
  std::vector<std::int32_t> order;
  std::queue<std::int32_t> rq;
  rq.push(t.inf_region);
  region_seen[t.inf_region] = 1;
  while (!rq.empty()) {
    std::int32_t r = rq.front();
    rq.pop();
    for (std::int32_t k : region_comps[r]) {
      if (comp_seen[k]) continue;
      comp_seen[k] = 1;
      t.comp_out_region[k] = r;
      order.push_back(k);
      for (std::int32_t r2 : t.comp_regions[k])
        if (!region_seen[r2]) region_seen[r2] = 1, rq.push(r2);
    }
  }
  std::vector<char> all_junk(t.n_comp, 0);
  std::vector<std::vector<std::int32_t>> region_children(t.n_regions);
  for (std::int32_t k = 0; k < t.n_comp; ++k)
    if (t.comp_out_region[k] >= 0) region_children[t.comp_out_region[k]].push_back(k);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::int32_t k = *it;
    bool junk = comp_is_free_edge(c, t, k) || comp_is_hoop(c, t, k);
    if (junk)
      for (std::int32_t r : t.comp_regions[k]) {
        if (r == t.comp_out_region[k]) continue;
        for (std::int32_t k2 : region_children[r]) junk = junk && all_junk[k2];
      }
    all_junk[k] = junk;
  }
  // Junk space flows from infinity through parked hoops only.
  std::queue<std::int32_t> jq;
  jq.push(t.inf_region);
  while (!jq.empty()) {
    std::int32_t r = jq.front();
    jq.pop();
    for (std::int32_t k : region_children[r])
      if (all_junk[k]) {
        t.comp_parked[k] = 1;
        for (std::int32_t r2 : t.comp_regions[k])
          if (r2 != t.comp_out_region[k]) jq.push(r2);
      }
  }
  return t;
}

namespace {

void check_white(const Chart& c, std::int32_t v, std::vector<Violation>& out) {
  const auto& rot = c.vertices[v].rot;
  if (rot.size() != 6) return;  // degree reported under (i)
  int a = c.edges[end_edge(rot[0])].label;
  int b = c.edges[end_edge(rot[1])].label;
  bool alt = true;
  for (int p = 0; p < 6; ++p) {
    int want = (p % 2 == 0) ? a : b;
    if (c.edges[end_edge(rot[p])].label != want) alt = false;
  }
  if (!alt || std::abs(a - b) != 1) {
    out.push_back({"iii", c.vertices[v].id,
                   "white vertex labels do not alternate m, m+1"});
    return;
  }
  int inward = 0, flips = 0;
  for (int p = 0; p < 6; ++p) {
    bool in1 = end_is_head(rot[p]);
    bool in2 = end_is_head(rot[(p + 1) % 6]);
    inward += in1 ? 1 : 0;
    flips += (in1 != in2) ? 1 : 0;
  }
  if (inward != 3 || flips != 2)
    out.push_back({"iii", c.vertices[v].id,
                   "white vertex lacks three consecutive inward arcs"});
}

void check_crossing(const Chart& c, std::int32_t v, std::vector<Violation>& out) {
  const auto& rot = c.vertices[v].rot;
  if (rot.size() != 4) return;
  int lab[2];
  for (int dpair = 0; dpair < 2; ++dpair) {
    std::int32_t x = rot[dpair], y = rot[dpair + 2];
    if (c.edges[end_edge(x)].label != c.edges[end_edge(y)].label) {
      out.push_back({"iv", c.vertices[v].id, "diagonal edges carry different labels"});
      return;
    }
    if (end_is_head(x) == end_is_head(y)) {
      out.push_back({"iv", c.vertices[v].id, "diagonal edges not oriented coherently"});
      return;
    }
    lab[dpair] = c.edges[end_edge(x)].label;
  }
  if (std::abs(lab[0] - lab[1]) <= 1)
    out.push_back({"iv", c.vertices[v].id,
                   "crossing labels differ by at most one"});
}

}  // namespace

std::vector<Violation> validate(const Chart& c) {
  std::vector<Violation> out;
  if (c.degree < 1) out.push_back({"structure", "", "chart degree below one"});
  for (const auto& e : c.edges)
    if (e.label < 1 || e.label > c.degree - 1)
      out.push_back({"ii", e.id, "edge label outside 1..n-1"});
  Topology t = analyze(c);
  for (std::int32_t v = 0; v < c.nv(); ++v) {
    const Vertex& V = c.vertices[v];
    if ((int)V.rot.size() != expected_degree(V.kind))
      out.push_back({"i", V.id, std::string("degree of a ") + kind_name(V.kind) +
                                    " vertex must be " +
                                    std::to_string(expected_degree(V.kind))});
  }
  if (!t.ok) {
    out.insert(out.end(), t.problems.begin(), t.problems.end());
    return out;
  }
  for (std::int32_t v = 0; v < c.nv(); ++v) {
    const Vertex& V = c.vertices[v];
    switch (V.kind) {
      case VertexKind::White: check_white(c, v, out); break;
      case VertexKind::Crossing: check_crossing(c, v, out); break;
      case VertexKind::Anchor: {
        if (V.rot.size() != 2) break;
        if (end_edge(V.rot[0]) != end_edge(V.rot[1]))
          out.push_back({"structure", V.id, "anchor ends belong to two edges"});
        else if (end_is_head(V.rot[0]) == end_is_head(V.rot[1]))
          out.push_back({"structure", V.id, "anchor must pass one inward and one outward end"});
        break;
      }
      case VertexKind::Black: break;
    }
  }
  // Euler characteristic per component (genus-zero check).
  std::vector<std::int32_t> cv(t.n_comp, 0), ce(t.n_comp, 0), cfc(t.n_comp, 0);
  for (std::int32_t v = 0; v < c.nv(); ++v) ++cv[t.vertex_comp[v]];
  for (const auto& e : c.edges) ++ce[t.vertex_comp[e.tail]];
  for (std::size_t f = 0; f < t.faces.size(); ++f) ++cfc[t.face_comp[f]];
  for (std::int32_t k = 0; k < t.n_comp; ++k)
    if (cv[k] - ce[k] + cfc[k] != 2) {
      std::string wit;
      for (std::int32_t v = 0; v < c.nv() && wit.empty(); ++v)
        if (t.vertex_comp[v] == k) wit = c.vertices[v].id;
      out.push_back({"euler", wit, "component is not a sphere embedding (V-E+F != 2)"});
    }
  out.insert(out.end(), t.problems.begin(), t.problems.end());
  return out;
}

bool is_valid(const Chart& c) { return validate(c).empty(); }

Complexity complexity(const Chart& c) {
  Complexity x;
  for (const auto& v : c.vertices)
    if (v.kind == VertexKind::White) ++x.whites;
  for (const auto& e : c.edges)
    if (e.tail != e.head && c.vertices[e.tail].kind == VertexKind::Black &&
        c.vertices[e.head].kind == VertexKind::Black)
      --x.neg_free_edges;
  return x;
}

Chart working_chart(const Chart& c) {
  Topology t = analyze(c);
  if (!t.ok || t.n_comp == 0) return c;
  bool any = false;
  for (char p : t.comp_parked) any = any || p;
  if (!any) return c;

  Chart w;
  w.name = c.name;
  w.degree = c.degree;
  std::vector<std::int32_t> vmap(c.nv(), -1), emap(c.ne(), -1);
  for (std::int32_t v = 0; v < c.nv(); ++v)
    if (!t.comp_parked[t.vertex_comp[v]]) {
      vmap[v] = w.nv();
      w.vertices.push_back({c.vertices[v].id, c.vertices[v].kind, {}});
    }
  for (std::int32_t e = 0; e < c.ne(); ++e)
    if (!t.comp_parked[t.vertex_comp[c.edges[e].tail]]) {
      emap[e] = w.ne();
      w.edges.push_back({c.edges[e].id, c.edges[e].label, vmap[c.edges[e].tail],
                         vmap[c.edges[e].head]});
    }
  for (std::int32_t v = 0; v < c.nv(); ++v)
    if (vmap[v] != -1)
      for (std::int32_t x : c.vertices[v].rot)
        w.vertices[vmap[v]].rot.push_back(make_end(emap[end_edge(x)], end_is_head(x)));
  if (w.ne() == 0) return w;

  // Rebuild containment from the region tree restricted to survivors.
  auto dart_in_region = [&](std::int32_t comp, std::int32_t region) -> std::int32_t {
    for (std::size_t f = 0; f < t.faces.size(); ++f)
      if (t.face_comp[f] == comp && t.face_region[f] == region) {
        std::int32_t d = t.faces[f][0];
        return make_dart(emap[dart_edge(d)], dart_is_backward(d));
      }
    return -1;
  };
  // Parent component of each region in the incidence tree.
  std::vector<std::int32_t> region_owner(t.n_regions, -1);
  for (std::int32_t k = 0; k < t.n_comp; ++k)
    for (std::int32_t r : t.comp_regions[k])
      if (r != t.comp_out_region[k]) region_owner[r] = k;
  std::int32_t root = -1;
  for (std::int32_t k = 0; k < t.n_comp && root == -1; ++k)
    if (!t.comp_parked[k] && t.comp_out_region[k] == t.inf_region) root = k;
  for (std::int32_t k = 0; k < t.n_comp; ++k) {
    if (t.comp_parked[k] || k == root) continue;
    std::int32_t r = t.comp_out_region[k];
    std::int32_t parent = (r == t.inf_region) ? root : region_owner[r];
    std::int32_t in_dart = dart_in_region(parent, r);
    std::int32_t out_dart = dart_in_region(k, r);
    std::int32_t witness = -1;
    for (std::int32_t v = 0; v < c.nv() && witness == -1; ++v)
      if (t.vertex_comp[v] == k) witness = vmap[v];
    w.embeds.push_back({witness, in_dart, out_dart});
  }
  if (c.inf_dart >= 0 && emap[dart_edge(c.inf_dart)] != -1)
    w.inf_dart = make_dart(emap[dart_edge(c.inf_dart)], dart_is_backward(c.inf_dart));
  else {
    for (std::size_t f = 0; f < t.faces.size() && w.inf_dart == -1; ++f)
      if (t.face_region[f] == t.inf_region && !t.comp_parked[t.face_comp[f]]) {
        std::int32_t d = t.faces[f][0];
        w.inf_dart = make_dart(emap[dart_edge(d)], dart_is_backward(d));
      }
  }
  return w;
}

std::optional<CurveSplit> split_by_curve(const Chart& c, const Topology& t,
                                         const std::vector<std::int32_t>& curve_edges) {
  if (curve_edges.empty() || t.n_regions == 0) return std::nullopt;
  std::vector<char> on_curve(c.ne(), 0);
  for (std::int32_t e : curve_edges) on_curve[e] = 1;
  Dsu dsu(t.n_regions);
  for (std::int32_t e = 0; e < c.ne(); ++e)
    if (!on_curve[e])
      dsu.unite(t.face_region[t.dart_face[2 * e]], t.face_region[t.dart_face[2 * e + 1]]);
  std::int32_t left = dsu.find(t.face_region[t.dart_face[2 * curve_edges[0]]]);
  std::int32_t right = dsu.find(t.face_region[t.dart_face[2 * curve_edges[0] + 1]]);
  if (left == right) return std::nullopt;
  CurveSplit s;
  s.region_side.assign(t.n_regions, 0);
  for (std::int32_t r = 0; r < t.n_regions; ++r) {
    std::int32_t g = dsu.find(r);
    if (g == left)
      s.region_side[r] = 0;
    else if (g == right)
      s.region_side[r] = 1;
    else
      return std::nullopt;  // more than two complementary parts
  }
  for (std::int32_t e : curve_edges) {
    if (s.region_side[t.face_region[t.dart_face[2 * e]]] ==
        s.region_side[t.face_region[t.dart_face[2 * e + 1]]])
      return std::nullopt;  // curve does not separate locally
  }
  s.vertex_side.assign(c.nv(), 0);
  std::vector<char> touched(c.nv(), 0);
  for (std::int32_t e : curve_edges) touched[c.edges[e].tail] = touched[c.edges[e].head] = 1;
  for (std::int32_t v = 0; v < c.nv(); ++v) {
    if (touched[v]) {
      s.vertex_side[v] = 2;
      continue;
    }
    if (c.vertices[v].rot.empty()) return std::nullopt;  // not meaningful here
    std::int32_t x = c.vertices[v].rot[0];
    s.vertex_side[v] = s.region_side[t.face_region[t.germ_face_left(x)]];
    if (c.vertices[v].kind == VertexKind::White) ++s.whites_on[(int)s.vertex_side[v]];
  }
  return s;
}

int germ_side(const Topology& t, const CurveSplit& s, std::int32_t x) {
  return s.region_side[t.face_region[t.germ_face_left(x)]];
}

}  // namespace cf
