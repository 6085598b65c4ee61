#include "moves.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "canon.hpp"
#include "tracks.hpp"

namespace cf {
namespace {

// --------------------------------------------------------------- utilities

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

char kind_letter(VertexKind k) {
  switch (k) {
    case VertexKind::White: return 'w';
    case VertexKind::Black: return 'b';
    case VertexKind::Crossing: return 'x';
    case VertexKind::Anchor: return 'a';
  }
  return '?';
}

// Site entry meaning per kind: 'v' vertex index, 'e' edge index, 'd' dart,
// 'i' plain integer. Used for checksums and post-compaction remapping.
std::vector<char> site_tags(MoveKind k, bool reversed) {
  switch (k) {
    case MoveKind::CIM1: return reversed ? std::vector<char>{'e'} : std::vector<char>{'d', 'i'};
    case MoveKind::CIM2: return {'d', 'd'};
    case MoveKind::CIR2: return {'d', 'd'};
    case MoveKind::CIR3: return {'d', 'd', 'd'};
    case MoveKind::CIM4: return {'v', 'v', 'v', 'v', 'v', 'i'};
    case MoveKind::CII: return reversed ? std::vector<char>{'v', 'e'} : std::vector<char>{'v', 'd'};
    case MoveKind::CIII:
      return reversed ? std::vector<char>{'v', 'd', 'd'} : std::vector<char>{'v', 'e'};
    case MoveKind::CutEdge: return {'v', 'v', 'd'};
    default: return {};
  }
}

void describe_vertex(const Chart& c, std::int32_t v, std::ostringstream& os) {
  if (v < 0 || v >= c.nv()) {
    os << "!v";
    return;
  }
  const Vertex& vx = c.vertices[v];
  os << 'v' << vx.id << ':' << kind_letter(vx.kind) << '[';
  for (std::int32_t x : vx.rot)
    os << c.edges[end_edge(x)].id << (end_is_head(x) ? 'h' : 't') << ' ';
  os << ']';
}

void describe_edge(const Chart& c, std::int32_t e, std::ostringstream& os) {
  if (e < 0 || e >= c.ne()) {
    os << "!e";
    return;
  }
  const Edge& ed = c.edges[e];
  os << 'e' << ed.id << ':' << ed.label << ':';
  describe_vertex(c, ed.tail, os);
  describe_vertex(c, ed.head, os);
}

std::uint64_t site_checksum(const Chart& c, const MoveInstance& m) {
  std::ostringstream os;
  os << move_kind_name(m.kind) << (m.reversed ? "|r" : "|f") << '|' << m.label << '/' << m.label2
     << '|';
  std::vector<char> tags = site_tags(m.kind, m.reversed);
  for (std::size_t i = 0; i < m.site.size(); ++i) {
    char tag = i < tags.size() ? tags[i] : 'i';
    std::int32_t s = m.site[i];
    os << tag << s << '=';
    if (s >= 0) {
      if (tag == 'v')
        describe_vertex(c, s, os);
      else if (tag == 'e')
        describe_edge(c, s, os);
      else if (tag == 'd')
        describe_edge(c, dart_edge(s), os);
    }
    os << ';';
  }
  return fnv1a64(os.str());
}

std::map<std::string, std::string> chart_signature(const Chart& c) {
  std::map<std::string, std::string> sig;
  for (const auto& v : c.vertices) {
    std::ostringstream os;
    os << kind_letter(v.kind);
    for (std::int32_t x : v.rot)
      os << '|' << c.edges[end_edge(x)].id << (end_is_head(x) ? 'h' : 't');
    sig["v:" + v.id] = os.str();
  }
  for (const auto& e : c.edges) {
    std::ostringstream os;
    os << e.label << '|' << c.vertices[e.tail].id << '|' << c.vertices[e.head].id;
    sig["e:" + e.id] = os.str();
  }
  return sig;
}

// ----------------------------------------------------------------- surgeon

// Mutable working copy. Deletions are masked and resolved by finish(), which
// compacts indices, rewrites rotations, containment records and the infinity
// dart, and reports the old->new index maps.
struct Surgeon {
  Chart c;
  std::vector<char> dead_v, dead_e;
  std::map<std::int32_t, std::int32_t> heirs;  // dying dart -> continuation dart
  std::set<std::string> ids;

  explicit Surgeon(const Chart& in) : c(in), dead_v(in.nv(), 0), dead_e(in.ne(), 0) {
    for (const auto& v : c.vertices) ids.insert("v" + v.id);
    for (const auto& e : c.edges) ids.insert("e" + e.id);
  }

  std::string fresh_id(char ns, const std::string& base) {
    std::string cand = base;
    for (int i = 2; ids.count(std::string(1, ns) + cand); ++i) cand = base + "_" + std::to_string(i);
    ids.insert(std::string(1, ns) + cand);
    return cand;
  }

  std::int32_t add_vertex(const std::string& base, VertexKind k) {
    Vertex v;
    v.id = fresh_id('v', base);
    v.kind = k;
    c.vertices.push_back(std::move(v));
    dead_v.push_back(0);
    return c.nv() - 1;
  }

  std::int32_t add_edge(const std::string& base, int label, std::int32_t tail, std::int32_t head) {
    Edge e;
    e.id = fresh_id('e', base);
    e.label = label;
    e.tail = tail;
    e.head = head;
    c.edges.push_back(std::move(e));
    dead_e.push_back(0);
    return c.ne() - 1;
  }

  Vertex& v(std::int32_t i) { return c.vertices[i]; }
  Edge& e(std::int32_t i) { return c.edges[i]; }

  void kill_vertex(std::int32_t i) { dead_v[i] = 1; }
  void kill_edge(std::int32_t i) { dead_e[i] = 1; }

  // End x moves to vertex nv: update the edge record field it names.
  void retarget(std::int32_t x, std::int32_t nv) {
    if (end_is_head(x))
      e(end_edge(x)).head = nv;
    else
      e(end_edge(x)).tail = nv;
  }

  // Two strand pieces fuse at a junction: survivor end xa, dying end xb.
  // Walks through the junction continue: dart(xb) -> dart(xa^1) and back.
  void junction(std::int32_t xa, std::int32_t xb) {
    heirs[xb] = xa ^ 1;
    heirs[xb ^ 1] = xa;
  }

  std::int32_t resolve(std::int32_t d) const {
    for (int guard = 0; guard < 64; ++guard) {
      auto it = heirs.find(d);
      if (it == heirs.end()) return d;
      d = it->second;
    }
    return -1;
  }

  struct Maps {
    std::vector<std::int32_t> vmap, emap;
  };

  bool finish(Maps& maps, std::string* err) {
    auto fix_dart = [&](std::int32_t d, std::int32_t* out) {
      if (d < 0) {
        *out = d;
        return true;
      }
      d = resolve(d);
      if (d < 0 || dead_e[dart_edge(d)]) return false;
      *out = d;
      return true;
    };
    for (auto& em : c.embeds) {
      if (dead_v[em.child_vertex]) {
        *err = "containment record child removed by the surgery";
        return false;
      }
      if (!fix_dart(em.in_dart, &em.in_dart) || !fix_dart(em.out_dart, &em.out_dart)) {
        *err = "containment record pinned to the rewritten site";
        return false;
      }
    }
    if (!fix_dart(c.inf_dart, &c.inf_dart)) {
      *err = "infinity dart pinned to the rewritten site";
      return false;
    }
    maps.vmap.assign(c.nv(), -1);
    maps.emap.assign(c.ne(), -1);
    std::vector<Vertex> nverts;
    std::vector<Edge> nedges;
    for (std::int32_t i = 0; i < c.nv(); ++i)
      if (!dead_v[i]) {
        maps.vmap[i] = (std::int32_t)nverts.size();
        nverts.push_back(std::move(c.vertices[i]));
      }
    for (std::int32_t i = 0; i < c.ne(); ++i)
      if (!dead_e[i]) {
        maps.emap[i] = (std::int32_t)nedges.size();
        nedges.push_back(std::move(c.edges[i]));
      }
    for (auto& ed : nedges) {
      if (ed.tail < 0 || maps.vmap[ed.tail] < 0 || maps.vmap[ed.head] < 0) {
        *err = "internal: live edge attached to a removed vertex";
        return false;
      }
      ed.tail = maps.vmap[ed.tail];
      ed.head = maps.vmap[ed.head];
    }
    for (auto& vx : nverts)
      for (auto& x : vx.rot) {
        if (maps.emap[end_edge(x)] < 0) {
          *err = "internal: live rotation references a removed edge";
          return false;
        }
        x = make_end(maps.emap[end_edge(x)], end_is_head(x));
      }
    for (auto& em : c.embeds) {
      em.child_vertex = maps.vmap[em.child_vertex];
      if (em.in_dart >= 0) em.in_dart = make_dart(maps.emap[dart_edge(em.in_dart)], dart_is_backward(em.in_dart));
      if (em.out_dart >= 0)
        em.out_dart = make_dart(maps.emap[dart_edge(em.out_dart)], dart_is_backward(em.out_dart));
      if (em.child_vertex < 0) {
        *err = "internal: containment child lost in compaction";
        return false;
      }
    }
    if (c.inf_dart >= 0)
      c.inf_dart = make_dart(maps.emap[dart_edge(c.inf_dart)], dart_is_backward(c.inf_dart));
    c.vertices = std::move(nverts);
    c.edges = std::move(nedges);
    return true;
  }
};

// Union-find over live vertices of a surgeon's chart.
struct CompMap {
  std::vector<std::int32_t> parent;
  explicit CompMap(const Surgeon& s) : parent(s.c.nv()) {
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = (std::int32_t)i;
    for (std::int32_t e = 0; e < s.c.ne(); ++e)
      if (!s.dead_e[e]) unite(s.c.edges[e].tail, s.c.edges[e].head);
  }
  std::int32_t find(std::int32_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::int32_t a, std::int32_t b) { parent[find(a)] = find(b); }
};

// Records whose child vertex died must name another vertex of the component
// they meant; the out-dart identifies it after a split. `fallback` serves
// merge-only surgeries where any survivor of the merged component works.
bool rechild_embeds(Surgeon& s, std::int32_t fallback) {
  for (auto& em : s.c.embeds) {
    if (em.child_vertex < 0 || !s.dead_v[em.child_vertex]) continue;
    std::int32_t od = em.out_dart >= 0 ? s.resolve(em.out_dart) : -1;
    if (od >= 0 && !s.dead_e[dart_edge(od)])
      em.child_vertex = s.c.edges[dart_edge(od)].tail;
    else if (fallback >= 0 && !s.dead_v[fallback])
      em.child_vertex = fallback;
    else
      return false;
  }
  return true;
}

// After merges some containment records become self-referential (child and
// in-dart now in one component) or duplicated; both are artifacts.
void drop_redundant_embeds(Surgeon& s) {
  CompMap cm(s);
  std::set<std::int32_t> seen;
  std::vector<Embed> keep;
  for (const Embed& em : s.c.embeds) {
    if (s.dead_v[em.child_vertex]) continue;  // surgery removed the component
    if (em.in_dart >= 0) {
      std::int32_t d = s.resolve(em.in_dart);
      if (d >= 0 && !s.dead_e[dart_edge(d)]) {
        std::int32_t host = s.c.edges[dart_edge(d)].tail;
        if (cm.find(host) == cm.find(em.child_vertex)) continue;
      }
    }
    if (!seen.insert(cm.find(em.child_vertex)).second) continue;
    keep.push_back(em);
  }
  s.c.embeds = std::move(keep);
}

// Components left without a containment record after a split. Options are
// tried in order by the apply driver; validity plus the inverse roundtrip
// select the geometric one.
std::vector<std::vector<Embed>> placement_options(Surgeon& s,
                                                  const std::vector<std::int32_t>& host_darts) {
  CompMap cm(s);
  std::set<std::int32_t> placed;
  for (const Embed& em : s.c.embeds) placed.insert(cm.find(em.child_vertex));
  std::map<std::int32_t, std::int32_t> comp_v, comp_e;
  for (std::int32_t v = 0; v < s.c.nv(); ++v)
    if (!s.dead_v[v]) ++comp_v[cm.find(v)];
  std::set<std::int32_t> comps;
  for (std::int32_t e = 0; e < s.c.ne(); ++e)
    if (!s.dead_e[e]) {
      comps.insert(cm.find(s.c.edges[e].tail));
      ++comp_e[cm.find(s.c.edges[e].tail)];
    }
  std::vector<std::int32_t> unplaced;
  for (std::int32_t c0 : comps)
    if (!placed.count(c0)) unplaced.push_back(c0);
  if (unplaced.size() <= 1) return {{}};
  // One unplaced component stays the root: prefer the one holding inf_dart,
  // otherwise the largest one (the frame the others were split off from).
  std::int32_t rootc = -1;
  if (s.c.inf_dart >= 0 && !s.dead_e[dart_edge(s.c.inf_dart)])
    rootc = cm.find(s.c.edges[dart_edge(s.c.inf_dart)].tail);
  if (rootc < 0 || !std::count(unplaced.begin(), unplaced.end(), rootc)) {
    rootc = unplaced.front();
    for (std::int32_t c0 : unplaced)
      if (comp_v[c0] > comp_v[rootc]) rootc = c0;
  }
  std::vector<std::vector<Embed>> combos = {{}};
  for (std::int32_t cc : unplaced) {
    if (cc == rootc) continue;
    std::int32_t child = -1, e0 = -1;
    for (std::int32_t v = 0; v < s.c.nv() && child < 0; ++v)
      if (!s.dead_v[v] && cm.find(v) == cc) child = v;
    for (std::int32_t e = 0; e < s.c.ne() && e0 < 0; ++e)
      if (!s.dead_e[e] && cm.find(s.c.edges[e].tail) == cc) e0 = e;
    // The omitted-outward-face form (-1) is only derivable for children with a
    // single face, i.e. tree components.
    std::vector<std::int32_t> outs = {make_dart(e0, false), make_dart(e0, true)};
    if (comp_v[cc] - comp_e[cc] == 1) outs.push_back(-1);
    std::vector<Embed> opts;
    for (std::int32_t hd : host_darts) {
      if (hd < 0 || s.dead_e[dart_edge(hd)]) continue;
      if (cm.find(s.c.edges[dart_edge(hd)].tail) == cc) continue;
      for (std::int32_t od : outs) opts.push_back({child, hd, od});
      if (opts.size() >= 12) break;
    }
    if (opts.empty()) return {};  // no viable host side
    std::vector<std::vector<Embed>> next;
    for (const auto& base : combos)
      for (const Embed& em : opts) {
        if (next.size() >= 256) break;
        auto ext = base;
        ext.push_back(em);
        next.push_back(std::move(ext));
      }
    combos = std::move(next);
  }
  return combos;
}

// ------------------------------------------------------------ apply engine

struct Built {
  Chart out;
  MoveInstance inv;  // site already in out-chart coordinates
  std::set<std::string> touched;
};

struct StepResult {
  std::string error;  // set when the site is structurally illegal
  std::vector<Built> built;
};

void touch_v(const Chart& c, std::set<std::string>& t, std::int32_t v) {
  if (v >= 0 && v < c.nv()) t.insert("v:" + c.vertices[v].id);
}
void touch_e(const Chart& c, std::set<std::string>& t, std::int32_t e) {
  if (e >= 0 && e < c.ne()) t.insert("e:" + c.edges[e].id);
}

// Compacts one candidate surgeon and translates the planned inverse site.
bool seal(Surgeon&& s, MoveInstance inv, const std::set<std::string>& touched, StepResult& out) {
  Surgeon::Maps maps;
  std::string err;
  if (!s.finish(maps, &err)) {
    if (out.error.empty()) out.error = err;
    return false;
  }
  std::vector<char> tags = site_tags(inv.kind, inv.reversed);
  for (std::size_t i = 0; i < inv.site.size(); ++i) {
    char tag = i < tags.size() ? tags[i] : 'i';
    std::int32_t& sv = inv.site[i];
    if (sv < 0 || tag == 'i') continue;
    if (tag == 'v')
      sv = maps.vmap[sv];
    else if (tag == 'e')
      sv = maps.emap[sv];
    else if (tag == 'd')
      sv = make_dart(maps.emap[dart_edge(sv)], dart_is_backward(sv));
    if (sv < 0) {
      if (out.error.empty()) out.error = "internal: inverse site lost in compaction";
      return false;
    }
  }
  out.built.push_back({std::move(s.c), std::move(inv), touched});
  return true;
}

bool dart_ok(const Chart& c, std::int32_t d) { return d >= 0 && d < 2 * c.ne(); }

std::string edge_name(const Chart& c, std::int32_t e) { return c.edges[e].id; }
std::string vert_name(const Chart& c, std::int32_t v) { return c.vertices[v].id; }

// ---- CI-M1 -----------------------------------------------------------------

StepResult step_m1_insert(const Chart& c, const Topology& t, const MoveInstance& m) {
  StepResult r;
  if (m.site.size() != 2) return {"CI-M1 site must be {face_dart, winding}", {}};
  std::int32_t fd = m.site[0];
  int winding = m.site[1];
  if (winding != 0 && winding != 1) return {"winding must be 0 or 1", {}};
  if (m.label < 1 || m.label > c.degree - 1) return {"hoop label out of range", {}};
  if (c.ne() == 0) {
    if (fd != -1) return {"face dart must be -1 on the empty chart", {}};
  } else if (!dart_ok(c, fd)) {
    return {"face dart out of range", {}};
  }
  (void)t;
  Surgeon s(c);
  std::int32_t va = s.add_vertex("a", VertexKind::Anchor);
  std::int32_t he = s.add_edge("h", m.label, va, va);
  s.v(va).rot = {make_end(he, false), make_end(he, true)};
  if (c.ne() > 0) s.c.embeds.push_back({va, fd, make_dart(he, winding == 1)});
  MoveInstance inv;
  inv.kind = MoveKind::CIM1;
  inv.reversed = true;
  inv.site = {he};
  inv.label = m.label;
  seal(std::move(s), inv, {}, r);
  return r;
}

StepResult step_m1_delete(const Chart& c, const Topology& t, const MoveInstance& m) {
  StepResult r;
  if (m.site.size() != 1) return {"CI-M1 delete site must be {hoop_edge}", {}};
  std::int32_t h = m.site[0];
  if (h < 0 || h >= c.ne()) return {"hoop edge out of range", {}};
  const Edge& he = c.edges[h];
  if (he.tail != he.head || c.vertices[he.tail].kind != VertexKind::Anchor)
    return {"edge is not an anchored hoop", {}};
  std::int32_t va = he.tail;
  int own = -1;
  for (std::size_t i = 0; i < c.embeds.size(); ++i) {
    const Embed& em = c.embeds[i];
    bool refs = em.child_vertex == va || (em.in_dart >= 0 && dart_edge(em.in_dart) == h) ||
                (em.out_dart >= 0 && dart_edge(em.out_dart) == h);
    if (em.child_vertex == va && own < 0)
      own = (int)i;
    else if (refs)
      return {"hoop is referenced by another containment record", {}};
  }
  int comp = t.vertex_comp[va];
  auto side_empty = [&](std::int32_t reg) {
    for (int k = 0; k < t.n_comp; ++k)
      if (k != comp)
        for (std::int32_t rr : t.comp_regions[k])
          if (rr == reg) return false;
    return true;
  };
  std::int32_t r0 = t.face_region[t.dart_face[make_dart(h, false)]];
  std::int32_t r1 = t.face_region[t.dart_face[make_dart(h, true)]];
  if (!side_empty(r0) && !side_empty(r1)) return {"no empty side: hoop encloses chart parts", {}};
  Surgeon s(c);
  MoveInstance inv;
  inv.kind = MoveKind::CIM1;
  inv.label = he.label;
  if (own >= 0) {
    const Embed& em = c.embeds[own];
    if (em.out_dart < 0) return {"hoop record carries a derived out-dart", {}};
    inv.site = {em.in_dart, dart_is_backward(em.out_dart) ? 1 : 0};
    s.c.embeds.erase(s.c.embeds.begin() + own);
    if (s.c.inf_dart >= 0 && dart_edge(s.c.inf_dart) == h) s.c.inf_dart = em.in_dart;
  } else {
    if (t.n_comp != 1) return {"root hoop with siblings cannot be deleted", {}};
    inv.site = {-1, 0};
    if (s.c.inf_dart >= 0 && dart_edge(s.c.inf_dart) == h) s.c.inf_dart = -1;
  }
  s.kill_vertex(va);
  s.kill_edge(h);
  std::set<std::string> touched;
  touch_v(c, touched, va);
  touch_e(c, touched, h);
  seal(std::move(s), inv, touched, r);
  return r;
}

// ---- CI-M2 -----------------------------------------------------------------

StepResult step_m2(const Chart& c, const Topology& t, const MoveInstance& m) {
  StepResult r;
  if (m.site.size() != 2) return {"CI-M2 site must be {d1, d2}", {}};
  std::int32_t d1 = m.site[0], d2 = m.site[1];
  if (!dart_ok(c, d1) || !dart_ok(c, d2)) return {"dart out of range", {}};
  std::int32_t e1 = dart_edge(d1), e2 = dart_edge(d2);
  if (c.edges[e1].label != c.edges[e2].label) return {"band requires one label", {}};
  if (dart_is_backward(d1) != dart_is_backward(d2)) return {"band arcs must be co-oriented", {}};
  if (t.face_region[t.dart_face[d1]] != t.face_region[t.dart_face[d2]])
    return {"band ends in different regions", {}};

  if (d1 == d2) {  // split a parallel hoop off the strand
    Surgeon s(c);
    std::int32_t va = s.add_vertex("a", VertexKind::Anchor);
    std::int32_t he = s.add_edge("h", c.edges[e1].label, va, va);
    s.v(va).rot = {make_end(he, false), make_end(he, true)};
    s.c.embeds.push_back({va, d1, make_dart(he, true)});
    MoveInstance inv;
    inv.kind = MoveKind::CIM1;
    inv.reversed = true;
    inv.site = {he};
    inv.label = c.edges[e1].label;
    seal(std::move(s), inv, {}, r);
    return r;
  }
  auto touches_anchor = [&](std::int32_t e) {
    return c.vertices[c.edges[e].tail].kind == VertexKind::Anchor ||
           c.vertices[c.edges[e].head].kind == VertexKind::Anchor;
  };
  if (touches_anchor(e1) || touches_anchor(e2)) return {"band arc carries an anchor", {}};

  std::int32_t v1 = t.dart_to_vertex(d1), v2 = t.dart_to_vertex(d2);
  std::int32_t a1 = dart_arrive_end(d1), a2 = dart_arrive_end(d2);
  Surgeon s(c);
  s.v(v1).rot[t.end_pos[a1]] = a2;
  s.v(v2).rot[t.end_pos[a2]] = a1;
  s.retarget(a1, v2);
  s.retarget(a2, v1);
  drop_redundant_embeds(s);
  std::set<std::string> touched;
  touch_v(c, touched, v1);
  touch_v(c, touched, v2);
  touch_e(c, touched, e1);
  touch_e(c, touched, e2);
  MoveInstance inv;
  inv.kind = MoveKind::CIM2;
  inv.site = {std::min(d1, d2), std::max(d1, d2)};
  inv.label = c.edges[e1].label;
  for (const auto& combo : placement_options(s, {dart_reverse(d1), dart_reverse(d2), d1, d2})) {
    Surgeon cand = s;
    for (const Embed& em : combo) cand.c.embeds.push_back(em);
    seal(std::move(cand), inv, touched, r);
  }
  if (r.built.empty() && r.error.empty()) r.error = "no viable containment placement";
  return r;
}

// ---- CI-R2 -----------------------------------------------------------------

// Merge one strand across the removed crossing pair. xW/xE are the far
// continuation ends at X1/X2; returns the strip-side dart of the survivor
// and, for a closed strand, the new anchor vertex (else -1).
struct StrandMerge {
  std::int32_t strip_dart = -1;
  std::int32_t anchor = -1;
  bool creates_free_edge = false;
};

StrandMerge merge_strand(Surgeon& s, const Topology& t, std::int32_t xW, std::int32_t xE,
                         std::int32_t mid_arrive_X1, bool strip_left_of_depart) {
  // strip-side dart: for the face-walk direction through this strand the
  // co-directed dart has the removed bigon on its left.
  StrandMerge out;
  std::int32_t fw = end_edge(xW), fe = end_edge(xE);
  if (fw == fe) {
    std::int32_t va = s.add_vertex("a", VertexKind::Anchor);
    s.e(fw).tail = va;
    s.e(fw).head = va;
    s.v(va).rot = {make_end(fw, false), make_end(fw, true)};
    out.anchor = va;
  } else {
    std::int32_t far2 = xE ^ 1;
    std::int32_t vF = t.end_vertex[far2];
    s.v(vF).rot[t.end_pos[far2]] = xW;
    s.retarget(xW, vF);
    std::int32_t vNear = t.end_vertex[xW ^ 1];
    out.creates_free_edge = s.c.vertices[vF].kind == VertexKind::Black &&
                            s.c.vertices[vNear].kind == VertexKind::Black;
    s.junction(/*survivor end at X2 via mid*/ mid_arrive_X1 ^ 1, xE);
    s.kill_edge(fe);
  }
  s.junction(xW, mid_arrive_X1);
  out.strip_dart = strip_left_of_depart ? xW : (xW ^ 1);
  return out;
}

StepResult step_r2_remove(const Chart& c, const Topology& t, const MoveInstance& m) {
  StepResult r;
  if (m.site.size() != 2) return {"CI-R2 site must be {p, q}", {}};
  std::int32_t p = m.site[0], q = m.site[1];
  if (!dart_ok(c, p) || !dart_ok(c, q)) return {"dart out of range", {}};
  std::int32_t f = t.dart_face[p];
  if (t.faces[f].size() != 2 || t.dart_next[p] != q || p == q)
    return {"darts do not bound a bigon", {}};
  std::int32_t X1 = t.dart_to_vertex(p), X2 = t.dart_to_vertex(q);
  if (X1 == X2) return {"bigon at a single crossing", {}};
  if (c.vertices[X1].kind != VertexKind::Crossing || c.vertices[X2].kind != VertexKind::Crossing)
    return {"bigon corners are not crossings", {}};
  std::int32_t mA = dart_edge(p), mB = dart_edge(q);
  std::int32_t xW_A = c.vertices[X1].rot[(t.end_pos[dart_arrive_end(p)] + 2) % 4];
  std::int32_t xE_A = c.vertices[X2].rot[(t.end_pos[p] + 2) % 4];
  std::int32_t xE_B = c.vertices[X2].rot[(t.end_pos[dart_arrive_end(q)] + 2) % 4];
  std::int32_t xW_B = c.vertices[X1].rot[(t.end_pos[q] + 2) % 4];

  Surgeon s(c);
  // Strand A: face walk p runs X2 -> X1, so its strip-side survivor dart
  // departs through xW_A; strand B's walk q runs X1 -> X2, strip side is the
  // dart arriving through xW_B.
  StrandMerge ma = merge_strand(s, t, xW_A, xE_A, dart_arrive_end(p), true);
  StrandMerge mb = merge_strand(s, t, xW_B, xE_B, dart_arrive_end(q), false);
  if (ma.creates_free_edge || mb.creates_free_edge)
    return {"cancellation would create a free edge", {}};
  s.kill_edge(mA);
  s.kill_edge(mB);
  s.kill_vertex(X1);
  s.kill_vertex(X2);
  if (!rechild_embeds(s, -1))
    return {"containment record pinned to the removed crossings", {}};
  drop_redundant_embeds(s);
  std::set<std::string> touched;
  for (std::int32_t e : {mA, mB, end_edge(xW_A), end_edge(xE_A), end_edge(xW_B), end_edge(xE_B)})
    touch_e(c, touched, e);
  touch_v(c, touched, X1);
  touch_v(c, touched, X2);
  touch_v(c, touched, t.end_vertex[xE_A ^ 1]);
  touch_v(c, touched, t.end_vertex[xE_B ^ 1]);
  MoveInstance inv;
  inv.kind = MoveKind::CIR2;
  inv.reversed = true;
  inv.site = {ma.strip_dart, mb.strip_dart};
  inv.label = c.edges[mA].label;
  inv.label2 = c.edges[mB].label;
  for (const auto& combo : placement_options(
           s, {ma.strip_dart, mb.strip_dart, dart_reverse(ma.strip_dart), dart_reverse(mb.strip_dart)})) {
    Surgeon cand = s;
    for (const Embed& em : combo) cand.c.embeds.push_back(em);
    seal(std::move(cand), inv, touched, r);
  }
  if (r.built.empty() && r.error.empty()) r.error = "no viable containment placement";
  return r;
}

// Cuts the edge of d at two new crossings along the walk of d. Returns the
// ends at the cuts: {behind@first, mid@first, mid@second, ahead@second}.
struct SplitTwo {
  std::int32_t a_first, m_first, m_second, b_second;
  std::int32_t mid_edge;
  std::int32_t dissolved_anchor = -1;
};

SplitTwo split_two(Surgeon& s, const Topology& t, std::int32_t d, std::int32_t Xfirst,
                   std::int32_t Xsecond) {
  SplitTwo out{};
  std::int32_t e0 = dart_edge(d);
  bool flip = dart_is_backward(d);
  int label = s.c.edges[e0].label;
  std::int32_t mid = s.add_edge(s.c.edges[e0].id + "m", label, flip ? Xsecond : Xfirst,
                                flip ? Xfirst : Xsecond);
  out.mid_edge = mid;
  out.m_first = make_end(mid, flip);
  out.m_second = make_end(mid, !flip);
  const Edge& ed = s.c.edges[e0];
  if (ed.tail == ed.head && s.c.vertices[ed.tail].kind == VertexKind::Anchor) {
    out.dissolved_anchor = ed.tail;
    s.kill_vertex(ed.tail);
    s.retarget(d ^ 1, Xfirst);
    s.retarget(d, Xsecond);
    out.a_first = d ^ 1;
    out.b_second = d;
  } else {
    std::int32_t far = d ^ 1;
    std::int32_t vEnd = t.end_vertex[far];
    s.retarget(far, Xfirst);
    out.a_first = far;
    std::int32_t b = s.add_edge(s.c.edges[e0].id + "b", label, flip ? vEnd : Xsecond,
                                flip ? Xsecond : vEnd);
    out.b_second = make_end(b, flip);
    s.v(vEnd).rot[t.end_pos[far]] = make_end(b, !flip);
  }
  return out;
}

StepResult step_r2_insert(const Chart& c, const Topology& t, const MoveInstance& m) {
  StepResult r;
  if (m.site.size() != 2) return {"CI-R2 insert site must be {d1, d2}", {}};
  std::int32_t d1 = m.site[0], d2 = m.site[1];
  if (!dart_ok(c, d1) || !dart_ok(c, d2)) return {"dart out of range", {}};
  std::int32_t e1 = dart_edge(d1), e2 = dart_edge(d2);
  if (e1 == e2) return {"one arc cannot cross itself here", {}};
  if (std::abs(c.edges[e1].label - c.edges[e2].label) < 2) return {"labels are not distant", {}};
  if (t.face_region[t.dart_face[d1]] != t.face_region[t.dart_face[d2]])
    return {"arcs face different regions", {}};
  auto is_free = [&](std::int32_t e) {
    return c.vertices[c.edges[e].tail].kind == VertexKind::Black &&
           c.vertices[c.edges[e].head].kind == VertexKind::Black;
  };
  if (is_free(e1) || is_free(e2)) return {"free edge would stop being free", {}};

  Surgeon s(c);
  std::int32_t Xw = s.add_vertex("x", VertexKind::Crossing);
  std::int32_t Xe = s.add_vertex("x", VertexKind::Crossing);
  SplitTwo s1 = split_two(s, t, d1, Xw, Xe);
  SplitTwo s2 = split_two(s, t, d2, Xe, Xw);
  // d1 and d2 are anti-parallel along the shared face; with ccw rotations the
  // finger of strand 1 meets strand 2's pieces in this cyclic order.
  s.v(Xw).rot = {s1.m_first, s2.b_second, s1.a_first, s2.m_second};
  s.v(Xe).rot = {s1.b_second, s2.a_first, s1.m_second, s2.m_first};
  for (std::int32_t va : {s1.dissolved_anchor, s2.dissolved_anchor})
    if (va >= 0) {
      std::vector<Embed> keep;
      for (const Embed& em : s.c.embeds)
        if (em.child_vertex != va) keep.push_back(em);
      s.c.embeds = std::move(keep);
    }
  drop_redundant_embeds(s);
  std::set<std::string> touched;
  touch_e(c, touched, e1);
  touch_e(c, touched, e2);
  touch_v(c, touched, t.end_vertex[d1 ^ 1]);
  touch_v(c, touched, t.end_vertex[d2 ^ 1]);
  if (s1.dissolved_anchor >= 0) touch_v(c, touched, s1.dissolved_anchor);
  if (s2.dissolved_anchor >= 0) touch_v(c, touched, s2.dissolved_anchor);
  MoveInstance inv;
  inv.kind = MoveKind::CIR2;
  // The bigon face is walked against each strand's travel direction.
  inv.site = {make_dart(s1.mid_edge, !dart_is_backward(d1)),
              make_dart(s2.mid_edge, !dart_is_backward(d2))};
  inv.label = c.edges[e1].label;
  inv.label2 = c.edges[e2].label;
  seal(std::move(s), inv, touched, r);
  return r;
}

// ---- CI-R3 -----------------------------------------------------------------

StepResult step_r3(const Chart& c, const Topology& t, const MoveInstance& m) {
  StepResult r;
  if (m.site.size() != 3) return {"CI-R3 site must be {d1, d2, d3}", {}};
  for (std::int32_t d : m.site)
    if (!dart_ok(c, d)) return {"dart out of range", {}};
  std::int32_t f = t.dart_face[m.site[0]];
  if (t.faces[f].size() != 3) return {"darts do not bound a triangle", {}};
  std::set<std::int32_t> want(m.site.begin(), m.site.end()), have(t.faces[f].begin(),
                                                                  t.faces[f].end());
  if (want != have || want.size() != 3) return {"darts do not bound one triangle", {}};
  const std::vector<std::int32_t>& o = t.faces[f];
  std::int32_t C[3], aend[3], bend[3], fa[3], fb[3];
  for (int i = 0; i < 3; ++i) {
    C[i] = t.dart_to_vertex(o[i]);
    if (c.vertices[C[i]].kind != VertexKind::Crossing) return {"triangle corner not a crossing", {}};
    aend[i] = dart_arrive_end(o[i]);
    bend[i] = o[(i + 1) % 3];
  }
  if (C[0] == C[1] || C[1] == C[2] || C[0] == C[2]) return {"degenerate triangle", {}};
  std::int32_t mid[3] = {dart_edge(o[0]), dart_edge(o[1]), dart_edge(o[2])};
  if (mid[0] == mid[1] || mid[1] == mid[2] || mid[0] == mid[2])
    return {"triangle sides are not three edges", {}};
  for (int i = 0; i < 3; ++i) {
    fa[i] = c.vertices[C[i]].rot[(t.end_pos[aend[i]] + 2) % 4];
    fb[i] = c.vertices[C[i]].rot[(t.end_pos[bend[i]] + 2) % 4];
  }
  Surgeon s(c);
  for (int i = 0; i < 3; ++i) {
    int prev = (i + 2) % 3, next = (i + 1) % 3;
    auto& rot = s.v(C[i]).rot;
    rot[t.end_pos[aend[i]]] = fb[prev];
    rot[t.end_pos[bend[i]]] = fa[next];
    rot[(t.end_pos[aend[i]] + 2) % 4] = o[i];
    rot[(t.end_pos[bend[i]] + 2) % 4] = o[next] ^ 1;
    s.retarget(fb[i], C[next]);    // behind edge of strand o[next] swings forward
    s.retarget(fa[i], C[prev]);    // ahead edge of strand o[i] swings back
    s.retarget(o[i], C[i]);        // mid endpoints swap corners
    s.retarget(o[i] ^ 1, C[prev]);
  }
  std::set<std::string> touched;
  for (int i = 0; i < 3; ++i) {
    touch_v(c, touched, C[i]);
    touch_e(c, touched, mid[i]);
    touch_e(c, touched, end_edge(fa[i]));
    touch_e(c, touched, end_edge(fb[i]));
  }
  MoveInstance inv;
  inv.kind = MoveKind::CIR3;
  inv.site = {o[0] ^ 1, o[1] ^ 1, o[2] ^ 1};
  inv.label = c.edges[mid[0]].label;
  inv.label2 = c.edges[mid[1]].label;
  seal(std::move(s), inv, touched, r);
  return r;
}

// ---- C-II ------------------------------------------------------------------

// Cuts the edge of d at one new vertex `at`. Returns {behind_end, ahead_end}
// located at `at`; behind reuses the host edge.
std::pair<std::int32_t, std::int32_t> split_one(Surgeon& s, const Topology& t, std::int32_t d,
                                                std::int32_t at, std::int32_t* dissolved) {
  std::int32_t e0 = dart_edge(d);
  const Edge& ed = s.c.edges[e0];
  bool flip = dart_is_backward(d);
  if (ed.tail == ed.head && s.c.vertices[ed.tail].kind == VertexKind::Anchor) {
    if (dissolved) *dissolved = ed.tail;
    s.kill_vertex(ed.tail);
    s.retarget(d ^ 1, at);
    s.retarget(d, at);
    return {d ^ 1, d};
  }
  std::int32_t far = d ^ 1;
  std::int32_t vEnd = t.end_vertex[far];
  s.retarget(far, at);
  std::int32_t b = s.add_edge(s.c.edges[e0].id + "b", s.c.edges[e0].label, flip ? vEnd : at,
                              flip ? at : vEnd);
  s.v(vEnd).rot[t.end_pos[far]] = make_end(b, !flip);
  return {far, make_end(b, flip)};
}

StepResult step_cii_push(const Chart& c, const Topology& t, const MoveInstance& m) {
  StepResult r;
  if (m.site.size() != 2) return {"C-II site must be {black, d}", {}};
  std::int32_t bv = m.site[0], dj = m.site[1];
  if (bv < 0 || bv >= c.nv() || c.vertices[bv].kind != VertexKind::Black)
    return {"site vertex is not black", {}};
  if (!dart_ok(c, dj)) return {"dart out of range", {}};
  std::int32_t xb = c.vertices[bv].rot[0];
  std::int32_t eb = end_edge(xb);
  std::int32_t vw = t.end_vertex[xb ^ 1];
  if (c.vertices[vw].kind == VertexKind::Black) return {"free edges cannot be pushed", {}};
  std::int32_t ej = dart_edge(dj);
  if (std::abs(c.edges[ej].label - c.edges[eb].label) < 2) return {"labels are not distant", {}};
  // The strand may sit in another component (a hoop embedded beside the black
  // vertex), so compare regions, not raw faces.
  if (t.face_region[t.dart_face[dj]] != t.face_region[t.dart_face[xb ^ 1]])
    return {"strand does not face the black vertex", {}};
  bool hoop_strand = c.edges[ej].tail == c.edges[ej].head &&
                     c.vertices[c.edges[ej].tail].kind == VertexKind::Anchor;
  if (!hoop_strand && (c.vertices[c.edges[ej].tail].kind == VertexKind::Anchor ||
                       c.vertices[c.edges[ej].head].kind == VertexKind::Anchor))
    return {"strand carries an anchor", {}};

  Surgeon s(c);
  std::int32_t X = s.add_vertex("x", VertexKind::Crossing);
  std::int32_t dissolved = -1;
  auto [j_from, j_to] = split_one(s, t, dj, X, &dissolved);
  bool flipb = !end_is_head(xb);  // catalog draws the edge arrow into the black
  s.retarget(xb, X);
  std::int32_t bp = s.add_edge(edge_name(c, eb) + "p", c.edges[eb].label, flipb ? bv : X,
                               flipb ? X : bv);
  s.v(bv).rot = {make_end(bp, !flipb)};
  s.v(X).rot = {make_end(bp, flipb), j_to, xb, j_from};
  std::set<std::string> touched;
  touch_v(c, touched, bv);
  touch_e(c, touched, eb);
  touch_e(c, touched, ej);
  touch_v(c, touched, t.end_vertex[dj ^ 1]);
  MoveInstance inv;
  inv.kind = MoveKind::CII;
  inv.reversed = true;
  inv.site = {X, bp};
  inv.label = c.edges[eb].label;
  inv.label2 = c.edges[ej].label;
  seal(std::move(s), inv, touched, r);
  return r;
}

StepResult step_cii_pull(const Chart& c, const Topology& t, const MoveInstance& m) {
  StepResult r;
  if (m.site.size() != 2) return {"C-II pull site must be {crossing, piece_edge}", {}};
  std::int32_t X = m.site[0], pe = m.site[1];
  if (X < 0 || X >= c.nv() || c.vertices[X].kind != VertexKind::Crossing)
    return {"site vertex is not a crossing", {}};
  if (pe < 0 || pe >= c.ne()) return {"piece edge out of range", {}};
  const Edge& ped = c.edges[pe];
  std::int32_t bv;
  if (ped.tail == X && c.vertices[ped.head].kind == VertexKind::Black)
    bv = ped.head;
  else if (ped.head == X && c.vertices[ped.tail].kind == VertexKind::Black)
    bv = ped.tail;
  else
    return {"piece does not join the crossing to a black vertex", {}};
  std::int32_t xpe = ped.tail == X ? make_end(pe, false) : make_end(pe, true);
  int p0 = t.end_pos[xpe];
  const auto& rotX = c.vertices[X].rot;
  std::int32_t xw = rotX[(p0 + 2) % 4], xj1 = rotX[(p0 + 1) % 4], xj2 = rotX[(p0 + 3) % 4];
  std::int32_t we = end_edge(xw), j1 = end_edge(xj1), j2 = end_edge(xj2);
  std::int32_t vw = t.end_vertex[xw ^ 1];
  if (c.vertices[vw].kind == VertexKind::Black) return {"pull would create a free edge", {}};
  if (j1 != j2) {
    std::int32_t f1 = t.end_vertex[xj1 ^ 1], f2 = t.end_vertex[xj2 ^ 1];
    if (c.vertices[f1].kind == VertexKind::Black && c.vertices[f2].kind == VertexKind::Black)
      return {"pull would create a free edge", {}};
  }

  Surgeon s(c);
  s.retarget(xw, bv);
  s.v(bv).rot = {xw};
  s.junction(xw, xpe);
  s.kill_edge(pe);
  std::int32_t hoop_anchor = -1;
  if (j1 != j2) {
    std::int32_t far = xj2 ^ 1;
    std::int32_t vF = t.end_vertex[far];
    s.v(vF).rot[t.end_pos[far]] = xj1;
    s.retarget(xj1, vF);
    s.junction(xj1, xj2);
    s.kill_edge(j2);
  } else {
    hoop_anchor = s.add_vertex("a", VertexKind::Anchor);
    s.e(j1).tail = hoop_anchor;
    s.e(j1).head = hoop_anchor;
    s.v(hoop_anchor).rot = {make_end(j1, false), make_end(j1, true)};
  }
  s.kill_vertex(X);
  if (!rechild_embeds(s, bv)) return {"containment record pinned to the crossing", {}};
  drop_redundant_embeds(s);
  std::set<std::string> touched;
  touch_v(c, touched, X);
  touch_v(c, touched, bv);
  touch_e(c, touched, pe);
  touch_e(c, touched, we);
  touch_e(c, touched, j1);
  touch_e(c, touched, j2);
  if (j1 != j2) touch_v(c, touched, t.end_vertex[xj2 ^ 1]);

  // Inverse: push bv back across the merged strand; both sides of the merged
  // edge are offered, the roundtrip keeps the true one.
  for (std::int32_t jd : {make_dart(j1, false), make_dart(j1, true)})
    for (const auto& combo :
         placement_options(s, {xw, xw ^ 1, make_dart(j1, false), make_dart(j1, true)})) {
      Surgeon cand = s;
      for (const Embed& em : combo) cand.c.embeds.push_back(em);
      MoveInstance inv;
      inv.kind = MoveKind::CII;
      inv.site = {bv, jd};
      inv.label = c.edges[pe].label;
      inv.label2 = c.edges[j1].label;
      seal(std::move(cand), inv, touched, r);
    }
  if (r.built.empty() && r.error.empty()) r.error = "no viable containment placement";
  return r;
}

// ---- C-III -----------------------------------------------------------------

StepResult step_ciii_death(const Chart& c, const Topology& t, const MoveInstance& m) {
  StepResult r;
  if (m.site.size() != 2) return {"C-III site must be {w, e}", {}};
  std::int32_t w = m.site[0], eidx = m.site[1];
  if (w < 0 || w >= c.nv() || c.vertices[w].kind != VertexKind::White)
    return {"site vertex is not white", {}};
  if (eidx < 0 || eidx >= c.ne()) return {"edge out of range", {}};
  const Edge& ed = c.edges[eidx];
  std::int32_t bb, xe;
  if (ed.tail == w && c.vertices[ed.head].kind == VertexKind::Black) {
    bb = ed.head;
    xe = make_end(eidx, false);
  } else if (ed.head == w && c.vertices[ed.tail].kind == VertexKind::Black) {
    bb = ed.tail;
    xe = make_end(eidx, true);
  } else {
    return {"edge is not a terminal at the white vertex", {}};
  }
  auto ws = white_local_structure(c, w);
  if (!ws) return {"white vertex structure unreadable", {}};
  if (ws->is_middle(xe)) return {"terminal is middle at its white vertex", {}};
  int p0 = t.end_pos[xe];
  std::int32_t x[6];
  for (int i = 1; i <= 5; ++i) x[i] = c.vertices[w].rot[(p0 + i) % 6];
  std::int32_t stub_e = end_edge(x[3]);

  Surgeon s(c);
  std::vector<std::int32_t> survivors;
  auto fuse = [&](std::int32_t xa, std::int32_t xb) {
    std::int32_t ea = end_edge(xa), eb = end_edge(xb);
    if (ea == eb) {
      std::int32_t va = s.add_vertex("a", VertexKind::Anchor);
      s.e(ea).tail = va;
      s.e(ea).head = va;
      s.v(va).rot = {make_end(ea, false), make_end(ea, true)};
      survivors.push_back(make_dart(ea, false));
      survivors.push_back(make_dart(ea, true));
      return;
    }
    if (eb == stub_e) {
      std::swap(xa, xb);
      std::swap(ea, eb);
    }
    std::int32_t far = xb ^ 1;
    std::int32_t vF = t.end_vertex[far];
    s.v(vF).rot[t.end_pos[far]] = xa;
    s.retarget(xa, vF);
    s.junction(xa, xb);
    s.kill_edge(eb);
    survivors.push_back(xa);
    survivors.push_back(xa ^ 1);
  };
  fuse(x[2], x[4]);
  fuse(x[5], x[1]);
  std::int32_t nb = s.add_vertex("b", VertexKind::Black);
  s.v(nb).rot = {x[3]};
  s.retarget(x[3], nb);
  survivors.push_back(x[3]);
  survivors.push_back(x[3] ^ 1);
  s.kill_vertex(w);
  s.kill_vertex(bb);
  s.kill_edge(eidx);
  if (!rechild_embeds(s, -1)) return {"containment record pinned to the cancelled star", {}};
  drop_redundant_embeds(s);
  std::set<std::string> touched;
  touch_v(c, touched, w);
  touch_v(c, touched, bb);
  touch_e(c, touched, eidx);
  for (int i = 1; i <= 5; ++i) {
    touch_e(c, touched, end_edge(x[i]));
    touch_v(c, touched, t.end_vertex[x[i] ^ 1]);
  }
  std::int32_t dF = s.resolve(x[2] ^ 1), dG = s.resolve(x[5] ^ 1);
  if (dF < 0 || dG < 0) return {"internal: fused strand lost its walk", {}};
  MoveInstance inv;
  inv.kind = MoveKind::CIII;
  inv.reversed = true;
  inv.site = {nb, dF, dG};
  inv.label = c.edges[eidx].label;
  inv.label2 = c.edges[end_edge(x[1])].label;
  for (const auto& combo : placement_options(s, survivors)) {
    Surgeon cand = s;
    for (const Embed& em : combo) cand.c.embeds.push_back(em);
    seal(std::move(cand), inv, touched, r);
  }
  if (r.built.empty() && r.error.empty()) r.error = "no viable containment placement";
  return r;
}

StepResult step_ciii_birth(const Chart& c, const Topology& t, const MoveInstance& m) {
  StepResult r;
  if (m.site.size() != 3) return {"C-III birth site must be {black, dF, dG}", {}};
  std::int32_t bv = m.site[0], dF = m.site[1], dG = m.site[2];
  if (bv < 0 || bv >= c.nv() || c.vertices[bv].kind != VertexKind::Black)
    return {"site vertex is not black", {}};
  if (!dart_ok(c, dF) || !dart_ok(c, dG)) return {"dart out of range", {}};
  std::int32_t xg = c.vertices[bv].rot[0];
  std::int32_t g = end_edge(xg);
  std::int32_t eF = dart_edge(dF), eG = dart_edge(dG);
  int lg = c.edges[g].label;
  if (eF == g || eG == g) return {"strand coincides with the black vertex's edge", {}};
  if (c.edges[eG].label != lg) return {"dG label must match the black edge", {}};
  if (std::abs(c.edges[eF].label - lg) != 1) return {"dF label must be adjacent", {}};
  std::int32_t rb = t.face_region[t.dart_face[xg ^ 1]];
  if (t.face_region[t.dart_face[dF]] != rb || t.face_region[t.dart_face[dG]] != rb)
    return {"strands do not share the black vertex's region", {}};

  Surgeon s(c);
  std::int32_t w = s.add_vertex("w", VertexKind::White);
  std::int32_t dissF = -1, dissG = -1;
  auto [x2, x4] = split_one(s, t, dF, w, &dissF);
  auto [x5, x1] = split_one(s, t, dG, w, &dissG);
  s.retarget(xg, w);
  std::int32_t be = s.add_vertex("b", VertexKind::Black);
  bool te_head_at_w = !end_is_head(xg);
  std::int32_t te = s.add_edge("t", c.edges[eF].label, te_head_at_w ? be : w,
                               te_head_at_w ? w : be);
  s.v(be).rot = {make_end(te, !te_head_at_w)};
  std::int32_t rot6[6] = {make_end(te, te_head_at_w), x1, x2, xg, x4, x5};
  s.v(w).rot.assign(rot6, rot6 + 6);
  int flips = 0, ins = 0;
  for (int i = 0; i < 6; ++i) {
    ins += end_is_head(rot6[i]) ? 1 : 0;
    if (end_is_head(rot6[i]) != end_is_head(rot6[(i + 1) % 6])) ++flips;
  }
  if (ins != 3 || flips != 2) return {"strand orientations do not allow a white vertex", {}};
  int start = -1;
  for (int i = 0; i < 6; ++i)
    if (end_is_head(rot6[i]) && !end_is_head(rot6[(i + 5) % 6])) start = i;
  if (start < 0 || (start + 1) % 6 == 0 || (start + 4) % 6 == 0)
    return {"new terminal would be middle at the white vertex", {}};
  for (std::int32_t va : {dissF, dissG})
    if (va >= 0) {
      std::vector<Embed> keep;
      for (const Embed& em : s.c.embeds)
        if (em.child_vertex != va) keep.push_back(em);
      s.c.embeds = std::move(keep);
      s.kill_vertex(va);
    }
  s.kill_vertex(bv);
  if (!rechild_embeds(s, w)) return {"containment record pinned to the black vertex", {}};
  drop_redundant_embeds(s);
  std::set<std::string> touched;
  touch_v(c, touched, bv);
  touch_e(c, touched, g);
  touch_e(c, touched, eF);
  touch_e(c, touched, eG);
  touch_v(c, touched, t.end_vertex[dF ^ 1]);
  touch_v(c, touched, t.end_vertex[dG ^ 1]);
  if (dissF >= 0) touch_v(c, touched, dissF);
  if (dissG >= 0) touch_v(c, touched, dissG);
  MoveInstance inv;
  inv.kind = MoveKind::CIII;
  inv.site = {w, te};
  inv.label = c.edges[eF].label;
  inv.label2 = lg;
  seal(std::move(s), inv, touched, r);
  return r;
}

// ---- CutEdge ---------------------------------------------------------------

StepResult step_cutedge(const Chart& c, const Topology& t, const MoveInstance& m) {
  StepResult r;
  if (m.site.size() != 3) return {"CutEdge site must be {b1, b2, d_s}", {}};
  std::int32_t b1 = m.site[0], b2 = m.site[1], ds = m.site[2];
  if (b1 < 0 || b2 < 0 || b1 >= c.nv() || b2 >= c.nv() || b1 == b2)
    return {"black vertices out of range", {}};
  if (c.vertices[b1].kind != VertexKind::Black || c.vertices[b2].kind != VertexKind::Black)
    return {"site vertices are not black", {}};
  if (!dart_ok(c, ds)) return {"dart out of range", {}};
  std::int32_t xb1 = c.vertices[b1].rot[0], xb2 = c.vertices[b2].rot[0];
  if (!end_is_head(xb1)) {
    std::swap(b1, b2);
    std::swap(xb1, xb2);
    ds ^= 1;
  }
  if (!end_is_head(xb1) || end_is_head(xb2)) return {"terminal arrows are not opposed", {}};
  std::int32_t e1 = end_edge(xb1), e2 = end_edge(xb2);
  if (e1 == e2) return {"terminals must be two edges", {}};
  if (c.edges[e1].label != c.edges[e2].label) return {"terminal labels differ", {}};
  std::int32_t w1 = t.end_vertex[xb1 ^ 1], w2 = t.end_vertex[xb2 ^ 1];
  if (c.vertices[w1].kind == VertexKind::Black || c.vertices[w2].kind == VertexKind::Black)
    return {"terminal is a free edge", {}};
  std::int32_t se = dart_edge(ds);
  if (std::abs(c.edges[se].label - c.edges[e1].label) != 1) return {"strand label not adjacent", {}};
  if (se == e1 || se == e2) return {"strand coincides with a terminal", {}};
  const Edge& sd = c.edges[se];
  if (c.vertices[sd.tail].kind == VertexKind::Black ||
      c.vertices[sd.head].kind == VertexKind::Black)
    return {"strand ends at a black vertex", {}};
  if (c.vertices[sd.tail].kind == VertexKind::Anchor ||
      c.vertices[sd.head].kind == VertexKind::Anchor)
    return {"strand carries an anchor", {}};
  if (t.dart_face[ds] != t.dart_face[xb1 ^ 1] || t.dart_face[ds ^ 1] != t.dart_face[xb2 ^ 1])
    return {"strand does not face both terminals", {}};

  Surgeon s(c);
  std::int32_t far2 = xb2 ^ 1;
  s.v(w2).rot[t.end_pos[far2]] = xb1;
  s.retarget(xb1, w2);
  s.junction(xb1, xb2);
  s.kill_edge(e2);
  s.kill_vertex(b1);
  s.kill_vertex(b2);
  std::int32_t nbA = s.add_vertex("b", VertexKind::Black);
  std::int32_t nbB = s.add_vertex("b", VertexKind::Black);
  std::int32_t farS = ds ^ 1;
  std::int32_t vEnd = t.end_vertex[farS];
  bool flips = dart_is_backward(ds);
  s.retarget(farS, nbA);
  s.v(nbA).rot = {farS};
  std::int32_t s2 = s.add_edge(edge_name(c, se) + "b", c.edges[se].label, flips ? vEnd : nbB,
                               flips ? nbB : vEnd);
  s.v(nbB).rot = {make_end(s2, flips)};
  s.v(vEnd).rot[t.end_pos[farS]] = make_end(s2, !flips);
  if (!rechild_embeds(s, w2)) return {"containment record pinned to the fused terminals", {}};
  std::set<std::string> touched;
  for (std::int32_t v : {b1, b2, w2, vEnd}) touch_v(c, touched, v);
  for (std::int32_t e : {e1, e2, se}) touch_e(c, touched, e);
  MoveInstance inv;
  inv.kind = MoveKind::CutEdge;
  inv.site = {nbA, nbB, make_dart(e1, true)};
  inv.label = c.edges[se].label;
  inv.label2 = c.edges[e1].label;
  seal(std::move(s), inv, touched, r);
  return r;
}

// ---- CI-M4 -----------------------------------------------------------------

struct M4Transform {
  bool mirror = false, arrowrev = false, labelswap = false;
};

int m4_eval(const LabelExpr& ex, int k, bool labelswap) {
  int off = ex.off;
  if (labelswap && ex.var != 0) off = -off;
  return (ex.var != 0 ? k : 0) + off;
}

struct M4Match {
  std::map<std::string, std::int32_t> v;                 // fragment vertex -> host vertex
  std::map<std::string, std::int32_t> e;                 // fragment edge -> host edge
  std::map<int, std::pair<std::int32_t, std::int32_t>> port;  // port -> (edge, disk end)
  int k = 0;
};

// Rigid match of a fragment into the chart, seeded at one vertex.
bool m4_try_match(const Chart& c, const Topology& t, const Fragment& fr, const M4Transform& tr,
                  const std::string& seed_frag, std::int32_t seed_host, int seed_offset,
                  M4Match& out) {
  out = M4Match{};
  std::map<std::string, std::array<std::int32_t, 2>> edge_ends;  // fragment edge -> host end per bit
  std::set<std::int32_t> used_v, used_e_interior;
  std::set<std::int32_t> used_port_ends;
  std::vector<std::pair<const FragmentVertex*, std::pair<std::int32_t, int>>> queue;
  const FragmentVertex* fv0 = fr.vertex(seed_frag);
  if (!fv0) return false;
  queue.push_back({fv0, {seed_host, seed_offset}});
  std::set<std::string> visited;
  bool k_known = false;
  while (!queue.empty()) {
    auto [fv, ho] = queue.back();
    queue.pop_back();
    auto [hv, offset] = ho;
    if (visited.count(fv->id)) continue;
    visited.insert(fv->id);
    const Vertex& host = c.vertices[hv];
    int deg = (int)fv->rot.size();
    if ((int)host.rot.size() != deg) return false;
    if (host.kind != fv->kind) return false;
    if (out.v.count(fv->id) && out.v[fv->id] != hv) return false;
    if (!out.v.count(fv->id)) {
      if (used_v.count(hv)) return false;
      out.v[fv->id] = hv;
      used_v.insert(hv);
    }
    for (int i = 0; i < deg; ++i) {
      const std::string& tok = fv->rot[i];
      std::size_t dot = tok.rfind('.');
      std::string eid = tok.substr(0, dot);
      bool bit = tok[dot + 1] == 'h';
      int hslot = tr.mirror ? ((offset - i) % deg + deg) % deg : (offset + i) % deg;
      std::int32_t x = host.rot[hslot];
      if (end_is_head(x) != (bit != tr.arrowrev)) return false;
      const FragmentEdge* fe = fr.edge(eid);
      if (!fe) return false;
      int host_label = c.edges[end_edge(x)].label;
      if (!k_known && fe->label.var != 0) {
        int off = fe->label.off;
        if (tr.labelswap) off = -off;
        out.k = host_label - off;
        k_known = true;
      }
      if (m4_eval(fe->label, out.k, tr.labelswap) != host_label) return false;
      auto& ee = edge_ends.try_emplace(eid, std::array<std::int32_t, 2>{-1, -1}).first->second;
      if (ee[bit ? 1 : 0] >= 0 && ee[bit ? 1 : 0] != x) return false;
      ee[bit ? 1 : 0] = x;
      bool is_port = fe->from_port || fe->to_port;
      if (out.e.count(eid)) {
        if (out.e[eid] != end_edge(x)) return false;
      } else {
        if (!is_port && used_e_interior.count(end_edge(x))) return false;
        out.e[eid] = end_edge(x);
        if (!is_port) used_e_interior.insert(end_edge(x));
      }
      if (is_port) {
        int p = fe->from_port ? fe->from_port : fe->to_port;
        if (used_port_ends.count(x)) return false;
        used_port_ends.insert(x);
        auto it = out.port.find(p);
        if (it != out.port.end()) return false;  // each port edge shows one disk end
        out.port[p] = {end_edge(x), x};
      } else {
        const std::string& other = bit ? fe->from : fe->to;
        std::int32_t hv2 = t.end_vertex[x ^ 1];
        const FragmentVertex* ofv = fr.vertex(other);
        if (!ofv) return false;
        if (out.v.count(other)) {
          if (out.v[other] != hv2) return false;
        } else if (!visited.count(other)) {
          int j = -1;
          std::string otok = eid + (bit ? ".t" : ".h");
          for (int q = 0; q < (int)ofv->rot.size(); ++q)
            if (ofv->rot[q] == otok) j = q;
          if (j < 0) return false;
          int hpos = t.end_pos[x ^ 1];
          int o2 = tr.mirror ? (hpos + j) % (int)ofv->rot.size()
                             : ((hpos - j) % (int)ofv->rot.size() + (int)ofv->rot.size()) %
                                   (int)ofv->rot.size();
          queue.push_back({ofv, {hv2, o2}});
        }
      }
    }
  }
  if (visited.size() != fr.vertices.size()) return false;
  for (const FragmentEdge& fe : fr.edges)
    if ((fe.from_port || fe.to_port) && !out.port.count(fe.from_port ? fe.from_port : fe.to_port))
      return false;
  return true;
}

const FragmentVertex* m4_seed_vertex(const Fragment& fr) {
  for (const auto& v : fr.vertices)
    if (v.kind == VertexKind::White) return &v;
  return nullptr;
}

// The rewritten disk's centre: the crossing all of whose edges are interior.
std::string m4_center(const Fragment& fr) {
  for (const auto& v : fr.vertices) {
    if (v.kind != VertexKind::Crossing) continue;
    bool all_interior = true;
    for (const auto& tok : v.rot) {
      const FragmentEdge* fe = fr.edge(tok.substr(0, tok.rfind('.')));
      all_interior = all_interior && fe && !fe->from_port && !fe->to_port;
    }
    if (all_interior) return v.id;
  }
  return {};
}

std::vector<std::int32_t> m4_site_of(const Fragment& fr, const M4Match& match, int variant) {
  std::vector<std::int32_t> site;
  for (const auto& v : fr.vertices)
    if (v.kind == VertexKind::White) site.push_back(match.v.at(v.id));
  site.push_back(match.v.at(m4_center(fr)));
  site.push_back(variant);
  return site;
}

StepResult step_m4(const Chart& c, const Topology& t, const MoveInstance& m, const MoveRule& rule) {
  StepResult r;
  if (m.site.size() != 6) return {"CI-M4 site must be {w1..w4, X, variant}", {}};
  int variant = m.site[5];
  if (variant < 0 || variant > 7) return {"variant out of range", {}};
  M4Transform tr{(variant & 1) != 0, (variant & 2) != 0, (variant & 4) != 0};
  const Fragment& from = m.reversed ? rule.after : rule.before;
  const Fragment& to = m.reversed ? rule.before : rule.after;
  const FragmentVertex* seed = m4_seed_vertex(from);
  if (!seed) return {"catalog fragment has no white seed", {}};
  std::int32_t hv = m.site[0];
  if (hv < 0 || hv >= c.nv() || c.vertices[hv].kind != VertexKind::White)
    return {"seed corner is not white", {}};
  M4Match match;
  bool found = false;
  for (int off = 0; off < 6 && !found; ++off) {
    if (!m4_try_match(c, t, from, tr, seed->id, hv, off, match)) continue;
    found = m4_site_of(from, match, variant) == m.site;
  }
  if (!found) return {"site does not match the catalog fragment", {}};

  Surgeon s(c);
  std::set<std::string> touched;
  for (const auto& mv : match.v) {
    s.kill_vertex(mv.second);
    touch_v(c, touched, mv.second);
  }
  for (const auto& fe : from.edges) {
    if (fe.from_port || fe.to_port) continue;
    s.kill_edge(match.e.at(fe.id));
    touch_e(c, touched, match.e.at(fe.id));
  }
  for (const auto& pp : match.port) touch_e(c, touched, pp.second.first);
  for (const Embed& em : s.c.embeds) {
    bool bad = s.dead_v[em.child_vertex];
    for (std::int32_t d : {em.in_dart, em.out_dart})
      if (d >= 0 && s.dead_e[dart_edge(d)]) bad = true;
    if (bad) return {"containment record inside the rewritten disk", {}};
  }
  if (s.c.inf_dart >= 0 && s.dead_e[dart_edge(s.c.inf_dart)])
    return {"infinity face inside the rewritten disk", {}};

  std::map<std::string, std::int32_t> nv, ne;
  for (const auto& fv : to.vertices) nv[fv.id] = s.add_vertex(fv.id, fv.kind);
  for (const auto& fe : to.edges) {
    if (fe.from_port || fe.to_port) {
      int p = fe.from_port ? fe.from_port : fe.to_port;
      const std::string& inner = fe.from_port ? fe.to : fe.from;
      s.retarget(match.port.at(p).second, nv.at(inner));
    } else {
      int lab = m4_eval(fe.label, match.k, tr.labelswap);
      std::int32_t tail = nv.at(fe.from), head = nv.at(fe.to);
      if (tr.arrowrev) std::swap(tail, head);
      ne[fe.id] = s.add_edge(fe.id, lab, tail, head);
    }
  }
  for (const auto& fv : to.vertices) {
    std::vector<std::int32_t> rot;
    auto toks = fv.rot;
    if (tr.mirror) std::reverse(toks.begin(), toks.end());
    for (const auto& tok : toks) {
      std::size_t dot = tok.rfind('.');
      std::string eid = tok.substr(0, dot);
      bool bit = tok[dot + 1] == 'h';
      const FragmentEdge* fe = to.edge(eid);
      if (fe->from_port || fe->to_port) {
        int p = fe->from_port ? fe->from_port : fe->to_port;
        rot.push_back(match.port.at(p).second);
      } else {
        rot.push_back(make_end(ne.at(eid), bit != tr.arrowrev));
      }
    }
    s.v(nv.at(fv.id)).rot = std::move(rot);
  }
  MoveInstance inv;
  inv.kind = MoveKind::CIM4;
  inv.reversed = !m.reversed;
  for (const auto& fv : to.vertices)
    if (fv.kind == VertexKind::White) inv.site.push_back(nv.at(fv.id));
  inv.site.push_back(nv.at(m4_center(to)));
  inv.site.push_back(variant);
  inv.label = match.k;
  seal(std::move(s), inv, touched, r);
  return r;
}

// ------------------------------------------------------------------ driver

std::string summarize(const Chart& c, const MoveInstance& m) {
  std::ostringstream os;
  os << move_kind_name(m.kind) << (m.reversed ? " (reversed)" : "");
  std::vector<char> tags = site_tags(m.kind, m.reversed);
  const char* sep = " at ";
  for (std::size_t i = 0; i < m.site.size(); ++i) {
    char tag = i < tags.size() ? tags[i] : 'i';
    std::int32_t s = m.site[i];
    if (s < 0) continue;
    if (tag == 'v' && s < c.nv())
      os << sep << c.vertices[s].id;
    else if ((tag == 'e') && s < c.ne())
      os << sep << c.edges[s].id;
    else if (tag == 'd' && s < 2 * c.ne())
      os << sep << c.edges[dart_edge(s)].id << (dart_is_backward(s) ? '-' : '+');
    else
      continue;
    sep = ", ";
  }
  return os.str();
}

MoveApplyResult apply_core(const Chart& c, const MoveInstance& m, const RuleSet& rules,
                           bool enforce_df, bool check_inverse,
                           const std::string* require_code = nullptr);

StepResult dispatch(const Chart& c, const Topology& t, const MoveInstance& m,
                    const MoveRule& rule) {
  switch (m.kind) {
    case MoveKind::CIM1: return m.reversed ? step_m1_delete(c, t, m) : step_m1_insert(c, t, m);
    case MoveKind::CIM2:
      if (m.reversed) return {"CI-M2 is self-inverse; reversed instances are not used", {}};
      return step_m2(c, t, m);
    case MoveKind::CIR2: return m.reversed ? step_r2_insert(c, t, m) : step_r2_remove(c, t, m);
    case MoveKind::CIR3:
      if (m.reversed) return {"CI-R3 is self-inverse; reversed instances are not used", {}};
      return step_r3(c, t, m);
    case MoveKind::CIM4: return step_m4(c, t, m, rule);
    case MoveKind::CII: return m.reversed ? step_cii_pull(c, t, m) : step_cii_push(c, t, m);
    case MoveKind::CIII: return m.reversed ? step_ciii_birth(c, t, m) : step_ciii_death(c, t, m);
    case MoveKind::CutEdge:
      if (m.reversed) return {"CutEdge-macro is self-inverse; reversed instances are not used", {}};
      return step_cutedge(c, t, m);
    default: return {"kind carries no applicable instances", {}};
  }
}

MoveApplyResult apply_core(const Chart& c, const MoveInstance& m, const RuleSet& rules,
                           bool enforce_df, bool check_inverse, const std::string* require_code) {
  MoveApplyResult res;
  const MoveRule* rule = rules.find(m.kind);
  if (!rule) {
    res.error = std::string("move kind not present in the rule catalog: ") + move_kind_name(m.kind);
    return res;
  }
  Topology t = analyze(c);
  if (!t.ok || !validate(c).empty()) {
    res.error = "input chart is not a valid chart";
    return res;
  }
  if (site_checksum(c, m) != m.checksum) {
    res.error = "stale site: the chart changed since this instance was enumerated";
    return res;
  }
  StepResult st = dispatch(c, t, m, *rule);
  if (!st.error.empty() && st.built.empty()) {
    res.error = st.error;
    return res;
  }
  Complexity before = complexity(c);
  // Collect every distinct reason a candidate realisation was dropped, so a
  // total failure reports the full picture instead of the last attempt only.
  std::vector<std::string> reasons;
  if (!st.error.empty()) reasons.push_back(st.error);
  auto drop = [&reasons](std::string why) {
    if (reasons.size() < 6 && std::find(reasons.begin(), reasons.end(), why) == reasons.end())
      reasons.push_back(std::move(why));
  };
  auto before_sig = chart_signature(c);
  for (Built& b : st.built) {
    auto vio = validate(b.out);
    if (!vio.empty()) {
      drop("result violates chart conditions (" + vio.front().tag + ": " + vio.front().detail +
           (vio.front().witness.empty() ? "" : " at " + vio.front().witness) + ")");
      continue;
    }
    Complexity after = complexity(b.out);
    int dw = after.whites - before.whites;
    int df = before.neg_free_edges - after.neg_free_edges;
    if (dw != m.dw) {
      drop("measured white delta differs from the declaration");
      continue;
    }
    if (enforce_df && df != m.df) {
      drop("measured free-edge delta differs from the declaration");
      continue;
    }
    auto after_sig = chart_signature(b.out);
    bool ext_ok = true;
    for (const auto& [key, val] : before_sig) {
      if (b.touched.count(key)) continue;
      auto it = after_sig.find(key);
      if (it == after_sig.end() || it->second != val) {
        ext_ok = false;
        drop("exterior changed at " + key);
        break;
      }
    }
    if (!ext_ok) continue;
    if (require_code && canonical_code(b.out) != *require_code) {
      drop("no realisation lands on the required chart");
      continue;
    }
    b.inv.dw = -dw;
    b.inv.df = -df;
    b.inv.checksum = site_checksum(b.out, b.inv);
    b.inv.summary = summarize(b.out, b.inv);
    if (check_inverse) {
      // A site can admit several realisations (hoop windings, containment
      // placements); the inverse counts as good if some realisation of it
      // restores the input chart.
      std::string home = canonical_code(c);
      MoveApplyResult rt = apply_core(b.out, b.inv, rules, true, false, &home);
      if (!rt.ok) {
        drop("inverse does not restore the chart (" + rt.error + ")");
        continue;
      }
    }
    res.ok = true;
    res.chart = std::move(b.out);
    res.inverse = std::move(b.inv);
    res.dw = dw;
    res.df = df;
    return res;
  }
  if (reasons.empty()) reasons.push_back("no viable realisation of the surgery");
  res.error = reasons.front();
  for (std::size_t i = 1; i < reasons.size(); ++i) res.error += "; " + reasons[i];
  return res;
}

// ------------------------------------------------------------- enumeration

MoveInstance raw_instance(const Chart& c, MoveKind k, bool rev, std::vector<std::int32_t> site,
                          int label, int label2, int dw, int df) {
  MoveInstance m;
  m.kind = k;
  m.reversed = rev;
  m.site = std::move(site);
  m.label = label;
  m.label2 = label2;
  m.dw = dw;
  m.df = df;
  m.checksum = site_checksum(c, m);
  m.summary = summarize(c, m);
  return m;
}

void enumerate_raw(const Chart& c, const Topology& t, MoveKind kind, const RuleSet& rules,
                   std::size_t cap, std::vector<MoveInstance>& out, bool* capped) {
  auto push = [&](MoveInstance m) {
    if (out.size() >= cap) {
      *capped = true;
      return false;
    }
    out.push_back(std::move(m));
    return true;
  };
  int deg = c.degree;
  switch (kind) {
    case MoveKind::CIM1: {
      if (c.ne() == 0) {
        for (int lab = 1; lab < deg; ++lab)
          for (int wind : {0, 1})
            if (!push(raw_instance(c, kind, false, {-1, wind}, lab, 0, 0, 0))) return;
        return;
      }
      for (const auto& orbit : t.faces) {
        std::int32_t rep = *std::min_element(orbit.begin(), orbit.end());
        for (int lab = 1; lab < deg; ++lab)
          for (int wind : {0, 1})
            if (!push(raw_instance(c, kind, false, {rep, wind}, lab, 0, 0, 0))) return;
      }
      for (std::int32_t e = 0; e < c.ne(); ++e) {
        const Edge& ed = c.edges[e];
        if (ed.tail == ed.head && c.vertices[ed.tail].kind == VertexKind::Anchor)
          if (!push(raw_instance(c, kind, true, {e}, ed.label, 0, 0, 0))) return;
      }
      return;
    }
    case MoveKind::CIM2: {
      for (std::int32_t d = 0; d < 2 * c.ne(); ++d)
        if (!push(raw_instance(c, kind, false, {d, d}, c.edges[dart_edge(d)].label, 0, 0, 0)))
          return;
      for (std::int32_t d1 = 0; d1 < 2 * c.ne(); ++d1)
        for (std::int32_t d2 = d1 + 1; d2 < 2 * c.ne(); ++d2) {
          if (dart_is_backward(d1) != dart_is_backward(d2)) continue;
          std::int32_t e1 = dart_edge(d1), e2 = dart_edge(d2);
          if (e1 == e2 || c.edges[e1].label != c.edges[e2].label) continue;
          if (t.face_region[t.dart_face[d1]] != t.face_region[t.dart_face[d2]]) continue;
          if (!push(raw_instance(c, kind, false, {d1, d2}, c.edges[e1].label, 0, 0, 0))) return;
        }
      return;
    }
    case MoveKind::CIR2: {
      for (const auto& orbit : t.faces) {
        if (orbit.size() != 2) continue;
        std::int32_t p = std::min(orbit[0], orbit[1]);
        std::int32_t q = t.dart_next[p];
        std::int32_t X1 = t.dart_to_vertex(p), X2 = t.dart_to_vertex(q);
        if (X1 == X2 || c.vertices[X1].kind != VertexKind::Crossing ||
            c.vertices[X2].kind != VertexKind::Crossing)
          continue;
        if (!push(raw_instance(c, kind, false, {p, q}, c.edges[dart_edge(p)].label,
                               c.edges[dart_edge(q)].label, 0, 0)))
          return;
      }
      for (std::int32_t d1 = 0; d1 < 2 * c.ne(); ++d1)
        for (std::int32_t d2 = 0; d2 < 2 * c.ne(); ++d2) {
          std::int32_t e1 = dart_edge(d1), e2 = dart_edge(d2);
          if (e1 >= e2) continue;
          if (std::abs(c.edges[e1].label - c.edges[e2].label) < 2) continue;
          if (t.face_region[t.dart_face[d1]] != t.face_region[t.dart_face[d2]]) continue;
          if (!push(raw_instance(c, kind, true, {d1, d2}, c.edges[e1].label,
                                 c.edges[e2].label, 0, 0)))
            return;
        }
      return;
    }
    case MoveKind::CIR3: {
      for (const auto& orbit : t.faces) {
        if (orbit.size() != 3) continue;
        bool ok = true;
        std::set<std::int32_t> vs, es;
        for (std::int32_t d : orbit) {
          ok = ok && c.vertices[t.dart_to_vertex(d)].kind == VertexKind::Crossing;
          vs.insert(t.dart_to_vertex(d));
          es.insert(dart_edge(d));
        }
        if (!ok || vs.size() != 3 || es.size() != 3) continue;
        std::int32_t d0 = *std::min_element(orbit.begin(), orbit.end());
        if (!push(raw_instance(c, kind, false, {d0, t.dart_next[d0], t.dart_next[t.dart_next[d0]]},
                               c.edges[dart_edge(d0)].label, 0, 0, 0)))
          return;
      }
      return;
    }
    case MoveKind::CIM4: {
      const MoveRule* rule = rules.find(kind);
      if (!rule) return;
      for (int rev = 0; rev <= 1; ++rev) {
        const Fragment& fr = rev ? rule->after : rule->before;
        const FragmentVertex* seed = m4_seed_vertex(fr);
        if (!seed) continue;
        std::set<std::vector<std::int32_t>> seen;
        for (std::int32_t v = 0; v < c.nv(); ++v) {
          if (c.vertices[v].kind != VertexKind::White) continue;
          for (int variant = 0; variant < 8; ++variant) {
            M4Transform tr{(variant & 1) != 0, (variant & 2) != 0, (variant & 4) != 0};
            for (int off = 0; off < 6; ++off) {
              M4Match match;
              if (!m4_try_match(c, t, fr, tr, seed->id, v, off, match)) continue;
              auto site = m4_site_of(fr, match, variant);
              if (!seen.insert(site).second) continue;
              if (!push(raw_instance(c, kind, rev != 0, site, match.k, 0, 0, 0))) return;
            }
          }
        }
      }
      return;
    }
    case MoveKind::CII: {
      for (std::int32_t bv = 0; bv < c.nv(); ++bv) {
        if (c.vertices[bv].kind != VertexKind::Black) continue;
        std::int32_t xb = c.vertices[bv].rot[0];
        std::int32_t F = t.dart_face[xb ^ 1];
        for (std::int32_t d = 0; d < 2 * c.ne(); ++d) {
          if (t.dart_face[d] != F) continue;
          if (std::abs(c.edges[dart_edge(d)].label - c.edges[end_edge(xb)].label) < 2) continue;
          if (!push(raw_instance(c, kind, false, {bv, d}, c.edges[end_edge(xb)].label,
                                 c.edges[dart_edge(d)].label, 0, 0)))
            return;
        }
      }
      for (std::int32_t X = 0; X < c.nv(); ++X) {
        if (c.vertices[X].kind != VertexKind::Crossing) continue;
        for (std::int32_t x : c.vertices[X].rot) {
          std::int32_t e = end_edge(x);
          std::int32_t other = t.end_vertex[x ^ 1];
          if (c.vertices[other].kind != VertexKind::Black) continue;
          if (!push(raw_instance(c, kind, true, {X, e}, c.edges[e].label, 0, 0, 0))) return;
        }
      }
      return;
    }
    case MoveKind::CIII: {
      for (std::int32_t w = 0; w < c.nv(); ++w) {
        if (c.vertices[w].kind != VertexKind::White) continue;
        auto ws = white_local_structure(c, w);
        if (!ws) continue;
        for (std::int32_t x : c.vertices[w].rot) {
          std::int32_t e = end_edge(x);
          std::int32_t other = t.end_vertex[x ^ 1];
          if (c.vertices[other].kind != VertexKind::Black || ws->is_middle(x)) continue;
          if (!push(raw_instance(c, kind, false, {w, e}, c.edges[e].label, 0, -1, 0))) return;
        }
      }
      for (std::int32_t bv = 0; bv < c.nv(); ++bv) {
        if (c.vertices[bv].kind != VertexKind::Black) continue;
        std::int32_t xg = c.vertices[bv].rot[0];
        std::int32_t g = end_edge(xg);
        int lg = c.edges[g].label;
        std::int32_t rb = t.face_region[t.dart_face[xg ^ 1]];
        for (std::int32_t dF = 0; dF < 2 * c.ne(); ++dF) {
          if (dart_edge(dF) == g || std::abs(c.edges[dart_edge(dF)].label - lg) != 1) continue;
          if (t.face_region[t.dart_face[dF]] != rb) continue;
          for (std::int32_t dG = 0; dG < 2 * c.ne(); ++dG) {
            if (dart_edge(dG) == g || dart_edge(dG) == dart_edge(dF)) continue;
            if (c.edges[dart_edge(dG)].label != lg) continue;
            if (t.face_region[t.dart_face[dG]] != rb) continue;
            if (!push(raw_instance(c, kind, true, {bv, dF, dG},
                                   c.edges[dart_edge(dF)].label, lg, 1, 0)))
              return;
          }
        }
      }
      return;
    }
    case MoveKind::CutEdge: {
      for (std::int32_t b1 = 0; b1 < c.nv(); ++b1) {
        if (c.vertices[b1].kind != VertexKind::Black) continue;
        std::int32_t xb1 = c.vertices[b1].rot[0];
        if (!end_is_head(xb1)) continue;  // normal form: first black is the arrow head
        for (std::int32_t b2 = 0; b2 < c.nv(); ++b2) {
          if (b2 == b1 || c.vertices[b2].kind != VertexKind::Black) continue;
          std::int32_t xb2 = c.vertices[b2].rot[0];
          if (end_is_head(xb2)) continue;
          if (c.edges[end_edge(xb1)].label != c.edges[end_edge(xb2)].label) continue;
          std::int32_t F1 = t.dart_face[xb1 ^ 1], F2 = t.dart_face[xb2 ^ 1];
          for (std::int32_t d = 0; d < 2 * c.ne(); ++d) {
            if (t.dart_face[d] != F1 || t.dart_face[d ^ 1] != F2) continue;
            if (std::abs(c.edges[dart_edge(d)].label - c.edges[end_edge(xb1)].label) != 1)
              continue;
            if (!push(raw_instance(c, kind, false, {b1, b2, d}, c.edges[end_edge(xb1)].label,
                                   c.edges[dart_edge(d)].label, 0, 0)))
              return;
          }
        }
      }
      return;
    }
    default: return;
  }
}

}  // namespace

MoveEnumResult applicable_moves(const Chart& c, const std::vector<MoveKind>& kinds,
                                const RuleSet& rules, const MoveEnumOptions& opts) {
  MoveEnumResult res;
  Topology t = analyze(c);
  if (!t.ok || !validate(c).empty()) {
    res.notes.push_back("chart is not valid; no moves are applicable");
    return res;
  }
  std::set<MoveKind> seen;
  for (MoveKind kind : kinds) {
    if (!seen.insert(kind).second) continue;
    if (kind == MoveKind::CIGeneric) {
      res.notes.push_back(
          "CI-generic sites are not enumerated; the disk engine realises them through CI-M4 "
          "and the fragment splice");
      continue;
    }
    if (kind == MoveKind::NewDisk) {
      res.notes.push_back("NewDisk-pass instances are driven by new_disk_clear");
      continue;
    }
    const MoveRule* rule = rules.find(kind);
    if (!rule) {
      res.notes.push_back(std::string("no catalog rule for ") + move_kind_name(kind));
      continue;
    }
    std::vector<MoveInstance> raws;
    bool capped = false;
    enumerate_raw(c, t, kind, rules, opts.max_instances + 1, raws, &capped);
    res.capped = res.capped || capped;
    for (MoveInstance& m : raws) {
      if (res.instances.size() >= opts.max_instances) {
        res.capped = true;
        break;
      }
      int base_dw = rule->dw;
      m.dw = m.reversed ? -base_dw : base_dw;
      bool fixed_df = rule->df.has_value();
      if (fixed_df) m.df = m.reversed ? -*rule->df : *rule->df;
      if (!opts.dry_run && fixed_df) {
        res.instances.push_back(std::move(m));
        continue;
      }
      MoveApplyResult r = apply_core(c, m, rules, fixed_df, true);
      if (!r.ok) {
        if (opts.explain) res.notes.push_back(m.summary + ": " + r.error);
        continue;
      }
      m.df = r.df;
      res.instances.push_back(std::move(m));
    }
    if (res.capped) {
      res.notes.push_back("instance cap exceeded");
      break;
    }
  }
  return res;
}

MoveApplyResult apply_move(const Chart& c, const MoveInstance& m, const RuleSet& rules) {
  return apply_core(c, m, rules, true, true);
}

// ------------------------------------------------------------- assumptions

std::vector<AssumptionFlag> assumption_flags(const Chart& c) {
  std::vector<AssumptionFlag> out;
  Topology t = analyze(c);
  if (!t.ok) return out;
  for (int lab = 1; lab < c.degree; ++lab) {
    TrackSet ts = tracks_of_label(c, t, lab);
    for (const Track& tr : ts.tracks) {
      bool from_black = tr.v_from >= 0 && c.vertices[tr.v_from].kind == VertexKind::Black;
      bool to_black = tr.v_to >= 0 && c.vertices[tr.v_to].kind == VertexKind::Black;
      if (!from_black && !to_black) continue;
      std::string witness = c.edges[dart_edge(tr.darts.front())].id;
      if (tr.role == TrackRole::Free) continue;
      if (tr.role == TrackRole::Terminal) {
        std::int32_t wend = from_black ? tr.end_to : tr.end_from;
        std::int32_t wv = from_black ? tr.v_to : tr.v_from;
        auto ws = white_local_structure(c, wv);
        if (!ws || !ws->is_middle(wend))
          out.push_back({"A2", witness, "terminal edge is not middle at its white vertex"});
      } else {
        out.push_back({"A2", witness, "black vertex sits on a non-terminal strand"});
      }
    }
  }
  for (int k = 0; k < t.n_comp; ++k) {
    if (t.comp_parked[k]) continue;
    bool junk = comp_is_free_edge(c, t, k);
    if (!junk && comp_is_hoop(c, t, k)) {
      std::int32_t he = -1;
      for (std::int32_t e = 0; e < c.ne() && he < 0; ++e)
        if (t.vertex_comp[c.edges[e].tail] == k) he = e;
      auto split = split_by_curve(c, t, {he});
      junk = split && (split->whites_on[0] == 0 || split->whites_on[1] == 0);
    }
    if (junk) {
      std::string witness;
      for (std::int32_t e = 0; e < c.ne() && witness.empty(); ++e)
        if (t.vertex_comp[c.edges[e].tail] == k) witness = c.edges[e].id;
      out.push_back({"A3", witness, "free edge or simple hoop not parked at infinity"});
    }
  }
  for (int lab = 1; lab < c.degree; ++lab) {
    TrackSet ts = tracks_of_label(c, t, lab);
    for (const Track& tr : ts.tracks) {
      if (tr.role != TrackRole::Ring && tr.role != TrackRole::Hoop) continue;
      if (t.comp_parked[t.vertex_comp[c.edges[dart_edge(tr.darts.front())].tail]]) continue;
      auto split = split_by_curve(c, t, tr.edge_ids());
      if (split && (split->whites_on[0] == 0 || split->whites_on[1] == 0))
        out.push_back({"A4", c.edges[dart_edge(tr.darts.front())].id,
                       "closed curve with a white-free complementary domain"});
    }
  }
  return out;
}

// ---------------------------------------------------------- new-disk pass

NewDiskResult new_disk_clear(const Chart& c, const DiskRegion& d, const AlphaArc& alpha,
                             const RuleSet& rules) {
  NewDiskResult res;
  res.chart = c;
  Topology t0 = analyze(c);
  if (!t0.ok || !validate(c).empty()) {
    res.error = "input chart is not a valid chart";
    return res;
  }
  if (alpha.seg < 0 || alpha.seg >= (int)d.boundary.size()) {
    res.error = "alpha names no boundary segment";
    return res;
  }
  const Track& host0 = d.boundary[alpha.seg].track;
  if (host0.darts.empty()) {
    res.error = "host segment carries no edges";
    return res;
  }
  if (host0.role == TrackRole::Free || host0.role == TrackRole::Terminal) {
    res.error = "host segment is not a crossing-bearing strand";
    return res;
  }
  if (alpha.first < 0 || alpha.count < 0 || alpha.first + alpha.count > (int)host0.through.size()) {
    res.error = "alpha window out of range";
    return res;
  }
  int host_label = host0.label;
  std::set<std::string> curve_ids, host_ids, window_ids;
  for (std::int32_t e : d.curve_edges) curve_ids.insert(c.edges[e].id);
  for (std::int32_t dd : host0.darts) host_ids.insert(c.edges[dart_edge(dd)].id);
  for (int i = alpha.first; i < alpha.first + alpha.count; ++i) {
    std::int32_t v = host0.through[i];
    if (c.vertices[v].kind == VertexKind::Crossing) window_ids.insert(c.vertices[v].id);
  }
  bool inside_has_inf = d.has_inf;
  Chart cur = c;

  for (int iter = 0; iter < 10000; ++iter) {
    Topology t = analyze(cur);
    std::vector<std::int32_t> curve;
    std::set<std::string> alive_curve, alive_host;
    for (std::int32_t e = 0; e < cur.ne(); ++e) {
      if (curve_ids.count(cur.edges[e].id)) {
        curve.push_back(e);
        alive_curve.insert(cur.edges[e].id);
      }
    }
    curve_ids = std::move(alive_curve);
    for (const std::string& id : host_ids)
      if (cur.edge_index(id) >= 0) alive_host.insert(id);
    host_ids = std::move(alive_host);
    if (curve.empty() || host_ids.empty()) {
      res.error = "boundary bookkeeping lost the curve";
      return res;
    }
    auto split = split_by_curve(cur, t, curve);
    if (!split) {
      res.error = "boundary stopped being a simple closed curve";
      return res;
    }
    int inf_side = split->region_side[t.inf_region];
    int side = inside_has_inf ? inf_side : 1 - inf_side;
    DiskRegion reg;
    reg.curve_edges = curve;
    reg.split = *split;
    reg.side = side;
    reg.has_inf = inside_has_inf;
    for (std::int32_t f = 0; f < (std::int32_t)t.faces.size(); ++f)
      if (split->region_side[t.face_region[f]] == side) reg.faces.push_back(f);
    reg.interior_whites = split->whites_on[side];
    TrackSet ts = tracks_of_label(cur, t, host_label);
    std::int32_t host_edge = cur.edge_index(*host_ids.begin());
    std::int32_t ti = ts.edge_track[host_edge];
    if (ti < 0) {
      res.error = "host strand bookkeeping broke";
      return res;
    }
    BoundarySeg seg;
    seg.track = ts.tracks[ti];
    reg.boundary = {seg};
    const Track& host = reg.boundary[0].track;
    int first = 0, count = 0;
    {
      int lo = -1, hi = -1;
      for (int p = 0; p < (int)host.through.size(); ++p)
        if (window_ids.count(cur.vertices[host.through[p]].id)) {
          if (lo < 0) lo = p;
          hi = p;
        }
      if (lo >= 0) {
        first = lo;
        count = hi - lo + 1;
      }
    }
    struct Found {
      int k;
      DAlphaArc arc;
    };
    std::vector<Found> arcs;
    for (int k = 1; k < cur.degree; ++k) {
      if (std::abs(k - host_label) < 2) continue;
      auto got = find_d_alpha_arcs(cur, t, reg, {0, first, count}, k);
      if (!got) {
        res.error = "arc scan failed on the rebuilt disk";
        return res;
      }
      for (auto& a : *got) arcs.push_back({k, std::move(a)});
    }
    if (arcs.empty()) {
      res.ok = true;
      res.chart = std::move(cur);
      return res;
    }
    bool stepped = false;
    // Innermost pass: an arc whose two events are adjacent on the host bounds
    // a bigon face; cancel it.
    for (const Found& f : arcs) {
      if (f.arc.darts.size() != 1) continue;
      std::int32_t da = f.arc.darts[0];
      std::int32_t p = -1;
      if (t.faces[t.dart_face[da]].size() == 2)
        p = da;
      else if (t.faces[t.dart_face[da ^ 1]].size() == 2)
        p = da ^ 1;
      if (p < 0) continue;
      std::int32_t q = t.dart_next[p];
      std::int32_t X1 = t.dart_to_vertex(p), X2 = t.dart_to_vertex(q);
      if (X1 == X2 || cur.vertices[X1].kind != VertexKind::Crossing ||
          cur.vertices[X2].kind != VertexKind::Crossing)
        continue;
      MoveInstance inst = raw_instance(cur, MoveKind::CIR2, false, {p, q}, f.k, host_label, 0, 0);
      MoveApplyResult ar = apply_move(cur, inst, rules);
      if (!ar.ok) continue;
      cur = std::move(ar.chart);
      ++res.r2_steps;
      stepped = true;
      break;
    }
    if (stepped) continue;
    // Interleaving obstruction: flip a triangle that has one side on the
    // host strand inside the disk, expelling its third crossing.
    std::set<std::int32_t> curve_set(curve.begin(), curve.end());
    std::set<std::int32_t> host_set;
    for (const std::string& id : host_ids) host_set.insert(cur.edge_index(id));
    for (std::int32_t fi = 0; fi < (std::int32_t)t.faces.size() && !stepped; ++fi) {
      const auto& orbit = t.faces[fi];
      if (orbit.size() != 3) continue;
      if (split->region_side[t.face_region[fi]] != side) continue;
      std::set<std::int32_t> vs, es;
      bool ok = true, on_host = false, off_curve = true;
      for (std::int32_t dd : orbit) {
        ok = ok && cur.vertices[t.dart_to_vertex(dd)].kind == VertexKind::Crossing;
        vs.insert(t.dart_to_vertex(dd));
        es.insert(dart_edge(dd));
        if (host_set.count(dart_edge(dd)))
          on_host = true;
        else if (curve_set.count(dart_edge(dd)))
          off_curve = false;
      }
      if (!ok || vs.size() != 3 || es.size() != 3 || !on_host || !off_curve) continue;
      MoveInstance inst = raw_instance(
          cur, MoveKind::CIR3, false,
          {orbit[0], orbit[1], orbit[2]}, cur.edges[dart_edge(orbit[0])].label, 0, 0, 0);
      MoveApplyResult ar = apply_move(cur, inst, rules);
      if (!ar.ok) continue;
      cur = std::move(ar.chart);
      ++res.r3_steps;
      stepped = true;
    }
    if (!stepped) {
      res.error = "no clearing step available for the remaining arcs";
      return res;
    }
  }
  res.error = "clearing budget exceeded";
  return res;
}

}  // namespace cf
