#include "disks.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace cf {

int edge_side(const Topology& t, const CurveSplit& s, std::int32_t e) {
  return germ_side(t, s, make_end(e, false));
}

namespace {

DiskRegion make_region(const Topology& t, std::vector<std::int32_t> curve_edges,
                       std::vector<BoundarySeg> boundary, std::vector<std::int32_t> whites,
                       const CurveSplit& split, int side) {
  DiskRegion r;
  r.curve_edges = std::move(curve_edges);
  r.boundary = std::move(boundary);
  r.boundary_whites = std::move(whites);
  r.split = split;
  r.side = side;
  for (std::int32_t f = 0; f < (std::int32_t)t.faces.size(); ++f)
    if (split.region_side[t.face_region[f]] == side) r.faces.push_back(f);
  r.interior_whites = split.whites_on[side];
  r.has_inf = t.inf_region >= 0 && split.region_side[t.inf_region] == side;
  return r;
}

// A closed curve in one label subgraph: tracks in walk order plus the white
// vertices between them (whites[i] starts tracks[i]; empty for ring/hoop).
struct CurveRec {
  std::vector<std::int32_t> tracks;
  std::vector<std::int32_t> whites;
};

// Simple cycles of the track multigraph (whites as nodes, internal tracks
// as edges). Smallest-node anchoring plus edge-set dedup; loops and closed
// tracks are added by the caller.
void enumerate_cycles(const Chart& c, const TrackSet& ts, const DiskEnumOptions& opts,
                      std::vector<CurveRec>& out, bool& capped) {
  std::vector<std::int32_t> node_of(c.nv(), -1);
  std::vector<std::int32_t> node_vertex;
  struct HalfEdge {
    std::int32_t to, track;
  };
  std::vector<std::vector<HalfEdge>> adj;
  auto node = [&](std::int32_t v) {
    if (node_of[v] < 0) {
      node_of[v] = (std::int32_t)node_vertex.size();
      node_vertex.push_back(v);
      adj.emplace_back();
    }
    return node_of[v];
  };
  for (std::int32_t i = 0; i < (std::int32_t)ts.tracks.size(); ++i) {
    const Track& tr = ts.tracks[i];
    if (tr.role != TrackRole::Internal) continue;
    std::int32_t a = node(tr.v_from), b = node(tr.v_to);
    adj[a].push_back({b, i});
    adj[b].push_back({a, i});
  }

  std::set<std::vector<std::int32_t>> seen;
  std::vector<char> visited(node_vertex.size(), 0);
  std::vector<char> used(ts.tracks.size(), 0);
  std::vector<std::int32_t> path_tracks, path_nodes;
  std::size_t steps = 0;

  std::function<void(std::int32_t, std::int32_t)> dfs = [&](std::int32_t anchor, std::int32_t u) {
    if (capped || ++steps > opts.max_steps) {
      capped = true;
      return;
    }
    for (const HalfEdge& he : adj[u]) {
      if (capped) return;
      if (used[he.track]) continue;
      if (he.to == anchor) {
        if (path_tracks.empty()) continue;
        std::vector<std::int32_t> key = path_tracks;
        key.push_back(he.track);
        CurveRec rec;
        rec.tracks = key;
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) continue;
        if (out.size() >= opts.max_curves) {
          capped = true;
          return;
        }
        for (std::int32_t n : path_nodes) rec.whites.push_back(node_vertex[n]);
        out.push_back(std::move(rec));
        continue;
      }
      if (he.to < anchor || visited[he.to]) continue;
      visited[he.to] = 1;
      used[he.track] = 1;
      path_tracks.push_back(he.track);
      path_nodes.push_back(he.to);
      dfs(anchor, he.to);
      path_tracks.pop_back();
      path_nodes.pop_back();
      visited[he.to] = 0;
      used[he.track] = 0;
    }
  };

  for (std::int32_t a = 0; a < (std::int32_t)node_vertex.size() && !capped; ++a) {
    visited[a] = 1;
    path_nodes.assign(1, a);
    path_tracks.clear();
    dfs(a, a);
    visited[a] = 0;
  }
}

}  // namespace

int disk_euler(const Chart& c, const Topology& t, const DiskRegion& d) {
  std::vector<char> on_curve(c.ne(), 0);
  for (std::int32_t e : d.curve_edges) on_curve[e] = 1;
  int V = 0, E = 0;
  for (std::int32_t v = 0; v < c.nv(); ++v) {
    int s = d.split.vertex_side[v];
    if (s == 2 || s == d.side) ++V;
  }
  for (std::int32_t e = 0; e < c.ne(); ++e)
    if (on_curve[e] || edge_side(t, d.split, e) == d.side) ++E;
  std::vector<int> merged(t.n_regions, 0);
  for (std::int32_t f = 0; f < (std::int32_t)t.faces.size(); ++f) ++merged[t.face_region[f]];
  int F = 0;
  for (std::int32_t r = 0; r < t.n_regions; ++r)
    if (d.split.region_side[r] == d.side) F += 2 - merged[r];
  return V - E + F;
}

DiskEnumResult enumerate_disk_regions(const Chart& c, const Topology& t, int m,
                                      const DiskEnumOptions& opts) {
  DiskEnumResult res;
  if (!t.ok) return res;
  res.tracks = tracks_of_label(c, t, m);
  const TrackSet& ts = res.tracks;

  std::vector<CurveRec> curves;
  for (std::int32_t i = 0; i < (std::int32_t)ts.tracks.size(); ++i) {
    const Track& tr = ts.tracks[i];
    if (curves.size() >= opts.max_curves) {
      res.capped = true;
      break;
    }
    if (tr.role == TrackRole::Ring || tr.role == TrackRole::Hoop)
      curves.push_back({{i}, {}});
    else if (tr.role == TrackRole::Loop)
      curves.push_back({{i}, {tr.v_from}});
  }
  if (!res.capped) enumerate_cycles(c, ts, opts, curves, res.capped);
  res.n_curves = curves.size();

  for (const CurveRec& rec : curves) {
    std::vector<BoundarySeg> segs;
    std::vector<std::int32_t> curve_edges;
    for (std::size_t i = 0; i < rec.tracks.size(); ++i) {
      const Track& tr = ts.tracks[rec.tracks[i]];
      BoundarySeg s;
      s.track = tr;
      s.reversed = !rec.whites.empty() && tr.v_from != rec.whites[i];
      for (std::int32_t dd : tr.darts) curve_edges.push_back(dart_edge(dd));
      segs.push_back(std::move(s));
    }
    auto split = split_by_curve(c, t, curve_edges);
    if (!split) continue;  // not a genuine simple closed curve

    // The one unused label-m end per boundary white feeds a feeler into
    // exactly one side.
    struct SidedFeeler {
      Feeler f;
      int side;
    };
    std::vector<SidedFeeler> fs;
    bool broken = false;
    for (std::int32_t w : rec.whites) {
      std::vector<std::int32_t> lused;
      for (std::int32_t ti : rec.tracks) {
        const Track& tr = ts.tracks[ti];
        if (tr.v_from == w) lused.push_back(tr.end_from);
        if (tr.v_to == w) lused.push_back(tr.end_to);
      }
      std::int32_t unused = -1;
      int n = 0;
      for (std::int32_t x : label_ends_at(c, w, m))
        if (std::find(lused.begin(), lused.end(), x) == lused.end()) {
          unused = x;
          ++n;
        }
      if (n != 1) {
        broken = true;
        break;
      }
      Feeler f;
      f.end = unused;
      f.white = w;
      f.track = ts.track_of_end(unused);
      f.role = ts.tracks[f.track].role;
      fs.push_back({f, germ_side(t, *split, unused)});
    }
    if (broken) continue;

    for (int side : {0, 1}) {
      AngledDisk d;
      d.region = make_region(t, curve_edges, segs, rec.whites, *split, side);
      d.label = m;
      d.k = (int)rec.whites.size();
      d.special = true;
      for (const SidedFeeler& sf : fs)
        if (sf.side == side) {
          d.feelers.push_back(sf.f);
          d.special = d.special && sf.f.role == TrackRole::Terminal;
        }
      res.disks.push_back(std::move(d));
    }
  }
  return res;
}

std::optional<DiskRegion> associated_disk(const Chart& c, const Topology& t, const Track& loop) {
  if (!t.ok || loop.role != TrackRole::Loop) return std::nullopt;
  std::vector<std::int32_t> curve = loop.edge_ids();
  auto split = split_by_curve(c, t, curve);
  if (!split) return std::nullopt;
  std::int32_t third = -1;
  for (std::int32_t x : label_ends_at(c, loop.v_from, loop.label))
    if (x != loop.end_from && x != loop.end_to) third = x;
  if (third < 0) return std::nullopt;
  int e_side = germ_side(t, *split, third);
  BoundarySeg seg;
  seg.track = loop;
  return make_region(t, std::move(curve), {std::move(seg)}, {loop.v_from}, *split, 1 - e_side);
}

std::vector<Lens> find_lenses(const Chart& c, const Topology& t) {
  std::vector<Lens> out;
  if (!t.ok) return out;
  for (int m = 1; m + 1 <= c.degree - 1; ++m) {
    TrackSet ta = tracks_of_label(c, t, m);
    TrackSet tb = tracks_of_label(c, t, m + 1);
    for (const Track& e1 : ta.tracks) {
      if (e1.role != TrackRole::Internal) continue;
      std::int32_t w1 = e1.v_from, w2 = e1.v_to;
      auto s1 = white_local_structure(c, w1), s2 = white_local_structure(c, w2);
      if (!s1 || !s2) continue;
      for (const Track& e2 : tb.tracks) {
        if (e2.role != TrackRole::Internal) continue;
        if (!((e2.v_from == w1 && e2.v_to == w2) || (e2.v_from == w2 && e2.v_to == w1))) continue;
        auto end_at = [](const Track& e, std::int32_t w) {
          return e.v_from == w ? e.end_from : e.end_to;
        };
        bool e1m1 = s1->is_middle(end_at(e1, w1)), e1m2 = s2->is_middle(end_at(e1, w2));
        bool e2m1 = s1->is_middle(end_at(e2, w1)), e2m2 = s2->is_middle(end_at(e2, w2));
        bool ci = !e1m1 && !e1m2 && !e2m1 && !e2m2;
        bool cii = (e1m1 && e1m2) || (e2m1 && e2m2);
        if (!ci && !cii) continue;
        std::vector<std::int32_t> curve = e1.edge_ids();
        for (std::int32_t g : e2.edge_ids()) curve.push_back(g);
        auto split = split_by_curve(c, t, curve);
        if (!split) continue;
        for (int side : {0, 1}) {
          // condition (2): nothing else at the corners enters this side
          bool clear = true;
          for (std::int32_t w : {w1, w2}) {
            std::int32_t b1 = end_at(e1, w), b2 = end_at(e2, w);
            for (std::int32_t x : c.vertices[w].rot) {
              if (x == b1 || x == b2) continue;
              if (germ_side(t, *split, x) == side) {
                clear = false;
                break;
              }
            }
            if (!clear) break;
          }
          if (!clear) continue;
          Lens L;
          L.m = m;
          L.e1 = e1;
          L.e2 = e2;
          L.w1 = w1;
          L.w2 = w2;
          L.cond_i = ci;
          L.cond_ii = cii;
          BoundarySeg sa{e1, false}, sb{e2, e2.v_from != w2};
          L.region = make_region(t, curve, {sa, sb}, {w1, w2}, *split, side);
          out.push_back(std::move(L));
        }
      }
    }
  }
  return out;
}

std::vector<Track> find_nice_edges(const Chart& c, const Topology& t, const AngledDisk& d) {
  std::vector<Track> out;
  if (!t.ok) return out;
  const auto& bw = d.region.boundary_whites;
  auto on_boundary = [&](std::int32_t v) {
    return std::find(bw.begin(), bw.end(), v) != bw.end();
  };
  auto feeler_at = [&](std::int32_t w) {
    for (const Feeler& f : d.feelers)
      if (f.white == w) return true;
    return false;
  };
  for (int j : {d.label - 1, d.label + 1}) {
    if (j < 1 || j > c.degree - 1) continue;
    TrackSet ts = tracks_of_label(c, t, j);
    for (const Track& e : ts.tracks) {
      if (e.role != TrackRole::Internal) continue;
      if (!on_boundary(e.v_from) || !on_boundary(e.v_to)) continue;
      bool inside = true;
      for (std::int32_t g : e.edge_ids())
        inside = inside && edge_side(t, d.region.split, g) == d.region.side;
      if (!inside) continue;
      if (feeler_at(e.v_from) || feeler_at(e.v_to)) continue;
      out.push_back(e);
    }
  }
  return out;
}

std::vector<M4Disk> find_m4_disks(const Chart& c, const Topology& t, const DiskEnumOptions& opts) {
  std::vector<M4Disk> out;
  if (!t.ok) return out;
  for (int k = 2; k + 1 <= c.degree - 1; ++k) {
    DiskEnumResult disks = enumerate_disk_regions(c, t, k, opts);
    for (AngledDisk& d : disks.disks) {
      if (d.k != 4 || d.region.interior_whites != 0) continue;
      // the sole neighbour-label track inside, if any
      auto diagonal = [&](int j) -> std::optional<Track> {
        TrackSet ts = tracks_of_label(c, t, j);
        std::set<std::int32_t> hit;
        for (std::int32_t g = 0; g < c.ne(); ++g) {
          if (ts.edge_track[g] < 0) continue;
          if (edge_side(t, d.region.split, g) != d.region.side) continue;
          hit.insert(ts.edge_track[g]);
        }
        if (hit.size() != 1) return std::nullopt;
        const Track& tr = ts.tracks[*hit.begin()];
        if (tr.role != TrackRole::Internal) return std::nullopt;
        for (std::int32_t g : tr.edge_ids())
          if (edge_side(t, d.region.split, g) != d.region.side) return std::nullopt;
        return tr;
      };
      auto e5 = diagonal(k - 1), e6 = diagonal(k + 1);
      if (!e5 || !e6) continue;
      const auto& bw = d.region.boundary_whites;
      auto joins = [&](const Track& tr, int i) {
        return (tr.v_from == bw[i] && tr.v_to == bw[i + 2]) ||
               (tr.v_from == bw[i + 2] && tr.v_to == bw[i]);
      };
      bool opposite = (joins(*e5, 0) && joins(*e6, 1)) || (joins(*e5, 1) && joins(*e6, 0));
      if (!opposite) continue;
      out.push_back(M4Disk{std::move(d), std::move(*e5), std::move(*e6)});
    }
  }
  return out;
}

std::optional<std::vector<DAlphaArc>> find_d_alpha_arcs(const Chart& c, const Topology& t,
                                                        const DiskRegion& d,
                                                        const AlphaArc& alpha, int k) {
  if (!t.ok) return std::nullopt;
  if (alpha.seg < 0 || alpha.seg >= (int)d.boundary.size()) return std::nullopt;
  const Track& host = d.boundary[alpha.seg].track;
  if (host.role == TrackRole::Free || host.role == TrackRole::Terminal) return std::nullopt;
  if (alpha.first < 0 || alpha.count < 0 ||
      alpha.first + alpha.count > (int)host.through.size())
    return std::nullopt;

  std::vector<char> in_window(c.nv(), 0);
  for (int i = alpha.first; i < alpha.first + alpha.count; ++i) {
    std::int32_t v = host.through[i];
    if (c.vertices[v].kind == VertexKind::Crossing) in_window[v] = 1;
  }
  std::vector<char> on_curve(c.ne(), 0);
  for (std::int32_t e : d.curve_edges) on_curve[e] = 1;

  std::vector<DAlphaArc> out;
  TrackSet ts = tracks_of_label(c, t, k);
  for (std::int32_t ti = 0; ti < (std::int32_t)ts.tracks.size(); ++ti) {
    const Track& tr = ts.tracks[ti];
    bool shares = false;
    for (std::int32_t dd : tr.darts) shares = shares || on_curve[dart_edge(dd)];
    if (shares) continue;
    // transversal crossings with the boundary curve, in walk order
    std::vector<int> ev;
    for (int p = 0; p < (int)tr.through.size(); ++p) {
      std::int32_t v = tr.through[p];
      if (c.vertices[v].kind == VertexKind::Crossing && d.split.vertex_side[v] == 2)
        ev.push_back(p);
    }
    if (ev.size() < 2) continue;
    int n = (int)tr.darts.size();
    auto emit = [&](int a, int b) {
      if (!in_window[tr.through[a]] || !in_window[tr.through[b]]) return;
      DAlphaArc arc;
      arc.track = ti;
      arc.from_event = a;
      arc.to_event = b;
      int q = (a + 1) % n;
      for (;;) {
        arc.darts.push_back(tr.darts[q]);
        if (q == b) break;
        q = (q + 1) % n;
      }
      for (std::int32_t dd : arc.darts)
        if (edge_side(t, d.split, dart_edge(dd)) != d.side) return;
      out.push_back(std::move(arc));
    };
    if (tr.closed)
      for (std::size_t i = 0; i < ev.size(); ++i) emit(ev[i], ev[(i + 1) % ev.size()]);
    else
      for (std::size_t i = 0; i + 1 < ev.size(); ++i) emit(ev[i], ev[i + 1]);
  }
  return out;
}

}  // namespace cf
