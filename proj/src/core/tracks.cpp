#include "tracks.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cf {

const char* role_name(TrackRole r) {
  switch (r) {
    case TrackRole::Free: return "free";
    case TrackRole::Terminal: return "terminal";
    case TrackRole::Internal: return "internal";
    case TrackRole::Loop: return "loop";
    case TrackRole::Ring: return "ring";
    case TrackRole::Hoop: return "hoop";
  }
  return "?";
}

namespace {

bool is_pass(VertexKind k) { return k == VertexKind::Crossing || k == VertexKind::Anchor; }

// Continuation of a track entering end x at a pass-through vertex: the
// diagonal end at a crossing, the other end at an anchor. -1 if the
// continuation carries a different label (possible in invalid charts).
std::int32_t pass_through(const Chart& c, const Topology& t, std::int32_t x) {
  std::int32_t v = t.end_vertex[x];
  const auto& rot = c.vertices[v].rot;
  std::int32_t y = rot[(t.end_pos[x] + rot.size() / 2) % rot.size()];
  if (c.edges[end_edge(y)].label != c.edges[end_edge(x)].label) return -1;
  return y;
}

}  // namespace

TrackSet tracks_of_label(const Chart& c, const Topology& t, int m) {
  TrackSet ts;
  ts.label = m;
  ts.edge_track.assign(c.ne(), -1);
  if (!t.ok) return ts;

  for (std::int32_t e0 = 0; e0 < c.ne(); ++e0) {
    if (c.edges[e0].label != m || ts.edge_track[e0] != -1) continue;
    Track tr;
    tr.label = m;
    std::int32_t id = (std::int32_t)ts.tracks.size();

    // Walk forward along the arrows from e0's forward dart.
    std::int32_t d = make_dart(e0, false);
    std::vector<std::int32_t> fwd{d};
    ts.edge_track[e0] = id;
    bool closed = false;
    std::vector<std::int32_t> fwd_through;
    for (;;) {
      std::int32_t arrive = dart_arrive_end(d);
      std::int32_t v = t.end_vertex[arrive];
      if (!is_pass(c.vertices[v].kind)) break;
      std::int32_t y = pass_through(c, t, arrive);
      if (y < 0) break;
      std::int32_t e2 = end_edge(y);
      std::int32_t d2 = end_is_head(y) ? make_dart(e2, true) : make_dart(e2, false);
      if (d2 == fwd.front()) {
        closed = true;
        fwd_through.push_back(v);
        break;
      }
      fwd_through.push_back(v);
      fwd.push_back(d2);
      ts.edge_track[e2] = id;
      d = d2;
    }
    if (closed) {
      tr.closed = true;
      tr.darts = fwd;
      tr.through = fwd_through;
    } else {
      // Walk backward from e0's tail end.
      std::vector<std::int32_t> bwd;  // darts before e0, reversed
      std::vector<std::int32_t> bwd_through;
      std::int32_t x = make_end(e0, false);
      for (;;) {
        std::int32_t v = t.end_vertex[x];
        if (!is_pass(c.vertices[v].kind)) break;
        std::int32_t y = pass_through(c, t, x);
        if (y < 0) break;
        bwd_through.push_back(v);
        std::int32_t e2 = end_edge(y);
        std::int32_t d2 = end_is_head(y) ? make_dart(e2, false) : make_dart(e2, true);
        bwd.push_back(d2);
        ts.edge_track[e2] = id;
        x = make_end(e2, !end_is_head(y));
      }
      for (auto it = bwd.rbegin(); it != bwd.rend(); ++it) tr.darts.push_back(*it);
      std::reverse(bwd_through.begin(), bwd_through.end());
      tr.through = bwd_through;
      for (std::int32_t dd : fwd) tr.darts.push_back(dd);
      tr.through.insert(tr.through.end(), fwd_through.begin(), fwd_through.end());
      tr.end_from = dart_depart_end(tr.darts.front());
      tr.end_to = dart_arrive_end(tr.darts.back());
      tr.v_from = t.end_vertex[tr.end_from];
      tr.v_to = t.end_vertex[tr.end_to];
    }

    if (tr.closed) {
      bool anchored = false;
      for (std::int32_t v : tr.through) anchored |= c.vertices[v].kind == VertexKind::Anchor;
      tr.role = anchored ? TrackRole::Hoop : TrackRole::Ring;
    } else {
      VertexKind ka = c.vertices[tr.v_from].kind, kb = c.vertices[tr.v_to].kind;
      if (ka == VertexKind::Black && kb == VertexKind::Black)
        tr.role = TrackRole::Free;
      else if (ka == VertexKind::Black || kb == VertexKind::Black)
        tr.role = TrackRole::Terminal;
      else
        tr.role = tr.v_from == tr.v_to ? TrackRole::Loop : TrackRole::Internal;
    }
    ts.tracks.push_back(std::move(tr));
  }
  return ts;
}

std::vector<LabelComponent> component_census(const Chart& c, const Topology& t,
                                             const TrackSet& ts) {
  const std::int32_t n = (std::int32_t)ts.tracks.size();
  std::vector<std::int32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::int32_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  // Glue tracks that share a white vertex.
  std::vector<std::int32_t> white_track(c.nv(), -1);
  for (std::int32_t i = 0; i < n; ++i) {
    const Track& tr = ts.tracks[i];
    for (std::int32_t v : {tr.v_from, tr.v_to}) {
      if (v < 0 || c.vertices[v].kind != VertexKind::White) continue;
      if (white_track[v] == -1)
        white_track[v] = i;
      else
        parent[find(i)] = find(white_track[v]);
    }
  }
  std::vector<std::int32_t> comp_of(n, -1);
  std::vector<LabelComponent> out;
  for (std::int32_t i = 0; i < n; ++i) {
    std::int32_t r = find(i);
    if (comp_of[r] == -1) {
      comp_of[r] = (std::int32_t)out.size();
      out.emplace_back();
    }
    comp_of[i] = comp_of[r];
    LabelComponent& lc = out[comp_of[i]];
    lc.track_ids.push_back(i);
    if (ts.tracks[i].role == TrackRole::Loop) lc.loop_free = false;
    for (std::int32_t v : {ts.tracks[i].v_from, ts.tracks[i].v_to})
      if (v >= 0 && c.vertices[v].kind == VertexKind::White &&
          std::find(lc.whites.begin(), lc.whites.end(), v) == lc.whites.end())
        lc.whites.push_back(v);
  }
  (void)t;
  return out;
}

TypeSignature chart_type(const Chart& c) {
  TypeSignature s;
  std::vector<int> cnt(std::max(1, c.degree), 0);
  bool any = false;
  for (const auto& v : c.vertices) {
    if (v.kind != VertexKind::White || v.rot.size() != 6) continue;
    int lo = c.degree, hi = 0;
    for (std::int32_t x : v.rot) {
      int l = c.edges[end_edge(x)].label;
      lo = std::min(lo, l);
      hi = std::max(hi, l);
    }
    if (hi != lo + 1 || lo < 1 || lo >= (int)cnt.size()) continue;
    ++cnt[lo];
    any = true;
  }
  if (!any) return s;
  s.untyped = false;
  int first = -1, last = -1;
  for (int i = 0; i < (int)cnt.size(); ++i)
    if (cnt[i] > 0) {
      if (first < 0) first = i;
      last = i;
    }
  s.m = first;
  for (int i = first; i <= last; ++i) {
    s.counts.push_back(cnt[i]);
    if (cnt[i] == 0) s.gapped = true;
  }
  return s;
}

std::string type_to_string(const TypeSignature& s) {
  if (s.untyped) return "untyped";
  std::ostringstream o;
  o << '(' << s.m << ';';
  for (std::size_t i = 0; i < s.counts.size(); ++i) o << (i ? "," : " ") << s.counts[i];
  o << ')';
  if (s.gapped) o << " gapped";
  return o.str();
}

std::optional<WhiteStructure> white_local_structure(const Chart& c, std::int32_t w) {
  if (w < 0 || w >= c.nv() || c.vertices[w].kind != VertexKind::White) return std::nullopt;
  const auto& rot = c.vertices[w].rot;
  if (rot.size() != 6) return std::nullopt;
  int start = -1, inward = 0;
  for (int p = 0; p < 6; ++p) {
    if (end_is_head(rot[p])) ++inward;
    if (end_is_head(rot[p]) && !end_is_head(rot[(p + 5) % 6])) {
      if (start != -1) return std::nullopt;  // inward ends not consecutive
      start = p;
    }
  }
  if (inward != 3 || start == -1) return std::nullopt;
  WhiteStructure ws;
  ws.v = w;
  ws.middle_in = rot[(start + 1) % 6];
  ws.middle_out = rot[(start + 4) % 6];
  return ws;
}

std::int32_t flank_prev(const Chart& c, const Topology& t, std::int32_t x) {
  const auto& rot = c.vertices[t.end_vertex[x]].rot;
  return rot[(t.end_pos[x] + rot.size() - 1) % rot.size()];
}

std::int32_t flank_next(const Chart& c, const Topology& t, std::int32_t x) {
  const auto& rot = c.vertices[t.end_vertex[x]].rot;
  return rot[(t.end_pos[x] + 1) % rot.size()];
}

std::vector<std::int32_t> label_ends_at(const Chart& c, std::int32_t v, int m) {
  std::vector<std::int32_t> out;
  for (std::int32_t x : c.vertices[v].rot)
    if (c.edges[end_edge(x)].label == m) out.push_back(x);
  return out;
}

bool is_bw_vertex(const Chart& c, const Topology& t, const TrackSet& ts, std::int32_t w) {
  if (c.vertices[w].kind != VertexKind::White) return false;
  for (std::int32_t x : label_ends_at(c, w, ts.label)) {
    std::int32_t tid = ts.track_of_end(x);
    if (tid >= 0 && ts.tracks[tid].role == TrackRole::Terminal) return true;
  }
  (void)t;
  return false;
}

bool lemma_3_7_holds(const Chart& c, const Topology& t, const TrackSet& ts, std::int32_t w) {
  if (!is_bw_vertex(c, t, ts, w)) return true;
  std::vector<std::int32_t> plain;
  for (std::int32_t x : label_ends_at(c, w, ts.label)) {
    std::int32_t tid = ts.track_of_end(x);
    if (tid >= 0 && ts.tracks[tid].role != TrackRole::Terminal) plain.push_back(x);
  }
  if (plain.size() != 2) return true;  // premise needs exactly the two other edges
  return end_is_head(plain[0]) == end_is_head(plain[1]);
}

}  // namespace cf
