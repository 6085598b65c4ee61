#include "canon.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

namespace cf {

namespace {

struct Coder {
  const Chart& c;
  const Topology& t;
  std::vector<std::vector<std::int32_t>> comp_darts;    // per component
  std::vector<std::vector<std::int32_t>> region_comps;  // tree adjacency
  // memo key: (component, parent region), parent -1 at the root
  std::map<std::pair<std::int32_t, std::int32_t>, std::string> memo;

  Coder(const Chart& ch, const Topology& tp) : c(ch), t(tp) {
    comp_darts.resize(t.n_comp);
    for (std::int32_t d = 0; d < c.n_ends(); ++d)
      comp_darts[t.vertex_comp[t.end_vertex[d]]].push_back(d);
    region_comps.resize(t.n_regions);
    for (std::int32_t k = 0; k < t.n_comp; ++k)
      for (std::int32_t r : t.comp_regions[k]) region_comps[r].push_back(k);
  }

  std::int32_t sigma(std::int32_t d) const {
    std::int32_t v = t.end_vertex[d];
    const auto& rot = c.vertices[v].rot;
    return rot[(t.end_pos[d] + 1) % rot.size()];
  }

  // Encode one component from a fixed starting dart; faces are numbered by
  // first appearance and annotated with the codes of subtrees hanging there.
  std::string encode_from(std::int32_t comp, std::int32_t d0, std::int32_t parent_region) {
    const auto& darts = comp_darts[comp];
    std::vector<std::int32_t> num(c.n_ends(), -1), order;
    order.reserve(darts.size());
    num[d0] = 0;
    order.push_back(d0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::int32_t nb : {sigma(order[i]), dart_reverse(order[i])})
        if (num[nb] == -1) {
          num[nb] = (std::int32_t)order.size();
          order.push_back(nb);
        }
    }
    std::ostringstream o;
    o << 'M' << order.size() << ':';
    for (std::int32_t d : order)
      o << num[sigma(d)] << ',' << num[dart_reverse(d)] << ','
        << kind_name(c.vertices[t.end_vertex[d]].kind)[0] << ','
        << c.edges[dart_edge(d)].label << ',' << (dart_is_backward(d) ? 'b' : 'f') << ';';
    // Faces in order of their smallest canonical dart.
    std::vector<std::int32_t> face_order;
    std::vector<std::int32_t> face_pos(t.faces.size(), -1);
    for (std::int32_t d : order) {
      std::int32_t f = t.dart_face[d];
      if (face_pos[f] == -1) {
        face_pos[f] = (std::int32_t)face_order.size();
        face_order.push_back(f);
      }
    }
    std::int32_t out_pos = -1;
    if (parent_region >= 0)
      for (std::int32_t f : face_order)
        if (t.face_region[f] == parent_region) out_pos = face_pos[f];
    o << "o" << out_pos << ':';
    for (std::int32_t f : face_order) {
      std::int32_t r = t.face_region[f];
      std::vector<std::string> kids;
      for (std::int32_t k2 : region_comps[r])
        if (k2 != comp && r != parent_region) kids.push_back(code_of(k2, r));
      std::sort(kids.begin(), kids.end());
      o << '(' << kids.size();
      for (const auto& s : kids) o << '[' << s << ']';
      o << ')';
    }
    return o.str();
  }

  std::string code_of(std::int32_t comp, std::int32_t parent_region) {
    auto key = std::make_pair(comp, parent_region);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::string best;
    for (std::int32_t d0 : comp_darts[comp]) {
      std::string s = encode_from(comp, d0, parent_region);
      if (best.empty() || s < best) best = std::move(s);
    }
    return memo[key] = best;
  }
};

}  // namespace

std::string canonical_code(const Chart& c, const Topology& t) {
  if (!t.ok) return "!structure";
  if (t.n_comp == 0) return "empty";
  bool cont_bad = false;
  for (const auto& p : t.problems) cont_bad = cont_bad || p.tag == "containment";
  if (cont_bad) return "!containment";
  Coder coder(c, t);
  std::string best;
  for (std::int32_t k = 0; k < t.n_comp; ++k) {
    if (coder.comp_darts[k].empty()) continue;  // bare vertex, handled below
    std::string s = coder.code_of(k, -1);
    if (best.empty() || s < best) best = std::move(s);
  }
  // Edgeless vertices cannot occur in valid charts; keep them visible anyway.
  std::string stray;
  for (const auto& v : c.vertices)
    if (v.rot.empty()) stray += kind_name(v.kind)[0];
  std::sort(stray.begin(), stray.end());
  if (!stray.empty()) best += "|iso:" + stray;
  return best.empty() ? "empty" : best;
}

std::string canonical_code(const Chart& c) {
  Topology t = analyze(c);
  return canonical_code(c, t);
}

Chart reflected(const Chart& c) {
  Chart r = c;
  for (auto& v : r.vertices) std::reverse(v.rot.begin(), v.rot.end());
  for (auto& em : r.embeds) {
    em.in_dart = em.in_dart >= 0 ? dart_reverse(em.in_dart) : em.in_dart;
    em.out_dart = em.out_dart >= 0 ? dart_reverse(em.out_dart) : em.out_dart;
  }
  if (r.inf_dart >= 0) r.inf_dart = dart_reverse(r.inf_dart);
  return r;
}

Chart orientation_reversed(const Chart& c) {
  Chart r = c;
  for (auto& e : r.edges) std::swap(e.tail, e.head);
  for (auto& v : r.vertices)
    for (auto& x : v.rot) x ^= 1;
  for (auto& em : r.embeds) {
    em.in_dart = em.in_dart >= 0 ? dart_reverse(em.in_dart) : em.in_dart;
    em.out_dart = em.out_dart >= 0 ? dart_reverse(em.out_dart) : em.out_dart;
  }
  if (r.inf_dart >= 0) r.inf_dart = dart_reverse(r.inf_dart);
  return r;
}

Chart label_flipped(const Chart& c) {
  Chart r = c;
  for (auto& e : r.edges) e.label = c.degree - e.label;
  return r;
}

Digest digest_of(const std::string& code) {
  // FNV-1a over two lanes with distinct bases.
  std::uint64_t a = 1469598103934665603ull, b = 0x9e3779b97f4a7c15ull;
  for (unsigned char ch : code) {
    a = (a ^ ch) * 1099511628211ull;
    b = (b ^ (ch + 0x40)) * 0x100000001b3ull;
    b ^= b >> 29;
  }
  return {a, b};
}

}  // namespace cf
