#include "io.hpp"

#include <algorithm>
#include <optional>

namespace cf {

namespace {

// Labels on the topological boundary of the region set, or nullopt when one
// of them falls outside {m-1, m, m+1}.
std::optional<std::vector<int>> boundary_labels(const Chart& c, const Topology& t,
                                                const std::vector<char>& in, int m) {
  std::vector<int> labels;
  for (std::int32_t e = 0; e < c.ne(); ++e) {
    bool left = in[t.face_region[t.dart_face[2 * e]]];
    bool right = in[t.face_region[t.dart_face[2 * e + 1]]];
    if (left == right) continue;
    int lab = c.edges[e].label;
    if (lab < m - 1 || lab > m + 1) return std::nullopt;
    labels.push_back(lab);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

}  // namespace

IoEnumResult enumerate_io_domains(const Chart& c, const Topology& t, int m, IoEnumOptions opts) {
  IoEnumResult out;
  const int R = t.n_regions;
  if (R == 0) return out;

  std::vector<char> in(R, 0);
  auto consider = [&]() {
    auto bl = boundary_labels(c, t, in, m);
    if (!bl) return;
    IoDomain d;
    d.m = m;
    d.boundary_labels = std::move(*bl);
    for (int r = 0; r < R; ++r)
      if (in[r]) d.regions.push_back(r);
    for (std::int32_t f = 0; f < (std::int32_t)t.faces.size(); ++f)
      if (in[t.face_region[f]]) d.faces.push_back(f);
    out.domains.push_back(std::move(d));
  };

  int prefix = 0;  // largest prefix whose full power set fits the cap
  while (prefix < R && prefix < 62 && (std::uint64_t{1} << (prefix + 1)) <= opts.max_subsets)
    ++prefix;
  out.capped = prefix < R;

  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << prefix); ++mask) {
    std::fill(in.begin(), in.end(), 0);
    for (int r = 0; r < prefix; ++r)
      if (mask >> r & 1) in[r] = 1;
    consider();
  }
  if (out.capped) {
    for (int r = prefix; r < R; ++r) {
      std::fill(in.begin(), in.end(), 0);
      in[r] = 1;
      consider();
    }
    std::fill(in.begin(), in.end(), 1);
    consider();
  }
  return out;
}

std::pair<int, int> io_balance(const Chart& c, const Topology& t, const IoDomain& f, int m) {
  std::vector<char> in(t.n_regions, 0);
  for (std::int32_t r : f.regions) in[r] = 1;
  int inward = 0, outward = 0;
  for (std::int32_t v = 0; v < c.nv(); ++v) {
    VertexKind k = c.vertices[v].kind;
    if (k != VertexKind::White && k != VertexKind::Black) continue;
    for (std::int32_t x : c.vertices[v].rot) {
      std::int32_t e = end_edge(x);
      if (c.edges[e].label != m) continue;
      if (!in[t.face_region[t.dart_face[2 * e]]] && !in[t.face_region[t.dart_face[2 * e + 1]]])
        continue;
      (end_is_head(x) ? inward : outward) += 1;
    }
  }
  return {inward, outward};
}

std::pair<int, int> io_forced_counts(const IoHypothesis& h, int m) {
  int inward = 0, outward = 0;
  for (const IoFixedArc& a : h.arcs) {
    if (a.label != m) continue;
    (a.inward ? inward : outward) += 1;
  }
  return {inward, outward};
}

}  // namespace cf
