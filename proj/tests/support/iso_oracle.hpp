#pragma once

// Brute-force isomorphism oracle for connected charts: try every image for
// dart 0 and propagate through sigma/alpha. Independent of canonical codes.

#include <vector>

#include "core/chart.hpp"

namespace cft {

struct MapView {
  const cf::Chart& c;
  cf::Topology t;
  explicit MapView(const cf::Chart& ch) : c(ch), t(cf::analyze(ch)) {}
  std::int32_t sigma(std::int32_t d) const {
    std::int32_t v = t.end_vertex[d];
    const auto& rot = c.vertices[v].rot;
    return rot[(t.end_pos[d] + 1) % rot.size()];
  }
};

inline bool oracle_isomorphic(const cf::Chart& c1, const cf::Chart& c2) {
  MapView a(c1), b(c2);
  if (!a.t.ok || !b.t.ok) return false;
  if (a.t.n_comp != 1 || b.t.n_comp != 1) return false;  // connected inputs only
  if (c1.n_ends() != c2.n_ends() || c1.degree != c2.degree) return false;
  const std::int32_t n = c1.n_ends();
  if (n == 0) return c1.nv() == c2.nv();

  auto dart_ok = [&](std::int32_t d1, std::int32_t d2) {
    return cf::dart_is_backward(d1) == cf::dart_is_backward(d2) &&
           c1.edges[cf::dart_edge(d1)].label == c2.edges[cf::dart_edge(d2)].label &&
           c1.vertices[a.t.end_vertex[d1]].kind == c2.vertices[b.t.end_vertex[d2]].kind;
  };
  for (std::int32_t start = 0; start < n; ++start) {
    std::vector<std::int32_t> m(n, -1);
    std::vector<std::int32_t> stack{0};
    m[0] = start;
    bool good = dart_ok(0, start);
    while (good && !stack.empty()) {
      std::int32_t d = stack.back();
      stack.pop_back();
      std::int32_t pairs[2][2] = {{a.sigma(d), b.sigma(m[d])},
                                  {cf::dart_reverse(d), cf::dart_reverse(m[d])}};
      for (auto& p : pairs) {
        if (m[p[0]] == -1) {
          if (!dart_ok(p[0], p[1])) {
            good = false;
            break;
          }
          m[p[0]] = p[1];
          stack.push_back(p[0]);
        } else if (m[p[0]] != p[1]) {
          good = false;
          break;
        }
      }
    }
    if (good) return true;
  }
  return false;
}

}  // namespace cft
