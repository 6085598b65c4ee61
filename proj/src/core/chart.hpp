#pragma once

// Core data model: charts as rotation systems on S^2 with a containment
// forest gluing the per-component embeddings into one sphere.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cf {

enum class VertexKind : std::uint8_t { White, Black, Crossing, Anchor };

// Anchors are artificial degree-2 subdivision points carrying hoops; they are
// excluded from vertex counts and degree axioms everywhere except here.
inline int expected_degree(VertexKind k) {
  switch (k) {
    case VertexKind::White: return 6;
    case VertexKind::Black: return 1;
    case VertexKind::Crossing: return 4;
    case VertexKind::Anchor: return 2;
  }
  return -1;
}

const char* kind_name(VertexKind k);

// --------------------------------------------------------------------------
// Ends and darts share one int32 encoding over edge index e:
//   end  2e   = tail end,   end  2e+1 = head end
//   dart 2e   = forward (tail->head), dart 2e+1 = backward
// A dart departs its origin vertex through the end with the same numeric
// value and arrives through (d ^ 1). The reverse dart is also (d ^ 1); the
// two coincide numerically but not conceptually, so helpers are named.

inline std::int32_t end_edge(std::int32_t x) { return x >> 1; }
inline bool end_is_head(std::int32_t x) { return x & 1; }
inline std::int32_t make_end(std::int32_t e, bool head) { return 2 * e + (head ? 1 : 0); }

inline std::int32_t dart_edge(std::int32_t d) { return d >> 1; }
inline bool dart_is_backward(std::int32_t d) { return d & 1; }
inline std::int32_t make_dart(std::int32_t e, bool backward) { return 2 * e + (backward ? 1 : 0); }
inline std::int32_t dart_reverse(std::int32_t d) { return d ^ 1; }
inline std::int32_t dart_depart_end(std::int32_t d) { return d; }
inline std::int32_t dart_arrive_end(std::int32_t d) { return d ^ 1; }

struct Vertex {
  std::string id;
  VertexKind kind = VertexKind::Black;
  std::vector<std::int32_t> rot;  // incident ends, counterclockwise
};

struct Edge {
  std::string id;
  int label = 1;
  std::int32_t tail = -1;  // vertex index; edge oriented tail -> head
  std::int32_t head = -1;
};

// Containment record: the component holding `child_vertex` sits in the face
// left of `in_dart` (a dart of some other component); the child's face left
// of `out_dart` merges with it. out_dart == -1 means "derive": legal only
// when the child component has a single face.
struct Embed {
  std::int32_t child_vertex = -1;
  std::int32_t in_dart = -1;
  std::int32_t out_dart = -1;
};

struct Chart {
  std::string name = "chart";
  int degree = 2;  // n; labels range over 1..degree-1
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Embed> embeds;
  // Infinity face designator: the face left of inf_dart. -1 selects the
  // default (left of the forward dart of the lexicographically smallest edge
  // id); an empty chart is "everywhere".
  std::int32_t inf_dart = -1;

  std::int32_t nv() const { return (std::int32_t)vertices.size(); }
  std::int32_t ne() const { return (std::int32_t)edges.size(); }
  std::int32_t n_ends() const { return 2 * ne(); }

  std::int32_t vertex_index(const std::string& id) const;  // -1 if absent
  std::int32_t edge_index(const std::string& id) const;    // -1 if absent
};

struct Violation {
  std::string tag;      // "i" "ii" "iii" "iv" "euler" "containment" "structure"
  std::string witness;  // offending vertex/edge id (may be empty)
  std::string detail;
};

// Derived topology. `ok` is false when the rotations do not form an exact
// end partition (or containment is unusable); only `problems` is meaningful
// then. Faces are orbits of next(d) = "depart through the end preceding the
// arrival end in ccw order"; face(d) is the face on the LEFT of d.
struct Topology {
  bool ok = false;
  std::vector<Violation> problems;  // structure/containment findings

  std::vector<std::int32_t> end_vertex;  // size 2E
  std::vector<std::int32_t> end_pos;     // position within owner's rotation

  std::vector<std::int32_t> dart_next;               // face-orbit successor, size 2E
  std::vector<std::int32_t> dart_face;               // size 2E
  std::vector<std::vector<std::int32_t>> faces;      // face -> darts, orbit order
  std::vector<std::int32_t> vertex_comp;             // size V
  std::vector<std::int32_t> face_comp;               // size F
  int n_comp = 0;

  // Global regions: faces merged across containment records (union-find
  // flattened). For a well-embedded chart, regions = F - (#components - 1).
  std::vector<std::int32_t> face_region;  // face -> dense region id
  int n_regions = 0;
  std::int32_t inf_region = -1;  // -1 only for the empty chart

  // Region/component incidence tree rooted at inf_region.
  std::vector<std::int32_t> comp_out_region;       // region on the infinity side
  std::vector<std::vector<std::int32_t>> comp_regions;  // regions touched per comp
  std::vector<char> comp_parked;  // free edges / hoops stacked at infinity

  std::int32_t next_dart(std::int32_t d) const { return dart_next[d]; }
  std::int32_t dart_from_vertex(std::int32_t d) const { return end_vertex[dart_depart_end(d)]; }
  std::int32_t dart_to_vertex(std::int32_t d) const { return end_vertex[dart_arrive_end(d)]; }
  // The two faces flanking the germ of end x (== the edge's two sides).
  std::int32_t germ_face_left(std::int32_t x) const { return dart_face[2 * end_edge(x)]; }
  std::int32_t germ_face_right(std::int32_t x) const { return dart_face[2 * end_edge(x) + 1]; }
  bool germ_touches_region(std::int32_t x, std::int32_t region) const {
    return face_region[germ_face_left(x)] == region || face_region[germ_face_right(x)] == region;
  }
};

// Never throws; inspect .ok / .problems.
Topology analyze(const Chart& c);

// Full axiom validation: conditions (i)-(iv), Euler per component,
// containment, structure. Pure; empty result iff valid.
std::vector<Violation> validate(const Chart& c);
bool is_valid(const Chart& c);

struct Complexity {
  int whites = 0;
  int neg_free_edges = 0;  // minus the number of free edges
  friend bool operator==(const Complexity&, const Complexity&) = default;
  bool operator<(const Complexity& o) const {
    return whites != o.whites ? whites < o.whites : neg_free_edges < o.neg_free_edges;
  }
};
Complexity complexity(const Chart& c);

// Component census helpers on the chart graph (not the per-label subgraphs).
bool comp_is_free_edge(const Chart& c, const Topology& t, int comp);
bool comp_is_hoop(const Chart& c, const Topology& t, int comp);

// Working chart: the chart with infinity-parked junk removed (Assumption-3
// exclusion). Containment records are rebuilt from the region tree. Identity
// strings of surviving vertices/edges are preserved.
Chart working_chart(const Chart& c);

// Two-sided split along a simple closed curve made of whole edges. side[r]
// in {0,1} for every region; side 0 is the side left of the forward dart of
// curve_edges.front(). Vertices strictly on one side get that side;
// vertices met by the curve get 2. Returns false if the edge set does not
// separate the sphere into exactly two parts (i.e. not a simple closed
// curve).
struct CurveSplit {
  std::vector<char> region_side;  // per region: 0 or 1
  std::vector<char> vertex_side;  // per vertex: 0, 1, or 2 (= on curve)
  int whites_on[2] = {0, 0};      // strictly inside counts
  int side_of_region(std::int32_t r) const { return region_side[r]; }
};
std::optional<CurveSplit> split_by_curve(const Chart& c, const Topology& t,
                                         const std::vector<std::int32_t>& curve_edges);

// Side of the germ of end x relative to a split (x must not belong to a
// curve edge; both flanking faces then lie on one side).
int germ_side(const Topology& t, const CurveSplit& s, std::int32_t x);

}  // namespace cf
