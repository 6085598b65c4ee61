#pragma once

// Label subgraphs: a track is a maximal run of same-label edges through
// crossings (and through the artificial anchor of a hoop). Tracks are the
// paper-level "edges" of a label subgraph; the underlying graph edges are
// finer. Also: per-label component census, chart type signatures, and the
// local structure around a white vertex (middle ends, flanking, BW).

#include <optional>
#include <string>
#include <vector>

#include "chart.hpp"

namespace cf {

enum class TrackRole { Free, Terminal, Internal, Loop, Ring, Hoop };
const char* role_name(TrackRole r);

struct Track {
  int label = 0;
  bool closed = false;
  std::vector<std::int32_t> darts;    // oriented along the walk (with the arrows)
  std::vector<std::int32_t> through;  // pass-through vertices (crossings, anchors)
  std::int32_t v_from = -1, v_to = -1;
  std::int32_t end_from = -1, end_to = -1;  // germ ends at the endpoints
  TrackRole role = TrackRole::Internal;

  std::vector<std::int32_t> edge_ids() const {
    std::vector<std::int32_t> out;
    for (std::int32_t d : darts) out.push_back(dart_edge(d));
    return out;
  }
};

struct TrackSet {
  int label = 0;
  std::vector<Track> tracks;
  std::vector<std::int32_t> edge_track;  // graph edge -> track index, -1 off-label
  std::int32_t track_of_end(std::int32_t x) const { return edge_track[end_edge(x)]; }
};

TrackSet tracks_of_label(const Chart& c, const Topology& t, int m);

// Connected component of a label subgraph (tracks glued at shared whites).
struct LabelComponent {
  std::vector<std::int32_t> track_ids;
  std::vector<std::int32_t> whites;  // distinct white vertices in the component
  bool loop_free = true;
  int w() const { return (int)whites.size(); }
};

std::vector<LabelComponent> component_census(const Chart& c, const Topology& t,
                                             const TrackSet& ts);

struct TypeSignature {
  bool untyped = true;
  int m = 0;
  std::vector<int> counts;
  bool gapped = false;  // an interior block has zero whites
};

TypeSignature chart_type(const Chart& c);
std::string type_to_string(const TypeSignature& s);

// Local structure at a white vertex satisfying condition (iii).
struct WhiteStructure {
  std::int32_t v = -1;
  std::int32_t middle_in = -1, middle_out = -1;  // the two middle ends
  bool is_middle(std::int32_t x) const { return x == middle_in || x == middle_out; }
};

std::optional<WhiteStructure> white_local_structure(const Chart& c, std::int32_t w);

// Flanking edges of end x at its white vertex: (a, x, b) counterclockwise.
std::int32_t flank_prev(const Chart& c, const Topology& t, std::int32_t x);
std::int32_t flank_next(const Chart& c, const Topology& t, std::int32_t x);

// Ends of label m at vertex v, in rotation order.
std::vector<std::int32_t> label_ends_at(const Chart& c, std::int32_t v, int m);

// One of the three label-m tracks at w is a terminal edge.
bool is_bw_vertex(const Chart& c, const Topology& t, const TrackSet& ts, std::int32_t w);

// For a BW-vertex: the two non-terminal label-m tracks at w run inward or
// outward simultaneously. True when the premise does not apply.
bool lemma_3_7_holds(const Chart& c, const Topology& t, const TrackSet& ts, std::int32_t w);

}  // namespace cf
