#pragma once

// Disk features. A simple closed curve inside a label subgraph cuts the
// sphere into two disks; both sides are reported as angled disks carrying
// their feeler structure. On top of that: associated disks of loops,
// lenses, M4-disks, nice edges, and (D,alpha)-arcs.

#include <cstdint>
#include <optional>
#include <vector>

#include "chart.hpp"
#include "tracks.hpp"

namespace cf {

// One run of the boundary walk: a whole track, traversed with or against
// its own dart order. A closed boundary (ring/hoop) is a single segment.
struct BoundarySeg {
  Track track;
  bool reversed = false;
};

struct DiskRegion {
  std::vector<std::int32_t> curve_edges;      // graph edges of the boundary
  std::vector<BoundarySeg> boundary;          // cyclic walk order
  std::vector<std::int32_t> boundary_whites;  // boundary_whites[i] starts boundary[i]
  CurveSplit split;                           // retained for side queries
  int side = 0;                               // which side of split this is
  std::vector<std::int32_t> faces;            // faces on this side
  int interior_whites = 0;
  bool has_inf = false;  // the infinity face lies in this region

  bool region_inside(std::int32_t r) const { return split.region_side[r] == side; }
  bool vertex_inside(std::int32_t v) const { return split.vertex_side[v] == side; }
};

// V - E + F over the closed region; 1 for every genuine disk. Regions that
// swallow embedded components are disks with holes, hence the correction
// (2 - #faces merged) per region instead of 1 per face.
int disk_euler(const Chart& c, const Topology& t, const DiskRegion& d);

// Side of the germ of a whole (non-curve) edge.
int edge_side(const Topology& t, const CurveSplit& s, std::int32_t e);

struct Feeler {
  std::int32_t end = -1;    // label-m end at the boundary white, germ into the disk
  std::int32_t white = -1;
  std::int32_t track = -1;  // index into the label-m track set
  TrackRole role = TrackRole::Internal;
};

struct AngledDisk {
  DiskRegion region;
  int label = 0;  // m
  int k = 0;      // white vertices on the boundary
  std::vector<Feeler> feelers;
  bool special = false;  // every feeler terminal (vacuously true)
};

struct DiskEnumOptions {
  std::size_t max_curves = 4096;    // abort beyond this many closed curves
  std::size_t max_steps = 1 << 20;  // cycle-search expansion budget
};

struct DiskEnumResult {
  std::vector<AngledDisk> disks;  // two per curve, side 0 first
  TrackSet tracks;                // the label-m track set feelers index into
  std::size_t n_curves = 0;
  bool capped = false;  // budget hit; result incomplete
};

// Every simple closed curve contained in the label-m subgraph, both sides.
DiskEnumResult enumerate_disk_regions(const Chart& c, const Topology& t, int m,
                                      const DiskEnumOptions& opts = {});

// The side of the loop not containing the third label-m edge at its white
// vertex. nullopt if `loop` is not a loop or the curve fails to split.
std::optional<DiskRegion> associated_disk(const Chart& c, const Topology& t, const Track& loop);

struct Lens {
  DiskRegion region;
  int m = 0;     // boundary labels m (e1) and m+1 (e2)
  Track e1, e2;  // internal edges bounding the lens
  std::int32_t w1 = -1, w2 = -1;
  bool cond_i = false;   // no middle arc on e1 or e2
  bool cond_ii = false;  // e1 or e2 middle at both corners
};

std::vector<Lens> find_lenses(const Chart& c, const Topology& t);

// Internal tracks of the neighbour labels forming proper arcs of d whose
// endpoint whites have no label-k end into the interior.
std::vector<Track> find_nice_edges(const Chart& c, const Topology& t, const AngledDisk& d);

struct M4Disk {
  AngledDisk disk;  // 4-angled, label k, no interior whites
  Track e5, e6;     // lone diagonals of labels k-1 / k+1, opposite corners
};

std::vector<M4Disk> find_m4_disks(const Chart& c, const Topology& t,
                                  const DiskEnumOptions& opts = {});

// Sub-arc of one boundary segment: covers `count` consecutive pass-through
// vertices of that track starting at `first` (indices into track.through).
struct AlphaArc {
  int seg = 0;
  int first = 0;
  int count = 0;
};

// A maximal label-k piece with both ends crossing alpha and interior inside
// the disk.
struct DAlphaArc {
  std::int32_t track = -1;             // index into the label-k track set
  int from_event = -1, to_event = -1;  // through-indices on that track
  std::vector<std::int32_t> darts;     // oriented along the track walk
};

// nullopt when alpha does not denote a sub-arc of one internal boundary
// edge (bad segment index, window out of range, black-ended host).
std::optional<std::vector<DAlphaArc>> find_d_alpha_arcs(const Chart& c, const Topology& t,
                                                        const DiskRegion& d,
                                                        const AlphaArc& alpha, int k);

}  // namespace cf
