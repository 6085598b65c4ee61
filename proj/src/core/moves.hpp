#pragma once

// Chart moves: site enumeration and application for the move catalog in
// rules/moves.rules, plus assumption flags and the new-disk clearing pass.
//
// A MoveInstance names a concrete site. Site encodings per kind (reversed
// applies the catalog rule right-to-left):
//
//   CI-M1            site {face_dart, winding}; label = hoop label. The face
//                    dart is any dart of the target face (-1 on the empty
//                    chart). winding selects which side of the hoop faces it.
//          reversed  site {hoop_edge}: deletes a hoop whose one side is empty
//                    and which no containment record references.
//   CI-M2            site {d1, d2}: darts of one label and equal parity whose
//                    faces share a region. d1 == d2 splits a parallel hoop
//                    off the strand; otherwise the two edges are smoothed
//                    tail-to-head (merging or splitting components/faces).
//   CI-R2            site {p, q}: the two darts of a bigon face between two
//                    distinct crossings; cancels them.
//          reversed  site {d1, d2}: darts of distant labels whose faces share
//                    a region; inserts a crossing pair.
//   CI-R3            site {d1, d2, d3}: the darts of a triangle face between
//                    three distinct crossings; flips the triangle.
//   CI-M4            site {w1, w2, w3, w4, X, variant}: a square disk with
//                    lone diagonals matching the catalog fragment under the
//                    variant transform; rewrites its neighbourhood.
//          reversed  the same on the rewritten shape.
//   C-II             site {black, d}: pushes the black vertex across the
//                    strand of d (distant label, same face).
//          reversed  site {crossing, piece_edge}: pulls the black vertex at
//                    the end of piece_edge back across the crossing.
//   C-III            site {w, e}: cancels white w against the black vertex of
//                    terminal edge e (not middle at w).
//          reversed  site {black, dF, dG}: rebuilds a white vertex from the
//                    black's edge and the strands of dF (new terminal label)
//                    and dG (the black edge's label), all in one region.
//   CutEdge-macro    site {b1, b2, d_s}: fuses the equal-label terminal edges
//                    at b1/b2 through the strand of d_s (adjacent label,
//                    facing both) and cuts that strand into two stubs.
//
// CI-generic carries no enumeration: its disk-swap engine is what CI-M4
// application uses and is not exposed as instances. NewDisk-pass is the
// new_disk_clear pass below; its R2/R3 steps are ordinary instances.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chart.hpp"
#include "disks.hpp"
#include "rules.hpp"

namespace cf {

struct MoveInstance {
  MoveKind kind = MoveKind::CIGeneric;
  bool reversed = false;
  std::vector<std::int32_t> site;
  int label = 0;   // k binding where used
  int label2 = 0;  // l binding where used
  int dw = 0, df = 0;  // declared complexity delta
  std::uint64_t checksum = 0;  // site fingerprint; apply rejects stale sites
  std::string summary;
};

struct MoveEnumOptions {
  std::size_t max_instances = 4096;  // site-size cap across kinds
  bool dry_run = true;   // keep only instances whose application validates
  bool explain = false;  // note every dry-run rejection with its reason
};

struct MoveEnumResult {
  std::vector<MoveInstance> instances;
  bool capped = false;
  std::vector<std::string> notes;  // diagnostics ("cap exceeded", ...)
};

MoveEnumResult applicable_moves(const Chart& c, const std::vector<MoveKind>& kinds,
                                const RuleSet& rules = default_move_rules(),
                                const MoveEnumOptions& opts = {});

struct MoveApplyResult {
  bool ok = false;
  std::string error;
  Chart chart;           // result (input chart untouched on failure)
  MoveInstance inverse;  // applicable to `chart`; restores the input's code
  int dw = 0, df = 0;    // measured delta
};

// Validates the site against the current chart (checksum + structural
// legality), applies the surgery, re-validates the result, checks the
// measured delta against the declaration and that the exterior is
// untouched. Rejects atomically on any failure.
MoveApplyResult apply_move(const Chart& c, const MoveInstance& m,
                           const RuleSet& rules = default_move_rules());

// Assumption flags: structural facts that the search normal form forbids but
// validity allows. A2: an edge with a black endpoint is neither free nor
// middle-terminal. A3: a free edge or simple hoop not parked at infinity.
// A4: a ring or hoop one of whose complementary domains contains no white.
struct AssumptionFlag {
  std::string tag;  // "A2" | "A3" | "A4"
  std::string witness;
  std::string detail;
};

std::vector<AssumptionFlag> assumption_flags(const Chart& c);

// New-disk clearing: removes every (D,alpha)-arc over the window by bigon
// cancellations, flipping an obstructing triangle across alpha when arcs of
// different labels interleave. Complexity never changes; the pass reports
// the moves it spent. Honest error when the region/arc bookkeeping cannot
// proceed (foreign content in the disk interior, budget exceeded).
struct NewDiskResult {
  bool ok = false;
  std::string error;
  Chart chart;
  int r2_steps = 0;
  int r3_steps = 0;
};

NewDiskResult new_disk_clear(const Chart& c, const DiskRegion& d, const AlphaArc& alpha,
                             const RuleSet& rules = default_move_rules());

}  // namespace cf
