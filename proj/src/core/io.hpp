#pragma once
// IO-Calculation: closed domains bounded by three consecutive label
// subgraphs, and the inward/outward arc balance of the middle label.
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "chart.hpp"

namespace cf {

// A closed domain F: a union of closed regions whose boundary edges all
// carry labels in {m-1, m, m+1}. `faces` lists every face of the chosen
// regions, so components swallowed by a region are inside F as well.
struct IoDomain {
  std::vector<std::int32_t> regions;  // sorted region ids
  std::vector<std::int32_t> faces;    // sorted face ids of those regions
  int m = 0;
  std::vector<int> boundary_labels;  // labels actually present on the boundary
};

struct IoEnumOptions {
  std::size_t max_subsets = std::size_t{1} << 12;  // region subsets examined
};

struct IoEnumResult {
  std::vector<IoDomain> domains;
  // True when the chart has more regions than the cap allows: only subsets
  // of a region prefix plus every singleton and the full domain were tried.
  bool capped = false;
};

// Every qualifying nonempty region subset, up to the cap. The full subset
// has an empty boundary and always qualifies.
IoEnumResult enumerate_io_domains(const Chart& c, const Topology& t, int m,
                                  IoEnumOptions opts = {});

// Fact (*): count label-m edge germs lying in F at white and black vertices,
// classified inward (edge oriented toward the vertex) or outward. A germ lies
// in F when either face flanking its edge does. Valid charts balance the two
// counts on every domain.
std::pair<int, int> io_balance(const Chart& c, const Topology& t, const IoDomain& f, int m);
inline std::pair<int, int> io_balance(const Chart& c, const Topology& t, const IoDomain& f) {
  return io_balance(c, t, f, f.m);
}

// A hypothetical boundary configuration: arcs fixed near the white and black
// vertices of a would-be closed domain, as in a pseudo-chart argument.
struct IoFixedArc {
  int label = 0;
  bool inward = false;
};

struct IoHypothesis {
  std::vector<IoFixedArc> arcs;
};

std::pair<int, int> io_forced_counts(const IoHypothesis& h, int m);

// Lower-bound step: unequal forced counts cannot close up without white
// vertices in the interior, so at least one is required there.
inline int io_min_interior_whites(const IoHypothesis& h, int m) {
  auto [in, out] = io_forced_counts(h, m);
  return in == out ? 0 : 1;
}

}  // namespace cf
