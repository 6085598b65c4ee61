#pragma once

// Canonical codes for embedded charts and the symmetry operators that the
// code deliberately does not quotient out.
//
// The code of a connected component is the minimum, over all starting darts,
// of a breadth-first dart encoding of (sigma, alpha, kinds, labels, edge
// directions).  Components are tied together along the region tree of the
// containment records; the infinity marker is presentation data and is
// ignored.  Two charts get equal codes exactly when they are isomorphic as
// labeled oriented sphere embeddings (up to renaming every id).

#include <string>

#include "chart.hpp"

namespace cf {

std::string canonical_code(const Chart& c);
std::string canonical_code(const Chart& c, const Topology& t);

// Mirror image: every rotation reversed. Face designators are re-aimed so
// they keep naming the same geometric face.
Chart reflected(const Chart& c);

// Reverse every edge arrow, keeping the embedding.
Chart orientation_reversed(const Chart& c);

// Label change i -> n - i.
Chart label_flipped(const Chart& c);

// 128-bit digest of a canonical code, for visited-set bookkeeping.
struct Digest {
  std::uint64_t hi = 0, lo = 0;
  bool operator==(const Digest&) const = default;
  bool operator<(const Digest& o) const { return hi != o.hi ? hi < o.hi : lo < o.lo; }
};
Digest digest_of(const std::string& code);

struct DigestHash {
  std::size_t operator()(const Digest& d) const { return (std::size_t)(d.hi ^ d.lo); }
};

}  // namespace cf
