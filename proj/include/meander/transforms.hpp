#pragma once

// Open <-> closed constructions and the cyclic action on closed meanders.
//
// Closing an open meander joins the two ends of m through one new
// intersection placed to the right of all others: a crossing when m ends
// below l, a tangency (optionally after reflecting the whole picture in l)
// when m ends above it. The cyclic action moves the leftmost intersection of
// a closed meander to the right end; it is realized as detach_leftmost
// followed by the matching append.

#include <cstdint>
#include <vector>

#include "meander/core.hpp"
#include "meander/enumerate.hpp"

namespace meander {

ClosedCode append_transverse(const OpenCode& code);
ClosedCode append_tangent(const OpenCode& code, bool reflected);

struct Detached {
  OpenCode open;
  Crossing removed = Crossing::X;
  // For a removed tangency: the closed curve touched l from below there, so
  // the open code is the reflection and must be re-appended reflected.
  bool reflected = false;
};

Detached detach_leftmost(const ClosedCode& code);
// Inverse of detach_leftmost up to canonicalization.
ClosedCode reattach(const Detached& piece);
ClosedCode rotate_once(const ClosedCode& code);

struct OrbitRecord {
  ClosedCode representative;  // least canonical code in the orbit
  int orbit_size = 0;
  int stabilizer = 0;         // d_O
  int x_census = 0;           // elements obtained by appending a crossing
  int t_census = 0;           // elements obtained by appending a tangency
  int irreducible_preimages = 0;  // elements whose detached open code is irreducible
};

std::vector<OrbitRecord> orbit_census(int n, int k, const SearchOptions& opts = {});

}  // namespace meander
