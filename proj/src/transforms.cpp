#include "meander/transforms.hpp"

#include <algorithm>
#include <set>

#include "meander/error.hpp"
#include "meander/structure.hpp"

namespace meander {

namespace {

int count_x(std::span<const Crossing> types) {
  return static_cast<int>(std::ranges::count(types, Crossing::X));
}

// The new point sits at position N+1. The initial ray of m slides along the
// upper boundary to the right end and becomes the arc from N+1 back to the
// first visit, so the closed traversal starts at visits[0] with the side of
// open arc a_1.
ClosedCode close_with(const OpenCode& code, Crossing last, bool reflected) {
  if (!is_valid(code)) throw InvalidCode("cannot close an invalid open code");
  std::vector<int> visits(code.visits().begin(), code.visits().end());
  std::vector<Crossing> types(code.types().begin(), code.types().end());
  visits.push_back(code.size() + 1);
  types.push_back(last);
  Side first = derive_sides(code)[1];
  if (reflected) first = flip(first);
  return canonical_closed(ClosedCode(std::move(visits), std::move(types), first));
}

}  // namespace

ClosedCode append_transverse(const OpenCode& code) {
  if (count_x(code.types()) % 2 == 0) {
    throw ParityError("append_transverse needs an odd number of crossings");
  }
  return close_with(code, Crossing::X, false);
}

ClosedCode append_tangent(const OpenCode& code, bool reflected) {
  if (count_x(code.types()) % 2 != 0) {
    throw ParityError("append_tangent needs an even number of crossings");
  }
  return close_with(code, Crossing::T, reflected);
}

// Cutting at position 1 turns its two arcs into boundary rays. The new p1
// strand is the upper one; at a tangency from below the whole picture is
// reflected first. At a tangency both strands lie on one side and the inner
// one (smaller far endpoint) must become the initial ray, otherwise the two
// rays would interleave.
Detached detach_leftmost(const ClosedCode& code) {
  if (!is_valid(code)) throw InvalidCode("cannot detach from an invalid closed code");
  const int n = code.size();
  const auto sides = derive_sides(code);
  int r = 0;
  while (code.visit(r) != 1) ++r;
  const int next = (r + 1) % n;
  const int prev = (r - 1 + n) % n;

  Detached out;
  out.removed = code.type(r);
  bool forward = false;
  if (out.removed == Crossing::X) {
    forward = sides[r] == Side::U;
  } else {
    out.reflected = sides[r] == Side::D;
    forward = code.visit(next) < code.visit(prev);
  }

  std::vector<int> visits;
  std::vector<Crossing> types;
  visits.reserve(n - 1);
  types.reserve(n - 1);
  for (int step = 1; step < n; ++step) {
    const int idx = forward ? (r + step) % n : ((r - step) % n + n) % n;
    visits.push_back(code.visit(idx) - 1);
    types.push_back(code.type(idx));
  }
  out.open = OpenCode(std::move(visits), std::move(types));
  return out;
}

ClosedCode reattach(const Detached& piece) {
  return piece.removed == Crossing::X ? append_transverse(piece.open)
                                      : append_tangent(piece.open, piece.reflected);
}

ClosedCode rotate_once(const ClosedCode& code) { return reattach(detach_leftmost(code)); }

std::vector<OrbitRecord> orbit_census(int n, int k, const SearchOptions& opts) {
  if (n < 2 || n % 2 != 0 || k < 0) throw RangeError("orbit_census needs even n >= 2, k >= 0");
  const int total = n + k;
  const auto codes = enumerate_closed(n, k, opts);
  std::set<ClosedCode> seen;
  std::vector<OrbitRecord> out;
  // codes is sorted, so the first unseen code of each orbit is its least member.
  for (const auto& start : codes) {
    if (seen.contains(start)) continue;
    OrbitRecord rec;
    rec.representative = start;
    ClosedCode cur = start;
    do {
      seen.insert(cur);
      ++rec.orbit_size;
      int at_right = 0;
      while (cur.visit(at_right) != total) ++at_right;
      ++(cur.type(at_right) == Crossing::X ? rec.x_census : rec.t_census);
      if (is_irreducible(detach_leftmost(cur).open)) ++rec.irreducible_preimages;
      cur = rotate_once(cur);
      if (rec.orbit_size > total) throw InvalidCode("rotation failed to return within n+k steps");
    } while (cur != start);
    if (total % rec.orbit_size != 0) throw InvalidCode("orbit size does not divide n+k");
    rec.stabilizer = total / rec.orbit_size;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace meander
