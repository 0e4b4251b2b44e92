#pragma once

// Combinatorial encodings of open and closed singular meanders.
//
// An open meander is drawn in the conventional way: l is the horizontal
// diameter, the curve m starts at p1 on the upper half of the boundary and
// meets l at N points. The code records, for the i-th intersection along m,
// its position on l (1-based, left to right) and whether m crosses l there
// (X) or only touches it (T). The side of every arc of m is derived from the
// types: m starts above l and each X switches sides.
//
// A closed meander has no distinguished start, so its code also stores the
// side of the arc leaving the first listed intersection. Equivalent closed
// codes differ only in where the traversal starts and in which direction it
// runs; canonical_closed() picks the lexicographically least of those.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace meander {

enum class Crossing : std::uint8_t { X, T };
enum class Side : std::uint8_t { U, D };

constexpr Side flip(Side s) noexcept { return s == Side::U ? Side::D : Side::U; }
constexpr char to_char(Crossing c) noexcept { return c == Crossing::X ? 'X' : 'T'; }
constexpr char to_char(Side s) noexcept { return s == Side::U ? 'U' : 'D'; }

struct OrderPair {
  int n = 0;  // transverse intersections
  int k = 0;  // tangencies
  constexpr int total() const noexcept { return n + k; }
  friend constexpr auto operator<=>(const OrderPair&, const OrderPair&) = default;
};

// A chord of the half-disk picture. For open codes the sentinels 0 and N+1
// stand for the boundary endpoints p1 and p3 of m.
struct Arc {
  Side side = Side::U;
  int lo = 0;
  int hi = 0;
  friend constexpr auto operator<=>(const Arc&, const Arc&) = default;
};

// True when two arcs on the same side strictly interleave. Arcs sharing an
// endpoint never cross.
constexpr bool arcs_cross(const Arc& a, const Arc& b) noexcept {
  if (a.side != b.side) return false;
  if (a.lo == b.lo || a.lo == b.hi || a.hi == b.lo || a.hi == b.hi) return false;
  return (a.lo < b.lo && b.lo < a.hi && a.hi < b.hi) ||
         (b.lo < a.lo && a.lo < b.hi && b.hi < a.hi);
}

class OpenCode {
 public:
  OpenCode() = default;
  // Throws RangeError unless visits is a permutation of 1..N (N >= 1) and
  // both sequences have the same length.
  OpenCode(std::vector<int> visits, std::vector<Crossing> types);

  int size() const noexcept { return static_cast<int>(visits_.size()); }
  std::span<const int> visits() const noexcept { return visits_; }
  std::span<const Crossing> types() const noexcept { return types_; }
  int visit(int i) const { return visits_.at(i); }
  Crossing type(int i) const { return types_.at(i); }

  friend auto operator<=>(const OpenCode&, const OpenCode&) = default;
  friend bool operator==(const OpenCode&, const OpenCode&) = default;

 private:
  std::vector<int> visits_;
  std::vector<Crossing> types_;
};

class ClosedCode {
 public:
  ClosedCode() = default;
  // Throws RangeError on a malformed permutation or N < 2, ParityError when
  // the number of transverse crossings is odd.
  ClosedCode(std::vector<int> visits, std::vector<Crossing> types, Side first_arc_side);

  int size() const noexcept { return static_cast<int>(visits_.size()); }
  std::span<const int> visits() const noexcept { return visits_; }
  std::span<const Crossing> types() const noexcept { return types_; }
  int visit(int i) const { return visits_.at(i); }
  Crossing type(int i) const { return types_.at(i); }
  Side first_arc_side() const noexcept { return first_side_; }

  friend auto operator<=>(const ClosedCode&, const ClosedCode&) = default;
  friend bool operator==(const ClosedCode&, const ClosedCode&) = default;

 private:
  std::vector<int> visits_;
  std::vector<Crossing> types_;
  Side first_side_ = Side::U;
};

using Code = std::variant<OpenCode, ClosedCode>;

// Sides of arcs a_0..a_N of an open code (length N+1, starts with U).
std::vector<Side> derive_sides(const OpenCode& code);
// Side of arc i (from visit i to visit i+1, cyclically) of a closed code.
std::vector<Side> derive_sides(const ClosedCode& code);

std::vector<Arc> arcs_of(const OpenCode& code);
std::vector<Arc> arcs_of(const ClosedCode& code);

bool is_valid(const OpenCode& code);
bool is_valid(const ClosedCode& code);
bool is_valid(const Code& code);

OrderPair order_of(const OpenCode& code);
OrderPair order_of(const ClosedCode& code);
OrderPair order_of(const Code& code);

// All 2N traversal re-encodings (rotation of the start, both directions).
std::vector<ClosedCode> closed_encodings(const ClosedCode& code);
ClosedCode canonical_closed(const ClosedCode& code);

Code parse(std::string_view text, int line = 1);
OpenCode parse_open(std::string_view text, int line = 1);
ClosedCode parse_closed(std::string_view text, int line = 1);
// One code per non-empty line; '#' starts a comment line.
std::vector<Code> parse_lines(std::string_view text);

std::string serialize(const OpenCode& code);
std::string serialize(const ClosedCode& code);
std::string serialize(const Code& code);

}  // namespace meander
