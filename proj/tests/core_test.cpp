#include <doctest.h>

#include <random>

#include "meander/core.hpp"
#include "meander/enumerate.hpp"
#include "meander/error.hpp"
#include "oracles.hpp"

using namespace meander;

namespace {

std::vector<Side> sides(std::string_view text) { return derive_sides(parse_open(text)); }

}  // namespace

TEST_CASE("sides follow the crossing parity") {
  using enum Side;
  CHECK(sides("O 1 | v: 1 | c: X") == std::vector{U, D});
  CHECK(sides("O 2 | v: 1 2 | c: X T") == std::vector{U, D, D});
  CHECK(sides("O 3 | v: 1 2 3 | c: X X X") == std::vector{U, D, U, D});
}

TEST_CASE("arcs of small codes") {
  auto arcs = arcs_of(parse_open("O 2 | v: 2 1 | c: X X"));
  REQUIRE(arcs.size() == 3);
  CHECK(arcs[0].side == Side::U);
  CHECK(arcs[0].lo == 0);
  CHECK(arcs[0].hi == 2);
  CHECK(arcs[1].side == Side::D);
  CHECK(arcs[1].lo == 1);
  CHECK(arcs[1].hi == 2);
  CHECK(arcs[2].side == Side::U);
  CHECK(arcs[2].lo == 1);
  CHECK(arcs[2].hi == 3);

  auto closed = arcs_of(parse_closed("C 2 | v: 1 2 | c: X X | s: U"));
  REQUIRE(closed.size() == 2);
  CHECK(closed[0].side != closed[1].side);
  CHECK(closed[0].lo == 1);
  CHECK(closed[1].hi == 2);
}

TEST_CASE("validity examples") {
  CHECK_FALSE(is_valid(parse_open("O 2 | v: 2 1 | c: X X")));
  CHECK(is_valid(parse_open("O 3 | v: 3 2 1 | c: X X X")));
  CHECK(is_valid(parse_open("O 1 | v: 1 | c: T")));
}

TEST_CASE("order") {
  CHECK(order_of(parse_open("O 2 | v: 1 2 | c: X T")) == OrderPair{1, 1});
  CHECK(order_of(parse_open("O 3 | v: 3 2 1 | c: X X X")) == OrderPair{3, 0});
  CHECK(order_of(parse_closed("C 3 | v: 1 2 3 | c: X X T | s: U")) == OrderPair{2, 1});
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse("O 2 | v: 1 1 | c: X T"), RangeError);
  CHECK_THROWS_AS(parse("C 3 | v: 1 2 3 | c: X T T | s: U"), ParityError);
  CHECK_THROWS_AS(parse("O 2 | v: 1 2"), SyntaxError);
  CHECK_THROWS_AS(parse("Q 1 | v: 1 | c: X"), SyntaxError);
}

TEST_CASE("validity agrees with the nesting oracle on every code up to size 6") {
  for (int N = 1; N <= 6; ++N) {
    std::vector<int> perm(N);
    std::iota(perm.begin(), perm.end(), 1);
    do {
      for (int n = 0; n <= N; ++n) {
        for (const auto& w : oracle::type_words(n, N - n)) {
          REQUIRE(is_valid(OpenCode(perm, w)) == oracle::open_valid(perm, w));
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("serialize and parse round trip") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const int N = 1 + static_cast<int>(rng() % 9);
    std::vector<int> v(N);
    std::iota(v.begin(), v.end(), 1);
    std::shuffle(v.begin(), v.end(), rng);
    std::vector<Crossing> c(N);
    for (auto& x : c) x = rng() % 2 ? Crossing::X : Crossing::T;
    const OpenCode code(v, c);
    const auto text = serialize(code);
    REQUIRE(serialize(parse(text)) == text);
    REQUIRE(std::get<OpenCode>(parse(text)) == code);
  }
  const auto text = std::string("O 2 | v: 1 2 | c: X T");
  CHECK(serialize(parse(text)) == text);
}

TEST_CASE("two-crossing circle has one canonical form") {
  const auto a = parse_closed("C 2 | v: 1 2 | c: X X | s: U");
  const auto b = parse_closed("C 2 | v: 2 1 | c: X X | s: D");
  CHECK(canonical_closed(a) == canonical_closed(b));
  for (const auto& e : closed_encodings(a)) CHECK(canonical_closed(e) == canonical_closed(a));
}

TEST_CASE("canonical form is invariant under re-encoding") {
  // Re-encode by hand: start the traversal at another point, possibly walking
  // backwards, and recompute the side of the first arc from the arc list.
  for (int total = 2; total <= 6; ++total) {
    for (int n = 0; n <= total; n += 2) {
      for (const auto& code : enumerate_closed(n, total - n)) {
        const auto arcs = arcs_of(code);
        const int N = code.size();
        for (int start = 0; start < N; ++start) {
          for (int dir : {1, -1}) {
            std::vector<int> v;
            std::vector<Crossing> c;
            for (int s = 0; s < N; ++s) {
              const int i = ((start + dir * s) % N + N) % N;
              v.push_back(code.visit(i));
              c.push_back(code.type(i));
            }
            // arc i joins visit i and visit i+1; walking backwards the first
            // arc is the one entering `start`
            const int arc = dir == 1 ? start : (start - 1 + N) % N;
            const ClosedCode re(v, c, arcs[arc].side);
            REQUIRE(is_valid(re));
            REQUIRE(canonical_closed(re) == code);
          }
        }
      }
    }
  }
}
