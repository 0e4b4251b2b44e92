#pragma once

// Slow reference implementations shared by the suites. None of them call the
// library's search or validity code.

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <span>
#include <vector>

#include "meander/core.hpp"

namespace oracle {

using meander::Crossing;
using meander::Side;

struct Chord {
  Side side;
  int lo, hi;
};

// Arcs of an open code recomputed from the definition: the curve starts at
// point 0 on the upper side, a crossing switches sides and the tail ends at N+1.
inline std::vector<Chord> open_chords(const std::vector<int>& v, const std::vector<Crossing>& c) {
  std::vector<Chord> out;
  Side s = Side::U;
  int prev = 0;
  for (std::size_t i = 0; i <= v.size(); ++i) {
    const int next = i < v.size() ? v[i] : static_cast<int>(v.size()) + 1;
    out.push_back({s, std::min(prev, next), std::max(prev, next)});
    if (i < v.size() && c[i] == Crossing::X) s = meander::flip(s);
    prev = next;
  }
  return out;
}

// Chords on one side are drawable iff they nest like parentheses. Chords that
// share an endpoint are ordered so that the shorter one is closed first.
inline bool side_nests(std::vector<Chord> chords) {
  std::sort(chords.begin(), chords.end(), [](const Chord& a, const Chord& b) {
    return a.lo != b.lo ? a.lo < b.lo : a.hi > b.hi;
  });
  std::vector<int> stack;  // right ends of open chords
  for (const auto& ch : chords) {
    while (!stack.empty() && stack.back() <= ch.lo) stack.pop_back();
    if (!stack.empty() && ch.hi > stack.back()) return false;
    stack.push_back(ch.hi);
  }
  return true;
}

inline bool drawable(const std::vector<Chord>& chords) {
  std::vector<Chord> up, down;
  for (const auto& ch : chords) (ch.side == Side::U ? up : down).push_back(ch);
  return side_nests(up) && side_nests(down);
}

inline bool open_valid(const std::vector<int>& v, const std::vector<Crossing>& c) {
  return drawable(open_chords(v, c));
}

// All type words with exactly n crossings among n+k letters.
inline std::vector<std::vector<Crossing>> type_words(int n, int k) {
  std::vector<std::vector<Crossing>> out;
  const int N = n + k;
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    if (std::popcount(mask) != n) continue;
    std::vector<Crossing> w(N);
    for (int i = 0; i < N; ++i) w[i] = (mask >> i) & 1u ? Crossing::X : Crossing::T;
    out.push_back(w);
  }
  return out;
}

// Every permutation and type word, filtered by the nesting test.
inline std::vector<meander::OpenCode> brute_open(int n, int k) {
  std::vector<meander::OpenCode> out;
  const int N = n + k;
  if (N == 0) return out;
  std::vector<int> perm(N);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    for (const auto& w : type_words(n, k)) {
      if (open_valid(perm, w)) out.emplace_back(perm, w);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline bool is_common(const std::vector<int>& v, int i, int j) {
  // positions i..j are visited in one contiguous run
  int first = -1, last = -1;
  for (int s = 0; s < static_cast<int>(v.size()); ++s) {
    if (v[s] >= i && v[s] <= j) {
      if (first < 0) first = s;
      last = s;
    }
  }
  return last - first == j - i;
}

// Pattern containment of 2413 or 3142, by checking every 4-subset.
inline bool contains_2413_or_3142(const std::vector<int>& v) {
  const int N = static_cast<int>(v.size());
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b)
      for (int c = b + 1; c < N; ++c)
        for (int d = c + 1; d < N; ++d) {
          const int p = v[a], q = v[b], r = v[c], s = v[d];
          if (r < p && p < s && s < q) return true;  // 2413
          if (q < s && s < p && p < r) return true;  // 3142
        }
  return false;
}

inline std::vector<int> to_vec(std::span<const int> s) { return {s.begin(), s.end()}; }
inline std::vector<Crossing> to_vec(std::span<const Crossing> s) { return {s.begin(), s.end()}; }

}  // namespace oracle
