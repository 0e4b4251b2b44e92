#pragma once

// Submeanders of an open meander correspond to the common intervals of its
// visit permutation: a block of consecutive positions on l whose visits are
// also consecutive along m. Irreducible meanders are those whose permutation
// has only the trivial intervals; snakes are those where every interval is
// common.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "meander/core.hpp"
#include "meander/enumerate.hpp"

namespace meander {

struct Interval {
  int i = 1;  // leftmost position, 1-based
  int j = 1;  // rightmost position, inclusive
  int length() const noexcept { return j - i + 1; }
  friend constexpr auto operator<=>(const Interval&, const Interval&) = default;
};

// All common intervals, sorted by (i, j).
std::vector<Interval> submeander_intervals(const OpenCode& code);
bool is_common_interval(const OpenCode& code, Interval interval);

bool is_irreducible(const OpenCode& code);
// Total order 1 counts as a snake.
bool is_snake(const OpenCode& code);

OpenCode extract(const OpenCode& code, Interval interval);
OpenCode contract(const OpenCode& code, Interval interval);
// Inserts guest at the host intersection sitting at `position` (1-based on l).
OpenCode insert(const OpenCode& host, int position, const OpenCode& guest);
// Interval occupied by the guest after insert(host, position, guest).
Interval inserted_interval(int position, const OpenCode& guest);

// Memo of iterated-snake verdicts keyed by serialized code. Safe to share
// between threads; entries are idempotent.
class IteratedSnakeCache {
 public:
  std::optional<bool> find(const std::string& key) const;
  void store(const std::string& key, bool value);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, bool> memo_;
};

bool is_iterated_snake(const OpenCode& code, IteratedSnakeCache* cache = nullptr);

// Permutation-level predicates used by the census hot path. `visits` holds
// positions 1..N in the order m meets them.
bool is_simple_permutation(std::span<const int> visits);
bool is_separable_permutation(std::span<const int> visits);

struct ClassCounts {
  std::uint64_t total = 0;
  std::uint64_t irreducible = 0;
  std::uint64_t snake = 0;
  std::uint64_t iterated_snake = 0;
  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

class ClassifiedCensus {
 public:
  ClassifiedCensus() = default;
  explicit ClassifiedCensus(int max_total) : max_total_(max_total) {}

  int max_total() const noexcept { return max_total_; }
  // Zero for negative indices; IncompleteTable beyond max_total.
  ClassCounts at(int n, int k) const;
  void set(int n, int k, const ClassCounts& counts);

  CountTable totals() const;
  CountTable irreducible() const;
  CountTable snakes() const;
  CountTable iterated_snakes() const;

 private:
  CountTable project(std::uint64_t ClassCounts::*field) const;

  int max_total_ = 0;
  std::map<std::pair<int, int>, ClassCounts> counts_;
};

ClassifiedCensus classify_census(int max_total, const SearchOptions& opts = {});

}  // namespace meander
