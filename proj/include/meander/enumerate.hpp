#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "meander/core.hpp"
#include "meander/detail/search.hpp"

namespace meander {

enum class Kind { open, closed };

// Exact census φ(x,t): (n,k) -> number of classes, complete for n+k <= max_total.
class CountTable {
 public:
  struct Entry {
    int n;
    int k;
    std::uint64_t count;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  CountTable() = default;
  explicit CountTable(int max_total) : max_total_(max_total) {}

  int max_total() const noexcept { return max_total_; }

  // Zero for negative indices; IncompleteTable beyond max_total.
  std::uint64_t at(int n, int k) const;
  bool covers(int n, int k) const noexcept { return n + k <= max_total_; }

  void set(int n, int k, std::uint64_t count);
  // Checked accumulate; Overflow on wraparound.
  void add(int n, int k, std::uint64_t count);

  // Sorted by (n, k).
  std::vector<Entry> entries() const;

  friend bool operator==(const CountTable&, const CountTable&) = default;

 private:
  int max_total_ = 0;
  std::map<std::pair<int, int>, std::uint64_t> counts_;
};

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

std::uint64_t count_open(int n, int k, const SearchOptions& opts = {});
std::uint64_t count_closed(int n, int k, const SearchOptions& opts = {});

// Streams every valid open code of order (n,k) in lexicographic order of
// (visits, types) and returns how many were produced.
std::uint64_t for_each_open(int n, int k, const std::function<void(const OpenCode&)>& sink,
                            const SearchOptions& opts = {});
std::vector<OpenCode> enumerate_open(int n, int k, const SearchOptions& opts = {});

// Canonical closed codes of order (n,k), sorted.
std::uint64_t for_each_closed(int n, int k, const std::function<void(const ClosedCode&)>& sink,
                              const SearchOptions& opts = {});
std::vector<ClosedCode> enumerate_closed(int n, int k, const SearchOptions& opts = {});

CountTable census(int max_total, Kind kind, const SearchOptions& opts = {});

}  // namespace meander
