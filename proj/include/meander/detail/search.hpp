#pragma once

// Depth-first enumeration engines behind count_open / count_closed / census.
//
// The curve is walked along m. At each step the next position is chosen among
// the unused positions lying in the same face as the current one on the side
// of the next arc; the face test is a bitmask intersection over the arcs
// already placed on that side. An arc that ends at the current position (the
// incoming arc at a tangency) never blocks, since arcs sharing an endpoint do
// not cross.
//
// The open search is split at a fixed prefix depth into independent subtree
// tasks; workers pull tasks from an atomic counter and each owns an
// accumulator, so totals do not depend on the worker count.

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "meander/core.hpp"
#include "meander/error.hpp"

namespace meander {

struct SearchOptions {
  unsigned jobs = 0;               // 0: hardware concurrency
  std::uint64_t node_budget = 0;   // 0: unlimited
  int split_depth = 4;
};

namespace detail {

inline constexpr int kMaxSearchSize = 30;

inline std::uint32_t strictly_between(int a, int b) noexcept {
  if (a > b) std::swap(a, b);
  if (b - a < 2) return 0;
  const std::uint32_t upto_b = (b >= 32) ? ~0u : ((1u << b) - 1);  // bits < b
  const std::uint32_t upto_a = (1u << (a + 1)) - 1;                  // bits <= a
  return upto_b & ~upto_a;
}

inline unsigned resolve_jobs(unsigned jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Shared abort/budget bookkeeping for one search run.
class Budget {
 public:
  explicit Budget(std::uint64_t limit) : limit_(limit) {}

  // Returns false once the run must stop.
  bool charge(std::uint64_t nodes) {
    if (limit_ == 0) return !stop_.load(std::memory_order_relaxed);
    const auto total = used_.fetch_add(nodes, std::memory_order_relaxed) + nodes;
    if (total > limit_) stop_.store(true, std::memory_order_relaxed);
    return !stop_.load(std::memory_order_relaxed);
  }
  bool exceeded() const { return limit_ != 0 && stop_.load(); }
  void abort() { stop_.store(true); }
  bool stopped() const { return stop_.load(std::memory_order_relaxed); }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
  std::atomic<bool> stop_{false};
};

// A search prefix: the first `depth` visits and their types.
struct Prefix {
  int depth = 0;
  std::array<std::uint8_t, kMaxSearchSize> visits{};
  std::array<Crossing, kMaxSearchSize> types{};
};

// Open-code search over all codes of size N. If want_x >= 0 only codes with
// exactly want_x transverse crossings are produced. Acc must provide
//   void leaf(std::span<const int> visits, std::span<const Crossing> types, int x_count);
template <class Acc>
class OpenSearch {
 public:
  OpenSearch(int size, int want_x, Acc& acc, Budget& budget)
      : n_(size), want_x_(want_x), acc_(acc), budget_(budget) {
    full_ = (size >= 31) ? ~0u : (((1u << (size + 1)) - 1) & ~1u);
  }

  void collect(int stop_depth, std::vector<Prefix>& out) {
    collect_ = &out;
    stop_depth_ = stop_depth;
    dfs(0, 0, Side::U, 0, -1);
    collect_ = nullptr;
    flush();
  }

  void run(const Prefix& prefix) {
    reset();
    int cur = 0;
    Side s = Side::U;
    int xs = 0;
    int incident = -1;
    for (int d = 0; d < prefix.depth; ++d) {
      const int p = prefix.visits[d];
      const int idx = push_arc(s, cur, p);
      used_ |= 1u << p;
      visits_[d] = p;
      types_[d] = prefix.types[d];
      if (prefix.types[d] == Crossing::X) {
        s = flip(s);
        ++xs;
        incident = -1;
      } else {
        incident = idx;
      }
      cur = p;
    }
    dfs(prefix.depth, cur, s, xs, incident);
    flush();
  }

 private:
  struct ArcRec {
    std::uint32_t inside;
    std::uint32_t ends;
  };

  void reset() {
    used_ = 0;
    count_[0] = count_[1] = 0;
  }

  int push_arc(Side s, int a, int b) {
    const int side = static_cast<int>(s);
    const int idx = count_[side]++;
    arcs_[side][idx] = ArcRec{strictly_between(a, b), (1u << a) | (1u << b)};
    return idx;
  }
  void pop_arc(Side s) { --count_[static_cast<int>(s)]; }

  // Positions reachable from `cur` by a new arc on side s.
  std::uint32_t reachable(int cur, Side s, int incident) const {
    const int side = static_cast<int>(s);
    std::uint32_t allowed = full_ & ~used_;
    const std::uint32_t bit = 1u << cur;
    for (int j = 0; j < count_[side]; ++j) {
      if (j == incident) continue;
      const auto& a = arcs_[side][j];
      allowed &= (a.inside & bit) ? a.inside : ~a.inside;
    }
    return allowed;
  }

  // True if the final ray from p to the right boundary is unobstructed.
  bool exits(int p, Side s, int incident) const {
    const int side = static_cast<int>(s);
    const std::uint32_t bit = 1u << p;
    for (int j = 0; j < count_[side]; ++j) {
      if (j == incident) continue;
      if (arcs_[side][j].inside & bit) return false;
    }
    return true;
  }

  bool x_allowed(int xs, int depth) const {
    if (want_x_ < 0) return true;
    (void)depth;
    return xs + 1 <= want_x_;
  }
  bool t_allowed(int xs, int depth) const {
    if (want_x_ < 0) return true;
    // depth+1 placed so far, xs of them X, this one T.
    return (depth + 1 - xs) <= n_ - want_x_;
  }

  void flush() {
    if (pending_ > 0) {
      budget_.charge(pending_);
      pending_ = 0;
    }
  }

  void dfs(int depth, int cur, Side s, int xs, int incident) {
    if (++pending_ >= 4096) {
      const auto batch = pending_;
      pending_ = 0;
      if (!budget_.charge(batch)) return;
    }
    if (budget_.stopped()) return;
    if (collect_ != nullptr && depth == stop_depth_) {
      Prefix pre;
      pre.depth = depth;
      for (int d = 0; d < depth; ++d) {
        pre.visits[d] = static_cast<std::uint8_t>(visits_[d]);
        pre.types[d] = types_[d];
      }
      collect_->push_back(pre);
      return;
    }
    std::uint32_t allowed = reachable(cur, s, incident);
    while (allowed) {
      const int p = std::countr_zero(allowed);
      allowed &= allowed - 1;
      const int idx = push_arc(s, cur, p);
      used_ |= 1u << p;
      visits_[depth] = p;
      if (depth == n_ - 1) {
        if (x_allowed(xs, depth) && exits(p, flip(s), -1)) {
          types_[depth] = Crossing::X;
          acc_.leaf(std::span<const int>(visits_.data(), n_),
                    std::span<const Crossing>(types_.data(), n_), xs + 1);
        }
        if (t_allowed(xs, depth) && exits(p, s, idx)) {
          types_[depth] = Crossing::T;
          acc_.leaf(std::span<const int>(visits_.data(), n_),
                    std::span<const Crossing>(types_.data(), n_), xs);
        }
      } else {
        if (x_allowed(xs, depth)) {
          types_[depth] = Crossing::X;
          dfs(depth + 1, p, flip(s), xs + 1, -1);
        }
        if (t_allowed(xs, depth)) {
          types_[depth] = Crossing::T;
          dfs(depth + 1, p, s, xs, idx);
        }
      }
      used_ &= ~(1u << p);
      pop_arc(s);
    }
  }

  int n_;
  int want_x_;
  Acc& acc_;
  Budget& budget_;
  std::uint32_t full_ = 0;
  std::uint32_t used_ = 0;
  std::array<std::array<ArcRec, kMaxSearchSize + 2>, 2> arcs_{};
  std::array<int, 2> count_{0, 0};
  std::array<int, kMaxSearchSize> visits_{};
  std::array<Crossing, kMaxSearchSize> types_{};
  std::uint64_t pending_ = 0;
  std::vector<Prefix>* collect_ = nullptr;
  int stop_depth_ = -1;
};

// Runs the open search for codes of size N on `jobs` workers. make_acc() builds
// one accumulator per task; merge(total, task_acc) folds them in task order.
template <class Acc, class MakeAcc, class Merge>
Acc parallel_open_search(int size, int want_x, const SearchOptions& opts, MakeAcc make_acc,
                         Merge merge) {
  if (size < 1 || size > kMaxSearchSize) throw RangeError("search size out of range");
  Budget budget(opts.node_budget);
  const int split = std::clamp(opts.split_depth, 0, size - 1);
  std::vector<Prefix> tasks;
  {
    Acc scratch = make_acc();
    OpenSearch<Acc> seeder(size, want_x, scratch, budget);
    seeder.collect(split, tasks);
  }
  std::vector<Acc> results;
  results.reserve(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) results.push_back(make_acc());

  const unsigned jobs = std::min<unsigned>(resolve_jobs(opts.jobs),
                                           std::max<std::size_t>(tasks.size(), 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size() || budget.stopped()) return;
        OpenSearch<Acc> search(size, want_x, results[i], budget);
        search.run(tasks[i]);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      budget.abort();
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  if (budget.exceeded()) throw ResourceLimit("node budget exceeded");
  Acc total = make_acc();
  for (auto& r : results) merge(total, r);
  return total;
}

// Closed-code search: encodings that start at position 1, for both sides of
// the first arc. Every class has exactly two such encodings (one per
// traversal direction; they coincide only for N = 2 when both arcs lie on the
// same side), so only encodings not larger than their reversal are reported.
// Acc provides
//   void leaf(std::span<const int> visits, std::span<const Crossing> types, Side first, int x_count);
template <class Acc>
class ClosedSearch {
 public:
  ClosedSearch(int size, int want_x, Acc& acc, Budget& budget)
      : n_(size), want_x_(want_x), acc_(acc), budget_(budget) {
    full_ = (size >= 31) ? ~0u : (((1u << (size + 1)) - 1) & ~1u);
  }

  void run() {
    for (Side first : {Side::U, Side::D}) {
      first_ = first;
      count_[0] = count_[1] = 0;
      used_ = 1u << 1;
      visits_[0] = 1;
      dfs(1, 1, first, 0, -1);
    }
    if (pending_ > 0) budget_.charge(pending_);
  }

 private:
  struct ArcRec {
    std::uint32_t inside;
  };

  int push_arc(Side s, int a, int b) {
    const int side = static_cast<int>(s);
    const int idx = count_[side]++;
    arcs_[side][idx] = ArcRec{strictly_between(a, b)};
    return idx;
  }
  void pop_arc(Side s) { --count_[static_cast<int>(s)]; }

  std::uint32_t reachable(int cur, Side s, int incident) const {
    const int side = static_cast<int>(s);
    std::uint32_t allowed = full_ & ~used_;
    const std::uint32_t bit = 1u << cur;
    for (int j = 0; j < count_[side]; ++j) {
      if (j == incident) continue;
      const auto& a = arcs_[side][j];
      allowed &= (a.inside & bit) ? a.inside : ~a.inside;
    }
    return allowed;
  }

  // The closing arc from cur back to position 1. Position 1 is leftmost, so
  // it is never strictly inside an arc; cur must not be either. The first arc
  // (index 0 on its side) shares endpoint 1.
  bool closes(int cur, Side s, int incident) const {
    const int side = static_cast<int>(s);
    const std::uint32_t bit = 1u << cur;
    for (int j = 0; j < count_[side]; ++j) {
      if (j == incident) continue;
      if (s == first_ && j == 0) continue;
      if (arcs_[side][j].inside & bit) return false;
    }
    return true;
  }

  // Compare this encoding with its reversal (visits 1, v[N-1], ..., v[1]).
  bool not_after_reverse(Side closing_side) const {
    for (int i = 1; i < n_; ++i) {
      const int a = visits_[i];
      const int b = visits_[n_ - i];
      if (a != b) return a < b;
    }
    for (int i = 0; i < n_; ++i) {
      const Crossing a = types_[i];
      const Crossing b = types_[(n_ - i) % n_];
      if (a != b) return a < b;
    }
    return first_ <= closing_side;
  }

  void dfs(int depth, int cur, Side s, int xs, int incident) {
    if (++pending_ >= 4096) {
      const auto batch = pending_;
      pending_ = 0;
      if (!budget_.charge(batch)) return;
    }
    if (budget_.stopped()) return;
    std::uint32_t allowed = reachable(cur, s, incident);
    while (allowed) {
      const int p = std::countr_zero(allowed);
      allowed &= allowed - 1;
      const int idx = push_arc(s, cur, p);
      used_ |= 1u << p;
      visits_[depth] = p;
      if (depth == n_ - 1) {
        for (Crossing t : {Crossing::X, Crossing::T}) {
          const Side out = (t == Crossing::X) ? flip(s) : s;
          const int inc = (t == Crossing::X) ? -1 : idx;
          if (!closes(p, out, inc)) continue;
          types_[depth] = t;
          types_[0] = (out == first_) ? Crossing::T : Crossing::X;
          const int total_x = xs + (t == Crossing::X) + (types_[0] == Crossing::X);
          if (want_x_ >= 0 && total_x != want_x_) continue;
          if (!not_after_reverse(out)) continue;
          acc_.leaf(std::span<const int>(visits_.data(), n_),
                    std::span<const Crossing>(types_.data(), n_), first_, total_x);
        }
      } else {
        types_[depth] = Crossing::X;
        dfs(depth + 1, p, flip(s), xs + 1, -1);
        types_[depth] = Crossing::T;
        dfs(depth + 1, p, s, xs, idx);
      }
      used_ &= ~(1u << p);
      pop_arc(s);
    }
  }

  int n_;
  int want_x_;
  Acc& acc_;
  Budget& budget_;
  Side first_ = Side::U;
  std::uint32_t full_ = 0;
  std::uint32_t used_ = 0;
  std::array<std::array<ArcRec, kMaxSearchSize + 2>, 2> arcs_{};
  std::array<int, 2> count_{0, 0};
  std::array<int, kMaxSearchSize> visits_{};
  std::array<Crossing, kMaxSearchSize> types_{};
  std::uint64_t pending_ = 0;
};

}  // namespace detail
}  // namespace meander
