#include "meander/enumerate.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>

#include "meander/error.hpp"

namespace meander {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw Overflow("count exceeds 64-bit range");
  }
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw Overflow("product exceeds 64-bit range");
  }
  return a * b;
}

std::uint64_t CountTable::at(int n, int k) const {
  if (n < 0 || k < 0) return 0;
  if (n + k > max_total_) {
    throw IncompleteTable("entry (" + std::to_string(n) + "," + std::to_string(k) +
                          ") beyond table order " + std::to_string(max_total_));
  }
  auto it = counts_.find({n, k});
  return it == counts_.end() ? 0 : it->second;
}

void CountTable::set(int n, int k, std::uint64_t count) {
  if (n < 0 || k < 0 || n + k > max_total_) {
    throw RangeError("table entry outside 0 <= n+k <= max_total");
  }
  counts_[{n, k}] = count;
}

void CountTable::add(int n, int k, std::uint64_t count) {
  if (n < 0 || k < 0 || n + k > max_total_) {
    throw RangeError("table entry outside 0 <= n+k <= max_total");
  }
  auto& slot = counts_[{n, k}];
  slot = checked_add(slot, count);
}

std::vector<CountTable::Entry> CountTable::entries() const {
  std::vector<Entry> out;
  for (int n = 0; n <= max_total_; ++n) {
    for (int k = 0; n + k <= max_total_; ++k) out.push_back({n, k, at(n, k)});
  }
  return out;
}

namespace {

void check_order(int n, int k) {
  if (n < 0 || k < 0 || n + k < 1) throw RangeError("order needs n, k >= 0 and n+k >= 1");
  if (n + k > detail::kMaxSearchSize) throw RangeError("total order too large for search");
}

struct Counter {
  std::uint64_t count = 0;
  void leaf(std::span<const int>, std::span<const Crossing>, int) { ++count; }
  void leaf(std::span<const int>, std::span<const Crossing>, Side, int) { ++count; }
};

struct ByCrossings {
  std::array<std::uint64_t, detail::kMaxSearchSize + 1> count{};
  void leaf(std::span<const int>, std::span<const Crossing>, int x) { ++count[x]; }
  void leaf(std::span<const int>, std::span<const Crossing>, Side, int x) { ++count[x]; }
};

// Exact-order stream: walks visit prefixes in lexicographic order and carries
// every surviving type prefix along, so that all codes sharing a visit
// permutation come out together, sorted by type word.
class OrderedOpenStream {
 public:
  OrderedOpenStream(int n, int k, const std::function<void(const OpenCode&)>& sink,
                    detail::Budget& budget)
      : size_(n + k), want_x_(n), want_t_(k), sink_(sink), budget_(budget) {}

  std::uint64_t run() {
    State root;
    std::vector<State> states{root};
    walk(0, 0, 0, states);
    return emitted_;
  }

 private:
  struct State {
    std::array<std::array<std::uint32_t, detail::kMaxSearchSize + 2>, 2> inside{};
    std::array<int, 2> count{0, 0};
    std::array<Crossing, detail::kMaxSearchSize> types{};
    Side side = Side::U;
    int incident = -1;
    int xs = 0;
  };

  static bool blocked(const State& st, Side s, int incident, int from, int to) {
    const int side = static_cast<int>(s);
    const std::uint32_t a = 1u << from;
    const std::uint32_t b = 1u << to;
    for (int j = 0; j < st.count[side]; ++j) {
      if (j == incident) continue;
      const std::uint32_t in = st.inside[side][j];
      if (((in & a) != 0) != ((in & b) != 0)) return true;
    }
    return false;
  }

  static bool exits(const State& st, Side s, int incident, int p) {
    const int side = static_cast<int>(s);
    for (int j = 0; j < st.count[side]; ++j) {
      if (j == incident) continue;
      if (st.inside[side][j] & (1u << p)) return false;
    }
    return true;
  }

  void walk(int depth, int cur, std::uint32_t used, const std::vector<State>& states) {
    for (int p = 1; p <= size_; ++p) {
      if (used & (1u << p)) continue;
      visits_[depth] = p;
      std::vector<State> next;
      for (const State& st : states) {
        if (!budget_.charge(1)) throw ResourceLimit("node budget exceeded");
        if (cur != 0 && blocked(st, st.side, st.incident, cur, p)) continue;
        State base = st;
        const int side = static_cast<int>(st.side);
        const int idx = base.count[side]++;
        base.inside[side][idx] = detail::strictly_between(cur, p);
        for (Crossing t : {Crossing::X, Crossing::T}) {
          State child = base;
          child.types[depth] = t;
          if (t == Crossing::X) {
            child.side = flip(st.side);
            child.incident = -1;
            ++child.xs;
          } else {
            child.incident = idx;
          }
          const int ts = depth + 1 - child.xs;
          if (child.xs > want_x_ || ts > want_t_) continue;
          if (depth == size_ - 1) {
            if (!exits(child, child.side, child.incident, p)) continue;
            emit(child);
          } else {
            next.push_back(std::move(child));
          }
        }
      }
      if (depth < size_ - 1 && !next.empty()) walk(depth + 1, p, used | (1u << p), next);
    }
  }

  void emit(const State& st) {
    std::vector<int> v(visits_.begin(), visits_.begin() + size_);
    std::vector<Crossing> t(st.types.begin(), st.types.begin() + size_);
    sink_(OpenCode(std::move(v), std::move(t)));
    ++emitted_;
  }

  int size_;
  int want_x_;
  int want_t_;
  const std::function<void(const OpenCode&)>& sink_;
  detail::Budget& budget_;
  std::array<int, detail::kMaxSearchSize> visits_{};
  std::uint64_t emitted_ = 0;
};

struct ClosedCollector {
  std::vector<ClosedCode> codes;
  void leaf(std::span<const int> v, std::span<const Crossing> t, Side first, int) {
    codes.emplace_back(std::vector<int>(v.begin(), v.end()),
                       std::vector<Crossing>(t.begin(), t.end()), first);
  }
};

}  // namespace

std::uint64_t count_open(int n, int k, const SearchOptions& opts) {
  check_order(n, k);
  auto total = detail::parallel_open_search<Counter>(
      n + k, n, opts, [] { return Counter{}; },
      [](Counter& into, const Counter& part) {
        into.count = checked_add(into.count, part.count);
      });
  return total.count;
}

std::uint64_t count_closed(int n, int k, const SearchOptions& opts) {
  if (n < 0 || k < 0) throw RangeError("order needs n, k >= 0");
  if (n % 2 != 0 || n + k < 2) return 0;
  check_order(n, k);
  detail::Budget budget(opts.node_budget);
  Counter acc;
  detail::ClosedSearch<Counter> search(n + k, n, acc, budget);
  search.run();
  if (budget.exceeded()) throw ResourceLimit("node budget exceeded");
  return acc.count;
}

std::uint64_t for_each_open(int n, int k, const std::function<void(const OpenCode&)>& sink,
                            const SearchOptions& opts) {
  check_order(n, k);
  detail::Budget budget(opts.node_budget);
  OrderedOpenStream stream(n, k, sink, budget);
  return stream.run();
}

std::vector<OpenCode> enumerate_open(int n, int k, const SearchOptions& opts) {
  std::vector<OpenCode> out;
  for_each_open(n, k, [&](const OpenCode& c) { out.push_back(c); }, opts);
  return out;
}

std::uint64_t for_each_closed(int n, int k, const std::function<void(const ClosedCode&)>& sink,
                              const SearchOptions& opts) {
  if (n < 0 || k < 0) throw RangeError("order needs n, k >= 0");
  if (n % 2 != 0 || n + k < 2) return 0;
  check_order(n, k);
  detail::Budget budget(opts.node_budget);
  ClosedCollector acc;
  detail::ClosedSearch<ClosedCollector> search(n + k, n, acc, budget);
  search.run();
  if (budget.exceeded()) throw ResourceLimit("node budget exceeded");
  std::ranges::sort(acc.codes);
  for (const auto& c : acc.codes) sink(c);
  return acc.codes.size();
}

std::vector<ClosedCode> enumerate_closed(int n, int k, const SearchOptions& opts) {
  std::vector<ClosedCode> out;
  for_each_closed(n, k, [&](const ClosedCode& c) { out.push_back(c); }, opts);
  return out;
}

CountTable census(int max_total, Kind kind, const SearchOptions& opts) {
  if (max_total < 1) throw RangeError("census needs max_total >= 1");
  if (max_total > detail::kMaxSearchSize) throw RangeError("census order too large");
  CountTable table(max_total);
  for (const auto& e : table.entries()) table.set(e.n, e.k, 0);
  for (int size = 1; size <= max_total; ++size) {
    ByCrossings acc;
    if (kind == Kind::open) {
      acc = detail::parallel_open_search<ByCrossings>(
          size, -1, opts, [] { return ByCrossings{}; },
          [](ByCrossings& into, const ByCrossings& part) {
            for (std::size_t x = 0; x < into.count.size(); ++x) {
              into.count[x] = checked_add(into.count[x], part.count[x]);
            }
          });
    } else {
      if (size < 2) continue;
      detail::Budget budget(opts.node_budget);
      detail::ClosedSearch<ByCrossings> search(size, -1, acc, budget);
      search.run();
      if (budget.exceeded()) throw ResourceLimit("node budget exceeded");
    }
    for (int x = 0; x <= size; ++x) table.set(x, size - x, acc.count[x]);
  }
  return table;
}

}  // namespace meander
