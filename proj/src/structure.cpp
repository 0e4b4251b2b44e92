#include "meander/structure.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

#include "meander/error.hpp"

namespace meander {

namespace {

// index_of[p] = index along m of the intersection at position p.
std::vector<int> inverse(std::span<const int> visits) {
  std::vector<int> index_of(visits.size() + 1, 0);
  for (int i = 0; i < static_cast<int>(visits.size()); ++i) index_of[visits[i]] = i;
  return index_of;
}

void require_valid(const OpenCode& code, const char* what) {
  if (!is_valid(code)) throw InvalidCode(std::string(what) + " is not a valid meander code");
}

}  // namespace

std::vector<Interval> submeander_intervals(const OpenCode& code) {
  const int n = code.size();
  const auto index_of = inverse(code.visits());
  std::vector<Interval> out;
  for (int i = 1; i <= n; ++i) {
    int lo = index_of[i];
    int hi = index_of[i];
    for (int j = i; j <= n; ++j) {
      lo = std::min(lo, index_of[j]);
      hi = std::max(hi, index_of[j]);
      if (hi - lo == j - i) out.push_back({i, j});
    }
  }
  return out;
}

bool is_common_interval(const OpenCode& code, Interval iv) {
  const int n = code.size();
  if (iv.i < 1 || iv.j > n || iv.i > iv.j) return false;
  const auto index_of = inverse(code.visits());
  int lo = n;
  int hi = -1;
  for (int p = iv.i; p <= iv.j; ++p) {
    lo = std::min(lo, index_of[p]);
    hi = std::max(hi, index_of[p]);
  }
  return hi - lo == iv.j - iv.i;
}

bool is_irreducible(const OpenCode& code) {
  const int n = code.size();
  return n > 2 && static_cast<int>(submeander_intervals(code).size()) == n + 1;
}

bool is_snake(const OpenCode& code) {
  const int n = code.size();
  if (n == 1) return true;
  return static_cast<int>(submeander_intervals(code).size()) == n * (n + 1) / 2;
}

OpenCode extract(const OpenCode& code, Interval iv) {
  if (!is_common_interval(code, iv)) throw NotASubmeander("interval is not a submeander");
  std::vector<int> visits;
  std::vector<Crossing> types;
  int block_x = 0;
  for (int idx = 0; idx < code.size(); ++idx) {
    const int p = code.visit(idx);
    if (p >= iv.i && p <= iv.j) {
      visits.push_back(p - iv.i + 1);
      types.push_back(code.type(idx));
      block_x += code.type(idx) == Crossing::X;
    }
  }
  // Sides are derived from the start, so a block entered from below is
  // reflected to start above l. When m leaves the block on the side it came
  // in, the two strands cross the block boundary in the order of their
  // endpoints on l; if the exit comes first the piece is mirrored.
  if (block_x % 2 == 0 && visits.front() > visits.back()) {
    for (auto& v : visits) v = iv.length() + 1 - v;
  }
  return OpenCode(std::move(visits), std::move(types));
}

OpenCode contract(const OpenCode& code, Interval iv) {
  if (!is_common_interval(code, iv)) throw NotASubmeander("interval is not a submeander");
  if (iv.length() == code.size()) throw FullInterval("cannot contract the whole meander");
  const int shrink = iv.length() - 1;
  int block_x = 0;
  for (int idx = 0; idx < code.size(); ++idx) {
    const int p = code.visit(idx);
    if (p >= iv.i && p <= iv.j && code.type(idx) == Crossing::X) ++block_x;
  }
  std::vector<int> visits;
  std::vector<Crossing> types;
  bool placed = false;
  for (int idx = 0; idx < code.size(); ++idx) {
    const int p = code.visit(idx);
    if (p >= iv.i && p <= iv.j) {
      if (!placed) {
        visits.push_back(iv.i);
        types.push_back(block_x % 2 == 1 ? Crossing::X : Crossing::T);
        placed = true;
      }
      continue;
    }
    visits.push_back(p > iv.j ? p - shrink : p);
    types.push_back(code.type(idx));
  }
  return OpenCode(std::move(visits), std::move(types));
}

namespace {

// Two arcs on one side leave a point of l towards offsets a and b (non-zero).
// Near the point, an arc to offset d sits at an angle that increases with
// -1/d, so the arc towards a is met first from the left iff 1/a < 1/b.
bool entry_left_of_exit(int a, int b) {
  if ((a < 0) == (b < 0)) return a > b;
  return a < 0;
}

}  // namespace

Interval inserted_interval(int position, const OpenCode& guest) {
  return {position, position + guest.size() - 1};
}

OpenCode insert(const OpenCode& host, int position, const OpenCode& guest) {
  require_valid(host, "host");
  require_valid(guest, "guest");
  if (position < 1 || position > host.size()) throw RangeError("insertion point out of range");
  const auto index_of = inverse(host.visits());
  const int at = index_of[position];
  const int guest_x = static_cast<int>(std::ranges::count(guest.types(), Crossing::X));
  const int need = host.type(at) == Crossing::X ? 1 : 0;
  if (guest_x % 2 != need) {
    throw ParityMismatch("guest crossing parity does not match the host point");
  }
  // At a tangency both host arcs leave the point on one side; the guest is
  // mirrored when the outgoing arc meets the small circle around the point
  // to the left of the incoming one.
  bool mirror = false;
  if (host.type(at) == Crossing::T) {
    const int q_in = at == 0 ? 0 : host.visit(at - 1);
    const int q_out = at + 1 == host.size() ? host.size() + 1 : host.visit(at + 1);
    mirror = !entry_left_of_exit(q_in - position, q_out - position);
  }
  const int grow = guest.size() - 1;
  std::vector<int> visits;
  std::vector<Crossing> types;
  visits.reserve(host.size() + grow);
  types.reserve(host.size() + grow);
  for (int idx = 0; idx < host.size(); ++idx) {
    if (idx == at) {
      for (int g = 0; g < guest.size(); ++g) {
        const int v = mirror ? guest.size() + 1 - guest.visit(g) : guest.visit(g);
        visits.push_back(position + v - 1);
        types.push_back(guest.type(g));
      }
      continue;
    }
    const int p = host.visit(idx);
    visits.push_back(p > position ? p + grow : p);
    types.push_back(host.type(idx));
  }
  return OpenCode(std::move(visits), std::move(types));
}

std::optional<bool> IteratedSnakeCache::find(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = memo_.find(key);
  if (it == memo_.end()) return std::nullopt;
  return it->second;
}

void IteratedSnakeCache::store(const std::string& key, bool value) {
  std::lock_guard lock(mutex_);
  memo_.emplace(key, value);
}

std::size_t IteratedSnakeCache::size() const {
  std::lock_guard lock(mutex_);
  return memo_.size();
}

// Contracting one snake block of an iterated snake always leaves an iterated
// snake, so the first snake block found (longest first) decides.
bool is_iterated_snake(const OpenCode& code, IteratedSnakeCache* cache) {
  if (is_snake(code)) return true;
  std::string key;
  if (cache != nullptr) {
    key = serialize(code);
    if (auto hit = cache->find(key)) return *hit;
  }
  auto intervals = submeander_intervals(code);
  std::ranges::stable_sort(intervals, [](const Interval& a, const Interval& b) {
    return a.length() > b.length();
  });
  bool result = false;
  for (const auto& iv : intervals) {
    if (iv.length() < 2 || iv.length() == code.size()) continue;
    if (!is_snake(extract(code, iv))) continue;
    result = is_iterated_snake(contract(code, iv), cache);
    break;
  }
  if (cache != nullptr) cache->store(key, result);
  return result;
}

bool is_simple_permutation(std::span<const int> visits) {
  const int n = static_cast<int>(visits.size());
  if (n < 3) return false;
  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(visits[i] - visits[i + 1]) == 1) return false;
  }
  for (int i = 0; i < n; ++i) {
    int lo = visits[i];
    int hi = visits[i];
    for (int j = i + 1; j < n; ++j) {
      lo = std::min(lo, visits[j]);
      hi = std::max(hi, visits[j]);
      if (hi - lo == j - i && j - i + 1 < n) return false;
    }
  }
  return true;
}

// Greedy block merging: push each value as a one-point block and merge the
// two topmost blocks while they form a contiguous range. Separable
// permutations collapse to a single block.
bool is_separable_permutation(std::span<const int> visits) {
  std::array<std::pair<int, int>, detail::kMaxSearchSize + 1> stack{};
  std::vector<std::pair<int, int>> heap;
  std::pair<int, int>* blocks = stack.data();
  if (visits.size() > stack.size()) {
    heap.resize(visits.size());
    blocks = heap.data();
  }
  int top = 0;
  for (int v : visits) {
    blocks[top++] = {v, v};
    while (top >= 2) {
      auto& below = blocks[top - 2];
      const auto& above = blocks[top - 1];
      if (below.second + 1 == above.first || above.second + 1 == below.first) {
        below = {std::min(below.first, above.first), std::max(below.second, above.second)};
        --top;
      } else {
        break;
      }
    }
  }
  return top == 1;
}

ClassCounts ClassifiedCensus::at(int n, int k) const {
  if (n < 0 || k < 0) return {};
  if (n + k > max_total_) {
    throw IncompleteTable("entry (" + std::to_string(n) + "," + std::to_string(k) +
                          ") beyond classified order " + std::to_string(max_total_));
  }
  auto it = counts_.find({n, k});
  return it == counts_.end() ? ClassCounts{} : it->second;
}

void ClassifiedCensus::set(int n, int k, const ClassCounts& counts) {
  if (n < 0 || k < 0 || n + k > max_total_) throw RangeError("entry outside table");
  counts_[{n, k}] = counts;
}

CountTable ClassifiedCensus::project(std::uint64_t ClassCounts::*field) const {
  CountTable table(max_total_);
  for (int n = 0; n <= max_total_; ++n) {
    for (int k = 0; n + k <= max_total_; ++k) table.set(n, k, at(n, k).*field);
  }
  return table;
}

CountTable ClassifiedCensus::totals() const { return project(&ClassCounts::total); }
CountTable ClassifiedCensus::irreducible() const { return project(&ClassCounts::irreducible); }
CountTable ClassifiedCensus::snakes() const { return project(&ClassCounts::snake); }
CountTable ClassifiedCensus::iterated_snakes() const {
  return project(&ClassCounts::iterated_snake);
}

namespace {

struct ClassAcc {
  std::array<ClassCounts, detail::kMaxSearchSize + 1> by_x{};

  void leaf(std::span<const int> visits, std::span<const Crossing>, int x) {
    auto& c = by_x[x];
    ++c.total;
    const int n = static_cast<int>(visits.size());
    if (n <= 2) {
      ++c.snake;
      ++c.iterated_snake;
      return;
    }
    bool increasing = true;
    bool decreasing = true;
    for (int i = 0; i + 1 < n; ++i) {
      increasing &= visits[i + 1] == visits[i] + 1;
      decreasing &= visits[i + 1] == visits[i] - 1;
    }
    if (increasing || decreasing) {
      ++c.snake;
      ++c.iterated_snake;
      return;
    }
    if (is_separable_permutation(visits)) {
      ++c.iterated_snake;
    } else if (is_simple_permutation(visits)) {
      ++c.irreducible;
    }
  }

  void merge(const ClassAcc& other) {
    for (std::size_t x = 0; x < by_x.size(); ++x) {
      auto& a = by_x[x];
      const auto& b = other.by_x[x];
      a.total = checked_add(a.total, b.total);
      a.irreducible = checked_add(a.irreducible, b.irreducible);
      a.snake = checked_add(a.snake, b.snake);
      a.iterated_snake = checked_add(a.iterated_snake, b.iterated_snake);
    }
  }
};

}  // namespace

ClassifiedCensus classify_census(int max_total, const SearchOptions& opts) {
  if (max_total < 1) throw RangeError("classify_census needs max_total >= 1");
  if (max_total > detail::kMaxSearchSize) throw RangeError("census order too large");
  ClassifiedCensus result(max_total);
  result.set(0, 0, {});
  for (int size = 1; size <= max_total; ++size) {
    auto acc = detail::parallel_open_search<ClassAcc>(
        size, -1, opts, [] { return ClassAcc{}; },
        [](ClassAcc& into, const ClassAcc& part) { into.merge(part); });
    for (int x = 0; x <= size; ++x) result.set(x, size - x, acc.by_x[x]);
  }
  return result;
}

}  // namespace meander
