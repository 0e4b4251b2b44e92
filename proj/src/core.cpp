#include "meander/core.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "meander/error.hpp"

namespace meander {

namespace {

void check_permutation(std::span<const int> visits) {
  const int n = static_cast<int>(visits.size());
  std::vector<bool> seen(n + 1, false);
  for (int v : visits) {
    if (v < 1 || v > n) {
      throw RangeError("visit " + std::to_string(v) + " outside 1.." + std::to_string(n));
    }
    if (seen[v]) throw RangeError("visit " + std::to_string(v) + " repeated");
    seen[v] = true;
  }
}

bool planar(const std::vector<Arc>& arcs) {
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (std::size_t j = i + 1; j < arcs.size(); ++j) {
      if (arcs_cross(arcs[i], arcs[j])) return false;
    }
  }
  return true;
}

Arc make_arc(Side side, int a, int b) { return Arc{side, std::min(a, b), std::max(a, b)}; }

}  // namespace

OpenCode::OpenCode(std::vector<int> visits, std::vector<Crossing> types)
    : visits_(std::move(visits)), types_(std::move(types)) {
  if (visits_.empty()) throw RangeError("an open code needs at least one intersection");
  if (visits_.size() != types_.size()) {
    throw RangeError("visit and type sequences differ in length");
  }
  check_permutation(visits_);
}

ClosedCode::ClosedCode(std::vector<int> visits, std::vector<Crossing> types,
                       Side first_arc_side)
    : visits_(std::move(visits)), types_(std::move(types)), first_side_(first_arc_side) {
  if (visits_.size() < 2) throw RangeError("a closed code needs at least two intersections");
  if (visits_.size() != types_.size()) {
    throw RangeError("visit and type sequences differ in length");
  }
  check_permutation(visits_);
  if (std::ranges::count(types_, Crossing::X) % 2 != 0) {
    throw ParityError("a closed curve crosses l an even number of times");
  }
}

std::vector<Side> derive_sides(const OpenCode& code) {
  std::vector<Side> sides;
  sides.reserve(code.size() + 1);
  Side s = Side::U;
  sides.push_back(s);
  for (Crossing c : code.types()) {
    if (c == Crossing::X) s = flip(s);
    sides.push_back(s);
  }
  return sides;
}

std::vector<Side> derive_sides(const ClosedCode& code) {
  const int n = code.size();
  std::vector<Side> sides(n);
  Side s = code.first_arc_side();
  sides[0] = s;
  for (int i = 1; i < n; ++i) {
    if (code.type(i) == Crossing::X) s = flip(s);
    sides[i] = s;
  }
  return sides;
}

std::vector<Arc> arcs_of(const OpenCode& code) {
  const int n = code.size();
  const auto sides = derive_sides(code);
  std::vector<Arc> arcs;
  arcs.reserve(n + 1);
  arcs.push_back(make_arc(sides[0], 0, code.visit(0)));
  for (int i = 0; i + 1 < n; ++i) {
    arcs.push_back(make_arc(sides[i + 1], code.visit(i), code.visit(i + 1)));
  }
  arcs.push_back(make_arc(sides[n], code.visit(n - 1), n + 1));
  return arcs;
}

std::vector<Arc> arcs_of(const ClosedCode& code) {
  const int n = code.size();
  const auto sides = derive_sides(code);
  std::vector<Arc> arcs;
  arcs.reserve(n);
  for (int i = 0; i < n; ++i) {
    arcs.push_back(make_arc(sides[i], code.visit(i), code.visit((i + 1) % n)));
  }
  return arcs;
}

bool is_valid(const OpenCode& code) { return planar(arcs_of(code)); }

bool is_valid(const ClosedCode& code) { return planar(arcs_of(code)); }

bool is_valid(const Code& code) {
  return std::visit([](const auto& c) { return is_valid(c); }, code);
}

OrderPair order_of(const OpenCode& code) {
  const int x = static_cast<int>(std::ranges::count(code.types(), Crossing::X));
  return {x, code.size() - x};
}

OrderPair order_of(const ClosedCode& code) {
  const int x = static_cast<int>(std::ranges::count(code.types(), Crossing::X));
  return {x, code.size() - x};
}

OrderPair order_of(const Code& code) {
  return std::visit([](const auto& c) { return order_of(c); }, code);
}

std::vector<ClosedCode> closed_encodings(const ClosedCode& code) {
  const int n = code.size();
  const auto sides = derive_sides(code);
  std::vector<ClosedCode> out;
  out.reserve(2 * n);
  std::vector<int> v(n);
  std::vector<Crossing> t(n);
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i < n; ++i) {
      v[i] = code.visit((r + i) % n);
      t[i] = code.type((r + i) % n);
    }
    out.emplace_back(v, t, sides[r]);
    // Reversed traversal from visit r: the first arc is arc r-1.
    for (int i = 0; i < n; ++i) {
      v[i] = code.visit(((r - i) % n + n) % n);
      t[i] = code.type(((r - i) % n + n) % n);
    }
    out.emplace_back(v, t, sides[(r - 1 + n) % n]);
  }
  return out;
}

ClosedCode canonical_closed(const ClosedCode& code) {
  auto encodings = closed_encodings(code);
  return *std::ranges::min_element(encodings);
}

// ---------------------------------------------------------------------------
// Text format

namespace {

class Tokenizer {
 public:
  Tokenizer(std::string_view text, int line) : text_(text), line_(line) {
    while (!text_.empty() && (text_.back() == '\n' || text_.back() == '\r')) {
      text_.remove_suffix(1);
    }
  }

  bool done() const { return pos_ >= text_.size(); }

  std::string_view next(const char* expected) {
    if (done()) fail(std::string("unexpected end of input, expected ") + expected);
    if (pos_ > 0) {
      if (text_[pos_] != ' ') fail("expected a single space");
      ++pos_;
      if (pos_ >= text_.size() || text_[pos_] == ' ') {
        fail(std::string("expected ") + expected);
      }
    }
    start_ = pos_;
    while (pos_ < text_.size() && text_[pos_] != ' ') ++pos_;
    return text_.substr(start_, pos_ - start_);
  }

  void expect(std::string_view token) {
    const std::string want(token);
    if (next(want.c_str()) != token) fail("expected '" + want + "'");
  }

  int integer() {
    auto tok = next("an integer");
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.front() == '+' ||
        tok.front() == '-') {
      fail("expected a non-negative integer");
    }
    return value;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what, line_, static_cast<int>(start_) + 1);
  }

  void mark() { start_ = pos_; }

 private:
  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
  std::size_t start_ = 0;
};

struct RawCode {
  bool closed = false;
  std::vector<int> visits;
  std::vector<Crossing> types;
  Side side = Side::U;
};

RawCode parse_raw(std::string_view text, int line) {
  Tokenizer tok(text, line);
  RawCode raw;
  auto kind = tok.next("'O' or 'C'");
  if (kind == "O") {
    raw.closed = false;
  } else if (kind == "C") {
    raw.closed = true;
  } else {
    tok.fail("expected 'O' or 'C'");
  }
  const int n = tok.integer();
  if (n < 1) throw RangeError("code length must be at least 1");
  tok.expect("|");
  tok.expect("v:");
  for (int i = 0; i < n; ++i) raw.visits.push_back(tok.integer());
  tok.expect("|");
  tok.expect("c:");
  for (int i = 0; i < n; ++i) {
    auto t = tok.next("'X' or 'T'");
    if (t == "X") {
      raw.types.push_back(Crossing::X);
    } else if (t == "T") {
      raw.types.push_back(Crossing::T);
    } else {
      tok.fail("expected 'X' or 'T'");
    }
  }
  if (raw.closed) {
    tok.expect("|");
    tok.expect("s:");
    auto s = tok.next("'U' or 'D'");
    if (s == "U") {
      raw.side = Side::U;
    } else if (s == "D") {
      raw.side = Side::D;
    } else {
      tok.fail("expected 'U' or 'D'");
    }
  }
  if (!tok.done()) {
    tok.mark();
    tok.fail("trailing input");
  }
  return raw;
}

}  // namespace

Code parse(std::string_view text, int line) {
  auto raw = parse_raw(text, line);
  if (raw.closed) return ClosedCode(std::move(raw.visits), std::move(raw.types), raw.side);
  return OpenCode(std::move(raw.visits), std::move(raw.types));
}

OpenCode parse_open(std::string_view text, int line) {
  auto code = parse(text, line);
  if (auto* open = std::get_if<OpenCode>(&code)) return *open;
  throw SyntaxError("expected an open code", line, 1);
}

ClosedCode parse_closed(std::string_view text, int line) {
  auto code = parse(text, line);
  if (auto* closed = std::get_if<ClosedCode>(&code)) return *closed;
  throw SyntaxError("expected a closed code", line, 1);
}

std::vector<Code> parse_lines(std::string_view text) {
  std::vector<Code> out;
  int line = 0;
  while (!text.empty()) {
    ++line;
    auto eol = text.find('\n');
    auto row = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    if (row.empty() || row.front() == '#') continue;
    out.push_back(parse(row, line));
  }
  return out;
}

namespace {

template <typename CodeT>
void write_body(std::ostringstream& os, const CodeT& code) {
  os << code.size() << " | v:";
  for (int v : code.visits()) os << ' ' << v;
  os << " | c:";
  for (Crossing c : code.types()) os << ' ' << to_char(c);
}

}  // namespace

std::string serialize(const OpenCode& code) {
  std::ostringstream os;
  os << "O ";
  write_body(os, code);
  return os.str();
}

std::string serialize(const ClosedCode& code) {
  std::ostringstream os;
  os << "C ";
  write_body(os, code);
  os << " | s: " << to_char(code.first_arc_side());
  return os.str();
}

std::string serialize(const Code& code) {
  return std::visit([](const auto& c) { return serialize(c); }, code);
}

}  // namespace meander
