#include "table_io.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>
#include <vector>

#include "meander/error.hpp"

namespace meander::cli {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

template <class T>
T parse_number(std::string_view s, int line, int column) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw SyntaxError("expected a non-negative integer, got '" + std::string(s) + "'", line, column);
  }
  return v;
}

// Rows of a CSV with the given header, parsed into unsigned fields.
std::vector<std::vector<std::uint64_t>> read_csv(std::string_view text, std::string_view header) {
  std::vector<std::vector<std::uint64_t>> rows;
  int line_no = 0;
  bool saw_header = false;
  const auto width = split(header, ',').size();
  while (!text.empty()) {
    const auto eol = text.find('\n');
    auto line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != header) throw SyntaxError("expected header '" + std::string(header) + "'", line_no, 1);
      saw_header = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != width) throw SyntaxError("wrong number of fields", line_no, 1);
    std::vector<std::uint64_t> row;
    int column = 1;
    for (auto f : fields) {
      row.push_back(parse_number<std::uint64_t>(f, line_no, column));
      column += static_cast<int>(f.size()) + 1;
    }
    rows.push_back(std::move(row));
  }
  if (!saw_header) throw SyntaxError("empty table", 1, 1);
  return rows;
}

int order_of_rows(const std::vector<std::vector<std::uint64_t>>& rows) {
  int top = 0;
  for (const auto& r : rows) top = std::max<int>(top, static_cast<int>(r[0] + r[1]));
  return top;
}

// The empty order (0,0) is never written; it may still be present on input.
void require_complete(std::size_t rows, bool origin_listed, int max_total) {
  const std::size_t want =
      static_cast<std::size_t>(max_total + 1) * (max_total + 2) / 2 - (origin_listed ? 0 : 1);
  if (rows != want) {
    throw IncompleteTable("table of order " + std::to_string(max_total) + " needs " +
                          std::to_string(want) + " entries, found " + std::to_string(rows));
  }
}

bool has_origin(const std::vector<std::vector<std::uint64_t>>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r[0] + r[1] == 0; });
}

bool json_has_origin(const json& entries) {
  return std::any_of(entries.begin(), entries.end(), [](const json& e) {
    return e.at("n").get<int>() + e.at("k").get<int>() == 0;
  });
}

std::uint64_t count_field(const json& j) {
  const auto s = j.get<std::string>();
  return parse_number<std::uint64_t>(s, 1, 1);
}

const char* kind_name(Kind k) { return k == Kind::open ? "open" : "closed"; }

}  // namespace

std::string to_csv(const CountTable& table) {
  std::ostringstream out;
  out << "n,k,count\n";
  for (const auto& e : table.entries()) {
    if (e.n + e.k > 0) out << e.n << ',' << e.k << ',' << e.count << '\n';
  }
  return out.str();
}

json to_json(const CountTable& table, Kind kind) {
  json entries = json::array();
  for (const auto& e : table.entries()) {
    if (e.n + e.k == 0) continue;
    entries.push_back({{"n", e.n}, {"k", e.k}, {"count", std::to_string(e.count)}});
  }
  return {{"kind", kind_name(kind)}, {"max_total", table.max_total()}, {"entries", entries}};
}

std::string to_csv(const ClassifiedCensus& census) {
  std::ostringstream out;
  out << "n,k,total,irreducible,snake,iterated_snake\n";
  for (int n = 0; n <= census.max_total(); ++n) {
    for (int k = n == 0 ? 1 : 0; n + k <= census.max_total(); ++k) {
      const auto c = census.at(n, k);
      out << n << ',' << k << ',' << c.total << ',' << c.irreducible << ',' << c.snake << ','
          << c.iterated_snake << '\n';
    }
  }
  return out.str();
}

json to_json(const ClassifiedCensus& census) {
  json entries = json::array();
  for (int n = 0; n <= census.max_total(); ++n) {
    for (int k = n == 0 ? 1 : 0; n + k <= census.max_total(); ++k) {
      const auto c = census.at(n, k);
      entries.push_back({{"n", n},
                         {"k", k},
                         {"total", std::to_string(c.total)},
                         {"irreducible", std::to_string(c.irreducible)},
                         {"snake", std::to_string(c.snake)},
                         {"iterated_snake", std::to_string(c.iterated_snake)}});
    }
  }
  return {{"kind", "classified"}, {"max_total", census.max_total()}, {"entries", entries}};
}

CountTable count_table_from_csv(std::string_view text) {
  const auto rows = read_csv(text, "n,k,count");
  const int top = order_of_rows(rows);
  require_complete(rows.size(), has_origin(rows), top);
  CountTable table(top);
  table.set(0, 0, 0);
  for (const auto& r : rows) table.set(static_cast<int>(r[0]), static_cast<int>(r[1]), r[2]);
  return table;
}

CountTable count_table_from_json(const json& doc) {
  const auto& entries = doc.at("entries");
  int top = 0;
  for (const auto& e : entries) top = std::max(top, e.at("n").get<int>() + e.at("k").get<int>());
  require_complete(entries.size(), json_has_origin(entries), top);
  CountTable table(top);
  table.set(0, 0, 0);
  for (const auto& e : entries) {
    table.set(e.at("n").get<int>(), e.at("k").get<int>(), count_field(e.at("count")));
  }
  return table;
}

ClassifiedCensus classified_from_csv(std::string_view text) {
  const auto rows = read_csv(text, "n,k,total,irreducible,snake,iterated_snake");
  const int top = order_of_rows(rows);
  require_complete(rows.size(), has_origin(rows), top);
  ClassifiedCensus census(top);
  census.set(0, 0, {});
  for (const auto& r : rows) {
    census.set(static_cast<int>(r[0]), static_cast<int>(r[1]), {r[2], r[3], r[4], r[5]});
  }
  return census;
}

ClassifiedCensus classified_from_json(const json& doc) {
  const auto& entries = doc.at("entries");
  int top = 0;
  for (const auto& e : entries) top = std::max(top, e.at("n").get<int>() + e.at("k").get<int>());
  require_complete(entries.size(), json_has_origin(entries), top);
  ClassifiedCensus census(top);
  census.set(0, 0, {});
  for (const auto& e : entries) {
    census.set(e.at("n").get<int>(), e.at("k").get<int>(),
               {count_field(e.at("total")), count_field(e.at("irreducible")),
                count_field(e.at("snake")), count_field(e.at("iterated_snake"))});
  }
  return census;
}

json to_json(const Diagnostic& d) {
  json j{{"subject", d.subject},
         {"expression", d.expression},
         {"failure", d.failure},
         {"reference", d.reference}};
  if (!d.error.empty()) j["error"] = d.error;
  auto mismatch = [](const Mismatch& m) {
    return json{{"n", m.n}, {"k", m.k}, {"literal", to_string(m.literal)},
                {"expected", to_string(m.expected)}};
  };
  if (d.first_mismatch) j["first_mismatch"] = mismatch(*d.first_mismatch);
  if (d.first_non_integer) j["first_non_integer"] = mismatch(*d.first_non_integer);
  if (d.reference_checked) {
    j["reference_check"] = {{"agrees", d.reference_agrees}, {"checked_to", d.reference_checked_to}};
  }
  return j;
}

json to_json(const VerificationReport& report) {
  auto instance = [](const Instance& i) {
    return json{{"instance", i.label}, {"lhs", i.lhs}, {"rhs", i.rhs}, {"holds", i.holds}};
  };
  json instances = json::array();
  for (const auto& i : report.instances) instances.push_back(instance(i));
  json witnesses = json::array();
  for (const auto& i : report.witnesses) witnesses.push_back(instance(i));
  json j{{"identity", report.name},
         {"max_total", report.max_total},
         {"status", to_string(report.status)},
         {"instances", instances},
         {"witnesses", witnesses}};
  if (!report.diagnostics.empty()) {
    json diags = json::array();
    for (const auto& d : report.diagnostics) diags.push_back(to_json(d));
    j["diagnostics"] = diags;
  }
  return j;
}

json to_json(const PowerSeries& s) {
  json arr = json::array();
  for (const auto& c : s.coeffs()) arr.push_back(to_string(c));
  return arr;
}

}  // namespace meander::cli
