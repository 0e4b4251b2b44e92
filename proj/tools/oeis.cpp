#include "oeis.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "meander/error.hpp"

namespace meander::cli {

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool all_digits(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && s[0] == '-') s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

bool valid_sequence_id(const std::string& id) {
  return id.size() == 7 && id[0] == 'A' && all_digits(std::string_view(id).substr(1), false);
}

OeisFixture parse_bfile(std::string_view text, const std::string& id, const std::string& source) {
  OeisFixture fx;
  fx.id = id;
  fx.source = source;
  int line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      line.remove_prefix(1);
      if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
      if (!fx.notes.empty()) fx.notes += ' ';
      fx.notes += line;
      continue;
    }
    const auto sp = line.find(' ');
    if (sp == std::string_view::npos) throw SyntaxError("expected 'index value'", line_no, 1);
    const auto index = line.substr(0, sp);
    auto value = line.substr(sp + 1);
    while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
    if (!all_digits(index, true)) throw SyntaxError("bad index", line_no, 1);
    if (!all_digits(value, true)) throw SyntaxError("bad value", line_no, static_cast<int>(sp) + 2);
    fx.values[std::stoi(std::string(index))] = Integer(std::string(value));
  }
  if (fx.values.empty()) throw RangeError("sequence file for " + id + " has no values");
  fx.offset = fx.values.begin()->first;
  return fx;
}

OeisFixture load_fixture(const std::filesystem::path& dir, const std::string& id) {
  if (!valid_sequence_id(id)) throw RangeError("not a sequence id: " + id);
  const auto path = dir / (id + ".txt");
  if (!std::filesystem::exists(path)) throw RangeError("no fixture for " + id + " in " + dir.string());
  return parse_bfile(read_file(path), id, "fixtures");
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("MEANDER_OEIS_CACHE"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
    return std::filesystem::path(xdg) / "meander" / "oeis";
  }
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "meander" / "oeis";
  }
  return std::filesystem::temp_directory_path() / "meander-oeis";
}

OeisFixture fetch_sequence(const std::string& id, const std::filesystem::path& cache_dir) {
  if (!valid_sequence_id(id)) throw RangeError("not a sequence id: " + id);
  const std::string file = "b" + id.substr(1) + ".txt";
  const auto cached = cache_dir / file;
  if (std::filesystem::exists(cached)) return parse_bfile(read_file(cached), id, "fetched");

  httplib::SSLClient client("oeis.org");
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  client.set_follow_location(true);
  auto res = client.Get("/" + id + "/" + file);
  if (!res) throw NetworkError("fetching " + id + ": " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw NetworkError("fetching " + id + ": HTTP " + std::to_string(res->status));
  }
  auto fx = parse_bfile(res->body, id, "fetched");
  std::error_code ec;
  std::filesystem::create_directories(cache_dir, ec);
  std::ofstream out(cached, std::ios::binary);
  if (out) out << res->body;
  return fx;
}

}  // namespace meander::cli
