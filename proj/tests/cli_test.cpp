#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "commands.hpp"
#include "meander/enumerate.hpp"
#include "meander/structure.hpp"
#include "oeis.hpp"
#include "render.hpp"
#include "table_io.hpp"

using namespace meander;
using namespace meander::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result meander_cmd(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t occurrences(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("meander-test-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("count command") {
  auto r = meander_cmd({"count", "open", "--n", "1", "--k", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "4\n");
  CHECK(meander_cmd({"count", "closed", "--n", "2", "--k", "1"}).out == "6\n");

  r = meander_cmd({"count", "open", "--max-total", "3", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(occurrences(r.out, "\n") == 10);  // header and 9 rows
  CHECK(r.out.find("\n3,0,2\n") != std::string::npos);

  r = meander_cmd({"--format", "json", "count", "open", "--max-total", "2"});
  const auto doc = json::parse(r.out);
  CHECK(doc["kind"] == "open");
  CHECK(doc["entries"][3]["count"] == "4");
}

TEST_CASE("exit codes") {
  CHECK(meander_cmd({}).code == 2);
  CHECK(meander_cmd({"frobnicate"}).code == 2);
  CHECK(meander_cmd({"count", "open"}).code == 2);
  CHECK(meander_cmd({"count", "sideways", "--n", "1", "--k", "1"}).code == 2);
  CHECK(meander_cmd({"verify", "no-such-identity"}).code == 2);
  CHECK(meander_cmd({"--help"}).code == 0);
  CHECK(meander_cmd({"--node-budget", "10", "count", "open", "--n", "3", "--k", "5"}).code == 1);
  CHECK(meander_cmd({"render", "--code", "O 2 | v: 2 1 | c: X X"}).code == 1);
  CHECK(meander_cmd({"render", "--code", "O 2 | v: 2 2 | c: X X"}).code == 1);
  CHECK(meander_cmd({"ratios", "--n", "2"}).code == 2);
}

TEST_CASE("classify command") {
  const auto r = meander_cmd({"classify", "--max-total", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("n,k,total,irreducible,snake,iterated_snake\n", 0) == 0);
  CHECK(r.out.find("\n1,4,166,2,") != std::string::npos);
  CHECK(r.out.find("\n2,3,166,2,") != std::string::npos);
}

TEST_CASE("verify command") {
  auto r = meander_cmd({"verify", "thm22", "--max-total", "8"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["status"] == "pass");

  r = meander_cmd({"verify", "thm34-literal"});
  CHECK(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["status"] == "documented-mismatch");
  CHECK(doc["diagnostics"].size() == 2);
}

TEST_CASE("tables survive a CSV and JSON round trip into the verifier") {
  const auto dir = scratch_dir();
  const auto open = census(7, Kind::open);
  const auto classified = classify_census(7);
  CHECK(count_table_from_csv(to_csv(open)) == open);
  CHECK(count_table_from_json(json::parse(to_json(open, Kind::open).dump())) == open);
  const auto back = classified_from_csv(to_csv(classified));
  const auto back_json = classified_from_json(json::parse(to_json(classified).dump()));
  for (int n = 0; n <= 7; ++n) {
    for (int k = 0; n + k <= 7; ++k) {
      CHECK(back.at(n, k) == classified.at(n, k));
      CHECK(back_json.at(n, k) == classified.at(n, k));
    }
  }

  const auto csv = (dir / "classified.csv").string();
  std::ofstream(csv) << to_csv(classified);
  const auto r = meander_cmd({"verify", "cor24", "--max-total", "7", "--tables", csv});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["status"] == "pass");

  // a damaged table is caught by the verifier
  auto text = to_csv(open);
  text.replace(text.find("\n3,3,") + 1, std::string("3,3,1224").size(), "3,3,1225");
  const auto bad = (dir / "open.csv").string();
  std::ofstream(bad) << text;
  const auto f = meander_cmd({"verify", "thm22", "--max-total", "7", "--tables", bad});
  CHECK(f.code == 1);
  CHECK_FALSE(json::parse(f.out)["witnesses"].empty());

  std::string partial = to_csv(open);
  partial.erase(partial.rfind("\n", partial.size() - 2) + 1);
  CHECK_THROWS_AS(count_table_from_csv(partial), IncompleteTable);
  CHECK_THROWS_AS(count_table_from_csv("n,k,total\n0,0,0\n"), SyntaxError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("series command") {
  auto r = meander_cmd({"series", "m1", "--terms", "10"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out) ==
        json::parse(R"(["1","4","14","48","166","584","2092","7616","28102","104824"])"));
  CHECK(json::parse(meander_cmd({"series", "a", "--terms", "5"}).out) ==
        json::parse(R"(["1","4","14","48","164"])"));
  r = meander_cmd({"series", "mirr1", "--terms", "14"});
  CHECK(json::parse(r.out)[13] == "3816");
  r = meander_cmd({"series", "eq1", "--terms", "5"});
  CHECK(r.code == 1);
  CHECK(r.out.find("-3/2") != std::string::npos);
}

TEST_CASE("crosscheck command against vendored fixtures") {
  auto r = meander_cmd({"crosscheck", "--seq", "A082590", "--against", "m1-row"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["compared"] == 10);
  CHECK(meander_cmd({"crosscheck", "--seq", "A007070", "--max-total", "9"}).code == 0);
  CHECK(meander_cmd({"crosscheck", "--seq", "A000012", "--against", "mis-row-0"}).code == 0);
  // a row that does not match the sequence
  CHECK(meander_cmd({"crosscheck", "--seq", "A007070", "--against", "m1-row"}).code == 1);
  CHECK(meander_cmd({"crosscheck", "--seq", "B12", "--against", "m1-row"}).code == 2);
}

TEST_CASE("b-file parsing") {
  const auto fx = parse_bfile("# comment\n1 5\n2 -7\n\n3 123456789012345678901234567890\n", "A000001",
                              "fixtures");
  CHECK(fx.offset == 1);
  CHECK(fx.values.at(2) == -7);
  CHECK(fx.values.at(3) == Integer("123456789012345678901234567890"));
  CHECK(fx.notes == "comment");
  CHECK_THROWS_AS(parse_bfile("1\n", "A000001", "fixtures"), SyntaxError);
  CHECK_THROWS_AS(parse_bfile("# nothing\n", "A000001", "fixtures"), RangeError);
}

TEST_CASE("fetched sequences are served from the cache") {
  const auto dir = scratch_dir();
  std::ofstream(dir / "b000045.txt") << "0 0\n1 1\n2 1\n3 2\n";
  const auto fx = fetch_sequence("A000045", dir);
  CHECK(fx.source == "fetched");
  CHECK(fx.values.size() == 4);
  std::filesystem::remove_all(dir);
}

TEST_CASE("render examples") {
  const auto one = render_svg(parse("O 1 | v: 1 | c: X"));
  CHECK(occurrences(one, "<path class=\"arc\"") == 2);
  CHECK(occurrences(one, "<circle class=\"dot\"") == 5);

  // every arc of this code lies above l
  const auto tt = render_svg(parse("O 2 | v: 1 2 | c: T T"));
  const std::regex arc(R"(d="M ([0-9.]+) [0-9.]+ A [0-9.]+ [0-9.]+ 0 0 ([01]) ([0-9.]+) )");
  int upper = 0;
  for (auto it = std::sregex_iterator(tt.begin(), tt.end(), arc); it != std::sregex_iterator(); ++it) {
    const double x1 = std::stod((*it)[1]);
    const double x2 = std::stod((*it)[3]);
    const bool sweep = (*it)[2] == "1";
    upper += (x1 < x2) == sweep;
  }
  CHECK(upper == 3);

  auto r = meander_cmd({"render", "--code", "C 2 | v: 1 2 | c: X X | s: U"});
  CHECK(r.code == 0);
  CHECK(occurrences(r.out, "<path class=\"arc\"") == 2);
}

TEST_CASE("render structure on 1000 random codes") {
  std::vector<Code> pool;
  for (int total = 1; total <= 7; ++total) {
    for (int n = 0; n <= total; ++n) {
      for (auto& c : enumerate_open(n, total - n)) pool.emplace_back(c);
      if (n % 2 == 0 && total >= 2) {
        for (auto& c : enumerate_closed(n, total - n)) pool.emplace_back(c);
      }
    }
  }
  std::mt19937 rng(99);
  RenderSpec spec;
  for (int i = 0; i < 1000; ++i) {
    const auto& code = pool[rng() % pool.size()];
    const bool is_open = std::holds_alternative<OpenCode>(code);
    const int N = order_of(code).total();
    spec.dots = i % 7 != 0;
    const auto svg = render_svg(code, spec);
    REQUIRE(occurrences(svg, "<path class=\"arc\"") == static_cast<std::size_t>(is_open ? N + 1 : N));
    const std::size_t dots = spec.dots ? N + (is_open ? 4 : 2) : 0;
    REQUIRE(occurrences(svg, "<circle class=\"dot\"") == dots);
    REQUIRE(svg == render_svg(code, spec));
    REQUIRE(svg.find("nan") == std::string::npos);
  }
}
