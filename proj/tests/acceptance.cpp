// Acceptance run: one PASS/FAIL line per criterion, then a summary. All
// comparisons are exact; the only numeric limits are the wall-clock budgets
// below. Exit status is non-zero on any unexpected failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "meander/core.hpp"
#include "meander/enumerate.hpp"
#include "meander/error.hpp"
#include "meander/formulas.hpp"
#include "meander/series.hpp"
#include "meander/structure.hpp"
#include "meander/transforms.hpp"
#include "meander/verify.hpp"
#include "oeis.hpp"

#ifndef MEANDER_FIXTURE_DIR
#define MEANDER_FIXTURE_DIR "data/oeis"
#endif

using namespace meander;

namespace {

constexpr double kOpenBudgetSeconds = 30 * 60;
constexpr double kClassifyBudgetSeconds = 60 * 60;
constexpr int kSeriesTruncation = 20;
constexpr int kEq1Truncation = 12;
constexpr int kRoundTrips = 10000;

// Published M(n,k) for n = 0..3, k = 0..9.
const std::uint64_t kOpenCounts[4][10] = {
    {0, 1, 1, 1, 1, 1, 1, 1, 1, 1},
    {1, 4, 14, 48, 166, 584, 2092, 7616, 28102, 104824},
    {1, 7, 36, 166, 730, 3138, 13328, 56204, 235854, 986010},
    {2, 24, 188, 1224, 7202, 39808, 210992, 1085248, 5457284, 26959616},
};

// Published Mirr(n,k) for n = 1..4, k = 3..13.
const std::uint64_t kIrreducibleCounts[4][11] = {
    {0, 2, 0, 8, 8, 36, 72, 212, 528, 1438, 3816},
    {2, 0, 12, 14, 72, 162, 530, 1452, 4314, 12402, 36246},
    {0, 0, 16, 48, 240, 884, 3328, 11960, 42112, 145860, 497856},
    {0, 10, 36, 210, 884, 3744, 14950, 57904, 218790, 809016, 2942240},
};

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  // Failures that cannot be decided in this environment; see the decisions log.
  std::vector<std::string> unattainable;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string pair(int n, int k) { return "(" + std::to_string(n) + "," + std::to_string(k) + ")"; }

// The classified census to order 12 feeds criteria 2, 4, 5, 9 and 10.
ClassifiedCensus* g_census12 = nullptr;

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  int matched = 0;
  for (int n = 0; n <= 3; ++n) {
    for (int k = 0; k <= 9; ++k) {
      const auto got = n + k == 0 ? 0 : count_open(n, k);
      if (got == kOpenCounts[n][k]) ++matched;
      o.require(got == kOpenCounts[n][k], "M" + pair(n, k) + " = " + std::to_string(got));
    }
  }
  const double dt = seconds_since(t0);
  o.require(matched == 40, std::to_string(matched) + "/40 matched");
  o.require(dt <= kOpenBudgetSeconds, "took " + std::to_string(dt) + " s");
  o.notes.insert(o.notes.begin(), std::to_string(matched) + "/40 entries, " +
                                      std::to_string(static_cast<int>(dt)) + " s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t0 = Clock::now();
  static ClassifiedCensus census = classify_census(12);
  g_census12 = &census;
  const double dt = seconds_since(t0);
  int compared = 0;
  for (int n = 1; n <= 4; ++n) {
    for (int k = 3; k <= 13 && n + k <= 12; ++k) {
      const auto got = census.at(n, k).irreducible;
      ++compared;
      o.require(got == kIrreducibleCounts[n - 1][k - 3], "Mirr" + pair(n, k) + " = " + std::to_string(got));
    }
  }
  // no irreducible meanders for k < 3 or n < 1
  for (int n = 0; n <= 12; ++n) {
    for (int k = 0; n + k <= 12; ++k) {
      if (k < 3 || n < 1) o.require(census.at(n, k).irreducible == 0, "Mirr" + pair(n, k) + " != 0");
    }
  }
  o.require(census.at(3, 9).irreducible == 3328 && census.at(4, 8).irreducible == 3744,
            "Mirr(3,9) or Mirr(4,8)");
  o.require(dt <= kClassifyBudgetSeconds, "took " + std::to_string(dt) + " s");
  o.notes.insert(o.notes.begin(), std::to_string(compared) + " published entries, " +
                                      std::to_string(static_cast<int>(dt)) + " s");
  return o;
}

void expect_status(Outcome& o, const VerificationReport& r, Status want) {
  o.require(r.status == want, r.name + " status " + to_string(r.status));
  o.require(!r.instances.empty(), r.name + " checked nothing");
  for (const auto& w : r.witnesses) o.require(false, r.name + " witness " + w.label);
}

Outcome criterion3() {
  Outcome o;
  TableCache cache(10);
  cache.set_open(g_census12->totals());
  const auto r = verify_identity("thm21", cache);
  expect_status(o, r, Status::pass);
  o.notes.insert(o.notes.begin(), std::to_string(r.instances.size()) + " instances");
  return o;
}

Outcome criterion4() {
  Outcome o;
  TableCache cache(12);
  cache.set_classified(*g_census12);
  std::size_t instances = 0;
  for (const char* name : {"thm22", "cor24", "divisibility"}) {
    const auto r = verify_identity(name, cache);
    expect_status(o, r, Status::pass);
    instances += r.instances.size();
    if (std::string(name) == "divisibility") {
      bool witness = false;
      for (const auto& i : r.instances) {
        witness = witness || (i.label == "n=4,k=3: M(n-1,k) = 1224 mod 8" && i.holds);
      }
      o.require(witness, "M(3,3) = 1224 = 0 mod 8 not among the instances");
    }
  }
  o.notes.insert(o.notes.begin(), std::to_string(instances) + " instances");
  return o;
}

Outcome criterion5() {
  Outcome o;
  TableCache cache(12);
  cache.set_classified(*g_census12);
  const auto r = verify_identity("remark23", cache);
  expect_status(o, r, Status::pass);
  o.notes.insert(o.notes.begin(), std::to_string(r.instances.size()) + " coefficients");
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto m1 = gf_m1(15);
  const auto m2 = gf_m2(9);
  for (int k = 0; k <= 9; ++k) {
    o.require(m1.coeff(k) == Rational(Integer(std::to_string(kOpenCounts[1][k]))), "gf_m1 at " + std::to_string(k));
    o.require(m2.coeff(k) == Rational(Integer(std::to_string(kOpenCounts[2][k]))), "gf_m2 at " + std::to_string(k));
    o.require(m3_count(k) == Integer(std::to_string(kOpenCounts[3][k])), "m3_count(" + std::to_string(k) + ")");
  }
  for (int k = 0; k <= 15; ++k) {
    o.require(m1.coeff(k) == Rational(carcass_count(k)), "carcass_count(" + std::to_string(k) + ")");
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto f1 = mirr1_pipeline(13);
  const auto f2 = mirr2_from_mirr1(13);
  for (int k = 0; k <= 13; ++k) {
    const Rational want1 = k < 3 ? 0 : Rational(Integer(std::to_string(kIrreducibleCounts[0][k - 3])));
    const Rational want2 = k < 3 ? 0 : Rational(Integer(std::to_string(kIrreducibleCounts[1][k - 3])));
    o.require(f1.coeff(k) == want1, "Mirr(1," + std::to_string(k) + ") = " + to_string(f1.coeff(k)));
    o.require(f2.coeff(k) == want2, "Mirr(2," + std::to_string(k) + ") = " + to_string(f2.coeff(k)));
  }
  o.require(mirr_k3_even(1) == static_cast<std::int64_t>(kIrreducibleCounts[1][0]), "Mirr(2,3)");
  o.require(mirr_k3_even(2) == static_cast<std::int64_t>(kIrreducibleCounts[3][0]), "Mirr(4,3)");
  o.require(mirr_k4_odd(1) == static_cast<std::int64_t>(kIrreducibleCounts[0][1]), "Mirr(1,4)");
  o.require(mirr_k4_odd(2) == static_cast<std::int64_t>(kIrreducibleCounts[2][1]), "Mirr(3,4)");
  return o;
}

Outcome criterion8() {
  Outcome o;
  TableCache cache(8);
  cache.set_open(g_census12->totals());
  for (const char* name : {"action-period", "orbit-census", "partition"}) {
    expect_status(o, verify_identity(name, cache), Status::pass);
  }
  // the six-point orbit with a stabilizer of order two
  const auto c = canonical_closed(parse_closed("C 6 | v: 2 5 3 1 4 6 | c: T T X T T X | s: U"));
  bool found = false;
  for (const auto& rec : orbit_census(2, 4)) {
    auto r = rec.representative;
    bool member = r == c;
    for (int i = 1; i < rec.orbit_size && !member; ++i) member = (r = rotate_once(r)) == c;
    if (member) {
      found = true;
      o.require(rec.orbit_size == 3 && rec.stabilizer == 2,
                "orbit size " + std::to_string(rec.orbit_size) + ", d_O " + std::to_string(rec.stabilizer));
    }
  }
  o.require(found, "six-point orbit not found");
  return o;
}

std::vector<OpenCode> codes_up_to(int max_total) {
  std::vector<OpenCode> out;
  for (int total = 1; total <= max_total; ++total) {
    for (int n = 0; n <= total; ++n) {
      auto part = enumerate_open(n, total - n);
      out.insert(out.end(), part.begin(), part.end());
    }
  }
  return out;
}

Outcome criterion9() {
  Outcome o;
  // insert / contract / extract round trips
  const auto codes = codes_up_to(8);
  std::mt19937 rng(20241015);
  int done = 0;
  while (done < kRoundTrips) {
    const auto& c = codes[rng() % codes.size()];
    const auto ivs = submeander_intervals(c);
    const auto iv = ivs[rng() % ivs.size()];
    if (iv.length() == c.size()) continue;
    const auto guest = extract(c, iv);
    const auto host = contract(c, iv);
    const bool ok = is_valid(guest) && is_valid(host) && insert(host, iv.i, guest) == c &&
                    contract(insert(host, iv.i, guest), inserted_interval(iv.i, guest)) == host;
    o.require(ok, "round trip failed on " + serialize(c));
    if (!ok) break;
    ++done;
  }

  const auto& census = *g_census12;
  const auto a = gf_a(9);
  for (int k = 0; k <= 9; ++k) {
    o.require(Rational(Integer(std::to_string(census.at(1, k).iterated_snake))) == a.coeff(k),
              "Mis(1," + std::to_string(k) + ")");
    if (k >= 1) o.require(census.at(0, k).iterated_snake == 1, "Mis(0," + std::to_string(k) + ")");
  }

  // sequence data: vendored fixtures, else a previously fetched b-file
  struct Row {
    const char* id;
    std::function<std::map<int, std::uint64_t>()> values;
  };
  const Row rows[] = {
      {"A082590", [] {
         std::map<int, std::uint64_t> m;
         for (int k = 0; k <= 9; ++k) m[k] = count_open(1, k);
         return m;
       }},
      {"A007070", [&] {
         std::map<int, std::uint64_t> m;
         for (int k = 0; k <= 11; ++k) m[k] = census.at(1, k).iterated_snake;
         return m;
       }},
      {"A181292", [&] {
         std::map<int, std::uint64_t> m;
         for (int k = 0; k <= 10; ++k) m[k] = census.at(2, k).iterated_snake;
         return m;
       }},
      {"A007165", [&] {
         std::map<int, std::uint64_t> m;
         for (int n = 1; n <= 12; ++n) m[n] = census.at(n, 0).iterated_snake;
         return m;
       }},
      {"A000012", [&] {
         std::map<int, std::uint64_t> m;
         for (int k = 1; k <= 12; ++k) m[k] = census.at(0, k).iterated_snake;
         return m;
       }},
  };
  std::vector<std::string> checked;
  for (const auto& row : rows) {
    std::optional<cli::OeisFixture> fx;
    const std::string file = std::string("b") + (row.id + 1) + ".txt";
    if (std::filesystem::exists(std::filesystem::path(MEANDER_FIXTURE_DIR) / (std::string(row.id) + ".txt"))) {
      fx = cli::load_fixture(MEANDER_FIXTURE_DIR, row.id);
    } else if (std::filesystem::exists(cli::default_cache_dir() / file)) {
      fx = cli::fetch_sequence(row.id, cli::default_cache_dir());
    }
    if (!fx) {
      o.unattainable.push_back(std::string(row.id) + ": no sequence data offline");
      continue;
    }
    int compared = 0;
    for (const auto& [i, v] : row.values()) {
      const auto it = fx->values.find(i);
      if (it == fx->values.end()) continue;
      ++compared;
      o.require(it->second == Integer(std::to_string(v)),
                std::string(row.id) + " index " + std::to_string(i));
    }
    o.require(compared > 0, std::string(row.id) + ": no overlap");
    checked.push_back(std::string(row.id) + " (" + std::to_string(compared) + ", " + fx->source + ")");
  }
  std::string summary = std::to_string(done) + " round trips; sequences";
  for (const auto& s : checked) summary += " " + s;
  o.notes.insert(o.notes.begin(), summary);
  return o;
}

Outcome criterion10() {
  Outcome o;
  const auto c5 = literal_thm34(LiteralCase::mirr1_radical, 13, g_census12);
  o.require(!c5.series && c5.diagnostic.error == "SqrtDomain", "case 5 did not raise SqrtDomain");
  const auto c6 = literal_thm34(LiteralCase::mirr2_radical, 13, g_census12);
  const auto& m6 = c6.diagnostic.first_mismatch;
  o.require(m6 && m6->k == 3 && m6->literal == -m6->expected && m6->expected == 2,
            "case 6 first mismatch is not -2 against 2 at t^3");
  o.require(c5.diagnostic.reference_checked && c5.diagnostic.reference_agrees &&
                c6.diagnostic.reference_checked && c6.diagnostic.reference_agrees,
            "pipeline route disagrees with the census");

  const auto branches = solve_eq1(kEq1Truncation, g_census12);
  o.require(branches.size() == 1, "expected a single rational branch");
  for (const auto& b : branches) {
    const auto& ni = b.diagnostic.first_non_integer;
    o.require(ni && ni->n == 1 && ni->k == 0 && ni->literal == Rational(-3, 2),
              "eq1 branch has no -3/2 coefficient at x^1 t^0");
    o.require(!b.diagnostic.failure.empty(), "eq1 diagnostic is empty");
  }

  TableCache cache(12);
  cache.set_classified(*g_census12);
  expect_status(o, verify_identity("thm34-literal", cache), Status::documented_mismatch);
  expect_status(o, verify_identity("eq1", cache), Status::documented_mismatch);
  return o;
}

PowerSeries random_series(std::mt19937& rng, std::optional<Rational> constant = {}) {
  std::vector<Rational> c(kSeriesTruncation + 1);
  for (auto& x : c) {
    x = Rational(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 5));
    x.canonicalize();
  }
  if (constant) c[0] = *constant;
  return PowerSeries(c, kSeriesTruncation);
}

Outcome criterion11() {
  Outcome o;
  std::mt19937 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const auto f = random_series(rng);
    const auto g = random_series(rng, Rational(0));
    const auto lhs = derivative(compose(f, g));
    const auto rhs = mul(compose(derivative(f), g), derivative(g));
    const int t = std::min(lhs.truncation(), rhs.truncation());
    o.require(t == kSeriesTruncation - 1 && lhs.truncate(t) == rhs.truncate(t), "chain rule");

    const auto a = random_series(rng, Rational(1));
    const auto r = sqrt(a);
    o.require(r.truncation() == kSeriesTruncation && mul(r, r) == a, "square and compare");

    const auto b = random_series(rng, Rational(1 + static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 3)));
    o.require(div(mul(f, b), b) == f && mul(inverse(b), b) == PowerSeries::constant(1, kSeriesTruncation),
              "unit divisor round trip");
  }
  const auto branches = solve_eq1(kEq1Truncation);
  for (const auto& b : branches) {
    o.require(b.residual_vanishes && b.residual.truncation() == kEq1Truncation,
              "eq1 residual does not vanish to order " + std::to_string(kEq1Truncation));
  }
  o.require(!branches.empty(), "no eq1 branch");
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"reference M(n,k): count_open over 0<=n<=3, 0<=k<=9", criterion1},
      {"reference Mirr(n,k): classified census for n+k<=12", criterion2},
      {"open/closed identity, closed counts enumerated, n+k<=10", criterion3},
      {"action identities and divisibility, n+k<=12", criterion4},
      {"odd/even part identity on the census to order 12", criterion5},
      {"row generating functions and carcass count", criterion6},
      {"irreducible pipeline and totient forms", criterion7},
      {"cyclic action properties, n+k<=8", criterion8},
      {"structure round trips, Mis rows, sequence cross-checks", criterion9},
      {"documented mismatches as structured diagnostics", criterion10},
      {"series engine properties, eq1 residual", criterion11},
  };
  int passed = 0;
  int failed = 0;
  int unexpected = 0;
  int index = 0;
  for (const auto& [title, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const bool pass = o.pass && o.unattainable.empty();
    std::string detail;
    for (const auto& n : o.notes) detail += (detail.empty() ? "" : "; ") + n;
    for (const auto& u : o.unattainable) detail += (detail.empty() ? "" : "; ") + ("not decidable offline: " + u);
    std::printf("[%s] %2d %s%s%s\n", pass ? "PASS" : "FAIL", index, title, detail.empty() ? "" : " -- ",
                detail.c_str());
    std::fflush(stdout);
    if (pass) {
      ++passed;
    } else {
      ++failed;
      if (!o.pass) ++unexpected;
    }
  }
  std::printf("%d passed, %d failed (%d unexpected, %d only for lack of offline sequence data)\n", passed,
              failed, unexpected, failed - unexpected);
  return unexpected == 0 ? 0 : 1;
}
