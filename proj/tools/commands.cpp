#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "meander/error.hpp"
#include "meander/formulas.hpp"
#include "meander/verify.hpp"
#include "oeis.hpp"
#include "render.hpp"
#include "table_io.hpp"

#ifndef MEANDER_FIXTURE_DIR
#define MEANDER_FIXTURE_DIR "data/oeis"
#endif

namespace meander::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  unsigned jobs = 0;
  std::uint64_t node_budget = 0;
  std::string format;

  SearchOptions options() const {
    SearchOptions o;
    o.jobs = jobs;
    o.node_budget = node_budget;
    return o;
  }
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(std::ostream& out, const std::string& text, const std::string& path) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write " + path);
  file << text;
}

std::string format_or(const Globals& g, const char* fallback) {
  if (g.format.empty()) return fallback;
  if (g.format != "csv" && g.format != "json") throw UsageError("--format must be csv or json");
  return g.format;
}

// ---------------------------------------------------------------------------

struct CountArgs {
  std::string kind;
  std::optional<int> n, k, max_total;
  std::string out_path;
};

int cmd_count(const CountArgs& a, const Globals& g, std::ostream& out) {
  const Kind kind = a.kind == "open" ? Kind::open : Kind::closed;
  if (a.max_total) {
    if (a.n || a.k) throw UsageError("give either --n/--k or --max-total");
    const auto table = census(*a.max_total, kind, g.options());
    const auto fmt = format_or(g, "csv");
    emit(out, fmt == "csv" ? to_csv(table) : to_json(table, kind).dump(2) + "\n", a.out_path);
    return 0;
  }
  if (!a.n || !a.k) throw UsageError("count needs --n and --k, or --max-total");
  const auto c = kind == Kind::open ? count_open(*a.n, *a.k, g.options())
                                    : count_closed(*a.n, *a.k, g.options());
  if (g.format == "json") {
    const json j{{"kind", a.kind}, {"n", *a.n}, {"k", *a.k}, {"count", std::to_string(c)}};
    emit(out, j.dump(2) + "\n", a.out_path);
  } else {
    emit(out, std::to_string(c) + "\n", a.out_path);
  }
  return 0;
}

int cmd_classify(int max_total, const std::string& out_path, const Globals& g, std::ostream& out) {
  const auto c = classify_census(max_total, g.options());
  const auto fmt = format_or(g, "csv");
  emit(out, fmt == "csv" ? to_csv(c) : to_json(c).dump(2) + "\n", out_path);
  return 0;
}

// A saved table is recognized by its first non-blank character and CSV header.
void load_tables(const std::string& path, TableCache& cache) {
  const auto text = read_text(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const auto doc = json::parse(text);
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "classified") {
      cache.set_classified(classified_from_json(doc));
    } else if (kind == "open") {
      cache.set_open(count_table_from_json(doc));
    } else {
      cache.set_closed(count_table_from_json(doc));
    }
    return;
  }
  if (text.rfind("n,k,total,", 0) == 0) {
    cache.set_classified(classified_from_csv(text));
  } else {
    cache.set_open(count_table_from_csv(text));
  }
}

int cmd_verify(const std::string& identity, int max_total, const std::vector<std::string>& tables,
               const std::string& closed_table, const std::string& out_path, const Globals& g,
               std::ostream& out) {
  TableCache cache(max_total, g.options());
  for (const auto& t : tables) load_tables(t, cache);
  if (!closed_table.empty()) {
    const auto text = read_text(closed_table);
    const auto first = text.find_first_not_of(" \t\r\n");
    cache.set_closed(first != std::string::npos && text[first] == '{'
                         ? count_table_from_json(json::parse(text))
                         : count_table_from_csv(text));
  }
  const auto report = verify_identity(identity, cache);
  emit(out, to_json(report).dump(2) + "\n", out_path);
  return report.status == Status::fail ? 1 : 0;
}

int cmd_series(const std::string& name, int terms, const Globals& g, std::ostream& out) {
  if (terms < 1) throw UsageError("--terms must be at least 1");
  const int t = terms - 1;
  if (name == "m1") out << to_json(gf_m1(t)).dump() << '\n';
  else if (name == "m2") out << to_json(gf_m2(t)).dump() << '\n';
  else if (name == "a") out << to_json(gf_a(t)).dump() << '\n';
  else if (name == "mirr1") out << to_json(mirr1_pipeline(t)).dump() << '\n';
  else if (name == "mirr2") out << to_json(mirr2_from_mirr1(t)).dump() << '\n';
  else if (name == "eq1") {
    std::optional<ClassifiedCensus> census;
    if (t >= 1) census = classify_census(t, g.options());
    const auto branches = solve_eq1(t, census ? &*census : nullptr);
    json doc = json::array();
    bool mismatch = false;
    for (const auto& br : branches) {
      json rows = json::array();
      for (int n = 0; n <= t; ++n) {
        json row = json::array();
        for (int k = 0; n + k <= t; ++k) row.push_back(to_string(br.f.at(n, k)));
        rows.push_back(row);
      }
      doc.push_back({{"root", to_string(br.root)},
                     {"residual_vanishes", br.residual_vanishes},
                     {"f", rows},
                     {"diagnostic", to_json(br.diagnostic)}});
      mismatch = mismatch || !br.residual_vanishes || br.diagnostic.first_mismatch.has_value();
    }
    out << json{{"series", "eq1"}, {"branches", doc}}.dump(2) << '\n';
    return mismatch ? 1 : 0;
  } else {
    throw UsageError("unknown series '" + name + "'");
  }
  return 0;
}

// Computed rows for comparison with OEIS data, indexed like the sequence.
std::map<int, Integer> computed_row(const std::string& row, int max_total, const Globals& g) {
  std::map<int, Integer> out;
  auto big = [](std::uint64_t v) { return Integer(std::to_string(v)); };
  if (row == "m1-row") {
    for (int k = 0; 1 + k <= max_total; ++k) out[k] = big(count_open(1, k, g.options()));
    return out;
  }
  const auto c = classify_census(max_total, g.options());
  if (row == "mis-row-0") {
    for (int k = 1; k <= max_total; ++k) out[k] = big(c.at(0, k).iterated_snake);
  } else if (row == "mis-row-1" || row == "mis-row-2") {
    const int n = row.back() - '0';
    for (int k = 0; n + k <= max_total; ++k) out[k] = big(c.at(n, k).iterated_snake);
  } else if (row == "mis-col-0") {
    for (int n = 1; n <= max_total; ++n) out[n] = big(c.at(n, 0).iterated_snake);
  } else if (row == "mirr-row-1") {
    for (int k = 0; 1 + k <= max_total; ++k) out[k] = big(c.at(1, k).irreducible);
  } else {
    throw UsageError("unknown row '" + row + "'");
  }
  return out;
}

const std::map<std::string, std::string>& default_rows() {
  static const std::map<std::string, std::string> rows{{"A082590", "m1-row"},
                                                       {"A007070", "mis-row-1"},
                                                       {"A181292", "mis-row-2"},
                                                       {"A007165", "mis-col-0"},
                                                       {"A000012", "mis-row-0"}};
  return rows;
}

int cmd_crosscheck(const std::string& seq, std::string against, const std::string& fixtures,
                   bool fetch, int max_total, const Globals& g, std::ostream& out) {
  if (!valid_sequence_id(seq)) throw UsageError("not a sequence id: " + seq);
  if (against.empty()) {
    const auto it = default_rows().find(seq);
    if (it == default_rows().end()) throw UsageError("no default row for " + seq + "; use --against");
    against = it->second;
  }
  const auto fx = fetch ? fetch_sequence(seq, default_cache_dir())
                        : load_fixture(fixtures.empty() ? MEANDER_FIXTURE_DIR : fixtures, seq);
  const auto row = computed_row(against, max_total, g);

  json report{{"sequence", seq}, {"against", against}, {"source", fx.source},
              {"max_total", max_total}};
  if (!fx.notes.empty()) report["fixture_notes"] = fx.notes;
  int compared = 0;
  int first = -1;
  int last = -1;
  json mismatch;
  for (const auto& [i, v] : row) {
    const auto it = fx.values.find(i);
    if (it == fx.values.end()) continue;
    if (first < 0) first = i;
    last = i;
    ++compared;
    if (mismatch.is_null() && it->second != v) {
      mismatch = {{"index", i}, {"sequence", to_string(it->second)}, {"computed", to_string(v)}};
    }
  }
  const bool pass = compared > 0 && mismatch.is_null();
  report["compared"] = compared;
  if (compared > 0) report["range"] = {first, last};
  if (!mismatch.is_null()) report["first_mismatch"] = mismatch;
  report["status"] = pass ? "pass" : "fail";
  out << report.dump(2) << '\n';
  return pass ? 0 : 1;
}

int cmd_render(const std::string& code_text, const std::string& out_path, const RenderSpec& spec,
               std::ostream& out) {
  const auto code = parse(code_text);
  if (!is_valid(code)) throw InvalidCode("not a valid meander: " + code_text);
  emit(out, render_svg(code, spec), out_path);
  return 0;
}

int cmd_ratios(int n, int max_k, const Globals& g, std::ostream& out) {
  if (n < 1 || n % 2 == 0) throw UsageError("--n must be odd and positive");
  if (max_k < 1) throw UsageError("--max-k must be at least 1");
  const auto table = census(n + max_k - 1, Kind::open, g.options());
  const auto fmt = format_or(g, "csv");
  json rows = json::array();
  std::ostringstream csv;
  csv << "k,numerator,denominator,ratio\n";
  for (int k = 1; k <= max_k; ++k) {
    const auto num = table.at(n, k - 1);
    const auto den = table.at(n - 1, k);
    Rational q(Integer(std::to_string(num)), Integer(std::to_string(den)));
    q.canonicalize();
    csv << k << ',' << num << ',' << den << ',' << to_string(q) << '\n';
    rows.push_back({{"k", k},
                    {"numerator", std::to_string(num)},
                    {"denominator", std::to_string(den)},
                    {"ratio", to_string(q)}});
  }
  if (fmt == "csv") {
    out << csv.str();
  } else {
    out << json{{"n", n}, {"ratios", rows}}.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Enumerate, classify and verify singular meanders", "meander"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--jobs", g.jobs, "worker threads (0: all cores)");
  app.add_option("--node-budget", g.node_budget, "abort searches after this many nodes (0: none)");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  CountArgs count;
  auto* c_count = app.add_subcommand("count", "exact class counts");
  c_count->add_option("kind", count.kind, "open or closed")
      ->required()
      ->check(CLI::IsMember({"open", "closed"}));
  c_count->add_option("--n", count.n, "transverse intersections");
  c_count->add_option("--k", count.k, "tangencies");
  c_count->add_option("--max-total", count.max_total, "full table up to n+k");
  c_count->add_option("--out", count.out_path, "write to file");

  int classify_total = 0;
  std::string classify_out;
  auto* c_classify = app.add_subcommand("classify", "census split by class");
  c_classify->add_option("--max-total", classify_total)->required()->check(CLI::Range(1, 30));
  c_classify->add_option("--out", classify_out);

  std::string identity;
  int verify_total = 8;
  std::vector<std::string> verify_tables;
  std::string verify_closed;
  std::string verify_out;
  auto* c_verify = app.add_subcommand("verify", "check an identity over the census");
  c_verify->add_option("identity", identity)->required()->check(CLI::IsMember(identity_names()));
  c_verify->add_option("--max-total", verify_total)->check(CLI::Range(2, 30));
  c_verify->add_option("--tables", verify_tables, "re-import saved open or classified tables");
  c_verify->add_option("--closed-table", verify_closed, "re-import a saved closed census");
  c_verify->add_option("--out", verify_out);

  std::string series_name;
  int series_terms = 10;
  auto* c_series = app.add_subcommand("series", "exact series coefficients");
  c_series->add_option("name", series_name)
      ->required()
      ->check(CLI::IsMember({"m1", "m2", "a", "mirr1", "mirr2", "eq1"}));
  c_series->add_option("--terms", series_terms)->check(CLI::Range(1, 400));

  std::string seq;
  std::string against;
  std::string fixtures;
  bool fetch = false;
  int cross_total = 10;
  auto* c_cross = app.add_subcommand("crosscheck", "compare a computed row with OEIS data");
  c_cross->add_option("--seq", seq)->required();
  c_cross->add_option("--against", against, "m1-row, mis-row-0/1/2, mis-col-0, mirr-row-1");
  auto* fx_opt = c_cross->add_option("--fixtures", fixtures, "fixture directory");
  c_cross->add_flag("--fetch", fetch, "download from oeis.org (cached)")->excludes(fx_opt);
  c_cross->add_option("--max-total", cross_total)->check(CLI::Range(1, 30));

  std::string code_text;
  std::string render_out;
  RenderSpec spec;
  bool no_dots = false;
  auto* c_render = app.add_subcommand("render", "draw a code as SVG");
  c_render->add_option("--code", code_text)->required();
  c_render->add_option("--out", render_out);
  c_render->add_option("--width", spec.width)->check(CLI::Range(32, 10000));
  c_render->add_option("--height", spec.height)->check(CLI::Range(32, 10000));
  c_render->add_option("--stroke", spec.stroke)->check(CLI::PositiveNumber);
  c_render->add_flag("--no-dots", no_dots);

  int ratio_n = 1;
  int ratio_k = 9;
  auto* c_ratios = app.add_subcommand("ratios", "exact quotients M(n,k-1)/M(n-1,k)");
  c_ratios->add_option("--n", ratio_n)->required();
  c_ratios->add_option("--max-k", ratio_k)->check(CLI::Range(1, 29));

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_count) return cmd_count(count, g, out);
    if (*c_classify) return cmd_classify(classify_total, classify_out, g, out);
    if (*c_verify) {
      return cmd_verify(identity, verify_total, verify_tables, verify_closed, verify_out, g, out);
    }
    if (*c_series) return cmd_series(series_name, series_terms, g, out);
    if (*c_cross) return cmd_crosscheck(seq, against, fixtures, fetch, cross_total, g, out);
    if (*c_render) {
      spec.dots = !no_dots;
      return cmd_render(code_text, render_out, spec, out);
    }
    if (*c_ratios) return cmd_ratios(ratio_n, ratio_k, g, out);
  } catch (const UsageError& e) {
    err << "meander: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "meander: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace meander::cli
