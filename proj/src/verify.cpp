#include "meander/verify.hpp"

#include <numeric>
#include <set>

#include "meander/error.hpp"
#include "meander/transforms.hpp"

namespace meander {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::documented_mismatch: return "documented-mismatch";
  }
  return "fail";
}

const CountTable& TableCache::open() {
  if (!open_) open_ = classified_ ? classified_->totals() : census(max_total_, Kind::open, opts_);
  return *open_;
}

const CountTable& TableCache::closed() {
  if (!closed_) closed_ = census(max_total_, Kind::closed, opts_);
  return *closed_;
}

const ClassifiedCensus& TableCache::classified() {
  if (!classified_) classified_ = classify_census(max_total_, opts_);
  return *classified_;
}

namespace {

std::string label(int n, int k) { return "n=" + std::to_string(n) + ",k=" + std::to_string(k); }

void record(VerificationReport& r, Instance inst) {
  if (!inst.holds) {
    r.witnesses.push_back(inst);
    r.status = Status::fail;
  }
  r.instances.push_back(std::move(inst));
}

void check_equal(VerificationReport& r, std::string lbl, const Integer& lhs, const Integer& rhs) {
  record(r, {std::move(lbl), to_string(lhs), to_string(rhs), lhs == rhs});
}

Integer big(std::uint64_t v) { return Integer(std::to_string(v)); }

void require_cover(const CountTable& t, int max_total) {
  if (t.max_total() < max_total) {
    throw IncompleteTable("table of order " + std::to_string(t.max_total()) +
                          " cannot verify up to " + std::to_string(max_total));
  }
}

VerificationReport start(const std::string& name, int max_total) {
  VerificationReport r;
  r.name = name;
  r.max_total = max_total;
  return r;
}

}  // namespace

VerificationReport verify_thm21(int max_total, const CountTable& open, const CountTable& closed) {
  require_cover(open, max_total);
  require_cover(closed, max_total);
  auto r = start("thm21", max_total);
  for (int n = 2; n <= max_total; n += 2) {
    for (int k = 0; n + k <= max_total; ++k) {
      check_equal(r, label(n, k), big(closed.at(n, k)),
                  big(open.at(n - 1, k)) + 2 * big(open.at(n, k - 1)));
    }
  }
  return r;
}

namespace {

void action_identity(VerificationReport& r, int max_total, const CountTable& t) {
  for (int n = 2; n <= max_total; n += 2) {
    for (int k = 1; n + k <= max_total; ++k) {
      check_equal(r, label(n, k), k * big(t.at(n - 1, k)), 2 * n * big(t.at(n, k - 1)));
    }
  }
}

}  // namespace

VerificationReport verify_thm22(int max_total, const CountTable& open) {
  require_cover(open, max_total);
  auto r = start("thm22", max_total);
  action_identity(r, max_total, open);
  return r;
}

VerificationReport verify_cor24(int max_total, const CountTable& irreducible) {
  require_cover(irreducible, max_total);
  auto r = start("cor24", max_total);
  action_identity(r, max_total, irreducible);
  return r;
}

VerificationReport verify_divisibility(int max_total, const CountTable& open,
                                       const CountTable& irreducible) {
  require_cover(open, max_total);
  require_cover(irreducible, max_total);
  auto r = start("divisibility", max_total);
  for (int n = 2; n <= max_total; n += 2) {
    for (int k = 1; n + k <= max_total; ++k) {
      if (std::gcd(n, k) != 1) continue;
      auto congruence = [&](const char* what, std::uint64_t value, int modulus) {
        const Integer v = big(value);
        const Integer rem = v % modulus;
        record(r, {label(n, k) + ": " + what + " = " + to_string(v) + " mod " +
                       std::to_string(modulus),
                   to_string(rem), "0", rem == 0});
      };
      congruence("M(n-1,k)", open.at(n - 1, k), 2 * n);
      congruence("M(n,k-1)", open.at(n, k - 1), k);
      congruence("Mirr(n-1,k)", irreducible.at(n - 1, k), 2 * n);
      congruence("Mirr(n,k-1)", irreducible.at(n, k - 1), k);
    }
  }
  return r;
}

VerificationReport verify_remark23(int max_total, const CountTable& open) {
  require_cover(open, max_total);
  auto r = start("remark23", max_total);
  const auto phi = BivariateSeries::from_table(open).truncate(max_total);
  const auto lhs = Rational(2) * phi.even_part_x().derivative_x();
  const auto rhs = phi.odd_part_x().derivative_t();
  for (int d = 0; d <= lhs.truncation(); ++d) {
    for (int n = 0; n <= d; ++n) {
      const int k = d - n;
      const auto& a = lhs.at(n, k);
      const auto& b = rhs.at(n, k);
      record(r, {"x^" + std::to_string(n) + " t^" + std::to_string(k), to_string(a),
                 to_string(b), a == b});
    }
  }
  return r;
}

namespace {

template <class F>
void for_each_closed_order(int max_total, F&& f) {
  for (int total = 2; total <= max_total; ++total) {
    for (int n = 2; n <= total; n += 2) f(n, total - n);
  }
}

}  // namespace

VerificationReport verify_partition(int max_total, const SearchOptions& opts) {
  auto r = start("partition", max_total);
  for_each_closed_order(max_total, [&](int n, int k) {
    std::set<ClosedCode> transverse;
    std::set<ClosedCode> tangent_up;
    std::set<ClosedCode> tangent_down;
    std::uint64_t produced = 0;
    if (n - 1 + k >= 1) {
      for (const auto& o : enumerate_open(n - 1, k, opts)) {
        transverse.insert(append_transverse(o));
        ++produced;
      }
    }
    if (k >= 1 && n + k - 1 >= 1) {
      for (const auto& o : enumerate_open(n, k - 1, opts)) {
        tangent_up.insert(append_tangent(o, false));
        tangent_down.insert(append_tangent(o, true));
        produced += 2;
      }
    }
    std::set<ClosedCode> all = transverse;
    all.insert(tangent_up.begin(), tangent_up.end());
    all.insert(tangent_down.begin(), tangent_down.end());
    const auto closed = enumerate_closed(n, k, opts);
    const std::set<ClosedCode> expected(closed.begin(), closed.end());
    // Disjoint images of injective maps: every produced code is distinct.
    record(r, {label(n, k) + ": distinct images", std::to_string(all.size()),
               std::to_string(produced), all.size() == produced});
    record(r, {label(n, k) + ": images = closed classes", std::to_string(all.size()),
               std::to_string(expected.size()), all == expected});
  });
  return r;
}

VerificationReport verify_action_period(int max_total, const SearchOptions& opts) {
  auto r = start("action-period", max_total);
  for_each_closed_order(max_total, [&](int n, int k) {
    const auto closed = enumerate_closed(n, k, opts);
    std::set<ClosedCode> images;
    std::size_t period_failures = 0;
    std::string first_bad;
    for (const auto& c : closed) {
      const auto once = rotate_once(c);
      images.insert(once);
      auto cur = once;
      for (int i = 1; i < n + k; ++i) cur = rotate_once(cur);
      if (cur != c) {
        if (first_bad.empty()) first_bad = serialize(c);
        ++period_failures;
      }
    }
    const std::set<ClosedCode> domain(closed.begin(), closed.end());
    record(r, {label(n, k) + ": bijection", std::to_string(images.size()),
               std::to_string(domain.size()), images == domain});
    record(r, {label(n, k) + ": period n+k" + (first_bad.empty() ? "" : " (first: " + first_bad + ")"),
               std::to_string(period_failures), "0", period_failures == 0});
  });
  return r;
}

VerificationReport verify_orbit_census(int max_total, const CountTable& open,
                                       const SearchOptions& opts) {
  require_cover(open, max_total);
  auto r = start("orbit-census", max_total);
  for_each_closed_order(max_total, [&](int n, int k) {
    std::uint64_t sum_x = 0;
    std::uint64_t sum_t = 0;
    std::size_t bad_records = 0;
    std::size_t mixed_orbits = 0;
    for (const auto& rec : orbit_census(n, k, opts)) {
      sum_x += rec.x_census;
      sum_t += rec.t_census;
      if (rec.orbit_size * rec.stabilizer != n + k || rec.x_census * rec.stabilizer != n ||
          rec.t_census * rec.stabilizer != k) {
        ++bad_records;
      }
      if (rec.irreducible_preimages != 0 && rec.irreducible_preimages != rec.orbit_size) {
        ++mixed_orbits;
      }
    }
    check_equal(r, label(n, k) + ": sum n/d_O = M(n-1,k)", big(sum_x), big(open.at(n - 1, k)));
    check_equal(r, label(n, k) + ": sum k/d_O = 2M(n,k-1)", big(sum_t),
                2 * big(open.at(n, k - 1)));
    check_equal(r, label(n, k) + ": orbit-stabilizer violations", big(bad_records), 0);
    check_equal(r, label(n, k) + ": orbits mixing irreducible preimages", big(mixed_orbits), 0);
  });
  return r;
}

// The literal reading is expected to solve cleanly from v0 = 0 and then
// disagree with the census at x^1 t^0 with the value -3/2.
VerificationReport verify_eq1(int max_total, const ClassifiedCensus& census) {
  auto r = start("eq1", max_total);
  const auto branches = solve_eq1(max_total, &census);
  bool expected = branches.size() == 1;
  for (const auto& br : branches) {
    record(r, {"root v0 = " + to_string(br.root) + ": residual vanishes to order " +
                   std::to_string(max_total),
               br.residual_vanishes ? "0" : "nonzero", "0", br.residual_vanishes});
    for (const auto& b : br.blocks) {
      Instance inst{"block " + b.name, "", "", true};
      if (b.first_mismatch) {
        const auto& m = *b.first_mismatch;
        inst.label += " at x^" + std::to_string(m.n) + " t^" + std::to_string(m.k);
        inst.lhs = to_string(m.literal);
        inst.rhs = to_string(m.expected);
        inst.holds = false;
      } else {
        inst.lhs = inst.rhs = std::to_string(b.compared) + " coefficients";
      }
      r.instances.push_back(inst);
    }
    r.diagnostics.push_back(br.diagnostic);
    const auto& m = br.diagnostic.first_non_integer;
    expected = expected && br.root == 0 && br.residual_vanishes && m && m->n == 1 && m->k == 0 &&
               m->literal == Rational(-3, 2);
  }
  if (r.status != Status::fail) r.status = expected ? Status::documented_mismatch : Status::fail;
  if (r.status == Status::fail && r.witnesses.empty()) {
    r.witnesses.push_back({"diagnostic differs from the recorded expectation", "", "", false});
  }
  return r;
}

VerificationReport verify_thm34_literal(int truncation, const ClassifiedCensus* census) {
  auto r = start("thm34-literal", truncation);
  const auto five = literal_thm34(LiteralCase::mirr1_radical, truncation, census);
  const auto six = literal_thm34(LiteralCase::mirr2_radical, truncation, census);
  r.diagnostics = {five.diagnostic, six.diagnostic};

  const bool five_expected = five.diagnostic.error == "SqrtDomain";
  const auto& m = six.diagnostic.first_mismatch;
  const bool six_expected = m && m->k == 3 && m->literal == -m->expected && m->expected > 0;
  record(r, {"mirr1 closed form raises SqrtDomain", five.diagnostic.error, "SqrtDomain",
             five_expected});
  record(r, {"mirr2 closed form first differs at t^3 by sign",
             m ? "t^" + std::to_string(m->k) + ": " + to_string(m->literal) : "no difference",
             m ? "t^3: " + to_string(-m->literal) : "t^3", six_expected});
  for (const auto* d : {&five.diagnostic, &six.diagnostic}) {
    if (!d->reference_checked) continue;
    record(r, {d->reference + " matches census to k=" + std::to_string(d->reference_checked_to),
               d->reference_agrees ? "match" : "mismatch", "match", d->reference_agrees});
  }
  if (r.status != Status::fail) r.status = Status::documented_mismatch;
  return r;
}

const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names{
      "thm21", "thm22", "cor24", "divisibility", "remark23", "partition", "action-period",
      "orbit-census", "eq1", "thm34-literal"};
  return names;
}

VerificationReport verify_identity(const std::string& name, TableCache& tables) {
  const int t = tables.max_total();
  const auto& opts = tables.options();
  if (name == "thm21") return verify_thm21(t, tables.open(), tables.closed());
  if (name == "thm22") return verify_thm22(t, tables.open());
  if (name == "cor24") return verify_cor24(t, tables.classified().irreducible());
  if (name == "divisibility") {
    const auto irreducible = tables.classified().irreducible();
    return verify_divisibility(t, tables.open(), irreducible);
  }
  if (name == "remark23") return verify_remark23(t, tables.open());
  if (name == "partition") return verify_partition(t, opts);
  if (name == "action-period") return verify_action_period(t, opts);
  if (name == "orbit-census") return verify_orbit_census(t, tables.open(), opts);
  if (name == "eq1") return verify_eq1(t, tables.classified());
  if (name == "thm34-literal") return verify_thm34_literal(13, &tables.classified());
  throw RangeError("unknown identity '" + name + "'");
}

}  // namespace meander
