#include "meander/formulas.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>

#include "meander/error.hpp"

namespace meander {

namespace {

Integer binom(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

PowerSeries poly(std::vector<Rational> c, int truncation) {
  return PowerSeries::polynomial(std::move(c), truncation);
}

void require_truncation(int t) {
  if (t < 0) throw RangeError("truncation order must be non-negative");
}

}  // namespace

PowerSeries gf_m1(int truncation) {
  require_truncation(truncation);
  const auto root = sqrt(poly({1, -4}, truncation));
  return inverse(poly({1, -2}, truncation) * root);
}

PowerSeries gf_m2(int truncation) {
  require_truncation(truncation);
  const auto root = sqrt(poly({1, -4}, truncation));
  const auto den = pow(poly({1, -2}, truncation), 2) * pow(root, 3);
  return poly({1, -3}, truncation) / den;
}

PowerSeries gf_a(int truncation) { return rational_series({1}, {1, -4, 2}, truncation); }

Integer carcass_count(int k) {
  if (k < 0) throw RangeError("carcass_count needs k >= 0");
  Integer total = 0;
  for (int x1 = 0; x1 <= k; ++x1) {
    for (int x2 = 0; x1 + x2 <= k; ++x2) {
      for (int x3 = 0; x1 + x2 + x3 <= k; ++x3) {
        const int x4 = k - x1 - x2 - x3;
        total += binom(x1 + x2, x1) * binom(x2 + x3, x2) * binom(x3 + x4, x3) *
                 binom(x4 + x1, x4);
      }
    }
  }
  return total;
}

namespace {

// For fixed u: table[a] = sum over x0..x3 >= 0 with total a of
// prod_i C(x_i + x_{i+1} + u_i, u_i), indices mod 4.
std::vector<Integer> cyclic_sums(const std::array<int, 4>& u, int max_total,
                                 std::uint64_t& budget) {
  std::vector<Integer> table(max_total + 1);
  std::array<int, 4> x{};
  for (x[0] = 0; x[0] <= max_total; ++x[0]) {
    for (x[1] = 0; x[0] + x[1] <= max_total; ++x[1]) {
      for (x[2] = 0; x[0] + x[1] + x[2] <= max_total; ++x[2]) {
        for (x[3] = 0; x[0] + x[1] + x[2] + x[3] <= max_total; ++x[3]) {
          if (budget == 0) throw ResourceLimit("m3_count term budget exceeded");
          --budget;
          Integer term = 1;
          for (int i = 0; i < 4; ++i) term *= binom(x[i] + x[(i + 1) % 4] + u[i], u[i]);
          table[x[0] + x[1] + x[2] + x[3]] += term;
        }
      }
    }
  }
  return table;
}

}  // namespace

Integer m3_count(int k, std::uint64_t max_terms) {
  if (k < 0) throw RangeError("m3_count needs k >= 0");
  std::uint64_t budget = max_terms;
  Integer total = 0;
  std::array<int, 4> u{};
  for (u[0] = 0; u[0] <= k; ++u[0]) {
    for (u[1] = 0; u[0] + u[1] <= k; ++u[1]) {
      for (u[2] = 0; u[0] + u[1] + u[2] <= k; ++u[2]) {
        for (u[3] = 0; u[0] + u[1] + u[2] + u[3] <= k; ++u[3]) {
          const int rest = k - u[0] - u[1] - u[2] - u[3];
          // x and y see the same u, so one table serves both.
          const auto s = cyclic_sums(u, rest, budget);
          for (int a = 0; a <= rest; ++a) total += s[a] * s[rest - a];
        }
      }
    }
  }
  return 2 * total;
}

std::uint64_t totient(std::uint64_t n) {
  if (n == 0) throw RangeError("totient needs n >= 1");
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

std::int64_t mirr_k3_even(int n) {
  if (n < 1) throw RangeError("mirr_k3_even needs n >= 1");
  return static_cast<std::int64_t>(totient(n + 4)) - 2;
}

std::int64_t mirr_k4_odd(int n) {
  if (n < 1) throw RangeError("mirr_k4_odd needs n >= 1");
  return static_cast<std::int64_t>(n) * mirr_k3_even(n);
}

Mirr1Stages mirr1_stages(int truncation) {
  require_truncation(truncation);
  Mirr1Stages st;
  st.a = gf_a(truncation);
  st.c = gf_m1(truncation);
  const auto one = PowerSeries::constant(1, truncation);
  const auto a_bar = st.a - one;
  const auto c_bar = st.c - one;
  st.b = (c_bar - a_bar) / (one + 2 * a_bar + a_bar * c_bar);
  // B(t) = G(t/(1-t)) - 1, and s = t/(1-t) inverts to t = s/(1+s).
  const auto back = PowerSeries::variable(truncation) / poly({1, 1}, truncation);
  st.g = one + compose(st.b, back);
  st.f = one - inverse(st.g);
  for (int j = 0; j <= truncation; ++j) {
    const Rational& q = st.f.coeff(j);
    if (q.get_den() != 1 || q < 0) {
      throw NonIntegerCoefficient("irreducible pipeline produced " + to_string(q) +
                                  " at t^" + std::to_string(j));
    }
  }
  return st;
}

PowerSeries mirr1_pipeline(int truncation) { return mirr1_stages(truncation).f; }

PowerSeries mirr2_from_mirr1(int truncation) {
  require_truncation(truncation);
  const auto f = mirr1_pipeline(truncation + 1);
  std::vector<Rational> c(truncation + 1);
  for (int j = 0; j <= truncation; ++j) {
    c[j] = f.coeff(j + 1) * (j + 1) / 4;
    if (c[j].get_den() != 1) {
      throw NonIntegerCoefficient("Mirr(2," + std::to_string(j) + ") = " + to_string(c[j]));
    }
  }
  return PowerSeries(std::move(c), truncation);
}

namespace {

void check_reference(Diagnostic& d, const PowerSeries& reference, int row,
                     const ClassifiedCensus* census) {
  if (census == nullptr) return;
  d.reference_checked = true;
  d.reference_agrees = true;
  for (int k = 0; k <= reference.truncation() && row + k <= census->max_total(); ++k) {
    d.reference_checked_to = k;
    if (reference.coeff(k) != Rational(Integer(std::to_string(census->at(row, k).irreducible)))) {
      d.reference_agrees = false;
    }
  }
}

std::optional<Mismatch> first_difference(const PowerSeries& literal, const PowerSeries& expected,
                                         int row) {
  const int t = std::min(literal.truncation(), expected.truncation());
  for (int k = 0; k <= t; ++k) {
    if (literal.coeff(k) != expected.coeff(k)) {
      return Mismatch{row, k, literal.coeff(k), expected.coeff(k)};
    }
  }
  return std::nullopt;
}

}  // namespace

LiteralEvaluation literal_thm34(LiteralCase which, int truncation,
                                const ClassifiedCensus* census) {
  require_truncation(truncation);
  LiteralEvaluation out;
  auto& d = out.diagnostic;
  const auto ratio = poly({1, -3}, truncation) / poly({1, 1}, truncation);
  const int row = which == LiteralCase::mirr1_radical ? 1 : 2;
  const auto reference =
      which == LiteralCase::mirr1_radical ? mirr1_pipeline(truncation) : mirr2_from_mirr1(truncation);
  d.reference = which == LiteralCase::mirr1_radical ? "mirr1_pipeline" : "mirr2_from_mirr1";
  check_reference(d, reference, row, census);

  try {
    if (which == LiteralCase::mirr1_radical) {
      d.subject = "mirr1-closed-form";
      d.expression = "(1/8) sqrt(((1-3t)/(1+t))^4 - 1)";
      const auto radicand = pow(ratio, 4) - PowerSeries::constant(1, truncation);
      out.series = Rational(1, 8) * sqrt(radicand);
    } else {
      d.subject = "mirr2-closed-form";
      d.expression = "(2t - 1 + sqrt((1-3t)/(1+t))) / sqrt((1-3t)(1+t)^5)";
      const auto num = poly({-1, 2}, truncation) + sqrt(ratio);
      const auto den = sqrt(poly({1, -3}, truncation) * pow(poly({1, 1}, truncation), 5));
      out.series = num / den;
    }
  } catch (const SqrtDomain& e) {
    d.error = "SqrtDomain";
    d.failure = std::string("radicand is not a unit series: ") + e.what();
    if (which == LiteralCase::mirr1_radical) {
      const auto radicand = pow(ratio, 4) - PowerSeries::constant(1, truncation);
      d.failure += "; radicand valuation " + std::to_string(radicand.valuation()) +
                   ", leading coefficient " + to_string(radicand.coeff(radicand.valuation()));
    }
    return out;
  }

  d.first_mismatch = first_difference(*out.series, reference, row);
  if (d.first_mismatch) {
    const auto& m = *d.first_mismatch;
    d.failure = "first differs at t^" + std::to_string(m.k) + ": literal " + to_string(m.literal) +
                ", " + d.reference + " " + to_string(m.expected);
    if (m.literal == -m.expected) d.failure += " (opposite sign)";
  } else {
    d.failure = "none: literal value agrees with " + d.reference;
  }
  return out;
}

std::vector<Rational> rational_roots(const std::vector<Integer>& coeffs) {
  std::vector<Integer> c = coeffs;
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.empty()) throw RangeError("zero polynomial has every root");
  std::set<Rational> roots;
  std::size_t low = 0;
  while (c[low] == 0) ++low;
  if (low > 0) roots.insert(0);
  c.erase(c.begin(), c.begin() + low);
  if (c.size() == 1) return {roots.begin(), roots.end()};

  auto divisors = [](Integer m) {
    m = abs(m);
    std::vector<Integer> out;
    for (Integer d = 1; d * d <= m; ++d) {
      if (m % d == 0) {
        out.push_back(d);
        if (d * d != m) out.push_back(m / d);
      }
    }
    return out;
  };
  auto eval = [&](const Rational& r) {
    Rational acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + Rational(*it);
    return acc;
  };
  for (const auto& p : divisors(c.front())) {
    for (const auto& q : divisors(c.back())) {
      for (int sign : {1, -1}) {
        Rational r(sign * p, q);
        r.canonicalize();
        if (eval(r) == 0) roots.insert(r);
      }
    }
  }
  return {roots.begin(), roots.end()};
}

namespace {

// P(v) = c3 v^3 + c2 v^2 + c1 v + c0 with c3 = 1, c2 = x, c1 = 2 - 4w,
// c0 = -4wx, w = (t-1)^2.
struct Eq1Poly {
  std::array<BivariateSeries, 4> c;

  explicit Eq1Poly(int t) {
    const auto one = BivariateSeries::constant(1, t);
    const auto x = BivariateSeries::x(t);
    const auto tt = BivariateSeries::t(t);
    const auto w = (tt - one) * (tt - one);
    c[3] = one;
    c[2] = x;
    c[1] = BivariateSeries::constant(2, t) - Rational(4) * w;
    c[0] = Rational(-4) * w * x;
  }

  BivariateSeries value(const BivariateSeries& v) const {
    return ((c[3] * v + c[2]) * v + c[1]) * v + c[0];
  }
  BivariateSeries slope(const BivariateSeries& v) const {
    return (Rational(3) * c[3] * v + Rational(2) * c[2]) * v + c[1];
  }
};

Rational count_at(const ClassifiedCensus& census, int n, int k) {
  return Rational(Integer(std::to_string(census.at(n, k).iterated_snake)));
}

}  // namespace

std::vector<Eq1Branch> solve_eq1(int truncation, const ClassifiedCensus* census) {
  require_truncation(truncation);
  const Eq1Poly p(truncation);
  std::vector<Integer> specialized(4);
  for (int j = 0; j < 4; ++j) specialized[j] = p.c[j].at(0, 0).get_num();
  const auto roots = rational_roots(specialized);
  if (roots.empty()) throw NoRationalRoot("specialized equation has no rational root");

  std::vector<Eq1Branch> out;
  for (const auto& r : roots) {
    Eq1Branch br;
    br.root = r;
    auto v = BivariateSeries::constant(r, truncation);
    if (p.slope(v).at(0, 0) == 0) {
      throw SingularDerivative("dP/dv vanishes at v0 = " + to_string(r));
    }
    // Each step doubles the number of correct total degrees; stop at a fixed point.
    for (int step = 0; step <= truncation + 1; ++step) {
      auto next = v - p.value(v) * inverse(p.slope(v));
      if (next == v) break;
      v = std::move(next);
    }
    br.v = v;
    br.residual = p.value(v);
    br.residual_vanishes = br.residual.valuation() > truncation;
    br.f = Rational(1, 2) * (v - BivariateSeries::x(truncation) -
                             BivariateSeries::constant(2, truncation));

    auto& d = br.diagnostic;
    d.subject = "iterated-snake-equation";
    d.expression = "v^3 + x v^2 + 2v - 4(t-1)^2 (v+x) = 0, v = 2F + x + 2, v(0,0) = " + to_string(r);
    d.reference = "classify_census iterated snakes";
    if (census != nullptr) {
      const int top = std::min(truncation, census->max_total());
      struct Block {
        const char* name;
        int n0, k0, dn, dk;
      };
      const Block specs[] = {{"mis-row-0", 0, 1, 0, 1},
                             {"mis-row-1", 1, 0, 0, 1},
                             {"mis-row-2", 2, 0, 0, 1},
                             {"mis-col-0", 1, 0, 1, 0}};
      for (const auto& s : specs) {
        BlockCheck bc;
        bc.name = s.name;
        for (int n = s.n0, k = s.k0; n + k <= top; n += s.dn, k += s.dk) {
          ++bc.compared;
          const auto expected = count_at(*census, n, k);
          if (!bc.first_mismatch && br.f.at(n, k) != expected) {
            bc.first_mismatch = Mismatch{n, k, br.f.at(n, k), expected};
          }
        }
        br.blocks.push_back(std::move(bc));
      }
      d.reference_checked = true;
      d.reference_checked_to = top;
      // Earliest mismatch, and earliest non-integer coefficient, by total
      // order over the whole overlapping triangle.
      for (int t = 1; t <= top; ++t) {
        for (int n = 0; n <= t; ++n) {
          const auto& got = br.f.at(n, t - n);
          const auto expected = count_at(*census, n, t - n);
          if (got == expected) continue;
          if (!d.first_mismatch) d.first_mismatch = Mismatch{n, t - n, got, expected};
          if (!d.first_non_integer && got.get_den() != 1) {
            d.first_non_integer = Mismatch{n, t - n, got, expected};
          }
        }
      }
      d.reference_agrees = !d.first_mismatch;
    }
    if (!br.residual_vanishes) {
      d.failure = "Newton residual does not vanish to order " + std::to_string(truncation);
    } else if (d.first_mismatch) {
      const auto& m = *d.first_mismatch;
      auto describe = [](const Mismatch& mm) {
        return "x^" + std::to_string(mm.n) + " t^" + std::to_string(mm.k) + " is " +
               to_string(mm.literal) + ", census has " + to_string(mm.expected);
      };
      d.failure = "F coefficient at " + describe(m);
      if (d.first_non_integer) {
        d.failure += "; first non-integer coefficient at " + describe(*d.first_non_integer);
      }
    } else if (census != nullptr) {
      d.failure = "none: branch matches the census";
    } else {
      d.failure = "not compared (no census supplied)";
    }
    out.push_back(std::move(br));
  }
  return out;
}

}  // namespace meander
