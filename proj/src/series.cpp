#include "meander/series.hpp"

#include <algorithm>
#include <utility>

#include "meander/error.hpp"

namespace meander {

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

namespace {

using Coeffs = std::vector<Rational>;

// Product of two coefficient vectors truncated to len entries. Missing
// entries are treated as zero.
Coeffs mul_trunc(const Coeffs& a, const Coeffs& b, int len) {
  Coeffs c(len);
  const int na = std::min<int>(a.size(), len);
  for (int i = 0; i < na; ++i) {
    if (a[i] == 0) continue;
    const int nb = std::min<int>(b.size(), len - i);
    for (int j = 0; j < nb; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

Coeffs inv_trunc(const Coeffs& a, int len) {
  if (a.empty() || a[0] == 0) throw NonUnitDivisor("divisor has a zero constant term");
  Coeffs b(len);
  const Rational inv0 = 1 / a[0];
  b[0] = inv0;
  for (int j = 1; j < len; ++j) {
    Rational acc = 0;
    const int top = std::min<int>(j, static_cast<int>(a.size()) - 1);
    for (int i = 1; i <= top; ++i) acc += a[i] * b[j - i];
    b[j] = -acc * inv0;
  }
  return b;
}

void require_truncation(int t) {
  if (t < 0) throw RangeError("truncation order must be non-negative");
}

}  // namespace

PowerSeries::PowerSeries(std::vector<Rational> coeffs, int truncation) : coeffs_(std::move(coeffs)) {
  require_truncation(truncation);
  coeffs_.resize(truncation + 1);
  // gmp arithmetic assumes reduced fractions; callers may pass e.g. mpq(4, 2)
  for (auto& c : coeffs_) c.canonicalize();
}

PowerSeries PowerSeries::constant(const Rational& c, int truncation) {
  return PowerSeries({c}, truncation);
}

PowerSeries PowerSeries::variable(int truncation) { return PowerSeries({0, 1}, truncation); }

PowerSeries PowerSeries::polynomial(std::vector<Rational> coeffs, int truncation) {
  return PowerSeries(std::move(coeffs), truncation);
}

const Rational& PowerSeries::coeff(int j) const {
  if (j < 0 || j > truncation()) {
    throw RangeError("coefficient " + std::to_string(j) + " beyond truncation order " +
                     std::to_string(truncation()));
  }
  return coeffs_[j];
}

int PowerSeries::valuation() const {
  for (int j = 0; j <= truncation(); ++j) {
    if (coeffs_[j] != 0) return j;
  }
  return truncation() + 1;
}

bool PowerSeries::integral() const {
  return std::ranges::all_of(coeffs_, [](const Rational& q) { return q.get_den() == 1; });
}

PowerSeries PowerSeries::truncate(int truncation) const {
  if (truncation > this->truncation()) throw RangeError("cannot extend a truncated series");
  return PowerSeries(Coeffs(coeffs_.begin(), coeffs_.begin() + truncation + 1), truncation);
}

PowerSeries PowerSeries::shift(int m) const {
  if (m < 0) throw RangeError("negative shift");
  Coeffs c(m, Rational(0));
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  return PowerSeries(std::move(c), truncation() + m);
}

PowerSeries PowerSeries::operator-() const {
  Coeffs c = coeffs_;
  for (auto& q : c) q = -q;
  return PowerSeries(std::move(c), truncation());
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  const int t = std::min(a.truncation(), b.truncation());
  Coeffs c(t + 1);
  for (int j = 0; j <= t; ++j) c[j] = a.coeffs_[j] + b.coeffs_[j];
  return PowerSeries(std::move(c), t);
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return a + (-b); }

// With valuations va, vb the product is known up to min(Ta + vb, Tb + va):
// any unknown coefficient of a gets multiplied by t^vb at least.
PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  const int t = std::min(a.truncation() + b.valuation(), b.truncation() + a.valuation());
  return PowerSeries(mul_trunc(a.coeffs_, b.coeffs_, t + 1), t);
}

PowerSeries operator*(const Rational& c, const PowerSeries& a) {
  Coeffs out = a.coeffs_;
  for (auto& q : out) q *= c;
  return PowerSeries(std::move(out), a.truncation());
}

PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) { return a * inverse(b); }

PowerSeries add(const PowerSeries& a, const PowerSeries& b) { return a + b; }
PowerSeries sub(const PowerSeries& a, const PowerSeries& b) { return a - b; }
PowerSeries mul(const PowerSeries& a, const PowerSeries& b) { return a * b; }
PowerSeries div(const PowerSeries& a, const PowerSeries& b) { return a / b; }

PowerSeries inverse(const PowerSeries& a) {
  return PowerSeries(inv_trunc(a.coeffs(), a.truncation() + 1), a.truncation());
}

PowerSeries pow(const PowerSeries& a, int e) {
  if (e < 0) return pow(inverse(a), -e);
  PowerSeries result = PowerSeries::constant(1, a.truncation());
  PowerSeries base = a;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

PowerSeries derivative(const PowerSeries& a) {
  if (a.truncation() < 1) throw RangeError("derivative needs truncation order >= 1");
  Coeffs c(a.truncation());
  for (int j = 1; j <= a.truncation(); ++j) c[j - 1] = a.coeff(j) * j;
  return PowerSeries(std::move(c), a.truncation() - 1);
}

// With inner = O(t^v), outer's unknown tail starts at t^(v(Tf+1)), and an
// error in inner's coefficient Tg+1 reaches the result at the same order.
PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner) {
  if (inner.coeff(0) != 0) {
    throw CompositionValuation("inner series must have a zero constant term");
  }
  const int v = inner.valuation();
  const int t = std::min(inner.truncation(), v * (outer.truncation() + 1) - 1);
  const int len = t + 1;
  Coeffs acc(len);
  for (int j = outer.truncation(); j >= 0; --j) {
    acc = mul_trunc(acc, inner.coeffs(), len);
    acc[0] += outer.coeff(j);
  }
  return PowerSeries(std::move(acc), t);
}

// Newton iteration s <- (s + a/s)/2, doubling the number of correct
// coefficients per step.
PowerSeries sqrt(const PowerSeries& a) {
  if (a.coeff(0) != 1) {
    throw SqrtDomain("square root needs constant term 1, got " + to_string(a.coeff(0)));
  }
  const int full = a.truncation() + 1;
  Coeffs s{Rational(1)};
  int len = 1;
  while (len < full) {
    len = std::min(2 * len, full);
    s.resize(len);
    const Coeffs q = mul_trunc(a.coeffs(), inv_trunc(s, len), len);
    for (int j = 0; j < len; ++j) s[j] = (s[j] + q[j]) / 2;
  }
  return PowerSeries(std::move(s), a.truncation());
}

Rational coeff(const PowerSeries& a, int j) { return a.coeff(j); }

PowerSeries rational_series(const std::vector<Rational>& numerator,
                            const std::vector<Rational>& denominator, int truncation) {
  require_truncation(truncation);
  if (denominator.empty() || denominator[0] == 0) {
    throw NonUnitDivisor("denominator has a zero constant term");
  }
  Coeffs c(truncation + 1);
  for (int j = 0; j <= truncation; ++j) {
    Rational acc = j < static_cast<int>(numerator.size()) ? numerator[j] : Rational(0);
    const int top = std::min<int>(j, static_cast<int>(denominator.size()) - 1);
    for (int i = 1; i <= top; ++i) acc -= denominator[i] * c[j - i];
    c[j] = acc / denominator[0];
  }
  return PowerSeries(std::move(c), truncation);
}

// ---------------------------------------------------------------------------
// Bivariate

BivariateSeries::BivariateSeries(int truncation) : truncation_(truncation) {
  require_truncation(truncation);
  coeffs_.resize(static_cast<std::size_t>(truncation + 1) * (truncation + 2) / 2);
}

std::size_t BivariateSeries::index(int n, int k) const {
  const std::size_t d = n + k;
  return d * (d + 1) / 2 + n;
}

BivariateSeries BivariateSeries::constant(const Rational& c, int truncation) {
  BivariateSeries s(truncation);
  s.set(0, 0, c);
  return s;
}

BivariateSeries BivariateSeries::x(int truncation) {
  BivariateSeries s(truncation);
  if (truncation >= 1) s.set(1, 0, 1);
  return s;
}

BivariateSeries BivariateSeries::t(int truncation) {
  BivariateSeries s(truncation);
  if (truncation >= 1) s.set(0, 1, 1);
  return s;
}

BivariateSeries BivariateSeries::from_table(const CountTable& table) {
  BivariateSeries s(table.max_total());
  for (const auto& e : table.entries()) s.set(e.n, e.k, Rational(Integer(std::to_string(e.count))));
  return s;
}

const Rational& BivariateSeries::at(int n, int k) const {
  static const Rational zero(0);
  if (n < 0 || k < 0) return zero;
  if (n + k > truncation_) {
    throw RangeError("coefficient (" + std::to_string(n) + "," + std::to_string(k) +
                     ") beyond truncation order " + std::to_string(truncation_));
  }
  return coeffs_[index(n, k)];
}

void BivariateSeries::set(int n, int k, Rational value) {
  if (n < 0 || k < 0 || n + k > truncation_) throw RangeError("coefficient outside triangle");
  value.canonicalize();
  coeffs_[index(n, k)] = std::move(value);
}

int BivariateSeries::valuation() const {
  for (int d = 0; d <= truncation_; ++d) {
    for (int n = 0; n <= d; ++n) {
      if (at(n, d - n) != 0) return d;
    }
  }
  return truncation_ + 1;
}

BivariateSeries BivariateSeries::truncate(int truncation) const {
  if (truncation > truncation_) throw RangeError("cannot extend a truncated series");
  BivariateSeries s(truncation);
  std::copy_n(coeffs_.begin(), s.coeffs_.size(), s.coeffs_.begin());
  return s;
}

BivariateSeries BivariateSeries::derivative_x() const {
  if (truncation_ < 1) throw RangeError("derivative needs truncation order >= 1");
  BivariateSeries s(truncation_ - 1);
  for (int d = 0; d < truncation_; ++d) {
    for (int n = 0; n <= d; ++n) s.set(n, d - n, at(n + 1, d - n) * (n + 1));
  }
  return s;
}

BivariateSeries BivariateSeries::derivative_t() const {
  if (truncation_ < 1) throw RangeError("derivative needs truncation order >= 1");
  BivariateSeries s(truncation_ - 1);
  for (int d = 0; d < truncation_; ++d) {
    for (int n = 0; n <= d; ++n) s.set(n, d - n, at(n, d - n + 1) * (d - n + 1));
  }
  return s;
}

BivariateSeries BivariateSeries::odd_part_x() const {
  BivariateSeries s(truncation_);
  for (int d = 0; d <= truncation_; ++d) {
    for (int n = 1; n <= d; n += 2) s.set(n, d - n, at(n, d - n));
  }
  return s;
}

BivariateSeries BivariateSeries::even_part_x() const {
  BivariateSeries s(truncation_);
  for (int d = 0; d <= truncation_; ++d) {
    for (int n = 0; n <= d; n += 2) s.set(n, d - n, at(n, d - n));
  }
  return s;
}

BivariateSeries BivariateSeries::operator-() const {
  BivariateSeries s = *this;
  for (auto& q : s.coeffs_) q = -q;
  return s;
}

BivariateSeries operator+(const BivariateSeries& a, const BivariateSeries& b) {
  BivariateSeries s(std::min(a.truncation_, b.truncation_));
  for (std::size_t i = 0; i < s.coeffs_.size(); ++i) s.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
  return s;
}

BivariateSeries operator-(const BivariateSeries& a, const BivariateSeries& b) { return a + (-b); }

BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
  const int t = std::min(a.truncation_ + b.valuation(), b.truncation_ + a.valuation());
  BivariateSeries s(t);
  for (int da = 0; da <= std::min(a.truncation_, t); ++da) {
    for (int na = 0; na <= da; ++na) {
      const Rational& ca = a.at(na, da - na);
      if (ca == 0) continue;
      for (int db = 0; db <= std::min(b.truncation_, t - da); ++db) {
        for (int nb = 0; nb <= db; ++nb) {
          const Rational& cb = b.at(nb, db - nb);
          if (cb == 0) continue;
          s.coeffs_[s.index(na + nb, da - na + db - nb)] += ca * cb;
        }
      }
    }
  }
  return s;
}

BivariateSeries operator*(const Rational& c, const BivariateSeries& a) {
  BivariateSeries s = a;
  for (auto& q : s.coeffs_) q *= c;
  return s;
}

BivariateSeries inverse(const BivariateSeries& a) {
  const int t = a.truncation();
  const Rational a00 = a.at(0, 0);
  if (a00 == 0) throw NonUnitDivisor("divisor has a zero constant term");
  const Rational inv0 = 1 / a00;
  BivariateSeries b(t);
  b.set(0, 0, inv0);
  for (int d = 1; d <= t; ++d) {
    for (int n = 0; n <= d; ++n) {
      const int k = d - n;
      Rational acc = 0;
      for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= k; ++j) {
          if (i == 0 && j == 0) continue;
          const Rational& ca = a.at(i, j);
          if (ca != 0) acc += ca * b.at(n - i, k - j);
        }
      }
      b.set(n, k, -acc * inv0);
    }
  }
  return b;
}

}  // namespace meander
