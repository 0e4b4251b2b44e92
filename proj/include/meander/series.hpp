#pragma once

// Truncated formal power series over the rationals.
//
// A PowerSeries with truncation order T knows coefficients 0..T exactly and
// says nothing about higher ones. Every operation computes the truncation
// order its result is actually correct to, so precision loss from division
// by t, differentiation or composition is never hidden.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "meander/enumerate.hpp"

namespace meander {

using Rational = mpq_class;
using Integer = mpz_class;

// "p/q", or plain "p" for integers.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

class PowerSeries {
 public:
  PowerSeries() = default;
  // Pads or truncates coeffs to T+1 entries. RangeError when T < 0.
  PowerSeries(std::vector<Rational> coeffs, int truncation);

  static PowerSeries constant(const Rational& c, int truncation);
  static PowerSeries variable(int truncation);  // t
  static PowerSeries polynomial(std::vector<Rational> coeffs, int truncation);

  int truncation() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  // RangeError beyond the truncation order.
  const Rational& coeff(int j) const;
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  // Index of the first nonzero known coefficient, or T+1 when all vanish.
  int valuation() const;
  // Whether every known coefficient is an integer.
  bool integral() const;

  PowerSeries truncate(int truncation) const;
  // Multiplication by t^m (m >= 0); known one order further per shift.
  PowerSeries shift(int m) const;

  PowerSeries operator-() const;
  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const Rational& c, const PowerSeries& a);
  // NonUnitDivisor when b has a zero constant term.
  friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b);
  // Same truncation and same coefficients.
  friend bool operator==(const PowerSeries& a, const PowerSeries& b) = default;

 private:
  std::vector<Rational> coeffs_;
};

PowerSeries add(const PowerSeries& a, const PowerSeries& b);
PowerSeries sub(const PowerSeries& a, const PowerSeries& b);
PowerSeries mul(const PowerSeries& a, const PowerSeries& b);
PowerSeries div(const PowerSeries& a, const PowerSeries& b);
PowerSeries inverse(const PowerSeries& a);
PowerSeries pow(const PowerSeries& a, int e);
PowerSeries derivative(const PowerSeries& a);
// outer(inner(t)); CompositionValuation unless inner has zero constant term.
PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner);
// SqrtDomain unless the constant term is 1.
PowerSeries sqrt(const PowerSeries& a);
Rational coeff(const PowerSeries& a, int j);

// numerator/denominator expanded to order T by the linear recurrence of the
// denominator. NonUnitDivisor on a zero constant term.
PowerSeries rational_series(const std::vector<Rational>& numerator,
                            const std::vector<Rational>& denominator, int truncation);

// Series in x and t known on the triangle n + k <= T (n: power of x).
class BivariateSeries {
 public:
  BivariateSeries() = default;
  explicit BivariateSeries(int truncation);

  static BivariateSeries constant(const Rational& c, int truncation);
  static BivariateSeries x(int truncation);
  static BivariateSeries t(int truncation);
  static BivariateSeries from_table(const CountTable& table);

  int truncation() const noexcept { return truncation_; }
  // Zero for negative indices; RangeError beyond the triangle.
  const Rational& at(int n, int k) const;
  void set(int n, int k, Rational value);
  // Lowest total degree with a nonzero coefficient, or T+1.
  int valuation() const;

  BivariateSeries truncate(int truncation) const;
  BivariateSeries derivative_x() const;
  BivariateSeries derivative_t() const;
  // Terms with odd (resp. even) power of x.
  BivariateSeries odd_part_x() const;
  BivariateSeries even_part_x() const;

  BivariateSeries operator-() const;
  friend BivariateSeries operator+(const BivariateSeries& a, const BivariateSeries& b);
  friend BivariateSeries operator-(const BivariateSeries& a, const BivariateSeries& b);
  friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b);
  friend BivariateSeries operator*(const Rational& c, const BivariateSeries& a);
  friend bool operator==(const BivariateSeries& a, const BivariateSeries& b) = default;

 private:
  std::size_t index(int n, int k) const;

  int truncation_ = -1;
  std::vector<Rational> coeffs_;
};

// NonUnitDivisor on a zero constant term.
BivariateSeries inverse(const BivariateSeries& a);

}  // namespace meander
