#pragma once

// Closed forms, sums and generating-function pipelines for the rows of the
// census, plus literal evaluators for printed formulas that do not survive
// exact evaluation. Those evaluators report what went wrong as data
// (Diagnostic) instead of throwing or patching the formula.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "meander/series.hpp"
#include "meander/structure.hpp"

namespace meander {

// sum_k M(1,k) t^k = 1/((1-2t) sqrt(1-4t)).
PowerSeries gf_m1(int truncation);
// sum_k M(2,k) t^k = (1-3t)/((1-2t)^2 sqrt((1-4t)^3)).
PowerSeries gf_m2(int truncation);
// sum_k Mis(1,k) t^k = 1/(2t^2 - 4t + 1).
PowerSeries gf_a(int truncation);

// Carcasses with k chords: sum over x1+..+x4 = k of
// C(x1+x2,x1) C(x2+x3,x2) C(x3+x4,x3) C(x4+x1,x4).
Integer carcass_count(int k);

// The twelve-index sum for M(3,k). The u-indices are enumerated explicitly and
// the x- and y-sums (which only couple through u) are tabulated per total, so
// the work is roughly C(k+3,3) * C(k+3,3) * k. ResourceLimit when the number
// of tuples touched would exceed max_terms.
Integer m3_count(int k, std::uint64_t max_terms = 2'000'000'000);

std::uint64_t totient(std::uint64_t n);
// Mirr(2n,3) = totient(n+4) - 2.
std::int64_t mirr_k3_even(int n);
// Mirr(2n-1,4) = n (totient(n+4) - 2).
std::int64_t mirr_k4_odd(int n);

// Intermediate series of the irreducible pipeline, all truncated at T.
struct Mirr1Stages {
  PowerSeries a;  // iterated snakes of order (1,k)
  PowerSeries c;  // all meanders of order (1,k)
  PowerSeries b;  // B-meanders
  PowerSeries g;  // arborescent meanders, G(s) = 1 + B(s/(1+s))
  PowerSeries f;  // irreducible meanders, F = 1 - 1/G
};

// Solves C = (A + B + 2AB)/(1 - AB) for B with the constant terms of A and C
// removed, then inverts the binomial transform and the sequence construction.
// NonIntegerCoefficient unless every coefficient of F is a non-negative integer.
Mirr1Stages mirr1_stages(int truncation);
PowerSeries mirr1_pipeline(int truncation);
// Mirr(2,j) = (j+1) Mirr(1,j+1) / 4.
PowerSeries mirr2_from_mirr1(int truncation);

struct Mismatch {
  int n = 0;
  int k = 0;
  Rational literal;
  Rational expected;
};

struct Diagnostic {
  std::string subject;
  std::string expression;
  std::string failure;       // what happened, in words
  std::string error;         // engine error type when evaluation threw
  std::optional<Mismatch> first_mismatch;
  std::optional<Mismatch> first_non_integer;
  std::string reference;     // the route the literal value was compared with
  bool reference_checked = false;  // reference route compared against the census
  bool reference_agrees = false;
  int reference_checked_to = -1;   // largest k (or total order) compared
};

enum class LiteralCase { mirr1_radical, mirr2_radical };

struct LiteralEvaluation {
  std::optional<PowerSeries> series;
  Diagnostic diagnostic;
};

// Evaluates the printed closed form for Mirr(1,k) or Mirr(2,k) verbatim and
// compares it with mirr1_pipeline / mirr2_from_mirr1. When a census is given,
// the pipeline itself is checked against its irreducible counts.
LiteralEvaluation literal_thm34(LiteralCase which, int truncation,
                                const ClassifiedCensus* census = nullptr);

// Rational roots of an integer polynomial (coefficients low to high), sorted.
std::vector<Rational> rational_roots(const std::vector<Integer>& coeffs);

struct BlockCheck {
  std::string name;  // mis-row-0, mis-row-1, mis-row-2, mis-col-0
  int compared = 0;
  std::optional<Mismatch> first_mismatch;
};

struct Eq1Branch {
  Rational root;           // v at x = t = 0
  BivariateSeries v;
  BivariateSeries f;       // (v - x - 2)/2
  BivariateSeries residual;
  bool residual_vanishes = false;
  std::vector<BlockCheck> blocks;
  Diagnostic diagnostic;
};

// Newton iteration on v^3 + x v^2 + 2v - 4(t-1)^2 (v+x) = 0 from every
// rational root of its specialization at x = t = 0, to total order T. Each
// branch is compared with the iterated-snake counts of the census on the
// overlapping triangle (coefficients of total order >= 1).
// NoRationalRoot, SingularDerivative.
std::vector<Eq1Branch> solve_eq1(int truncation, const ClassifiedCensus* census = nullptr);

}  // namespace meander
