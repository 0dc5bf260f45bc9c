#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qseries/errors.hpp"

namespace qseries {

using Rational = mpq_class;
using Integer = mpz_class;
using Exponent = std::int64_t;

// n/d in lowest terms. mpq_class(n, d) does not canonicalize.
inline Rational ratio(Exponent n, Exponent d) {
  Rational r(static_cast<long>(n), static_cast<long>(d));
  r.canonicalize();
  return r;
}

// Truncated Laurent series sum_{n >= lo} c_n q^n, known exactly for
// lo <= n < prec. Coefficients at exponents >= prec are unknown; below lo
// they are zero.
class LaurentSeries {
 public:
  // The zero series known to precision 0.
  LaurentSeries();
  LaurentSeries(Exponent lo, Exponent prec, std::vector<Rational> coeffs);

  static LaurentSeries zero(Exponent prec);
  static LaurentSeries constant(const Rational& c, Exponent prec);
  static LaurentSeries monomial(const Rational& c, Exponent exp, Exponent prec);
  // Builds a series from integer coefficients starting at `lo`.
  static LaurentSeries from_integers(Exponent lo, Exponent prec,
                                     std::vector<Integer> coeffs);

  Exponent lo() const { return lo_; }
  Exponent prec() const { return prec_; }

  // Throws OutOfPrecision when n < lo or n >= prec.
  const Rational& coeff(Exponent n) const;
  // Zero below lo; throws OutOfPrecision at or above prec.
  Rational coeff_or_zero(Exponent n) const;

  const std::vector<Rational>& coeffs() const { return coeffs_; }

  // First exponent with a nonzero coefficient, or prec() if none is known.
  Exponent valuation() const;
  bool is_zero() const { return valuation() >= prec_; }
  bool all_integral() const;

  // Keeps only exponents below `prec` (never raises the precision).
  LaurentSeries truncated(Exponent prec) const;
  // Drops known-zero leading coefficients so that lo() == valuation().
  LaurentSeries normalized() const;
  // Multiplies by q^k.
  LaurentSeries shifted(Exponent k) const;

  LaurentSeries operator-() const;
  LaurentSeries& operator+=(const LaurentSeries& other);
  LaurentSeries& operator-=(const LaurentSeries& other);
  LaurentSeries& operator*=(const Rational& c);

  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) {
    a += b;
    return a;
  }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) {
    a -= b;
    return a;
  }
  friend LaurentSeries operator*(LaurentSeries a, const Rational& c) {
    a *= c;
    return a;
  }
  friend LaurentSeries operator*(const Rational& c, LaurentSeries a) {
    a *= c;
    return a;
  }
  friend LaurentSeries operator*(const LaurentSeries& a,
                                 const LaurentSeries& b);

  // Exact structural equality (same lo, prec and coefficients).
  bool operator==(const LaurentSeries& other) const;

  std::string to_string(int max_terms = 12) const;

 private:
  Exponent lo_ = 0;
  Exponent prec_ = 0;
  std::vector<Rational> coeffs_;
};

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b);
// Multiplicative inverse; the result satisfies mul(a, invert(a)) == 1 to the
// available precision. Throws ZeroLeadingCoefficient if a has no known
// nonzero coefficient.
LaurentSeries invert(const LaurentSeries& a);
LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries power(const LaurentSeries& a, std::int64_t k);
// q -> q^k.
LaurentSeries scale_exponents(const LaurentSeries& a, Exponent k);
// sum_n c_{M n + r} q^n.
LaurentSeries dissect(const LaurentSeries& a, Exponent modulus,
                      Exponent residue);
Rational coeff(const LaurentSeries& a, Exponent n);

// Lowest exponent in [lo, upto) where the two series differ, comparing on the
// range both know. `upto` is clamped to the common precision.
std::optional<Exponent> first_mismatch(const LaurentSeries& a,
                                       const LaurentSeries& b,
                                       std::optional<Exponent> upto = {});

// Floor and ceiling division for signed integers.
inline Exponent floor_div(Exponent a, Exponent b) {
  Exponent q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline Exponent ceil_div(Exponent a, Exponent b) {
  return -floor_div(-a, b);
}

std::string rational_to_string(const Rational& r);
Rational parse_rational(const std::string& text);

}  // namespace qseries
