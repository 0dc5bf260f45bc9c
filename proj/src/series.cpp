#include "qseries/series.hpp"

#include <algorithm>
#include <sstream>

namespace qseries {

namespace {

// Coefficients scaled to integers by a common denominator, together with the
// positions of the nonzero entries.
struct IntegerView {
  Integer denominator = 1;
  std::vector<Integer> numerators;
  std::vector<std::size_t> support;
};

IntegerView integer_view(const std::vector<Rational>& coeffs) {
  IntegerView view;
  for (const auto& c : coeffs) {
    if (c.get_den() != 1) {
      mpz_lcm(view.denominator.get_mpz_t(), view.denominator.get_mpz_t(),
              c.get_den_mpz_t());
    }
  }
  view.numerators.resize(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (sgn(coeffs[i]) == 0) continue;
    view.support.push_back(i);
    if (view.denominator == 1) {
      view.numerators[i] = coeffs[i].get_num();
    } else {
      view.numerators[i] = view.denominator / coeffs[i].get_den();
      view.numerators[i] *= coeffs[i].get_num();
    }
  }
  return view;
}

std::vector<Rational> from_scaled(std::vector<Integer>&& nums,
                                  const Integer& denominator) {
  std::vector<Rational> out(nums.size());
  for (std::size_t i = 0; i < nums.size(); ++i) {
    if (sgn(nums[i]) == 0) continue;
    mpz_swap(out[i].get_num_mpz_t(), nums[i].get_mpz_t());
    if (denominator != 1) {
      out[i].get_den() = denominator;
      out[i].canonicalize();
    }
  }
  return out;
}

}  // namespace

LaurentSeries::LaurentSeries() = default;

LaurentSeries::LaurentSeries(Exponent lo, Exponent prec,
                             std::vector<Rational> coeffs)
    : lo_(lo), prec_(prec), coeffs_(std::move(coeffs)) {
  if (prec_ < lo_) {
    throw DomainError("series precision below its lowest exponent");
  }
  coeffs_.resize(static_cast<std::size_t>(prec_ - lo_));
}

LaurentSeries LaurentSeries::zero(Exponent prec) {
  Exponent lo = std::min<Exponent>(0, prec);
  return LaurentSeries(lo, prec, {});
}

LaurentSeries LaurentSeries::constant(const Rational& c, Exponent prec) {
  return monomial(c, 0, prec);
}

LaurentSeries LaurentSeries::monomial(const Rational& c, Exponent exp,
                                      Exponent prec) {
  Exponent lo = std::min(exp, prec);
  LaurentSeries s(lo, prec, {});
  if (exp < prec) s.coeffs_[static_cast<std::size_t>(exp - lo)] = c;
  return s;
}

LaurentSeries LaurentSeries::from_integers(Exponent lo, Exponent prec,
                                           std::vector<Integer> coeffs) {
  coeffs.resize(static_cast<std::size_t>(prec - lo));
  return LaurentSeries(lo, prec, from_scaled(std::move(coeffs), 1));
}

const Rational& LaurentSeries::coeff(Exponent n) const {
  if (n < lo_ || n >= prec_) {
    std::ostringstream msg;
    msg << "coefficient of q^" << n << " outside known range [" << lo_ << ", "
        << prec_ << ")";
    throw OutOfPrecision(msg.str());
  }
  return coeffs_[static_cast<std::size_t>(n - lo_)];
}

Rational LaurentSeries::coeff_or_zero(Exponent n) const {
  if (n < lo_) return 0;
  return coeff(n);
}

Exponent LaurentSeries::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) return lo_ + static_cast<Exponent>(i);
  }
  return prec_;
}

bool LaurentSeries::all_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Rational& c) { return c.get_den() == 1; });
}

LaurentSeries LaurentSeries::truncated(Exponent prec) const {
  if (prec >= prec_) return *this;
  Exponent lo = std::min(lo_, prec - 1);
  std::vector<Rational> out(static_cast<std::size_t>(prec - lo));
  for (Exponent n = std::max(lo_, lo); n < prec; ++n) {
    out[static_cast<std::size_t>(n - lo)] =
        coeffs_[static_cast<std::size_t>(n - lo_)];
  }
  return LaurentSeries(lo, prec, std::move(out));
}

LaurentSeries LaurentSeries::normalized() const {
  Exponent v = valuation();
  if (v >= prec_) v = prec_ - 1;
  if (v == lo_) return *this;
  std::vector<Rational> out(coeffs_.begin() + (v - lo_), coeffs_.end());
  return LaurentSeries(v, prec_, std::move(out));
}

LaurentSeries LaurentSeries::shifted(Exponent k) const {
  LaurentSeries out = *this;
  out.lo_ += k;
  out.prec_ += k;
  return out;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& other) {
  Exponent lo = std::min(lo_, other.lo_);
  Exponent prec = std::min(prec_, other.prec_);
  std::vector<Rational> out(static_cast<std::size_t>(prec - lo));
  for (Exponent n = lo_; n < std::min(prec_, prec); ++n) {
    out[static_cast<std::size_t>(n - lo)] =
        std::move(coeffs_[static_cast<std::size_t>(n - lo_)]);
  }
  for (Exponent n = other.lo_; n < std::min(other.prec_, prec); ++n) {
    const auto& c = other.coeffs_[static_cast<std::size_t>(n - other.lo_)];
    if (sgn(c) != 0) out[static_cast<std::size_t>(n - lo)] += c;
  }
  lo_ = lo;
  prec_ = prec;
  coeffs_ = std::move(out);
  return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& other) {
  return *this += -other;
}

LaurentSeries& LaurentSeries::operator*=(const Rational& c) {
  for (auto& x : coeffs_) {
    if (sgn(x) != 0) x *= c;
  }
  return *this;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  const Exponent lo = a.lo_ + b.lo_;
  const Exponent prec = std::min(a.prec_ + b.lo_, b.prec_ + a.lo_);
  const auto len = static_cast<std::size_t>(prec - lo);

  IntegerView va = integer_view(a.coeffs_);
  IntegerView vb = integer_view(b.coeffs_);
  std::vector<Integer> acc(len);
  // Outer loop over the sparser operand.
  const IntegerView& outer = va.support.size() <= vb.support.size() ? va : vb;
  const IntegerView& inner = &outer == &va ? vb : va;
  for (std::size_t i : outer.support) {
    if (i >= len) break;
    const mpz_srcptr x = outer.numerators[i].get_mpz_t();
    for (std::size_t j : inner.support) {
      if (i + j >= len) break;
      mpz_addmul(acc[i + j].get_mpz_t(), x, inner.numerators[j].get_mpz_t());
    }
  }
  Integer den = va.denominator * vb.denominator;
  return LaurentSeries(lo, prec, from_scaled(std::move(acc), den));
}

bool LaurentSeries::operator==(const LaurentSeries& other) const {
  return lo_ == other.lo_ && prec_ == other.prec_ && coeffs_ == other.coeffs_;
}

std::string LaurentSeries::to_string(int max_terms) const {
  std::ostringstream out;
  int printed = 0;
  for (Exponent n = lo_; n < prec_; ++n) {
    const auto& c = coeffs_[static_cast<std::size_t>(n - lo_)];
    if (sgn(c) == 0) continue;
    if (printed == max_terms) {
      out << " + ...";
      break;
    }
    if (printed > 0) out << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) out << "-";
    Rational mag = abs(c);
    bool unit = mag == 1;
    if (!unit || n == 0) out << rational_to_string(mag);
    if (n != 0) {
      if (!unit) out << "*";
      out << "q";
      if (n != 1) out << "^" << n;
    }
    ++printed;
  }
  if (printed == 0) out << "0";
  out << " + O(q^" << prec_ << ")";
  return out.str();
}

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b) {
  return a + b;
}

LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b) {
  return a * b;
}

LaurentSeries invert(const LaurentSeries& a) {
  const Exponent v = a.valuation();
  if (v >= a.prec()) {
    throw ZeroLeadingCoefficient(
        "cannot invert a series with no known nonzero coefficient");
  }
  // a = q^v * u with u known to relative precision len.
  const auto len = static_cast<std::size_t>(a.prec() - v);
  std::vector<Rational> u(a.coeffs().begin() + (v - a.lo()), a.coeffs().end());
  std::vector<std::size_t> support;
  for (std::size_t k = 1; k < len; ++k) {
    if (sgn(u[k]) != 0) support.push_back(k);
  }

  std::vector<Rational> r(len);
  const Rational& u0 = u[0];
  if (abs(u0) == 1 && std::all_of(u.begin(), u.end(), [](const Rational& c) {
        return c.get_den() == 1;
      })) {
    // Integer recurrence: r_n = -u0 * sum_{k>=1} u_k r_{n-k}, since 1/u0 = u0.
    std::vector<Integer> ri(len);
    std::vector<Integer> ui(len);
    for (std::size_t k = 0; k < len; ++k) ui[k] = u[k].get_num();
    const bool neg = sgn(u0) < 0;
    ri[0] = ui[0];
    Integer acc;
    for (std::size_t n = 1; n < len; ++n) {
      acc = 0;
      for (std::size_t k : support) {
        if (k > n) break;
        mpz_addmul(acc.get_mpz_t(), ui[k].get_mpz_t(), ri[n - k].get_mpz_t());
      }
      if (neg) ri[n] = acc;
      else ri[n] = -acc;
    }
    return LaurentSeries::from_integers(-v, a.prec() - 2 * v, std::move(ri));
  }

  const Rational inv0 = 1 / u0;
  r[0] = inv0;
  Rational acc;
  for (std::size_t n = 1; n < len; ++n) {
    acc = 0;
    for (std::size_t k : support) {
      if (k > n) break;
      acc += u[k] * r[n - k];
    }
    r[n] = -acc * inv0;
  }
  return LaurentSeries(-v, a.prec() - 2 * v, std::move(r));
}

LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& b) {
  const Exponent v = b.valuation();
  if (v >= b.prec()) {
    throw ZeroLeadingCoefficient("division by a series with no known nonzero coefficient");
  }
  // Same precision as a * invert(b), computed by the recurrence
  // y_n = (a_n - sum_{k>=1} u_k y_{n-k}) / u_0 over the support of u.
  const Exponent lo = a.lo() - v;
  const Exponent prec = std::min(a.prec() - v, b.prec() - 2 * v + a.lo());
  if (prec <= lo) return LaurentSeries(prec, prec, {});
  const auto len = static_cast<std::size_t>(prec - lo);
  const auto ulen = static_cast<std::size_t>(b.prec() - v);
  IntegerView ub = integer_view(std::vector<Rational>(
      b.coeffs().begin() + (v - b.lo()), b.coeffs().end()));
  std::vector<std::size_t> support;
  for (std::size_t k : ub.support) {
    if (k > 0) support.push_back(k);
  }
  std::vector<Rational> head(len);
  for (std::size_t n = 0; n < len && n < a.coeffs().size(); ++n) head[n] = a.coeffs()[n];
  IntegerView va = integer_view(head);
  const Integer& u0 = ub.numerators[0];
  if (abs(u0) == 1) {
    // Integer recurrence on a * den(u) / den(a); the scale is undone at the end.
    std::vector<Integer> y(len);
    Integer acc;
    for (std::size_t n = 0; n < len; ++n) {
      acc = va.numerators[n];
      for (std::size_t k : support) {
        if (k > n || k >= ulen) break;
        mpz_submul(acc.get_mpz_t(), ub.numerators[k].get_mpz_t(), y[n - k].get_mpz_t());
      }
      if (sgn(u0) < 0) mpz_neg(acc.get_mpz_t(), acc.get_mpz_t());
      y[n] = acc;
    }
    std::vector<Rational> out = from_scaled(std::move(y), va.denominator);
    if (ub.denominator != 1) {
      for (auto& c : out) {
        if (sgn(c) != 0) c *= ub.denominator;
      }
    }
    return LaurentSeries(lo, prec, std::move(out));
  }
  return a * invert(b);
}

LaurentSeries power(const LaurentSeries& a, std::int64_t k) {
  if (k < 0) return power(invert(a), -k);
  if (k == 0) {
    return LaurentSeries::constant(1, std::max<Exponent>(a.prec() - a.lo(), 1));
  }
  std::optional<LaurentSeries> result;
  LaurentSeries base = a;
  while (k > 0) {
    if (k & 1) result = result ? *result * base : base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return *result;
}

LaurentSeries scale_exponents(const LaurentSeries& a, Exponent k) {
  if (k <= 0) throw DomainError("scale factor must be positive");
  if (k == 1) return a;
  const Exponent lo = a.lo() * k;
  const Exponent prec = a.prec() * k;
  std::vector<Rational> out(static_cast<std::size_t>(prec - lo));
  for (Exponent n = a.lo(); n < a.prec(); ++n) {
    const auto& c = a.coeffs()[static_cast<std::size_t>(n - a.lo())];
    if (sgn(c) != 0) out[static_cast<std::size_t>(n * k - lo)] = c;
  }
  return LaurentSeries(lo, prec, std::move(out));
}

LaurentSeries dissect(const LaurentSeries& a, Exponent modulus,
                      Exponent residue) {
  if (modulus <= 0) throw DomainError("dissection modulus must be positive");
  if (residue < 0 || residue >= modulus) {
    throw DomainError("dissection residue out of range");
  }
  const Exponent prec = floor_div(a.prec() - residue - 1, modulus) + 1;
  // Exponents below a.lo() are known zeros, so lo may be lowered freely.
  Exponent lo = std::min(ceil_div(a.lo() - residue, modulus), prec - 1);
  std::vector<Rational> out(static_cast<std::size_t>(prec - lo));
  for (Exponent n = lo; n < prec; ++n) {
    const Exponent src = modulus * n + residue;
    if (src >= a.lo()) {
      out[static_cast<std::size_t>(n - lo)] =
          a.coeffs()[static_cast<std::size_t>(src - a.lo())];
    }
  }
  return LaurentSeries(lo, prec, std::move(out));
}

Rational coeff(const LaurentSeries& a, Exponent n) { return a.coeff(n); }

std::optional<Exponent> first_mismatch(const LaurentSeries& a,
                                       const LaurentSeries& b,
                                       std::optional<Exponent> upto) {
  Exponent hi = std::min(a.prec(), b.prec());
  if (upto) hi = std::min(hi, *upto);
  const Exponent lo = std::min(a.lo(), b.lo());
  for (Exponent n = lo; n < hi; ++n) {
    if (a.coeff_or_zero(n) != b.coeff_or_zero(n)) return n;
  }
  return std::nullopt;
}

std::string rational_to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) {
    throw DomainError("malformed rational '" + text + "'");
  }
  r.canonicalize();
  return r;
}

}  // namespace qseries
