#include "qseries/qproducts.hpp"

namespace qseries {

LaurentSeries euler_product(Exponent a, Exponent prec) {
  if (a < 1) throw DomainError("euler_product needs a >= 1");
  const Exponent top = std::max<Exponent>(prec, 1);
  std::vector<Integer> c(static_cast<std::size_t>(top));
  // sum_{k in Z} (-1)^k q^{a k(3k-1)/2}; k and -k give the two pentagonal
  // families.
  c[0] = 1;
  for (Exponent k = 1;; ++k) {
    const Exponent e1 = a * k * (3 * k - 1) / 2;
    const Exponent e2 = a * k * (3 * k + 1) / 2;
    if (e1 >= top) break;
    const int sign = (k % 2 == 0) ? 1 : -1;
    c[static_cast<std::size_t>(e1)] += sign;
    if (e2 < top) c[static_cast<std::size_t>(e2)] += sign;
  }
  return LaurentSeries::from_integers(0, top, std::move(c));
}

LaurentSeries jab(Exponent a, Exponent b, Exponent prec) {
  if (!(0 < a && a < b)) throw DomainError("J(a,b) needs 0 < a < b");
  const Exponent top = std::max<Exponent>(prec, 1);
  std::vector<Integer> c(static_cast<std::size_t>(top));
  auto exponent = [&](Exponent n) { return b * n * (n - 1) / 2 + a * n; };
  for (Exponent n = 0; exponent(n) < top; ++n) {
    c[static_cast<std::size_t>(exponent(n))] += (n % 2 == 0) ? 1 : -1;
  }
  for (Exponent n = -1; exponent(n) < top; --n) {
    c[static_cast<std::size_t>(exponent(n))] += (n % 2 == 0) ? 1 : -1;
  }
  return LaurentSeries::from_integers(0, top, std::move(c));
}

LaurentSeries bracket(Exponent j, Exponent k, Exponent prec) {
  if (k < 1) throw DomainError("bracket modulus must be positive");
  const Exponent j0 = ((j % k) + k) % k;
  if (j0 == 0) throw DomainError("bracket argument divisible by modulus");
  const Exponent s = (j - j0) / k;
  // [q^{j0 + k s}] = (-1)^s q^{-j0 s - k s(s-1)/2} [q^{j0}].
  const Exponent shift = -j0 * s - k * s * (s - 1) / 2;
  const Exponent work = prec - shift;
  LaurentSeries base =
      jab(j0, k, work) * invert(euler_product(k, work));
  LaurentSeries out = base.shifted(shift);
  if (s % 2 != 0) out = -out;
  return out;
}

Rational bernoulli_p2(const Rational& t) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  Rational frac = t - Rational(fl);
  return frac * frac - frac + ratio(1, 6);
}

}  // namespace qseries
