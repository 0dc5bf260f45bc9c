#pragma once

#include "qseries/series.hpp"

namespace qseries {

// (q^a; q^a)_inf, built from the pentagonal-number theorem.
LaurentSeries euler_product(Exponent a, Exponent prec);

// J_{a,b} = (q^a, q^{b-a}, q^b; q^b)_inf for 0 < a < b, built from the
// Jacobi triple product sum_n (-1)^n q^{b n(n-1)/2 + a n}.
LaurentSeries jab(Exponent a, Exponent b, Exponent prec);

// [q^j; q^k]_inf = (q^j; q^k)_inf (q^{k-j}; q^k)_inf = J_{j,k} / J_k.
// Any j not divisible by k is accepted; for j outside (0, k) the
// quasi-periodicity [Q^s x] = (-1)^s x^{-s} Q^{-s(s-1)/2} [x] is applied,
// which can produce a Laurent series.
LaurentSeries bracket(Exponent j, Exponent k, Exponent prec);

// Second periodic Bernoulli polynomial {t}^2 - {t} + 1/6.
Rational bernoulli_p2(const Rational& t);

}  // namespace qseries
