#pragma once

#include <functional>

#include "qseries/series.hpp"

namespace qseries {

// X(q^j; q^K) = sum_{n>=0} [q^{j+Kn}/(1-q^{j+Kn}) - q^{K-j+Kn}/(1-q^{K-j+Kn})]
// for any j not divisible by K.
LaurentSeries x_series(Exponent j, Exponent K, Exponent prec);

// H(q^j; q^K) = sum_{n in Z} q^{j+Kn}/(1-q^{j+Kn})^2 for j not divisible by K.
LaurentSeries h_series(Exponent j, Exponent K, Exponent prec);

// sum_{n>=1} q^{Kn}/(1-q^{Kn})^2.
LaurentSeries divisor_sigma_series(Exponent K, Exponent prec);

// Parameters of S_m(a,k,l,j): the bilateral sum over x = k n + m of
// (-1)^x q^{x(l x + 1)/2 + a x} / (1 - q^{k x})^j, with x = 0 omitted.
struct SSpec {
  Exponent m = 0;
  Exponent a = 0;
  Exponent k = 11;
  Exponent l = 1;
  int j = 1;
};

LaurentSeries s_series(const SSpec& spec, Exponent prec);
// sum_{m=0}^{k-1} S_m(a,k,l,j), i.e. the primed sum over all x != 0.
LaurentSeries s_sum(Exponent a, Exponent k, Exponent l, int j, Exponent prec);

// sum_{k in Z} (-1)^k q^{K k(k+1)/2 + w k} / (1 - q^{j + K k})^p.
// When K divides j the singular index is excluded (primed sum).
LaurentSeries bilateral_lambert(Exponent K, Exponent j, Exponent w, int p,
                                Exponent prec);

// sum'_n (-1)^n q^{n(n+1)/2 + (b-1)n} (1 - q^n) / (1 - q^{11n})^jexp, expanded
// term by term without going through s_series.
LaurentSeries primed_weighted_sum(Exponent b, int jexp, Exponent prec);

// One term sign * q^{num} / (1 - q^{den})^power of a bilateral sum.
struct LambertTerm {
  Exponent num = 0;
  Exponent den = 1;
  int power = 1;
  int sign = 1;
};

// Sums terms(n) over all integers n (skipping those for which `include`
// returns false). `terms` must grow quadratically in |n|: the walk in each
// direction stops once the lowest exponent a term can contribute has passed
// `prec` and is increasing.
LaurentSeries sum_bilateral(const std::function<LambertTerm(Exponent)>& terms,
                            const std::function<bool(Exponent)>& include,
                            Exponent prec);

}  // namespace qseries
