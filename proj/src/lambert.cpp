#include "qseries/lambert.hpp"

#include <algorithm>
#include <cstdlib>

namespace qseries {

namespace {

constexpr Exponent kMaxWalk = 10'000'000;

// Adds c * (x/(1-x))-type expansions: sum_{i>=1} weight(i) q^{base*i}.
void add_geometric(std::vector<Integer>& acc, Exponent base, int sign,
                   bool weighted) {
  const auto top = static_cast<Exponent>(acc.size());
  for (Exponent i = 1; base * i < top; ++i) {
    if (weighted) {
      acc[static_cast<std::size_t>(base * i)] += sign * i;
    } else {
      acc[static_cast<std::size_t>(base * i)] += sign;
    }
  }
}

Exponent lowest_exponent(const LambertTerm& t) {
  return t.den > 0 ? t.num : t.num - t.den * t.power;
}

void check_pair(Exponent j, Exponent K) {
  if (K < 1 || j % K == 0) {
    throw DomainError("Lambert series needs j not divisible by K");
  }
}

// Adds sign * q^e/(1-q^e) for e != 0; for e < 0 this is -1/(1-q^{-e}).
void add_lambert_term(std::vector<Integer>& acc, Exponent e, int sign) {
  if (e > 0) {
    add_geometric(acc, e, sign, false);
    return;
  }
  acc[0] -= sign;
  add_geometric(acc, -e, -sign, false);
}

}  // namespace

LaurentSeries x_series(Exponent j, Exponent K, Exponent prec) {
  check_pair(j, K);
  const Exponent top = std::max<Exponent>(prec, 1);
  std::vector<Integer> acc(static_cast<std::size_t>(top));
  // Terms with a negative exponent contribute to every power, so the loops
  // also visit them.
  for (Exponent n = 0; j + K * n < top || j + K * n < 0; ++n) {
    add_lambert_term(acc, j + K * n, 1);
  }
  for (Exponent n = 0; K - j + K * n < top || K - j + K * n < 0; ++n) {
    add_lambert_term(acc, K - j + K * n, -1);
  }
  return LaurentSeries::from_integers(0, top, std::move(acc));
}

LaurentSeries h_series(Exponent j, Exponent K, Exponent prec) {
  check_pair(j, K);
  // The bilateral sum only depends on j mod K.
  j = ((j % K) + K) % K;
  const Exponent top = std::max<Exponent>(prec, 1);
  std::vector<Integer> acc(static_cast<std::size_t>(top));
  // x/(1-x)^2 is invariant under x -> 1/x, so the negative-index half reads
  // q^{Kn-j}/(1-q^{Kn-j})^2 for n >= 1.
  for (Exponent n = 0; j + K * n < top; ++n) {
    add_geometric(acc, j + K * n, 1, true);
  }
  for (Exponent n = 1; K * n - j < top; ++n) {
    add_geometric(acc, K * n - j, 1, true);
  }
  return LaurentSeries::from_integers(0, top, std::move(acc));
}

LaurentSeries divisor_sigma_series(Exponent K, Exponent prec) {
  if (K < 1) throw DomainError("sigma series needs K >= 1");
  const Exponent top = std::max<Exponent>(prec, 1);
  std::vector<Integer> acc(static_cast<std::size_t>(top));
  for (Exponent n = 1; K * n < top; ++n) add_geometric(acc, K * n, 1, true);
  return LaurentSeries::from_integers(0, top, std::move(acc));
}

LaurentSeries sum_bilateral(const std::function<LambertTerm(Exponent)>& terms,
                            const std::function<bool(Exponent)>& include,
                            Exponent prec) {
  std::vector<LambertTerm> kept;

  auto walk = [&](Exponent start, Exponent step) {
    for (Exponent n = start;; n += step) {
      if (std::llabs(n) > kMaxWalk) {
        throw DomainError("bilateral sum does not grow quadratically");
      }
      // Stop once this and the following terms are past prec, increasing,
      // and the denominators have settled on one sign with growing size.
      const LambertTerm t0 = terms(n);
      const LambertTerm t1 = terms(n + step);
      const LambertTerm t2 = terms(n + 2 * step);
      const bool settled =
          (t0.den > 0) == (t1.den > 0) && (t1.den > 0) == (t2.den > 0) &&
          t0.den != 0 && std::llabs(t1.den) >= std::llabs(t0.den);
      const Exponent e0 = lowest_exponent(t0);
      const Exponent e1 = lowest_exponent(t1);
      const Exponent e2 = lowest_exponent(t2);
      if (settled && e0 >= prec && e1 >= e0 && e2 >= e1) break;
      if (include(n)) {
        if (t0.den == 0) throw DomainError("singular term in bilateral sum");
        if (lowest_exponent(t0) < prec) kept.push_back(t0);
      }
    }
  };
  walk(0, 1);
  walk(-1, -1);

  Exponent lo = std::min<Exponent>(0, prec - 1);
  for (const auto& t : kept) lo = std::min(lo, lowest_exponent(t));
  const auto len = static_cast<std::size_t>(prec - lo);
  std::vector<Integer> acc(len);
  Integer binom;
  for (const auto& t : kept) {
    Exponent start = lowest_exponent(t);
    Exponent step = std::llabs(t.den);
    int sign = t.sign;
    // 1/(1-q^{-D})^p = (-1)^p q^{D p} / (1-q^D)^p.
    if (t.den < 0 && (t.power % 2 != 0)) sign = -sign;
    for (Exponent i = 0; start + step * i < prec; ++i) {
      auto idx = static_cast<std::size_t>(start + step * i - lo);
      if (t.power == 1) {
        acc[idx] += sign;
      } else {
        mpz_bin_uiui(binom.get_mpz_t(),
                     static_cast<unsigned long>(i + t.power - 1),
                     static_cast<unsigned long>(t.power - 1));
        if (sign > 0) acc[idx] += binom;
        else acc[idx] -= binom;
      }
    }
  }
  return LaurentSeries::from_integers(lo, prec, std::move(acc));
}

LaurentSeries s_series(const SSpec& spec, Exponent prec) {
  if (spec.k < 1 || spec.m < 0 || spec.m >= spec.k) {
    throw DomainError("S_m needs k >= 1 and 0 <= m < k");
  }
  if (spec.j < 1) throw DomainError("S_m needs j >= 1");
  auto terms = [&](Exponent n) {
    const Exponent x = spec.k * n + spec.m;
    LambertTerm t;
    t.num = x * (spec.l * x + 1) / 2 + spec.a * x;
    t.den = spec.k * x;
    t.power = spec.j;
    t.sign = (x % 2 == 0) ? 1 : -1;
    return t;
  };
  auto include = [&](Exponent n) { return spec.k * n + spec.m != 0; };
  return sum_bilateral(terms, include, prec);
}

LaurentSeries s_sum(Exponent a, Exponent k, Exponent l, int j, Exponent prec) {
  LaurentSeries total = LaurentSeries::zero(prec);
  for (Exponent m = 0; m < k; ++m) {
    total += s_series(SSpec{m, a, k, l, j}, prec);
  }
  return total;
}

LaurentSeries bilateral_lambert(Exponent K, Exponent j, Exponent w, int p,
                                Exponent prec) {
  if (K < 1 || p < 1) throw DomainError("bilateral_lambert needs K, p >= 1");
  auto terms = [&](Exponent k) {
    LambertTerm t;
    t.num = K * k * (k + 1) / 2 + w * k;
    t.den = j + K * k;
    t.power = p;
    t.sign = (k % 2 == 0) ? 1 : -1;
    return t;
  };
  auto include = [&](Exponent k) { return j + K * k != 0; };
  return sum_bilateral(terms, include, prec);
}

LaurentSeries primed_weighted_sum(Exponent b, int jexp, Exponent prec) {
  if (b < 1 || b > 10) throw DomainError("primed_weighted_sum needs 1 <= b <= 10");
  if (jexp != 1 && jexp != 2) throw DomainError("jexp must be 1 or 2");
  // Collect (exponent, sign, step) triples for each n, rewriting negative
  // denominators as 1/(1-q^{-D})^j = (-1)^j q^{Dj}/(1-q^D)^j.
  struct Piece {
    Exponent start;
    Exponent step;
    int sign;
  };
  std::vector<Piece> pieces;
  Exponent lo = std::min<Exponent>(0, prec - 1);
  for (Exponent mag = 1;; ++mag) {
    bool any = false;
    for (Exponent n : {mag, -mag}) {
      const Exponent e = n * (n + 1) / 2 + (b - 1) * n;
      const Exponent d = 11 * n;
      int sign = (n % 2 == 0) ? 1 : -1;
      Exponent shift = 0;
      if (d < 0) {
        shift = -d * jexp;
        if (jexp % 2 != 0) sign = -sign;
      }
      // numerator (1 - q^n)
      const Exponent first = e + shift;
      const Exponent second = e + n + shift;
      for (auto [start, s] : {std::pair{first, sign}, std::pair{second, -sign}}) {
        if (start < prec) {
          pieces.push_back({start, std::llabs(d), s});
          lo = std::min(lo, start);
          any = true;
        }
      }
    }
    // Both exponents grow like mag^2/2 - O(mag); once past prec for a few
    // consecutive magnitudes nothing further can contribute.
    const Exponent bound = mag * (mag + 1) / 2 - (b + 1) * mag - 11 * mag;
    if (!any && bound > prec) break;
    if (mag > kMaxWalk) throw DomainError("primed_weighted_sum did not converge");
  }
  std::vector<Integer> acc(static_cast<std::size_t>(prec - lo));
  for (const auto& p : pieces) {
    for (Exponent i = 0; p.start + p.step * i < prec; ++i) {
      auto idx = static_cast<std::size_t>(p.start + p.step * i - lo);
      const Exponent weight = (jexp == 1) ? 1 : i + 1;
      acc[idx] += p.sign * weight;
    }
  }
  return LaurentSeries::from_integers(lo, prec, std::move(acc));
}

}  // namespace qseries
