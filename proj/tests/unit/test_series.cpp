#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "qseries/qproducts.hpp"
#include "qseries/series.hpp"

using namespace qseries;
using testing_support::agree;
using testing_support::from_poly;

namespace {
LaurentSeries poly(Exponent lo, Exponent prec, std::vector<long> c) {
  std::vector<Rational> r(c.begin(), c.end());
  r.resize(static_cast<std::size_t>(prec - lo));
  return LaurentSeries(lo, prec, r);
}
}  // namespace

TEST_CASE("add keeps the smaller precision and the lower support", "[series]") {
  const auto a = poly(0, 5, {1, 1});
  const auto b = poly(0, 4, {-1, 0, 1});
  const auto s = add(a, b);
  CHECK(s.prec() == 4);
  CHECK(s.coeff(0) == 0);
  CHECK(s.coeff(1) == 1);
  CHECK(s.coeff(2) == 1);

  const auto z = add(a, LaurentSeries::zero(3));
  CHECK(z.prec() == 3);
  CHECK(z.coeff(1) == 1);

  const auto l = add(LaurentSeries::monomial(1, -1, 6), LaurentSeries::monomial(1, 1, 6));
  CHECK(l.lo() == -1);
  CHECK(l.coeff(-1) == 1);
  CHECK(l.coeff(0) == 0);
  CHECK(l.coeff(1) == 1);
}

TEST_CASE("mul truncates at min(a.prec + b.lo, b.prec + a.lo)", "[series]") {
  const auto geometric = poly(0, 10, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1});
  const auto one_minus_q = poly(0, 10, {1, -1});
  const auto p = mul(one_minus_q, geometric);
  CHECK(p.prec() == 10);
  CHECK(p.coeff(0) == 1);
  for (Exponent n = 1; n < 10; ++n) CHECK(p.coeff(n) == 0);

  const auto m = mul(LaurentSeries::monomial(1, -1, 10), LaurentSeries::monomial(1, 3, 10));
  CHECK(m.coeff(2) == 1);
  CHECK(m.prec() == 9);  // 10 + (-1)

  const auto shifted = mul(poly(2, 8, {1}), poly(-3, 5, {1}));
  CHECK(shifted.lo() == -1);
  CHECK(shifted.prec() == std::min<Exponent>(8 - 3, 5 + 2));
}

TEST_CASE("J_1 times the partition series is 1 to order 200", "[series]") {
  const auto p = oracle::partition_numbers(200);
  const auto inv = from_poly(p);
  const auto prod = mul(euler_product(1, 200), inv);
  CHECK(agree(prod, LaurentSeries::constant(1, 200), 200));
}

TEST_CASE("invert", "[series]") {
  const auto g = invert(poly(0, 12, {1, -1}));
  for (Exponent n = 0; n < 12; ++n) CHECK(g.coeff(n) == 1);

  const auto pj = invert(euler_product(1, 40));
  const auto p = oracle::partition_numbers(40);
  CHECK(pj.coeff(4) == 5);
  CHECK(pj.coeff(4) == Rational(p[4]));
  CHECK(pj.coeff(9) == 30);
  CHECK(oracle::partitions_of(9).size() == 30);

  const auto laurent = invert(poly(-2, 6, {3, 1}));
  CHECK(laurent.lo() == 2);
  CHECK(laurent.coeff(2) == Rational(1, 3));

  CHECK_THROWS_AS(invert(LaurentSeries::zero(5)), ZeroLeadingCoefficient);
}

TEST_CASE("divide agrees with multiplication by the inverse", "[series]") {
  const auto a = euler_product(2, 80);
  const auto b = jab(1, 5, 80);
  const auto d = divide(a, b);
  const auto r = mul(a, invert(b));
  CHECK(d.prec() == r.prec());
  CHECK(!first_mismatch(d, r).has_value());
  const auto c = divide(poly(0, 20, {2, 3}), poly(0, 20, {3, 5, 7}));
  CHECK(!first_mismatch(mul(c, poly(0, 20, {3, 5, 7})), poly(0, 20, {2, 3})).has_value());
}

TEST_CASE("scale_exponents", "[series]") {
  const auto s = scale_exponents(poly(0, 2, {1, 1}), 11);
  CHECK(s.prec() == 22);
  CHECK(s.coeff(0) == 1);
  CHECK(s.coeff(11) == 1);
  CHECK(s.coeff(5) == 0);

  const auto inv = scale_exponents(LaurentSeries::monomial(1, -1, 3), 11);
  CHECK(inv.lo() == -11);
  CHECK(inv.coeff(-11) == 1);

  const auto j = scale_exponents(euler_product(1, 30), 11);
  CHECK(agree(j, from_poly(oracle::naive_euler(11, 330)), 300));
}

TEST_CASE("dissect", "[series]") {
  const auto geometric = LaurentSeries::from_integers(0, 200, std::vector<Integer>(200, 1));
  const auto d = dissect(geometric, 11, 6);
  for (Exponent n = 0; n < d.prec(); ++n) CHECK(d.coeff(n) == 1);
  CHECK(d.prec() == (200 - 6 - 1) / 11 + 1);

  const auto p = invert(euler_product(1, 31));
  const auto d5 = dissect(p, 5, 4);
  for (Exponent n = 0; n < d5.prec(); ++n) {
    CHECK(d5.coeff(n).get_den() == 1);
    CHECK(d5.coeff(n).get_num() % 5 == 0);
  }
}

TEST_CASE("coeff and precision errors", "[series]") {
  const auto p = invert(euler_product(1, 10));
  CHECK(coeff(p, 0) == 1);
  CHECK(coeff(p, 6) == 11);
  CHECK(oracle::partitions_of(6).size() == 11);
  const auto shifted = mul(LaurentSeries::monomial(1, -1, 10), euler_product(1, 10));
  CHECK(coeff(shifted, -1) == 1);
  CHECK_THROWS_AS(coeff(p, 10), OutOfPrecision);
  CHECK_THROWS_AS(coeff(shifted, -2), OutOfPrecision);
}

TEST_CASE("rational parsing and printing", "[series]") {
  CHECK(rational_to_string(ratio(-6, 4)) == "-3/2");
  CHECK(rational_to_string(Rational(7)) == "7");
  CHECK(parse_rational("-946") == -946);
  CHECK(parse_rational("9/22") == ratio(9, 22));
  // ratio() always reduces; the two-argument mpq_class constructor does not.
  CHECK(ratio(14641, 1452) == ratio(121, 12));
  CHECK(ratio(14641, 1452).get_den() == 12);
}
