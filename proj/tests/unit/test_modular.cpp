#include <catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "qseries/modular.hpp"
#include "qseries/qproducts.hpp"
#include "qseries/verifier.hpp"

using namespace qseries;

namespace {
Cusp infinity() { return Cusp{1, 0, 1}; }

// Every monomial of h - g for one of the printed b = 1 identities, as
// ratios against the first monomial.
std::vector<GeneralizedEtaProduct> b1_ratios(bool half) {
  const auto [h, t] = build_b1_certification_inputs();
  const auto& r = half ? h : t;
  const Polynomial p = expand_symbolic(parse(r.lhs)) - expand_symbolic(parse(r.rhs));
  std::vector<GeneralizedEtaProduct> out;
  const auto base = to_generalized_eta(p.begin()->first, 121);
  for (auto it = std::next(p.begin()); it != p.end(); ++it) {
    out.push_back(quotient(to_generalized_eta(it->first, 121), base));
  }
  return out;
}
}  // namespace

TEST_CASE("cusp counts match the phi sum", "[modular]") {
  for (Exponent N = 1; N <= 30; ++N) {
    INFO("N=" << N);
    CHECK(static_cast<std::int64_t>(cusp_set(N).size()) == oracle::cusp_count(N));
  }
  CHECK(cusp_set(49).size() == static_cast<std::size_t>(oracle::cusp_count(49)));
  CHECK(cusp_set(121).size() == 160);
  CHECK(oracle::cusp_count(121) == 160);
}

TEST_CASE("widths divide N and sum to the index", "[modular]") {
  for (Exponent N = 1; N <= 30; ++N) {
    INFO("N=" << N);
    std::int64_t total = 0;
    for (const auto& c : cusp_set(N)) {
      CHECK(N % c.width == 0);
      total += c.width;
    }
    CHECK(total == oracle::psl_index_gamma1(N));
  }
  CHECK(fan_width(11, 121) == 11);
  bool seen = false;
  for (const auto& c : cusp_set(121)) {
    if (c.c == 11) {
      CHECK(c.width == 11);
      seen = true;
    }
  }
  CHECK(seen);
}

TEST_CASE("listed cusps are pairwise inequivalent", "[modular]") {
  for (Exponent N : {12, 25, 121}) {
    const auto cs = cusp_set(N);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = i + 1; j < cs.size(); ++j) {
        CHECK_FALSE(cusps_equivalent(cs[i].a, cs[i].c, cs[j].a, cs[j].c, N));
      }
    }
  }
  CHECK(cusps_equivalent(1, 3, 4, 3, 9));  // a + n c with n = 1
  CHECK(cusps_equivalent(1, 3, 6, 4, 7));  // -(1, 3) = (6, 4) mod 7
  CHECK_FALSE(cusps_equivalent(1, 3, 2, 3, 9));  // 2 != 1 mod gcd(3, 9)
}

TEST_CASE("Robins conditions", "[modular]") {
  GeneralizedEtaProduct single;
  single.level = 121;
  single.exponents[{121, 11}] = 1;
  const auto check = is_modular(single);
  CHECK_FALSE(check.condition1);
  for (const auto& f : b1_ratios(true)) CHECK(is_modular(f).ok());
  for (const auto& f : b1_ratios(false)) CHECK(is_modular(f).ok());
}

TEST_CASE("orders at infinity", "[modular]") {
  GeneralizedEtaProduct single;
  single.level = 121;
  single.exponents[{121, 11}] = 1;
  CHECK(invariant_order(single, infinity()) == ratio(121, 2) * bernoulli_p2(ratio(11, 121)));

  // ord at infinity plus the residual q power is the lowest exponent of the
  // J-side series.
  Evaluator ev;
  for (const char* text :
       {"q*J(121)^2*J(55,121)/(J(22,121)*J(33,121))", "J(121)^3*J(22,121)^3/(J(1)*J(11,121)^3*J(33,121))",
        "q^43*J(121)^3*J(11,121)^3/(J(1)*J(44,121)^2*J(55,121)^2)", "V6", "Y3"}) {
    const Expr e = parse(text);
    const auto f = to_generalized_eta(e, 121);
    const auto series = ev.eval(e, 80);
    CHECK(invariant_order(f, infinity()) + f.residual_q_power() == series.valuation());
  }
}

TEST_CASE("valence: orders of a modular function sum to zero", "[modular]") {
  const auto cusps = cusp_set(121);
  for (bool half : {true, false}) {
    for (const auto& f : b1_ratios(half)) {
      Rational total;
      for (const auto& s : cusps) total += order_at_cusp(f, s);
      CHECK(total == 0);
    }
  }
}

TEST_CASE("B for the printed b = 1 identities", "[modular]") {
  const auto [h, t] = build_b1_certification_inputs();
  std::vector<CuspOrder> rows;
  CHECK(bound_for(parse(h.lhs), parse(h.rhs), 121, {}, &rows) == -946);
  CHECK(rows.size() == 159);
  CHECK(bound_for(parse(t.lhs), parse(t.rhs), 121) == -1683);
  CHECK(recipe_bound(5, 1) == -814);
}

TEST_CASE("compute_B rejects non-modular constituents", "[modular]") {
  GeneralizedEtaProduct single;
  single.level = 121;
  single.exponents[{121, 11}] = 1;
  CHECK_THROWS_AS(compute_B({single}, 121), NotModular);
}

TEST_CASE("certify trivial and false identities", "[modular]") {
  Evaluator ev;
  const auto zero = certify("zero", parse("J(11)"), parse("J(11)"), 11, ev);
  CHECK(zero.status == "certified");

  const auto bad = certify("bad", parse("J(1,11)^2*J(5,11)"),
                           parse("J(2,11)^2*J(3,11)"), 11, ev);
  CHECK(bad.status != "certified");

  const auto doc = nlohmann::json::parse(certificate_to_json(bad));
  for (const char* key : {"identity", "level", "B", "requiredOrder", "verifiedTo", "perCusp", "status"}) {
    CHECK(doc.contains(key));
  }
}
