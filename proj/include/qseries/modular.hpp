#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qseries/qexpr.hpp"
#include "qseries/series.hpp"

namespace qseries {

// ---------------------------------------------------------------------------
// Cusps of Gamma_1(N)

// The cusp a/c with gcd(a, c) = 1; infinity is 1/0.
struct Cusp {
  Exponent a = 1;
  Exponent c = 0;
  Exponent width = 1;
  bool is_infinity() const { return c == 0; }
};

Exponent fan_width(Exponent c, Exponent N);
bool cusps_equivalent(Exponent a1, Exponent c1, Exponent a2, Exponent c2,
                      Exponent N);
// Complete set of inequivalent cusps, infinity first, then by (c, a).
std::vector<Cusp> cusp_set(Exponent N);

// ---------------------------------------------------------------------------
// Symbolic products

// q^q * prod J(g, delta)^e, with g = 0 meaning the classical J(delta) and
// 0 < g <= delta/2 otherwise, times opaque sigma(K) factors.
struct Monomial {
  Exponent q = 0;
  std::map<std::pair<Exponent, Exponent>, Exponent> j;
  std::map<Exponent, Exponent> sigma;
  auto operator<=>(const Monomial&) const = default;
};

using Polynomial = std::map<Monomial, Rational>;

// Expands an expression built from q, J, eta, br, X(j,K) (via its
// eta-quotient form when 11 | K), sigma, T, t, V_m, Y_m and rational
// constants into a sum of monomials. Division is only allowed by a single
// monomial. Throws NotMonomial for anything else.
Polynomial expand_symbolic(const Expr& e);

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);

// Twice the modular weight: one per classical factor, four per sigma.
Exponent weight_twice(const Monomial& m);
// Keeps only the monomials of the given doubled weight.
Polynomial weight_part(const Polynomial& p, Exponent twice_weight);

Expr to_expr(const Monomial& m);
Expr to_expr(const Polynomial& p);

// ---------------------------------------------------------------------------
// Generalized eta products

// coefficient * q^{q_prefactor} * prod eta_{delta,g}^{r} * prod (q^d;q^d)^{c},
// which equals the J-side product it was built from. The classical factors
// carry their q^{d/24} separately, see residual_q_power().
struct GeneralizedEtaProduct {
  Exponent level = 1;
  std::map<std::pair<Exponent, Exponent>, Exponent> exponents;
  std::map<Exponent, Exponent> classical;
  Rational q_prefactor;
  Rational coefficient = 1;

  // Power of q left over once every classical factor is written as
  // q^{-d/24} eta(d tau): the J-side equals q^{residual} times a genuine
  // eta product.
  Rational residual_q_power() const;
};

GeneralizedEtaProduct to_generalized_eta(const Monomial& m, Exponent N);
// `e` must expand to a single monomial.
GeneralizedEtaProduct to_generalized_eta(const Expr& e, Exponent N);
GeneralizedEtaProduct quotient(const GeneralizedEtaProduct& a,
                               const GeneralizedEtaProduct& b);

// Expands the eta side, q powers of the eta factors included; their total
// with q_prefactor must be an integer.
LaurentSeries expand_eta_side(const GeneralizedEtaProduct& f, Exponent prec);

struct ModularityCheck {
  bool condition1 = false;
  bool condition2 = false;
  Rational sum1;
  Rational sum2;
  bool ok() const { return condition1 && condition2; }
};

ModularityCheck is_modular(const GeneralizedEtaProduct& f);

// Invariant order at the cusp (without the fan width).
Rational invariant_order(const GeneralizedEtaProduct& f, const Cusp& s);
// Width times invariant order.
Rational order_at_cusp(const GeneralizedEtaProduct& f, const Cusp& s);

struct CuspOrder {
  Cusp cusp;
  Rational min_ord;
};

// B = sum over cusps other than infinity of min({Ord(f_j, s)} U {0}).
// Throws NotModular when a constituent fails the criterion.
Rational compute_B(const std::vector<GeneralizedEtaProduct>& constituents,
                   Exponent N, std::vector<CuspOrder>* per_cusp = nullptr);

// ---------------------------------------------------------------------------
// Certification

struct Certificate {
  std::string identity;
  Exponent level = 0;
  std::vector<GeneralizedEtaProduct> constituents;  // f_j = M_j / M_0
  std::vector<Rational> alphas;                     // identity is 1 + sum alpha_j f_j
  std::string normalizer;                           // M_0 as an expression
  std::vector<CuspOrder> per_cusp;
  Rational B;
  Exponent required_order = 0;  // coefficients below this exponent must vanish
  Exponent verified_to = 0;     // expansion checked on exponents < verified_to
  std::optional<Exponent> first_nonzero;
  std::string status;  // "certified", "failed", "error"
  std::string reason;
};

enum class Normalization {
  LowestOrderAtInfinity,  // M_0 = monomial with the smallest order at infinity
  FirstTerm,              // M_0 = first monomial in canonical order
  Index,                  // M_0 = monomial number `index` in canonical order
};

struct CertifyOptions {
  Normalization normalization = Normalization::LowestOrderAtInfinity;
  std::size_t index = 0;
  Exponent max_order = 100000;
};

// Certifies lhs = rhs as an identity of modular functions on Gamma_1(N).
Certificate certify(const std::string& id, const Expr& lhs, const Expr& rhs,
                    Exponent N, Evaluator& evaluator,
                    const CertifyOptions& options = {});

// Only the bound: builds the constituents as certify() would and returns B.
Rational bound_for(const Expr& lhs, const Expr& rhs, Exponent N,
                   const CertifyOptions& options = {},
                   std::vector<CuspOrder>* per_cusp = nullptr);

std::string certificate_to_json(const Certificate& c);

}  // namespace qseries
