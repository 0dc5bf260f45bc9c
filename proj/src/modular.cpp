#include "qseries/modular.hpp"

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

#include "qseries/qproducts.hpp"

namespace qseries {

namespace {

Exponent gcd(Exponent a, Exponent b) { return std::gcd(a, b); }

Exponent mod(Exponent a, Exponent m) { return ((a % m) + m) % m; }

bool is_integer(const Rational& r) { return r.get_den() == 1; }

Integer floor_of(const Rational& r) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------
// Cusps

Exponent fan_width(Exponent c, Exponent N) {
  const Exponent g = gcd(c, N);
  if (N == 4 && g == 2) return 1;
  return N / g;
}

bool cusps_equivalent(Exponent a1, Exponent c1, Exponent a2, Exponent c2,
                      Exponent N) {
  for (Exponent n = 0; n < N; ++n) {
    const Exponent a = a1 + n * c1;
    if (mod(a2 - a, N) == 0 && mod(c2 - c1, N) == 0) return true;
    if (mod(a2 + a, N) == 0 && mod(c2 + c1, N) == 0) return true;
  }
  return false;
}

std::vector<Cusp> cusp_set(Exponent N) {
  if (N < 1) throw DomainError("level must be positive");
  std::vector<Cusp> out;
  out.push_back(Cusp{1, 0, 1});
  std::vector<Exponent> units;
  for (Exponent u = 1; u <= N; ++u) {
    if (gcd(u, N) == 1) units.push_back(u);
  }
  for (Exponent c = 1; c <= N; ++c) {
    if (N % c != 0) continue;
    // s runs over units modulo N/c up to sign; a over units modulo c, up to
    // sign only when c is N/2 or N.
    const Exponent ms = N / c;
    std::vector<Exponent> s_reps;
    for (Exponent s : units) {
      bool seen = false;
      for (Exponent t : s_reps) {
        if (mod(s - t, ms) == 0 || mod(s + t, ms) == 0) seen = true;
      }
      if (!seen) s_reps.push_back(s);
    }
    const bool signed_a = (c == N) || (2 * c == N);
    std::vector<Exponent> a_reps;
    for (Exponent a : units) {
      bool seen = false;
      for (Exponent t : a_reps) {
        if (mod(a - t, c) == 0 || (signed_a && mod(a + t, c) == 0)) seen = true;
      }
      if (!seen) a_reps.push_back(a);
    }
    for (Exponent s : s_reps) {
      for (Exponent a : a_reps) {
        const Exponent x = mod(c * s, N);
        if (x == 0) {
          // Denominator divisible by N: a = +-1 is infinity, already listed.
          if (mod(a - 1, N) == 0 || mod(a + 1, N) == 0) continue;
          out.push_back(Cusp{a, N, fan_width(N, N)});
          continue;
        }
        Exponent y = a;
        while (gcd(x, y) != 1) y += N;
        out.push_back(Cusp{y, x, fan_width(x, N)});
      }
    }
  }
  std::sort(out.begin() + 1, out.end(), [](const Cusp& l, const Cusp& r) {
    return std::pair(l.c, l.a) < std::pair(r.c, r.a);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials

namespace {

void add_term(Polynomial& p, const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = p.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) p.erase(it);
  }
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out = a;
  out.q += b.q;
  for (const auto& [k, e] : b.j) {
    if ((out.j[k] += e) == 0) out.j.erase(k);
  }
  for (const auto& [k, e] : b.sigma) {
    if ((out.sigma[k] += e) == 0) out.sigma.erase(k);
  }
  return out;
}

Monomial inverse(const Monomial& a) {
  Monomial out;
  out.q = -a.q;
  for (const auto& [k, e] : a.j) out.j[k] = -e;
  for (const auto& [k, e] : a.sigma) out.sigma[k] = -e;
  return out;
}

Monomial scaled(const Monomial& a, Exponent k) {
  Monomial out;
  out.q = a.q * k;
  for (const auto& [key, e] : a.j) out.j[{key.first * k, key.second * k}] = e;
  for (const auto& [key, e] : a.sigma) out.sigma[key * k] = e;
  return out;
}

Polynomial single(const Monomial& m, const Rational& c = 1) {
  Polynomial p;
  add_term(p, m, c);
  return p;
}

Monomial theta(Exponent g, Exponent delta) {
  Monomial m;
  if (2 * g > delta) g = delta - g;
  m.j[{delta, g}] = 1;
  return m;
}

Monomial euler(Exponent delta) {
  Monomial m;
  m.j[{delta, 0}] = 1;
  return m;
}

// [q^j; q^K] via the quasi-periodicity of the bracket.
Polynomial bracket_symbolic(Exponent j, Exponent K) {
  const Exponent j0 = mod(j, K);
  if (j0 == 0) throw DomainError("bracket argument divisible by modulus");
  const Exponent s = (j - j0) / K;
  Monomial m = multiply(theta(j0, K), inverse(euler(K)));
  m.q = -j0 * s - K * s * (s - 1) / 2;
  return single(m, (s % 2 == 0) ? 1 : -1);
}

// X(q^a; q^11) for 1 <= a <= 5 in terms of eta quotients.
const std::vector<Polynomial>& x_eta_table() {
  static const std::vector<Polynomial> table = [] {
    const std::vector<std::string> e = {
        "J(2,11)^3*J(11)^3/(J(1,11)^3*J(3,11))",
        "J(4,11)^3*J(11)^3/(J(2,11)^3*J(5,11))",
        "J(5,11)^3*J(11)^3/(J(3,11)^3*J(2,11))",
        "q*J(3,11)^3*J(11)^3/(J(4,11)^3*J(1,11))",
        "q^4*J(1,11)^3*J(11)^3/(J(5,11)^3*J(4,11))",
    };
    const int coeffs[5][6] = {
        {81, -9, 27, -1, -3, -99},  {-3, 81, -1, 9, 27, -77},
        {1, -27, 81, -3, -9, -55},  {27, -3, 9, -81, -1, -33},
        {9, -1, 3, -27, -81, -11},
    };
    std::vector<Polynomial> out;
    for (const auto& row : coeffs) {
      Polynomial p;
      for (int i = 0; i < 5; ++i) {
        p = p + expand_symbolic(parse(e[static_cast<std::size_t>(i)])) *
                    single(Monomial{}, ratio(row[i], 242));
      }
      add_term(p, Monomial{}, ratio(row[5], 242));
      out.push_back(p);
    }
    return out;
  }();
  return table;
}

Polynomial x_symbolic(Exponent j, Exponent K) {
  if (K % 11 != 0 || j % (K / 11) != 0 || j <= 0 || j >= K) {
    throw NotMonomial("X(" + std::to_string(j) + "," + std::to_string(K) +
                      ") has no eta-quotient form");
  }
  const Exponent k = K / 11;
  Exponent a = j / k;
  Rational sign = 1;
  if (a > 5) {
    a = 11 - a;
    sign = -1;
  }
  Polynomial out;
  for (const auto& [m, c] : x_eta_table()[static_cast<std::size_t>(a - 1)]) {
    add_term(out, scaled(m, k), sign * c);
  }
  return out;
}

}  // namespace

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [m, c] : b) add_term(out, m, c);
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [m, c] : b) add_term(out, m, -c);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) add_term(out, multiply(ma, mb), ca * cb);
  }
  return out;
}

Polynomial expand_symbolic(const Expr& e) {
  const auto& a = e->args;
  switch (e->kind) {
    case NodeKind::Const:
      return single(Monomial{}, e->value);
    case NodeKind::Q: {
      Monomial m;
      m.q = 1;
      return single(m);
    }
    case NodeKind::JEuler:
      return single(euler(a[0]));
    case NodeKind::JTheta:
      return single(theta(a[0], a[1]));
    case NodeKind::Eta:
      return single(multiply(theta(a[1], a[0]), inverse(euler(a[0]))));
    case NodeKind::Bracket:
      return bracket_symbolic(a[0], a[1]);
    case NodeKind::X:
      return x_symbolic(a[0], a[1]);
    case NodeKind::Sigma: {
      Monomial m;
      m.sigma[a[0]] = 1;
      return single(m);
    }
    case NodeKind::TAtom:
    case NodeKind::tAtom:
      return expand_symbolic(builtin_definition(e->kind));
    case NodeKind::VAtom:
    case NodeKind::YAtom:
      return expand_symbolic(builtin_definition(e->kind, a[0]));
    case NodeKind::Add:
      return expand_symbolic(e->children[0]) + expand_symbolic(e->children[1]);
    case NodeKind::Sub:
      return expand_symbolic(e->children[0]) - expand_symbolic(e->children[1]);
    case NodeKind::Neg:
      return Polynomial{} - expand_symbolic(e->children[0]);
    case NodeKind::Mul:
      return expand_symbolic(e->children[0]) * expand_symbolic(e->children[1]);
    case NodeKind::Div: {
      const Polynomial den = expand_symbolic(e->children[1]);
      if (den.size() != 1) {
        throw NotMonomial("division by a sum in " + print(e));
      }
      const auto& [m, c] = *den.begin();
      return expand_symbolic(e->children[0]) * single(inverse(m), 1 / c);
    }
    case NodeKind::Pow: {
      const Polynomial base = expand_symbolic(e->children[0]);
      Exponent k = a[0];
      if (k < 0) {
        if (base.size() != 1) {
          throw NotMonomial("negative power of a sum in " + print(e));
        }
        const auto& [m, c] = *base.begin();
        Rational inv = 1 / c;
        Polynomial out = single(Monomial{});
        const Polynomial b = single(inverse(m), inv);
        for (Exponent i = 0; i < -k; ++i) out = out * b;
        return out;
      }
      Polynomial out = single(Monomial{});
      for (Exponent i = 0; i < k; ++i) out = out * base;
      return out;
    }
    case NodeKind::Scale: {
      Polynomial out;
      for (const auto& [m, c] : expand_symbolic(e->children[0])) {
        add_term(out, scaled(m, a[0]), c);
      }
      return out;
    }
    default:
      throw NotMonomial("no product form for " + print(e));
  }
}

Exponent weight_twice(const Monomial& m) {
  Exponent w = 0;
  for (const auto& [k, e] : m.j) w += e;
  for (const auto& [k, e] : m.sigma) w += 4 * e;
  return w;
}

Polynomial weight_part(const Polynomial& p, Exponent twice_weight) {
  Polynomial out;
  for (const auto& [m, c] : p) {
    if (weight_twice(m) == twice_weight) out.emplace(m, c);
  }
  return out;
}

Expr to_expr(const Monomial& m) {
  Expr num;
  Expr den;
  auto times = [](Expr acc, Expr f) { return acc ? expr::mul(acc, f) : f; };
  if (m.q > 0) num = m.q == 1 ? expr::q() : expr::pow(expr::q(), m.q);
  if (m.q < 0) num = expr::pow(expr::q(), m.q);
  for (const auto& [key, e] : m.j) {
    Expr atom = key.second == 0
                    ? expr::atom(NodeKind::JEuler, {key.first})
                    : expr::atom(NodeKind::JTheta, {key.second, key.first});
    const Exponent mag = e < 0 ? -e : e;
    Expr f = mag == 1 ? atom : expr::pow(atom, mag);
    if (e > 0) num = times(num, f);
    else den = times(den, f);
  }
  for (const auto& [k, e] : m.sigma) {
    Expr atom = expr::atom(NodeKind::Sigma, {k});
    const Exponent mag = e < 0 ? -e : e;
    Expr f = mag == 1 ? atom : expr::pow(atom, mag);
    if (e > 0) num = times(num, f);
    else den = times(den, f);
  }
  if (!num) num = expr::constant(1);
  return den ? expr::div(num, den) : num;
}

Expr to_expr(const Polynomial& p) {
  Expr out;
  for (const auto& [m, c] : p) {
    Expr term = to_expr(m);
    const Rational mag = abs(c);
    if (mag != 1) term = expr::mul(expr::constant(mag), term);
    if (!out) {
      out = sgn(c) < 0 ? expr::neg(term) : term;
    } else {
      out = sgn(c) < 0 ? expr::sub(out, term) : expr::add(out, term);
    }
  }
  return out ? out : expr::constant(0);
}

// ---------------------------------------------------------------------------
// Generalized eta products

Rational GeneralizedEtaProduct::residual_q_power() const {
  Rational r = q_prefactor;
  for (const auto& [d, c] : classical) r -= ratio(d * c, 24);
  return r;
}

GeneralizedEtaProduct to_generalized_eta(const Monomial& m, Exponent N) {
  if (!m.sigma.empty()) throw NotMonomial("sigma factors are not eta products");
  GeneralizedEtaProduct f;
  f.level = N;
  f.q_prefactor = m.q;
  for (const auto& [key, r] : m.j) {
    const auto [delta, g] = key;
    if (N % delta != 0) {
      throw LevelMismatch("modulus " + std::to_string(delta) +
                          " does not divide level " + std::to_string(N));
    }
    if ((f.classical[delta] += r) == 0) f.classical.erase(delta);
    if (g == 0) continue;
    f.exponents[{delta, g}] += r;
    f.q_prefactor -= ratio(r * delta, 2) * bernoulli_p2(ratio(g, delta));
  }
  return f;
}

GeneralizedEtaProduct to_generalized_eta(const Expr& e, Exponent N) {
  const Polynomial p = expand_symbolic(e);
  if (p.size() != 1) throw NotMonomial("not a single monomial: " + print(e));
  GeneralizedEtaProduct f = to_generalized_eta(p.begin()->first, N);
  f.coefficient = p.begin()->second;
  return f;
}

GeneralizedEtaProduct quotient(const GeneralizedEtaProduct& a,
                               const GeneralizedEtaProduct& b) {
  if (a.level != b.level) throw LevelMismatch("quotient of different levels");
  GeneralizedEtaProduct out = a;
  for (const auto& [k, r] : b.exponents) {
    if ((out.exponents[k] -= r) == 0) out.exponents.erase(k);
  }
  for (const auto& [k, c] : b.classical) {
    if ((out.classical[k] -= c) == 0) out.classical.erase(k);
  }
  out.q_prefactor -= b.q_prefactor;
  out.coefficient /= b.coefficient;
  return out;
}

LaurentSeries expand_eta_side(const GeneralizedEtaProduct& f, Exponent prec) {
  // Each eta_{delta,g} carries q^{delta P2(g/delta) / 2} in front of its product.
  Rational total = f.q_prefactor;
  for (const auto& [key, r] : f.exponents) {
    total += ratio(key.first * r, 2) * bernoulli_p2(ratio(key.second, key.first));
  }
  total.canonicalize();
  if (!is_integer(total)) {
    throw DomainError("q power " + rational_to_string(total) + " of the eta side is not an integer");
  }
  const Exponent shift = total.get_num().get_si();
  const Exponent work = std::max<Exponent>(prec - shift, 1);
  LaurentSeries out = LaurentSeries::constant(f.coefficient, work);
  for (const auto& [key, r] : f.exponents) {
    out = out * power(bracket(key.second, key.first, work), r);
  }
  for (const auto& [d, c] : f.classical) {
    out = out * power(euler_product(d, work), c);
  }
  return out.shifted(shift);
}

ModularityCheck is_modular(const GeneralizedEtaProduct& f) {
  ModularityCheck check;
  const Exponent N = f.level;
  for (const auto& [key, r] : f.exponents) {
    const auto [delta, g] = key;
    check.sum1 += Rational(delta * r) * bernoulli_p2(ratio(g, delta));
    check.sum2 += ratio(N * r, 6 * delta);
  }
  // A classical eta(d tau)^c counts as eta_{d,0}^{c/2}.
  for (const auto& [d, c] : f.classical) {
    check.sum1 += ratio(d * c, 12);
    check.sum2 += ratio(N * c, 12 * d);
  }
  check.condition1 = is_integer(check.sum1 / 2);
  check.condition2 = is_integer(check.sum2 / 2);
  return check;
}

Rational invariant_order(const GeneralizedEtaProduct& f, const Cusp& s) {
  Rational ord;
  for (const auto& [key, r] : f.exponents) {
    const auto [delta, g] = key;
    const Exponent eps = gcd(delta, s.c);
    ord += ratio(r * eps * eps, 2 * delta) * bernoulli_p2(ratio(s.a * g, eps));
  }
  for (const auto& [d, c] : f.classical) {
    const Exponent eps = gcd(d, s.c);
    ord += ratio(c * eps * eps, 24 * d);
  }
  return ord;
}

Rational order_at_cusp(const GeneralizedEtaProduct& f, const Cusp& s) {
  return Rational(s.width) * invariant_order(f, s);
}

Rational compute_B(const std::vector<GeneralizedEtaProduct>& constituents,
                   Exponent N, std::vector<CuspOrder>* per_cusp) {
  for (std::size_t i = 0; i < constituents.size(); ++i) {
    const ModularityCheck check = is_modular(constituents[i]);
    if (!check.ok()) {
      throw NotModular("constituent " + std::to_string(i) + " fails condition " +
                       (check.condition1 ? "(ii)" : "(i)"));
    }
  }
  Rational B;
  for (const Cusp& s : cusp_set(N)) {
    if (s.is_infinity()) continue;
    Rational lowest = 0;
    for (const auto& f : constituents) lowest = std::min(lowest, order_at_cusp(f, s));
    B += lowest;
    if (per_cusp) per_cusp->push_back({s, lowest});
  }
  return B;
}

// ---------------------------------------------------------------------------
// Certification

namespace {

struct Prepared {
  Polynomial identity;
  Monomial normalizer;
  Rational c0;
  std::vector<GeneralizedEtaProduct> constituents;
  std::vector<Rational> alphas;
};

Prepared prepare(const Expr& lhs, const Expr& rhs, Exponent N,
                 const CertifyOptions& options) {
  Prepared out;
  out.identity = expand_symbolic(lhs) - expand_symbolic(rhs);
  if (out.identity.empty()) return out;
  const Exponent w = weight_twice(out.identity.begin()->first);
  for (const auto& [m, c] : out.identity) {
    if (weight_twice(m) != w) {
      throw NotModular("identity mixes weights: " + print(to_expr(m)));
    }
  }
  auto chosen = out.identity.begin();
  switch (options.normalization) {
    case Normalization::FirstTerm:
      break;
    case Normalization::Index:
      if (options.index >= out.identity.size()) {
        throw DomainError("normalization index out of range");
      }
      std::advance(chosen, static_cast<std::ptrdiff_t>(options.index));
      break;
    case Normalization::LowestOrderAtInfinity:
      for (auto it = out.identity.begin(); it != out.identity.end(); ++it) {
        if (it->first.q < chosen->first.q) chosen = it;
      }
      break;
  }
  out.normalizer = chosen->first;
  out.c0 = chosen->second;
  const GeneralizedEtaProduct base = to_generalized_eta(out.normalizer, N);
  for (const auto& [m, c] : out.identity) {
    if (m == out.normalizer) continue;
    GeneralizedEtaProduct f = to_generalized_eta(m, N);
    if (f.residual_q_power() != base.residual_q_power()) {
      throw NotModular("q-shift of " + print(to_expr(m)) +
                       " differs from the normalizing term");
    }
    GeneralizedEtaProduct ratio = quotient(f, base);
    ratio.coefficient = 1;
    out.constituents.push_back(ratio);
    out.alphas.push_back(c / out.c0);
  }
  return out;
}

}  // namespace

Rational bound_for(const Expr& lhs, const Expr& rhs, Exponent N,
                   const CertifyOptions& options, std::vector<CuspOrder>* per_cusp) {
  const Prepared p = prepare(lhs, rhs, N, options);
  return compute_B(p.constituents, N, per_cusp);
}

Certificate certify(const std::string& id, const Expr& lhs, const Expr& rhs,
                    Exponent N, Evaluator& evaluator, const CertifyOptions& options) {
  Certificate cert;
  cert.identity = id;
  cert.level = N;
  Prepared p;
  try {
    p = prepare(lhs, rhs, N, options);
  } catch (const Error& e) {
    cert.status = "error";
    cert.reason = e.what();
    return cert;
  }
  if (p.identity.empty()) {
    cert.status = "certified";
    cert.reason = "both sides expand to the same products";
    cert.required_order = 1;
    cert.verified_to = 1;
    return cert;
  }
  cert.constituents = p.constituents;
  cert.alphas = p.alphas;
  cert.normalizer = print(to_expr(p.normalizer));
  try {
    cert.B = compute_B(p.constituents, N, &cert.per_cusp);
  } catch (const NotModular& e) {
    cert.status = "error";
    cert.reason = e.what();
    return cert;
  }
  cert.required_order = floor_of(-cert.B).get_si() + 1;
  if (cert.required_order > options.max_order) {
    cert.status = "error";
    cert.reason = "insufficient precision: need order " +
                  std::to_string(cert.required_order);
    return cert;
  }
  // g = 1 + sum alpha_j f_j = (lhs - rhs) / (c_0 M_0).
  const Expr g = expr::div(expr::sub(lhs, rhs),
                           expr::mul(expr::constant(p.c0), to_expr(p.normalizer)));
  const LaurentSeries series = evaluator.eval(g, cert.required_order);
  cert.first_nonzero = first_mismatch(series, LaurentSeries::zero(cert.required_order));
  if (cert.first_nonzero) {
    cert.status = "failed";
    cert.verified_to = *cert.first_nonzero;
    cert.reason = "coefficient of q^" + std::to_string(*cert.first_nonzero) +
                  " is " + rational_to_string(series.coeff(*cert.first_nonzero));
  } else {
    cert.status = "certified";
    cert.verified_to = cert.required_order;
  }
  return cert;
}

std::string certificate_to_json(const Certificate& c) {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& row : c.per_cusp) {
    per.push_back({{"a", row.cusp.a},
                   {"c", row.cusp.c},
                   {"width", row.cusp.width},
                   {"minOrd", rational_to_string(row.min_ord)}});
  }
  nlohmann::json j = {{"identity", c.identity},
                      {"level", c.level},
                      {"B", rational_to_string(c.B)},
                      {"requiredOrder", c.required_order},
                      {"verifiedTo", c.verified_to},
                      {"constituents", c.constituents.size()},
                      {"normalizer", c.normalizer},
                      {"perCusp", per},
                      {"status", c.status}};
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j.dump(2);
}

}  // namespace qseries
