#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qseries/series.hpp"

namespace qseries {

// Node kinds of the identity expression language.
enum class NodeKind {
  Const,     // rational constant
  Q,         // q
  JEuler,    // J(a) = (q^a;q^a)_inf
  JTheta,    // J(a,b)
  Eta,       // eta(delta,g): product part of the generalized eta function
  X,         // X(j,K) = X(q^j; q^K)
  H,         // H(j,K) = H(q^j; q^K)
  Sigma,     // sigma(K) = sum_{n>=1} q^{Kn}/(1-q^{Kn})^2
  Bracket,   // br(j,K) = [q^j; q^K]_inf for any j not divisible by K
  BSum,      // bsum(K,j,w,p) = sum_k (-1)^k q^{K k(k+1)/2 + w k}/(1-q^{j+Kk})^p
  SAtom,     // S(m,a,k,l,j) = S_m(a,k,l,j)
  SSum,      // Ssum(a,k,l,j) = sum_{m=0}^{k-1} S_m(a,k,l,j)
  FAtom,     // F(b): generating function of M_w(b,11,n) - M_w(11-b,11,n)
  TAtom,     // T
  tAtom,     // t
  VAtom,     // V0..V10
  YAtom,     // Y0..Y10 (Y6 undefined)
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Pow,       // integer power, exponent in args[0]
  Scale,     // q -> q^k applied to the child, k in args[0]
  Dissect,   // dissect(e, M, r)
};

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind = NodeKind::Const;
  Rational value;                // Const
  std::vector<Exponent> args;    // atom arguments, power, scale, dissection
  std::vector<Expr> children;
};

namespace expr {
Expr constant(const Rational& c);
Expr q();
Expr atom(NodeKind kind, std::vector<Exponent> args);
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr div(Expr a, Expr b);
Expr neg(Expr a);
Expr pow(Expr a, Exponent k);
Expr scale(Expr a, Exponent k);
Expr dissect(Expr a, Exponent modulus, Exponent residue);
}  // namespace expr

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column,
             std::vector<std::string> expected);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }
  // Multi-line diagnostic with the offending source line and a caret.
  std::string diagnostic(const std::string& source) const;

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

// Parses the expression grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | base ('^' sint)? ('@' uint)?
//   base   := rational | 'q' | 'J(' uint ')' | 'J(' uint ',' uint ')'
//           | 'eta(' uint ',' uint ')' | 'X(' uint ',' uint ')'
//           | 'H(' uint ',' uint ')' | 'T' | 't' | 'V' uint | 'Y' uint
//           | 'sigma(' uint ')' | 'br(' sint ',' uint ')'
//           | 'bsum(' uint ',' sint ',' sint ',' uint ')'
//           | 'S(' uint ',' uint ',' uint ',' uint ',' uint ')'
//           | 'Ssum(' uint ',' uint ',' uint ',' uint ')' | 'F(' uint ')'
//           | 'dissect(' expr ',' uint ',' uint ')' | '(' expr ')'
//   rational := sint ('/' uint)?
Expr parse(const std::string& text);

// Canonical printer; parse(print(e)) is structurally equal to e.
std::string print(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

// Named expressions T, t, V_m, Y_m in terms of J atoms.
Expr builtin_definition(NodeKind kind, Exponent index = 0);

// Evaluates expressions to truncated series, caching shared subtrees by
// (printed form, working precision). Safe to share between threads.
class Evaluator {
 public:
  // Result has precision exactly `prec` (working precision is raised until
  // enough is known).
  LaurentSeries eval(const Expr& e, Exponent prec);

  void clear_cache();

 private:
  LaurentSeries eval_at(const Expr& e, Exponent work);
  LaurentSeries eval_uncached(const Expr& e, Exponent work);

  std::mutex mutex_;
  std::map<std::string, LaurentSeries> cache_;
};

LaurentSeries eval(const Expr& e, Exponent prec);

}  // namespace qseries
