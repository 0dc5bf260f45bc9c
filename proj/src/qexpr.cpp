#include "qseries/qexpr.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

#include "qseries/lambert.hpp"
#include "qseries/qproducts.hpp"
#include "qseries/verifier.hpp"

namespace qseries {

namespace expr {

namespace {
Expr make(NodeKind kind, std::vector<Exponent> args = {},
          std::vector<Expr> children = {}) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->args = std::move(args);
  n->children = std::move(children);
  return n;
}
}  // namespace

Expr constant(const Rational& c) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Const;
  n->value = c;
  n->value.canonicalize();
  return n;
}
Expr q() { return make(NodeKind::Q); }
Expr atom(NodeKind kind, std::vector<Exponent> args) {
  return make(kind, std::move(args));
}
Expr add(Expr a, Expr b) { return make(NodeKind::Add, {}, {a, b}); }
Expr sub(Expr a, Expr b) { return make(NodeKind::Sub, {}, {a, b}); }
Expr mul(Expr a, Expr b) { return make(NodeKind::Mul, {}, {a, b}); }
Expr div(Expr a, Expr b) { return make(NodeKind::Div, {}, {a, b}); }
Expr neg(Expr a) { return make(NodeKind::Neg, {}, {a}); }
Expr pow(Expr a, Exponent k) { return make(NodeKind::Pow, {k}, {a}); }
Expr scale(Expr a, Exponent k) { return make(NodeKind::Scale, {k}, {a}); }
Expr dissect(Expr a, Exponent modulus, Exponent residue) {
  return make(NodeKind::Dissect, {modulus, residue}, {a});
}

}  // namespace expr

// ---------------------------------------------------------------------------
// Parse errors

namespace {
std::string format_parse_message(const std::string& message, int line,
                                 int column) {
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": " << message;
  return os.str();
}
}  // namespace

ParseError::ParseError(const std::string& message, int line, int column,
                       std::vector<std::string> expected)
    : Error(format_parse_message(message, line, column)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

std::string ParseError::diagnostic(const std::string& source) const {
  std::istringstream in(source);
  std::string text;
  for (int i = 0; i < line_ && std::getline(in, text); ++i) {
  }
  std::ostringstream os;
  os << "parse error: " << what() << "\n  " << text << "\n  "
     << std::string(static_cast<std::size_t>(std::max(column_ - 1, 0)), ' ')
     << "^";
  if (!expected_.empty()) {
    os << "\n  expected one of:";
    for (const auto& e : expected_) os << " " << e;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Tokenizer and parser

namespace {

enum class Tok { Number, Ident, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  while (i < s.size()) {
    const char ch = s[i];
    if (ch == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++col;
      ++i;
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      t.kind = Tok::Number;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        t.text += s[i++];
        ++col;
      }
    } else if (std::isalpha(static_cast<unsigned char>(ch))) {
      t.kind = Tok::Ident;
      while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
        t.text += s[i++];
        ++col;
      }
    } else if (std::string("()+-*/^@,").find(ch) != std::string::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, ch);
      ++i;
      ++col;
    } else {
      throw ParseError(std::string("unexpected character '") + ch + "'", line,
                       col, {});
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

const std::vector<std::string>& base_starts() {
  static const std::vector<std::string> v = {
      "number", "'-'", "'('",  "q",    "J",     "eta",   "X", "H",  "T", "t",
      "V",      "Y",   "sigma", "br", "bsum", "S", "Ssum", "F", "dissect"};
  return v;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  Expr parse_all() {
    Expr e = parse_expr();
    if (peek().kind != Tok::End) {
      fail("unexpected " + describe(peek()), {"'+'", "'-'", "'*'", "'/'",
                                              "end of input"});
    }
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is_punct(const Token& t, char c) const {
    return t.kind == Tok::Punct && t.text[0] == c;
  }
  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::End:
        return "end of input";
      case Tok::Number:
        return "number " + t.text;
      default:
        return "'" + t.text + "'";
    }
  }
  [[noreturn]] void fail(const std::string& message,
                         std::vector<std::string> expected) const {
    throw ParseError(message, peek().line, peek().column, std::move(expected));
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& message) const {
    throw ParseError(message, t.line, t.column, {});
  }

  void expect(char c) {
    if (!is_punct(peek(), c)) {
      fail(std::string("expected '") + c + "', found " + describe(peek()),
           {std::string("'") + c + "'"});
    }
    next();
  }

  Exponent parse_uint() {
    if (peek().kind != Tok::Number) {
      fail("expected unsigned integer, found " + describe(peek()),
           {"unsigned integer"});
    }
    const Token& t = next();
    if (t.text.size() > 15) fail_at(t, "integer too large");
    return std::stoll(t.text);
  }

  Exponent parse_sint() {
    bool negative = false;
    if (is_punct(peek(), '-')) {
      next();
      negative = true;
    }
    if (peek().kind != Tok::Number) {
      fail("expected integer, found " + describe(peek()), {"integer"});
    }
    const Exponent v = parse_uint();
    return negative ? -v : v;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    while (is_punct(peek(), '+') || is_punct(peek(), '-')) {
      const bool plus = next().text[0] == '+';
      Expr rhs = parse_term();
      lhs = plus ? expr::add(lhs, rhs) : expr::sub(lhs, rhs);
    }
    return lhs;
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    while (is_punct(peek(), '*') || is_punct(peek(), '/')) {
      const bool times = next().text[0] == '*';
      Expr rhs = parse_factor();
      lhs = times ? expr::mul(lhs, rhs) : expr::div(lhs, rhs);
    }
    return lhs;
  }

  Expr parse_factor() {
    if (is_punct(peek(), '-') && peek(1).kind != Tok::Number) {
      next();
      return expr::neg(parse_factor());
    }
    Expr base = parse_base();
    if (is_punct(peek(), '^')) {
      next();
      base = expr::pow(base, parse_sint());
    }
    if (is_punct(peek(), '@')) {
      next();
      const Token& at = peek();
      const Exponent k = parse_uint();
      if (k < 1) fail_at(at, "scale factor must be positive");
      base = expr::scale(base, k);
    }
    return base;
  }

  Expr parse_rational() {
    const Token& start = peek();
    const Exponent num = parse_sint();
    Integer den = 1;
    if (is_punct(peek(), '/') && peek(1).kind == Tok::Number) {
      next();
      const Token& dt = peek();
      den = Integer(static_cast<long>(parse_uint()));
      if (den == 0) fail_at(dt, "zero denominator");
    }
    (void)start;
    return expr::constant(Rational(Integer(static_cast<long>(num)), den));
  }

  std::vector<Exponent> parse_args(const std::vector<bool>& is_signed) {
    expect('(');
    std::vector<Exponent> args;
    for (std::size_t i = 0; i < is_signed.size(); ++i) {
      if (i > 0) expect(',');
      args.push_back(is_signed[i] ? parse_sint() : parse_uint());
    }
    expect(')');
    return args;
  }

  Expr parse_base() {
    const Token& t = peek();
    if (t.kind == Tok::Number || (is_punct(t, '-') && peek(1).kind == Tok::Number)) {
      return parse_rational();
    }
    if (is_punct(t, '(')) {
      next();
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (t.kind != Tok::Ident) {
      fail("expected an operand, found " + describe(t), base_starts());
    }
    const Token id = next();
    const std::string& name = id.text;
    if (name == "q") return expr::q();
    if (name == "T") return expr::atom(NodeKind::TAtom, {});
    if (name == "t") return expr::atom(NodeKind::tAtom, {});
    if (name == "V" || name == "Y") {
      const Token& it = peek();
      const Exponent m = parse_uint();
      if (m > 10) fail_at(it, "index must be between 0 and 10");
      if (name == "Y" && m == 6) fail_at(it, "Y6 is not defined");
      return expr::atom(name == "V" ? NodeKind::VAtom : NodeKind::YAtom, {m});
    }
    if (name == "J") {
      expect('(');
      const Token& at = peek();
      const Exponent a = parse_uint();
      if (is_punct(peek(), ',')) {
        next();
        const Exponent b = parse_uint();
        expect(')');
        if (!(0 < a && a < b)) fail_at(at, "J(a,b) needs 0 < a < b");
        return expr::atom(NodeKind::JTheta, {a, b});
      }
      expect(')');
      if (a < 1) fail_at(at, "J(a) needs a >= 1");
      return expr::atom(NodeKind::JEuler, {a});
    }
    if (name == "eta" || name == "X" || name == "H") {
      const Token& at = peek(1);
      auto args = parse_args({false, false});
      if (name == "eta") {
        if (!(0 < args[1] && args[1] < args[0])) {
          fail_at(at, "eta(delta,g) needs 0 < g < delta");
        }
        return expr::atom(NodeKind::Eta, args);
      }
      if (args[1] < 1 || args[0] < 1 || args[0] % args[1] == 0) {
        fail_at(at, name + "(j,K) needs j >= 1 not divisible by K");
      }
      return expr::atom(name == "X" ? NodeKind::X : NodeKind::H, args);
    }
    if (name == "sigma") {
      const Token& at = peek(1);
      auto args = parse_args({false});
      if (args[0] < 1) fail_at(at, "sigma(K) needs K >= 1");
      return expr::atom(NodeKind::Sigma, args);
    }
    if (name == "br") {
      const Token& at = peek(1);
      auto args = parse_args({true, false});
      if (args[1] < 1 || args[0] % args[1] == 0) {
        fail_at(at, "br(j,K) needs j not divisible by K");
      }
      return expr::atom(NodeKind::Bracket, args);
    }
    if (name == "bsum") {
      const Token& at = peek(1);
      auto args = parse_args({false, true, true, false});
      if (args[0] < 1 || args[3] < 1) fail_at(at, "bsum needs K, p >= 1");
      return expr::atom(NodeKind::BSum, args);
    }
    if (name == "S") {
      const Token& at = peek(1);
      auto args = parse_args({false, false, false, false, false});
      if (args[2] < 1 || args[0] >= args[2] || args[4] < 1) {
        fail_at(at, "S(m,a,k,l,j) needs k >= 1, m < k, j >= 1");
      }
      return expr::atom(NodeKind::SAtom, args);
    }
    if (name == "Ssum") {
      const Token& at = peek(1);
      auto args = parse_args({false, false, false, false});
      if (args[1] < 1 || args[3] < 1) fail_at(at, "Ssum needs k, j >= 1");
      return expr::atom(NodeKind::SSum, args);
    }
    if (name == "F") {
      const Token& at = peek(1);
      auto args = parse_args({false});
      if (args[0] < 1 || args[0] > 10) fail_at(at, "F(b) needs 1 <= b <= 10");
      return expr::atom(NodeKind::FAtom, args);
    }
    if (name == "dissect") {
      expect('(');
      Expr inner = parse_expr();
      expect(',');
      const Token& at = peek();
      const Exponent modulus = parse_uint();
      expect(',');
      const Exponent residue = parse_uint();
      expect(')');
      if (modulus < 1 || residue >= modulus) {
        fail_at(at, "dissect needs M >= 1 and 0 <= r < M");
      }
      return expr::dissect(inner, modulus, residue);
    }
    throw ParseError("unknown identifier '" + name + "'", id.line, id.column,
                     base_starts());
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(const std::string& text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Printer

namespace {

struct Printed {
  std::string text;
  int level;  // 1 sum, 2 product, 3 negation, 4 power, 5 atom
};

Printed print_node(const Expr& e);

std::string wrap(const Expr& e, int min_level) {
  Printed p = print_node(e);
  if (p.level < min_level) return "(" + p.text + ")";
  return p.text;
}

bool starts_numeric(const std::string& s) {
  return !s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '-');
}

std::string join_args(const std::vector<Exponent>& args) {
  std::string s = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(args[i]);
  }
  return s + ")";
}

Printed print_node(const Expr& e) {
  switch (e->kind) {
    case NodeKind::Const: {
      const Rational& v = e->value;
      if (v.get_den() == 1) {
        return {v.get_num().get_str(), v < 0 ? 3 : 5};
      }
      return {"(" + v.get_num().get_str() + "/" + v.get_den().get_str() + ")", 5};
    }
    case NodeKind::Q:
      return {"q", 5};
    case NodeKind::JEuler:
    case NodeKind::JTheta:
      return {"J" + join_args(e->args), 5};
    case NodeKind::Eta:
      return {"eta" + join_args(e->args), 5};
    case NodeKind::X:
      return {"X" + join_args(e->args), 5};
    case NodeKind::H:
      return {"H" + join_args(e->args), 5};
    case NodeKind::Sigma:
      return {"sigma" + join_args(e->args), 5};
    case NodeKind::Bracket:
      return {"br" + join_args(e->args), 5};
    case NodeKind::BSum:
      return {"bsum" + join_args(e->args), 5};
    case NodeKind::SAtom:
      return {"S" + join_args(e->args), 5};
    case NodeKind::SSum:
      return {"Ssum" + join_args(e->args), 5};
    case NodeKind::FAtom:
      return {"F" + join_args(e->args), 5};
    case NodeKind::TAtom:
      return {"T", 5};
    case NodeKind::tAtom:
      return {"t", 5};
    case NodeKind::VAtom:
      return {"V" + std::to_string(e->args[0]), 5};
    case NodeKind::YAtom:
      return {"Y" + std::to_string(e->args[0]), 5};
    case NodeKind::Add:
      return {wrap(e->children[0], 1) + "+" + wrap(e->children[1], 2), 1};
    case NodeKind::Sub:
      return {wrap(e->children[0], 1) + "-" + wrap(e->children[1], 2), 1};
    case NodeKind::Mul:
      return {wrap(e->children[0], 2) + "*" + wrap(e->children[1], 3), 2};
    case NodeKind::Div: {
      std::string rhs = wrap(e->children[1], 3);
      if (starts_numeric(rhs)) rhs = "(" + rhs + ")";
      return {wrap(e->children[0], 2) + "/" + rhs, 2};
    }
    case NodeKind::Neg: {
      std::string inner = wrap(e->children[0], 3);
      if (!inner.empty() && std::isdigit(static_cast<unsigned char>(inner[0]))) {
        inner = "(" + inner + ")";
      }
      return {"-" + inner, 3};
    }
    case NodeKind::Pow:
      return {wrap(e->children[0], 5) + "^" + std::to_string(e->args[0]), 4};
    case NodeKind::Scale: {
      const Expr& c = e->children[0];
      std::string inner = c->kind == NodeKind::Pow ? print_node(c).text : wrap(c, 5);
      return {inner + "@" + std::to_string(e->args[0]), 4};
    }
    case NodeKind::Dissect:
      return {"dissect(" + print_node(e->children[0]).text + "," +
                  std::to_string(e->args[0]) + "," + std::to_string(e->args[1]) + ")",
              5};
  }
  throw Error("unhandled node kind in printer");
}

}  // namespace

std::string print(const Expr& e) { return print_node(e).text; }

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a->kind != b->kind || a->args != b->args ||
      a->children.size() != b->children.size()) {
    return false;
  }
  if (a->kind == NodeKind::Const && a->value != b->value) return false;
  for (std::size_t i = 0; i < a->children.size(); ++i) {
    if (!structurally_equal(a->children[i], b->children[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Named expressions

Expr builtin_definition(NodeKind kind, Exponent index) {
  static const std::vector<std::string> v_defs = {
      "q*J(4,11)*J(11)^5/(J(2,11)^2*J(3,11))",
      "J(5,11)^2*J(11)^5/J(2,11)^4",
      "q*J(11)^5/J(2,11)^2",
      "q*J(4,11)*J(11)^5/(J(2,11)^2*J(5,11))",
      "q*J(1,11)*J(3,11)*J(4,11)*J(11)^5/(J(2,11)^4*J(5,11))",
      "J(3,11)*J(5,11)*J(11)^5/(J(1,11)*J(2,11)^2*J(4,11))",
      "J(3,11)*J(11)^5/(J(1,11)*J(2,11)^2)",
      "J(3,11)*J(4,11)*J(11)^5/(J(1,11)*J(2,11)^2*J(5,11))",
      "q*J(1,11)*J(5,11)*J(11)^5/(J(2,11)^2*J(3,11)*J(4,11))",
      "J(4,11)^2*J(11)^5/(J(2,11)^3*J(5,11))",
      // Weight 3/2 like the others; with J(5,11)^2 every f_10(b) fails at q^5.
      "J(5,11)*J(11)^5/(J(2,11)^2*J(3,11))",
  };
  static const std::vector<std::string> y_defs = {
      "J(11)^2/J(1,11)",
      "J(5,11)*J(11)^2/(J(2,11)*J(3,11))",
      "J(3,11)*J(11)^2/(J(1,11)*J(4,11))",
      "J(2,11)*J(11)^2/(J(1,11)*J(3,11))",
      "J(11)^2/J(2,11)",
      "J(4,11)*J(11)^2/(J(2,11)*J(5,11))",
      "",
      "J(11)^2/J(3,11)",
      "q*J(1,11)*J(11)^2/(J(4,11)*J(5,11))",
      "J(11)^2/J(4,11)",
      "J(11)^2/J(5,11)",
  };
  static const Expr T = parse("J(2,11)^2*J(5,11)/(J(1,11)*J(4,11)^2)");
  static const Expr t = parse("q*J(1,11)*J(4,11)/J(5,11)^2");
  static const std::vector<Expr> V = [] {
    std::vector<Expr> out;
    for (const auto& s : v_defs) out.push_back(parse(s));
    return out;
  }();
  static const std::vector<Expr> Y = [] {
    std::vector<Expr> out;
    for (const auto& s : y_defs) out.push_back(s.empty() ? nullptr : parse(s));
    return out;
  }();
  switch (kind) {
    case NodeKind::TAtom:
      return T;
    case NodeKind::tAtom:
      return t;
    case NodeKind::VAtom:
      if (index < 0 || index > 10) throw DomainError("V index out of range");
      return V[static_cast<std::size_t>(index)];
    case NodeKind::YAtom:
      if (index < 0 || index > 10 || index == 6) {
        throw DomainError("Y index out of range");
      }
      return Y[static_cast<std::size_t>(index)];
    default:
      throw DomainError("not a named expression");
  }
}

// ---------------------------------------------------------------------------
// Evaluation

LaurentSeries Evaluator::eval(const Expr& e, Exponent prec) {
  Exponent work = prec;
  for (int attempt = 0; attempt < 12; ++attempt) {
    LaurentSeries s = eval_at(e, work);
    if (s.prec() >= prec) return s.truncated(prec);
    work += std::max<Exponent>(prec - s.prec(), 8);
  }
  throw InsufficientPrecision("could not reach requested precision for " +
                              print(e));
}

void Evaluator::clear_cache() {
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.clear();
}

LaurentSeries Evaluator::eval_at(const Expr& e, Exponent work) {
  const bool cacheable = e->kind != NodeKind::Const && e->kind != NodeKind::Q;
  std::string key;
  if (cacheable) {
    key = print(e) + "@" + std::to_string(work);
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  LaurentSeries value = eval_uncached(e, work);
  if (cacheable) {
    std::lock_guard<std::mutex> lock(mutex_);
    cache_.emplace(key, value);
  }
  return value;
}

LaurentSeries Evaluator::eval_uncached(const Expr& e, Exponent work) {
  const auto& a = e->args;
  switch (e->kind) {
    case NodeKind::Const:
      return LaurentSeries::constant(e->value, work);
    case NodeKind::Q:
      return LaurentSeries::monomial(1, 1, std::max<Exponent>(work, 2));
    case NodeKind::JEuler:
      return euler_product(a[0], work);
    case NodeKind::JTheta:
      return jab(a[0], a[1], work);
    case NodeKind::Eta:
      return bracket(a[1], a[0], work);
    case NodeKind::X:
      return x_series(a[0], a[1], work);
    case NodeKind::H:
      return h_series(a[0], a[1], work);
    case NodeKind::Sigma:
      return divisor_sigma_series(a[0], work);
    case NodeKind::Bracket:
      return bracket(a[0], a[1], work);
    case NodeKind::BSum:
      return bilateral_lambert(a[0], a[1], a[2], static_cast<int>(a[3]), work);
    case NodeKind::SAtom:
      return s_series(SSpec{a[0], a[1], a[2], a[3], static_cast<int>(a[4])}, work);
    case NodeKind::SSum:
      return s_sum(a[0], a[1], a[2], static_cast<int>(a[3]), work);
    case NodeKind::FAtom:
      return mathcal_f(a[0], work);
    case NodeKind::TAtom:
    case NodeKind::tAtom:
      return eval_at(builtin_definition(e->kind), work);
    case NodeKind::VAtom:
    case NodeKind::YAtom:
      return eval_at(builtin_definition(e->kind, a[0]), work);
    case NodeKind::Add:
      return eval_at(e->children[0], work) + eval_at(e->children[1], work);
    case NodeKind::Sub:
      return eval_at(e->children[0], work) - eval_at(e->children[1], work);
    case NodeKind::Mul:
      return eval_at(e->children[0], work) * eval_at(e->children[1], work);
    case NodeKind::Div:
      return divide(eval_at(e->children[0], work), eval_at(e->children[1], work));
    case NodeKind::Neg:
      return -eval_at(e->children[0], work);
    case NodeKind::Pow:
      return power(eval_at(e->children[0], work), a[0]);
    case NodeKind::Scale: {
      const Exponent k = a[0];
      return scale_exponents(eval_at(e->children[0], ceil_div(work, k)), k);
    }
    case NodeKind::Dissect: {
      const Exponent m = a[0];
      const Exponent r = a[1];
      return dissect(eval_at(e->children[0], m * work + r), m, r);
    }
  }
  throw Error("unhandled node kind in evaluator");
}

LaurentSeries eval(const Expr& e, Exponent prec) {
  Evaluator ev;
  return ev.eval(e, prec);
}

}  // namespace qseries
