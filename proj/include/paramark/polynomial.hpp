#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "paramark/errors.hpp"
#include "paramark/rational.hpp"

namespace paramark {

using Valuation = std::map<std::string, Rational>;

// Configurable guard against runaway exponent growth. Exceeding it throws
// ExponentOverflow instead of silently truncating.
inline unsigned long& poly_exponent_cap() {
  static unsigned long cap = 1ul << 20;
  return cap;
}

// Exponent map with no zero entries; keys are parameter identifiers.
struct Monomial {
  std::map<std::string, unsigned long> exps;

  unsigned long total_degree() const {
    unsigned long d = 0;
    for (const auto& [v, e] : exps) d += e;
    return d;
  }

  unsigned long degree_in(const std::string& var) const {
    auto it = exps.find(var);
    return it == exps.end() ? 0 : it->second;
  }

  bool operator==(const Monomial& other) const { return exps == other.exps; }
};

// Graded lexicographic: first by total degree, ties by exponent of the
// alphabetically earliest variable where the monomials differ (bigger
// exponent there means bigger monomial).
inline bool grlex_less(const Monomial& a, const Monomial& b) {
  unsigned long da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  auto ia = a.exps.begin(), ib = b.exps.begin();
  while (ia != a.exps.end() && ib != b.exps.end()) {
    if (ia->first != ib->first) {
      // The earlier-named variable is present in exactly one monomial;
      // that monomial has the bigger exponent on it, hence is bigger.
      return ia->first > ib->first;
    }
    if (ia->second != ib->second) return ia->second < ib->second;
    ++ia;
    ++ib;
  }
  // Equal prefixes and equal total degree with no differing variable
  // means the monomials are identical.
  return false;
}

struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grlex_less(a, b);
  }
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexLess>;

  Polynomial() = default;

  static Polynomial constant(const Rational& c) {
    Polynomial p;
    if (c != 0) p.terms_.emplace(Monomial{}, c);
    return p;
  }

  static Polynomial constant(long c) { return constant(rat(c)); }

  static Polynomial variable(const std::string& name) {
    Polynomial p;
    Monomial m;
    m.exps[name] = 1;
    p.terms_.emplace(std::move(m), rat(1));
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first.exps.empty());
  }

  // Value of a constant polynomial; zero polynomial gives 0.
  Rational constant_value() const {
    if (!is_constant()) fail(ErrorKind::Internal, "constant_value of non-constant");
    return terms_.empty() ? rat(0) : terms_.begin()->second;
  }

  unsigned long total_degree() const {
    unsigned long d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
  }

  unsigned long degree_in(const std::string& var) const {
    unsigned long d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(var));
    return d;
  }

  std::set<std::string> vars() const {
    std::set<std::string> out;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m.exps) out.insert(v);
    return out;
  }

  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial operator-() const {
    Polynomial out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
  }

  Polynomial& operator+=(const Polynomial& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        for (const auto& [v, e] : mb.exps) {
          unsigned long& slot = m.exps[v];
          slot += e;
          if (slot > poly_exponent_cap())
            fail(ErrorKind::ExponentOverflow,
                 "exponent of '" + v + "' exceeds cap");
        }
        out.add_term(m, ca * cb);
      }
    }
    return out;
  }

  Polynomial& operator*=(const Polynomial& other) { return *this = *this * other; }

  friend Polynomial operator*(const Rational& c, const Polynomial& p) {
    Polynomial out;
    if (c == 0) return out;
    for (const auto& [m, pc] : p.terms_) out.terms_.emplace(m, c * pc);
    return out;
  }

  Polynomial pow(unsigned long e) const {
    Polynomial out = constant(1);
    for (unsigned long i = 0; i < e; ++i) out *= *this;
    return out;
  }

  bool operator==(const Polynomial& other) const { return terms_ == other.terms_; }

  // Exact evaluation; requires val to cover every occurring parameter.
  Rational eval(const Valuation& val) const {
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
      Rational term = c;
      for (const auto& [v, e] : m.exps) {
        auto it = val.find(v);
        if (it == val.end())
          fail(ErrorKind::MissingParameter, "valuation misses parameter '" + v + "'");
        term *= rat_pow(it->second, e);
      }
      sum += term;
    }
    return sum;
  }

  // Replaces each variable that has an entry in `sub` with a polynomial.
  Polynomial substitute(const std::map<std::string, Polynomial>& sub) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
      Polynomial term = constant(c);
      for (const auto& [v, e] : m.exps) {
        auto it = sub.find(v);
        Polynomial base = it == sub.end() ? variable(v) : it->second;
        term *= base.pow(e);
      }
      out += term;
    }
    return out;
  }

  std::string to_string() const;

 private:
  TermMap terms_;
};

inline std::string monomial_str(const Monomial& m) {
  std::string out;
  for (const auto& [v, e] : m.exps) {
    if (!out.empty()) out += "*";
    out += v;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

// Canonical form: terms in descending graded-lex order, explicit signs,
// unit coefficients elided next to variables.
inline std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    bool first = out.empty();
    bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string mono = monomial_str(m);
    if (mono.empty()) {
      out += rat_str(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += rat_str(mag) + "*" + mono;
    }
  }
  return out;
}

// Unreduced quotient of polynomials. No gcd anywhere: equality is by
// cross-multiplication. Constant denominators are folded into the
// numerator so desk-scale values stay small.
struct RationalFunction {
  Polynomial num;
  Polynomial den = Polynomial::constant(1);

  RationalFunction() = default;

  RationalFunction(Polynomial n, Polynomial d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) fail(ErrorKind::Internal, "rational function with zero denominator");
    normalize();
  }

  static RationalFunction from_poly(Polynomial p) {
    RationalFunction r;
    r.num = std::move(p);
    return r;
  }

  static RationalFunction from_rational(const Rational& q) {
    return from_poly(Polynomial::constant(q));
  }

  void normalize() {
    if (num.is_zero()) {
      den = Polynomial::constant(1);
      return;
    }
    if (den.is_constant()) {
      Rational c = den.constant_value();
      num = rat(c.get_den(), c.get_num()) * num;
      den = Polynomial::constant(1);
      return;
    }
    // Deterministic sign: leading denominator coefficient positive.
    if (den.terms().rbegin()->second < 0) {
      num = -num;
      den = -den;
    }
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num * b.den + b.num * a.den, a.den * b.den);
  }

  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num * b.den - b.num * a.den, a.den * b.den);
  }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num * b.num, a.den * b.den);
  }

  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.num.is_zero()) fail(ErrorKind::Internal, "rational function division by zero");
    return RationalFunction(a.num * b.den, a.den * b.num);
  }

  Rational eval(const Valuation& val) const {
    Rational d = den.eval(val);
    if (d == 0)
      fail(ErrorKind::InvalidValuation, "denominator vanishes at the valuation");
    return num.eval(val) / d;
  }

  std::string to_string() const {
    if (den == Polynomial::constant(1)) return num.to_string();
    return "(" + num.to_string() + ") / (" + den.to_string() + ")";
  }
};

inline bool rf_equal(const RationalFunction& a, const RationalFunction& b) {
  return (a.num * b.den - b.num * a.den).is_zero();
}

// --- Polynomial text grammar ---------------------------------------------
//
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ['^' integer]
//   atom   := rational | identifier | '(' expr ')'
//
// Rationals are `a` or `a/b` (the '/' binds inside the literal, no spaces);
// identifiers match [A-Za-z_][A-Za-z0-9_']*. Implicit multiplication is a
// parse error. Whitespace is insignificant.

class PolyParser {
 public:
  explicit PolyParser(const std::string& text) : text_(text) {}

  Polynomial parse() {
    Polynomial p = parse_expr();
    skip_ws();
    if (pos_ != text_.size())
      error("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::Syntax,
         "polynomial parse error at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Polynomial parse_expr() {
    bool negate = eat('-');
    Polynomial acc = parse_term();
    if (negate) acc = -acc;
    while (true) {
      if (eat('+')) {
        acc += parse_term();
      } else if (eat('-')) {
        acc -= parse_term();
      } else {
        return acc;
      }
    }
  }

  Polynomial parse_term() {
    Polynomial acc = parse_factor();
    while (true) {
      skip_ws();
      if (eat('*')) {
        acc *= parse_factor();
        continue;
      }
      char c = peek();
      // Adjacent atoms without an operator: reject explicitly so that
      // `2x` fails instead of parsing as 2.
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(')
        error("implicit multiplication is not allowed");
      return acc;
    }
  }

  Polynomial parse_factor() {
    Polynomial base = parse_atom();
    if (eat('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == start) error("expected non-negative integer exponent");
      if (pos_ - start > 9) error("exponent exceeds cap");
      unsigned long e = std::stoul(text_.substr(start, pos_ - start));
      if (e > poly_exponent_cap()) error("exponent exceeds cap");
      return base.pow(e);
    }
    return base;
  }

  Polynomial parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) error("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = parse_expr();
      if (!eat(')')) error("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::size_t den_start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == den_start) error("expected denominator digits");
        std::string lit = text_.substr(start, pos_ - start);
        if (Integer(text_.substr(den_start, pos_ - den_start)) == 0)
          error("zero denominator in rational literal");
        return Polynomial::constant(rat_parse(lit));
      }
      return Polynomial::constant(rat_parse(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      ++pos_;
      while (pos_ < text_.size()) {
        char k = text_[pos_];
        if (std::isalnum(static_cast<unsigned char>(k)) || k == '_' || k == '\'') {
          ++pos_;
        } else {
          break;
        }
      }
      return Polynomial::variable(text_.substr(start, pos_ - start));
    }
    error("unexpected character '" + std::string(1, c) + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

inline Polynomial poly_parse(const std::string& text) { return PolyParser(text).parse(); }

}  // namespace paramark
