#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>

#include "paramark/errors.hpp"

namespace paramark {

// Exact rational numbers. mpq_class keeps the invariant den > 0 and
// gcd(|num|, den) = 1 as long as every value goes through canonicalize().
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) fail(ErrorKind::Internal, "rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rat(const Integer& num, const Integer& den) {
  if (den == 0) fail(ErrorKind::Internal, "rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts `a`, `-a`, `a/b`, `-a/b` with integer a, positive integer b.
inline Rational rat_parse(const std::string& text) {
  auto bad = [&]() -> Rational {
    fail(ErrorKind::Syntax, "malformed rational literal '" + text + "'");
  };
  std::size_t i = 0;
  if (i < text.size() && text[i] == '-') ++i;
  std::size_t num_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_start) return bad();
  if (i < text.size()) {
    if (text[i] != '/') return bad();
    ++i;
    std::size_t den_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_start || i != text.size()) return bad();
    if (Integer(text.substr(den_start)) == 0) return bad();
  }
  Rational q(text);
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rational& q) { return q.get_str(); }

inline Rational rat_pow(const Rational& base, unsigned long exponent) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), exponent);
  return rat(num, den);
}

}  // namespace paramark
