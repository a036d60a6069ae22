#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "rseven/errors.hpp"

namespace rseven {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer to_integer(std::uint64_t v) {
  Integer out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return out;
}

inline Integer pow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

inline Integer pow(std::uint64_t base, unsigned long exponent) {
  return pow(to_integer(base), exponent);
}

inline bool fits_u64(const Integer& v) {
  return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const Integer& v) {
  if (!fits_u64(v)) {
    throw CapacityError("integer " + v.get_str() + " does not fit in 64 bits");
  }
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

inline bool fits_i64(const Integer& v) {
  return mpz_sizeinbase(v.get_mpz_t(), 2) <= 63;
}

inline bool divides(const Integer& d, const Integer& n) {
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Exact quotient; throws InternalError when `den` does not divide `num`.
inline Integer exact_div(const Integer& num, const Integer& den,
                         std::string_view what) {
  if (den == 0 || !divides(den, num)) {
    throw InternalError(std::string(what) + ": " + num.get_str() +
                        " is not divisible by " + den.get_str());
  }
  Integer q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// "p/q" in lowest terms, or "p" when the value is integral.
inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw DomainError("empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw DomainError("malformed integer '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') {
      throw DomainError("malformed integer '" + s + "'");
    }
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

/// Accepts "p", "-p", "p/q" with q != 0.
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) {
    throw DomainError("zero denominator in '" + std::string(text) + "'");
  }
  return make_rational(num, den);
}

}  // namespace rseven
