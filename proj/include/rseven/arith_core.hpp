#pragma once

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rseven/errors.hpp"
#include "rseven/number.hpp"

namespace rseven {

inline constexpr std::uint64_t kDefaultFactorCeiling = 1'000'000'000ULL;

struct PrimePower {
  std::uint64_t prime = 2;
  unsigned exponent = 1;

  friend auto operator<=>(const PrimePower&, const PrimePower&) = default;
};

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw CapacityError("product overflows 64 bits");
  }
  return out;
}

inline std::uint64_t checked_pow(std::uint64_t base, unsigned exponent) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exponent; ++i) out = checked_mul(out, base);
  return out;
}

}  // namespace detail

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

/// A positive integer together with its prime factorization. Primes are
/// strictly increasing and every exponent is at least one; the empty
/// factorization is 1.
class Factored {
 public:
  Factored() = default;

  static Factored from_factors(std::vector<PrimePower> factors) {
    Factored out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto& pp = factors[i];
      if (pp.exponent == 0) throw DomainError("prime exponent must be >= 1");
      if (i > 0 && factors[i - 1].prime >= pp.prime) {
        throw DomainError("primes must be strictly increasing");
      }
      if (!is_prime(pp.prime)) {
        throw DomainError(std::to_string(pp.prime) + " is not prime");
      }
      out.value_ =
          detail::checked_mul(out.value_, detail::checked_pow(pp.prime, pp.exponent));
    }
    out.factors_ = std::move(factors);
    return out;
  }

  /// Skips the primality and ordering checks; for factorizations derived
  /// from an already-validated Factored.
  static Factored unchecked(std::vector<PrimePower> factors) {
    Factored out;
    for (const auto& pp : factors) {
      out.value_ =
          detail::checked_mul(out.value_, detail::checked_pow(pp.prime, pp.exponent));
    }
    out.factors_ = std::move(factors);
    return out;
  }

  std::uint64_t value() const { return value_; }
  std::span<const PrimePower> factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  unsigned exponent_of(std::uint64_t p) const {
    for (const auto& pp : factors_) {
      if (pp.prime == p) return pp.exponent;
    }
    return 0;
  }

  friend bool operator==(const Factored& a, const Factored& b) {
    return a.value_ == b.value_;
  }
  friend auto operator<=>(const Factored& a, const Factored& b) {
    return a.value_ <=> b.value_;
  }

 private:
  std::uint64_t value_ = 1;
  std::vector<PrimePower> factors_;
};

/// Trial-division factorization. Values above `ceiling` raise CapacityError.
inline Factored factor(const Integer& n,
                       std::uint64_t ceiling = kDefaultFactorCeiling) {
  if (sgn(n) <= 0) {
    throw DomainError("factor: expected a positive integer, got " + n.get_str());
  }
  if (!fits_u64(n) || to_u64(n) > ceiling) {
    throw CapacityError("factor: " + n.get_str() + " exceeds the ceiling " +
                        std::to_string(ceiling));
  }
  std::uint64_t rest = to_u64(n);
  std::vector<PrimePower> factors;
  for (std::uint64_t p = 2; p <= rest / p; p += (p == 2 ? 1 : 2)) {
    if (rest % p != 0) continue;
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    factors.push_back({p, e});
  }
  if (rest > 1) factors.push_back({rest, 1});
  return Factored::unchecked(std::move(factors));
}

/// All divisors of n in ascending order, each with its own factorization.
inline std::vector<Factored> divisors(const Factored& n) {
  std::vector<std::vector<PrimePower>> acc{{}};
  for (const auto& pp : n.factors()) {
    std::vector<std::vector<PrimePower>> next;
    next.reserve(acc.size() * (pp.exponent + 1));
    for (const auto& partial : acc) {
      next.push_back(partial);
      for (unsigned e = 1; e <= pp.exponent; ++e) {
        auto grown = partial;
        grown.push_back({pp.prime, e});
        next.push_back(std::move(grown));
      }
    }
    acc = std::move(next);
  }
  std::vector<Factored> out;
  out.reserve(acc.size());
  for (auto& f : acc) out.push_back(Factored::unchecked(std::move(f)));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::uint64_t divisor_count(const Factored& n) {
  std::uint64_t t = 1;
  for (const auto& pp : n.factors()) t *= pp.exponent + 1;
  return t;
}

/// n / d for a divisor d of n.
inline Factored quotient(const Factored& n, const Factored& d) {
  for (const auto& pp : d.factors()) {
    if (pp.exponent > n.exponent_of(pp.prime)) {
      throw DomainError(std::to_string(d.value()) + " does not divide " +
                        std::to_string(n.value()));
    }
  }
  std::vector<PrimePower> out;
  for (const auto& pp : n.factors()) {
    unsigned e = d.exponent_of(pp.prime);
    if (pp.exponent > e) out.push_back({pp.prime, pp.exponent - e});
  }
  return Factored::unchecked(std::move(out));
}

inline Factored multiply(const Factored& a, const Factored& b) {
  std::vector<PrimePower> out;
  auto fa = a.factors();
  auto fb = b.factors();
  std::size_t i = 0, j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size() || (i < fa.size() && fa[i].prime < fb[j].prime)) {
      out.push_back(fa[i++]);
    } else if (i == fa.size() || fb[j].prime < fa[i].prime) {
      out.push_back(fb[j++]);
    } else {
      out.push_back({fa[i].prime, fa[i].exponent + fb[j].exponent});
      ++i;
      ++j;
    }
  }
  return Factored::unchecked(std::move(out));
}

inline Integer power(const Factored& n, unsigned s) { return pow(n.value(), s); }

/// Exponent of p in n, capped at `cap`. n = 0 is divisible by everything and
/// reports `cap`.
inline unsigned valuation(const Integer& n, std::uint64_t p, unsigned cap) {
  if (n == 0) return cap;
  const Integer prime = to_integer(p);
  Integer rest = abs(n);
  unsigned v = 0;
  while (v < cap && divides(prime, rest)) {
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), prime.get_mpz_t());
    ++v;
  }
  return v;
}

/// The divisor m of r with m^s = (n, r^s)_s. Works prime by prime on r, so
/// r^s is never formed.
inline Factored generalized_gcd_root(const Integer& n, const Factored& r,
                                     unsigned s) {
  if (s == 0) throw DomainError("generalized gcd: s must be >= 1");
  std::vector<PrimePower> out;
  for (const auto& pp : r.factors()) {
    unsigned v = valuation(n, pp.prime, s * pp.exponent);
    if (v / s > 0) out.push_back({pp.prime, v / s});
  }
  return Factored::unchecked(std::move(out));
}

/// (a, b)_s: the largest perfect s-th power dividing both a and b. With
/// a = 0 this is the largest s-th power dividing b.
inline Integer generalized_gcd(const Integer& a, const Integer& b, unsigned s,
                               std::uint64_t ceiling = kDefaultFactorCeiling) {
  if (s == 0) throw DomainError("generalized gcd: s must be >= 1");
  if (sgn(a) < 0 || sgn(b) < 0) {
    throw DomainError("generalized gcd: arguments must be nonnegative");
  }
  if (a == 0 && b == 0) {
    throw DomainError("generalized gcd: arguments must not both be zero");
  }
  Integer g = gcd(a, b);
  if (s == 1) return g;
  Integer out = 1;
  const Factored fg = factor(g, ceiling);
  for (const auto& pp : fg.factors()) {
    out *= pow(pp.prime, (pp.exponent / s) * s);
  }
  return out;
}

inline int mobius(const Factored& n) {
  int sign = 1;
  for (const auto& pp : n.factors()) {
    if (pp.exponent >= 2) return 0;
    sign = -sign;
  }
  return sign;
}

/// J_s(n) = n^s prod_{p | n} (1 - p^{-s}); J_1 is Euler's phi.
inline Integer jordan_totient(const Factored& n, unsigned s) {
  if (s == 0) throw DomainError("jordan_totient: s must be >= 1");
  Integer out = 1;
  for (const auto& pp : n.factors()) {
    Integer ps = pow(pp.prime, s);
    out *= pow(ps, pp.exponent - 1) * (ps - 1);
  }
  return out;
}

/// Any callable mapping a factored positive integer to an exact value.
template <class F>
concept ArithmeticFunction = std::invocable<const F&, const Factored&> &&
    std::convertible_to<std::invoke_result_t<const F&, const Factored&>, Rational>;

/// A multiplicative function given by its values on prime powers.
struct MultiplicativeSpec {
  std::string name;
  std::function<Rational(std::uint64_t prime, unsigned exponent)> prime_power_value;

  Rational operator()(const Factored& n) const {
    Rational out = 1;
    for (const auto& pp : n.factors()) out *= prime_power_value(pp.prime, pp.exponent);
    return out;
  }
};

inline MultiplicativeSpec mobius_function() {
  return {"mu", [](std::uint64_t, unsigned a) { return Rational(a == 1 ? -1 : 0); }};
}

inline MultiplicativeSpec constant_one() {
  return {"1", [](std::uint64_t, unsigned) { return Rational(1); }};
}

/// The Dirichlet identity: 1 at n = 1, zero elsewhere.
inline MultiplicativeSpec dirichlet_unit() {
  return {"epsilon", [](std::uint64_t, unsigned) { return Rational(0); }};
}

inline MultiplicativeSpec jordan_function(unsigned s) {
  return {"J_" + std::to_string(s), [s](std::uint64_t p, unsigned a) {
            Integer ps = pow(p, s);
            return Rational(pow(ps, a - 1) * (ps - 1));
          }};
}

template <ArithmeticFunction F, ArithmeticFunction G>
Rational dirichlet_convolve(const F& f, const G& g, const Factored& n) {
  Rational sum = 0;
  for (const auto& d : divisors(n)) {
    sum += Rational(f(d)) * Rational(g(quotient(n, d)));
  }
  return sum;
}

/// sum_{d | n} J_s(d) == n^s, computed exactly.
inline bool jordan_divisor_sum_check(const Factored& n, unsigned s) {
  Integer sum = 0;
  for (const auto& d : divisors(n)) sum += jordan_totient(d, s);
  return sum == power(n, s);
}

}  // namespace rseven
