#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rseven/arith_core.hpp"
#include "rseven/even_algebra.hpp"

namespace rseven {

/// Multiplicative F with F(p^a) = F(p) for every a >= 1. Primes without an
/// explicit value take `default_value`.
class StronglyMultiplicativeFn {
 public:
  explicit StronglyMultiplicativeFn(Rational default_value = 1,
                                    std::map<std::uint64_t, Rational> prime_values = {})
      : default_(std::move(default_value)), primes_(std::move(prime_values)) {
    for (const auto& [p, v] : primes_) {
      if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    }
  }

  /// F(p) = 0 for every p: the Dirichlet identity epsilon.
  static StronglyMultiplicativeFn epsilon() { return StronglyMultiplicativeFn(0); }
  static StronglyMultiplicativeFn one() { return StronglyMultiplicativeFn(1); }

  const Rational& at_prime(std::uint64_t p) const {
    auto it = primes_.find(p);
    return it == primes_.end() ? default_ : it->second;
  }

  Rational operator()(const Factored& n) const {
    Rational out = 1;
    for (const auto& pp : n.factors()) out *= at_prime(pp.prime);
    return out;
  }

  const Rational& default_value() const { return default_; }
  const std::map<std::uint64_t, Rational>& prime_values() const { return primes_; }

 private:
  Rational default_;
  std::map<std::uint64_t, Rational> primes_;
};

/// The family f_r(n) = F((n, r^s)_s).
struct CompletelyEvenSequence {
  StronglyMultiplicativeFn F;
  unsigned s = 1;
};

/// f_r as an element of B_{r,s}: the entry at d is F(d^s) = F(d).
inline EvenFunction realize(const CompletelyEvenSequence& seq, const Factored& r) {
  auto domain = even_domain(r, seq.s);
  std::vector<Rational> values;
  values.reserve(domain->size());
  for (const auto& d : domain->divisors()) values.push_back(seq.F(d));
  return {domain, std::move(values)};
}

/// Throws PreconditionError naming the first prime p | r with F(p) = 1 - p^s.
inline void check_holder_hypothesis(const CompletelyEvenSequence& seq, const Factored& r) {
  for (const auto& pp : r.factors()) {
    const Rational forbidden = Rational(1 - pow(pp.prime, seq.s));
    if (seq.F.at_prime(pp.prime) == forbidden) {
      throw PreconditionError("hypothesis F(p) != 1 - p^s fails at p = " +
                              std::to_string(pp.prime) + " (F(p) = " +
                              to_string(forbidden) + ")");
    }
  }
}

/// (F * mu)(m) from prime powers: F(p) - 1 at exponent 1, zero above.
inline Rational convolve_with_mobius(const StronglyMultiplicativeFn& F, const Factored& m) {
  Rational out = 1;
  for (const auto& pp : m.factors()) {
    if (pp.exponent >= 2) return 0;
    out *= F.at_prime(pp.prime) - 1;
  }
  return out;
}

/// (F * J_s)(m) from prime powers: p^{s(a-1)} (p^s - 1 + F(p)).
inline Rational convolve_with_jordan(const StronglyMultiplicativeFn& F, const Factored& m,
                                     unsigned s) {
  Rational out = 1;
  for (const auto& pp : m.factors()) {
    const Integer ps = pow(pp.prime, s);
    out *= Rational(pow(ps, pp.exponent - 1)) * (Rational(ps - 1) + F.at_prime(pp.prime));
  }
  return out;
}

/// f^_r(n) = (F*mu)(m) (F*J_s)(r) / (F*J_s)(m) with m^s = r^s / (n, r^s)_s.
inline Rational holder_dft(const CompletelyEvenSequence& seq, const Factored& r,
                           const Integer& n) {
  if (seq.s == 0) throw DomainError("s must be >= 1");
  if (sgn(n) < 0) throw DomainError("n must be nonnegative");
  check_holder_hypothesis(seq, r);
  const Factored m = inversion_index(r, seq.s, n);
  const Rational den = convolve_with_jordan(seq.F, m, seq.s);
  if (sgn(den) == 0) {
    throw InternalError("holder_dft: (F*J_s)(" + std::to_string(m.value()) +
                        ") vanished although the hypothesis holds");
  }
  return convolve_with_mobius(seq.F, m) * convolve_with_jordan(seq.F, r, seq.s) / den;
}

/// Three-case closed form of f^_{p^a}(n) for strongly multiplicative F with
/// F(p) = fp.
inline Rational holder_prime_power_case(std::uint64_t p, unsigned a, unsigned s,
                                        const Integer& n, const Rational& fp) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (a == 0 || s == 0) throw DomainError("a and s must be >= 1");
  const Integer ps = pow(p, s);
  const Integer below = pow(p, s * (a - 1));
  if (divides(below * ps, n)) return Rational(below) * (fp + Rational(ps - 1));
  if (divides(below, n)) return Rational(below) * (fp - 1);
  return 0;
}

}  // namespace rseven
