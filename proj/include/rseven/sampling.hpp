#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "rseven/even_algebra.hpp"
#include "rseven/holder.hpp"

// Random generators for the property sweeps.

namespace rseven {

inline Rational random_rational(std::mt19937_64& rng, int max_abs_num = 9, int max_den = 5) {
  std::uniform_int_distribution<int> num(-max_abs_num, max_abs_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return make_rational(num(rng), den(rng));
}

template <class Tag = FunctionTag>
DivisorTable<Tag> random_table(const Factored& r, unsigned s, std::mt19937_64& rng) {
  auto domain = even_domain(r, s);
  std::vector<Rational> values;
  values.reserve(domain->size());
  for (std::size_t i = 0; i < domain->size(); ++i) values.push_back(random_rational(rng));
  return {domain, std::move(values)};
}

inline EvenFunction random_even_function(const Factored& r, unsigned s, std::mt19937_64& rng) {
  return random_table<FunctionTag>(r, s, rng);
}

/// Integer-valued even function with entries in [-lo_hi, lo_hi].
inline EvenFunction random_integer_function(const Factored& r, unsigned s, std::mt19937_64& rng,
                                            int lo_hi = 5) {
  auto domain = even_domain(r, s);
  std::uniform_int_distribution<int> dist(-lo_hi, lo_hi);
  std::vector<Rational> values;
  for (std::size_t i = 0; i < domain->size(); ++i) values.emplace_back(dist(rng));
  return {domain, std::move(values)};
}

/// Strongly multiplicative F with F(p) drawn from [-3, 5] minus {1 - p^s} for
/// every prime p <= max_prime, and a nonnegative default for the rest (which
/// can never equal 1 - p^s).
inline StronglyMultiplicativeFn random_strongly_multiplicative(std::mt19937_64& rng, unsigned s,
                                                               std::uint64_t max_prime) {
  std::uniform_int_distribution<int> value(-3, 5);
  std::map<std::uint64_t, Rational> primes;
  for (std::uint64_t p = 2; p <= max_prime; ++p) {
    if (!is_prime(p)) continue;
    const Integer forbidden = 1 - pow(p, s);
    int v = value(rng);
    while (Integer(v) == forbidden) v = value(rng);
    primes.emplace(p, Rational(v));
  }
  std::uniform_int_distribution<int> fallback(0, 5);
  return StronglyMultiplicativeFn(Rational(fallback(rng)), std::move(primes));
}

}  // namespace rseven
