#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rseven/arith_core.hpp"
#include "rseven/even_algebra.hpp"
#include "rseven/ramanujan.hpp"

namespace rseven {

/// Work bound k * (r^s)^2 for the convolution-based brute-force count.
inline constexpr std::uint64_t kBruteForceWorkLimit = 100'000'000;

/// x_1 + ... + x_k = n (mod r^s) with every (x_i, r^s)_s = 1.
struct CongruenceQuery {
  Factored r;
  unsigned s = 1;
  unsigned k = 1;
  Integer n;
};

namespace detail {
inline void check_congruence_args(unsigned s, unsigned k, const Integer& n) {
  if (s == 0) throw DomainError("s must be >= 1");
  if (k == 0) throw DomainError("k must be >= 1");
  if (sgn(n) < 0) throw DomainError("n must be nonnegative");
}
}  // namespace detail

/// N_{r,s}(n,k) = r^{-s} sum_{d | r} c_{r,s}((r/d)^s)^k c_{d,s}(n).
inline Integer count_spectral(const Factored& r, unsigned s, unsigned k, const Integer& n) {
  detail::check_congruence_args(s, k, n);
  Integer sum = 0;
  for (const auto& d : divisors(r)) {
    const Integer c = crs_divisor_formula(r, s, power(quotient(r, d), s));
    sum += pow(c, k) * crs_divisor_formula(d, s, n);
  }
  Integer out = exact_div(sum, power(r, s), "count_spectral");
  if (sgn(out) < 0) throw InternalError("count_spectral produced a negative count");
  return out;
}

inline Integer count_spectral(const CongruenceQuery& q) {
  return count_spectral(q.r, q.s, q.k, q.n);
}

/// Number of solutions for every n in 1..r^s (position n - 1), by k-fold
/// Cauchy convolution of the indicator of admissible residues.
inline std::vector<Integer> count_table_bruteforce(const Factored& r, unsigned s, unsigned k) {
  detail::check_congruence_args(s, k, 0);
  const Integer modulus = power(r, s);
  const Integer work = k * modulus * modulus;
  if (work > kBruteForceWorkLimit) {
    throw CapacityError("brute-force count needs k*(r^s)^2 <= " +
                        std::to_string(kBruteForceWorkLimit) + ", got " + work.get_str());
  }
  const std::uint64_t big_n = to_u64(modulus);
  std::vector<std::uint64_t> admissible;
  for (std::uint64_t x = 1; x <= big_n; ++x) {
    if (is_generalized_coprime(x, r, s)) admissible.push_back(x % big_n);
  }
  // counts[i] is the number of tuples summing to i (mod r^s)
  std::vector<Integer> counts(big_n, Integer(0));
  counts[0] = 1;
  for (unsigned step = 0; step < k; ++step) {
    std::vector<Integer> next(big_n, Integer(0));
    for (std::uint64_t i = 0; i < big_n; ++i) {
      if (counts[i] == 0) continue;
      for (std::uint64_t x : admissible) next[(i + x) % big_n] += counts[i];
    }
    counts = std::move(next);
  }
  std::vector<Integer> out(big_n);
  for (std::uint64_t n = 1; n <= big_n; ++n) out[n - 1] = counts[n % big_n];
  return out;
}

inline Integer count_bruteforce(const Factored& r, unsigned s, unsigned k, const Integer& n) {
  detail::check_congruence_args(s, k, n);
  const auto table = count_table_bruteforce(r, s, k);
  const std::uint64_t residue = to_u64(n % power(r, s));
  return table[residue == 0 ? table.size() - 1 : residue - 1];
}

inline Integer count_bruteforce(const CongruenceQuery& q) {
  return count_bruteforce(q.r, q.s, q.k, q.n);
}

/// Number of x in [1, r^s] with (x, r^s)_s = 1, by direct enumeration.
inline std::uint64_t admissible_residue_count(const Factored& r, unsigned s) {
  const std::uint64_t big_n = even_domain(r, s)->period();
  std::uint64_t count = 0;
  for (std::uint64_t x = 1; x <= big_n; ++x) count += is_generalized_coprime(x, r, s);
  return count;
}

}  // namespace rseven
