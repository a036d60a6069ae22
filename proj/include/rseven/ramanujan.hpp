#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>

#include "rseven/arith_core.hpp"

namespace rseven {

/// Modulus bound for the floating exponential-sum oracle.
inline constexpr std::uint64_t kOracleModulusLimit = 1'000'000;
inline constexpr double kOracleTolerance = 1e-6;

enum class CrsMethod { divisor, holder, oracle };

inline std::string_view to_string(CrsMethod m) {
  switch (m) {
    case CrsMethod::divisor: return "divisor";
    case CrsMethod::holder: return "holder";
    case CrsMethod::oracle: return "oracle";
  }
  return "?";
}

inline CrsMethod parse_crs_method(std::string_view name) {
  if (name == "divisor") return CrsMethod::divisor;
  if (name == "holder") return CrsMethod::holder;
  if (name == "oracle") return CrsMethod::oracle;
  throw DomainError("unknown method '" + std::string(name) + "'");
}

struct CrsQuery {
  Factored r;
  unsigned s = 1;
  Integer n;
};

namespace detail {

inline void check_crs_args(unsigned s, const Integer& n) {
  if (s == 0) throw DomainError("s must be >= 1");
  if (sgn(n) < 0) throw DomainError("n must be nonnegative, got " + n.get_str());
}

}  // namespace detail

/// c_{r,s}(n) = sum of d^s mu(r/d) over the divisors d of m', where
/// m'^s = (n, r^s)_s. Every such d divides r, so mu(r/d) is well formed.
inline Integer crs_divisor_formula(const Factored& r, unsigned s, const Integer& n) {
  detail::check_crs_args(s, n);
  const Factored root = generalized_gcd_root(n, r, s);
  Integer sum = 0;
  for (const auto& d : divisors(root)) {
    int mu = mobius(quotient(r, d));
    if (mu != 0) sum += mu * power(d, s);
  }
  return sum;
}

/// c_{r,s}(n) = J_s(r) mu(m) / J_s(m) with m^s = r^s / (n, r^s)_s.
inline Integer crs_holder(const Factored& r, unsigned s, const Integer& n) {
  detail::check_crs_args(s, n);
  const Factored m = quotient(r, generalized_gcd_root(n, r, s));
  const Integer num = jordan_totient(r, s) * mobius(m);
  return exact_div(num, jordan_totient(m, s), "crs_holder");
}

/// True when (j, r^s)_s = 1, i.e. no p^s with p | r divides j.
inline bool is_generalized_coprime(std::uint64_t j, const Factored& r, unsigned s) {
  for (const auto& pp : r.factors()) {
    if (j % detail::checked_pow(pp.prime, s) == 0) return false;
  }
  return true;
}

/// Direct evaluation of the defining exponential sum in floating point.
/// Throws OracleInconsistency if the result is not an integer to within
/// `tolerance`.
inline Integer crs_exponential_oracle(const Factored& r, unsigned s, const Integer& n,
                                      double tolerance = kOracleTolerance) {
  detail::check_crs_args(s, n);
  const Integer modulus = power(r, s);
  if (modulus > kOracleModulusLimit) {
    throw CapacityError("exponential oracle limited to r^s <= " +
                        std::to_string(kOracleModulusLimit) + ", got " +
                        modulus.get_str());
  }
  const std::uint64_t big_n = to_u64(modulus);
  const Integer reduced_n = n % modulus;
  const std::uint64_t step = to_u64(reduced_n);
  std::complex<double> sum = 0.0;
  std::uint64_t phase = 0;
  for (std::uint64_t j = 1; j <= big_n; ++j) {
    phase += step;
    if (phase >= big_n) phase -= big_n;
    if (!is_generalized_coprime(j, r, s)) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(phase) /
                         static_cast<double>(big_n);
    sum += std::polar(1.0, angle);
  }
  const double rounded = std::round(sum.real());
  if (std::abs(sum.imag()) >= tolerance || std::abs(sum.real() - rounded) >= tolerance) {
    throw OracleInconsistency("exponential oracle for c_{" + std::to_string(r.value()) +
                              "," + std::to_string(s) + "}(" + n.get_str() +
                              ") is not integral: " + std::to_string(sum.real()) +
                              (sum.imag() < 0 ? " - " : " + ") +
                              std::to_string(std::abs(sum.imag())) + "i");
  }
  return Integer(static_cast<long>(rounded));
}

inline Integer crs(const Factored& r, unsigned s, const Integer& n,
                   CrsMethod method = CrsMethod::divisor) {
  switch (method) {
    case CrsMethod::divisor: return crs_divisor_formula(r, s, n);
    case CrsMethod::holder: return crs_holder(r, s, n);
    case CrsMethod::oracle: return crs_exponential_oracle(r, s, n);
  }
  throw InternalError("unhandled CrsMethod");
}

inline Integer crs(const CrsQuery& q, CrsMethod method = CrsMethod::divisor) {
  return crs(q.r, q.s, q.n, method);
}

/// Closed form of c_{p^lambda, s}(n) for a prime p.
inline Integer crs_prime_power(std::uint64_t p, unsigned lambda, unsigned s,
                               const Integer& n) {
  detail::check_crs_args(s, n);
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (lambda == 0) throw DomainError("lambda must be >= 1");
  const Integer top = pow(p, s * lambda);
  const Integer below = pow(p, s * (lambda - 1));
  if (divides(top, n)) return top - below;
  if (divides(below, n)) return -below;
  return 0;
}

inline Integer crs_divisor_sum(const Factored& r, unsigned s, const Integer& n) {
  Integer sum = 0;
  for (const auto& d : divisors(r)) sum += crs_divisor_formula(d, s, n);
  return sum;
}

/// sum_{d | r} c_{d,s}(n) equals r^s when r^s | n and 0 otherwise.
inline bool crs_divisor_sum_check(const Factored& r, unsigned s, const Integer& n) {
  const Integer modulus = power(r, s);
  const Integer expected = divides(modulus, n) ? modulus : Integer(0);
  return crs_divisor_sum(r, s, n) == expected;
}

}  // namespace rseven
