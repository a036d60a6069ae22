#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rseven/arith_core.hpp"
#include "rseven/ramanujan.hpp"

namespace rseven {

/// Full-period computations (brute-force oracles, Parseval left side) are
/// limited to r^s at most this large.
inline constexpr std::uint64_t kPeriodLimit = 100'000;

namespace fault_injection {
/// When set, newly built transform matrices carry an off-by-one error in their
/// first entry. Used to show that the identity suites catch a broken transform.
inline std::atomic<bool> transform_off_by_one{false};
}  // namespace fault_injection

/// Shared structure of B_{r,s}: the divisors of r, the modulus r^s and the
/// tau(r) x tau(r) transform matrix T[e][d] = c_{r/d,s}(e^s).
class EvenDomain {
 public:
  EvenDomain(Factored r, unsigned s, bool corrupt = false)
      : r_(std::move(r)), s_(s), modulus_(power(r_, s)), divisors_(rseven::divisors(r_)) {
    if (s_ == 0) throw DomainError("s must be >= 1");
    const std::size_t t = divisors_.size();
    for (std::size_t i = 0; i < t; ++i) index_.emplace(divisors_[i].value(), i);
    transform_.reserve(t * t);
    for (std::size_t row = 0; row < t; ++row) {
      const Integer at = power(divisors_[row], s_);
      for (std::size_t col = 0; col < t; ++col) {
        transform_.push_back(crs_divisor_formula(quotient(r_, divisors_[col]), s_, at));
      }
    }
    if (corrupt) transform_[0] += 1;
  }

  const Factored& r() const { return r_; }
  unsigned s() const { return s_; }
  const Integer& modulus() const { return modulus_; }
  std::span<const Factored> divisors() const { return divisors_; }
  std::size_t size() const { return divisors_.size(); }

  std::size_t index_of(std::uint64_t d) const {
    auto it = index_.find(d);
    if (it == index_.end()) {
      throw DomainError(std::to_string(d) + " is not a divisor of " +
                        std::to_string(r_.value()));
    }
    return it->second;
  }

  /// Index of the divisor m' with m'^s = (n, r^s)_s.
  std::size_t class_index(const Integer& n) const {
    return index_of(generalized_gcd_root(n, r_, s_).value());
  }

  const Integer& transform(std::size_t row, std::size_t col) const {
    return transform_[row * divisors_.size() + col];
  }

  /// r^s as a machine integer, bounded by `limit` for full-period work.
  std::uint64_t period(std::uint64_t limit = kPeriodLimit) const {
    if (modulus_ > limit) {
      throw CapacityError("full-period computation limited to r^s <= " +
                          std::to_string(limit) + ", got " + modulus_.get_str());
    }
    return to_u64(modulus_);
  }

  /// class_index(n) for n = 1..r^s, stored at position n - 1.
  std::vector<std::size_t> period_classes(std::uint64_t limit = kPeriodLimit) const {
    const std::uint64_t big_n = period(limit);
    std::vector<std::size_t> out(big_n);
    for (std::uint64_t n = 1; n <= big_n; ++n) out[n - 1] = class_index(to_integer(n));
    return out;
  }

  friend bool operator==(const EvenDomain& a, const EvenDomain& b) {
    return a.r_ == b.r_ && a.s_ == b.s_;
  }

 private:
  Factored r_;
  unsigned s_;
  Integer modulus_;
  std::vector<Factored> divisors_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<Integer> transform_;
};

using DomainPtr = std::shared_ptr<const EvenDomain>;

/// Cached per (r, s); safe to call concurrently.
inline DomainPtr even_domain(const Factored& r, unsigned s) {
  static std::mutex mutex;
  static std::map<std::tuple<std::uint64_t, unsigned, bool>, DomainPtr> cache;
  const bool corrupt = fault_injection::transform_off_by_one.load();
  const auto key = std::make_tuple(r.value(), s, corrupt);
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto domain = std::make_shared<const EvenDomain>(r, s, corrupt);
  cache.emplace(key, domain);
  return domain;
}

struct FunctionTag {};
struct SpectrumTag {};
struct AlphaTag {};

/// Exact rational values indexed by the divisors d of r. For an even
/// function the entry at d is f(d^s); for a spectrum it is the transform at
/// d^s; for McCarthy coefficients it is alpha(d).
template <class Tag>
class DivisorTable {
 public:
  DivisorTable(DomainPtr domain, std::vector<Rational> values)
      : domain_(std::move(domain)), values_(std::move(values)) {
    if (values_.size() != domain_->size()) {
      throw DomainError("expected " + std::to_string(domain_->size()) +
                        " values (one per divisor of " +
                        std::to_string(domain_->r().value()) + "), got " +
                        std::to_string(values_.size()));
    }
  }

  const DomainPtr& domain() const { return domain_; }
  const Factored& r() const { return domain_->r(); }
  unsigned s() const { return domain_->s(); }
  std::size_t size() const { return values_.size(); }
  std::span<const Rational> values() const { return values_; }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  const Rational& at_divisor(std::uint64_t d) const { return values_[domain_->index_of(d)]; }

  template <class Other>
  DivisorTable<Other> retag() const {
    return DivisorTable<Other>(domain_, values_);
  }

  friend bool operator==(const DivisorTable& a, const DivisorTable& b) {
    return *a.domain_ == *b.domain_ && a.values_ == b.values_;
  }

 private:
  DomainPtr domain_;
  std::vector<Rational> values_;
};

using EvenFunction = DivisorTable<FunctionTag>;
using Spectrum = DivisorTable<SpectrumTag>;
using AlphaCoefficients = DivisorTable<AlphaTag>;

/// Values of a function over one period, position n - 1 holding n.
using PeriodTable = std::vector<Rational>;

template <class Tag>
void require_same_domain(const DivisorTable<Tag>& a, const DivisorTable<Tag>& b) {
  if (!(*a.domain() == *b.domain())) {
    throw DomainError("mismatched parameters: (r,s) = (" +
                      std::to_string(a.r().value()) + "," + std::to_string(a.s()) +
                      ") vs (" + std::to_string(b.r().value()) + "," +
                      std::to_string(b.s()) + ")");
  }
}

template <class Tag>
DivisorTable<Tag> operator+(const DivisorTable<Tag>& a, const DivisorTable<Tag>& b) {
  require_same_domain(a, b);
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return {a.domain(), std::move(out)};
}

template <class Tag>
DivisorTable<Tag> operator*(const Rational& k, const DivisorTable<Tag>& a) {
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = k * a[i];
  return {a.domain(), std::move(out)};
}

template <class Tag>
DivisorTable<Tag> pointwise_product(const DivisorTable<Tag>& a, const DivisorTable<Tag>& b) {
  require_same_domain(a, b);
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return {a.domain(), std::move(out)};
}

// Construction --------------------------------------------------------------

inline EvenFunction make_even_function(const Factored& r, unsigned s,
                                       std::vector<Rational> values) {
  return {even_domain(r, s), std::move(values)};
}

inline EvenFunction constant_function(const Factored& r, unsigned s, const Rational& v) {
  auto domain = even_domain(r, s);
  return {domain, std::vector<Rational>(domain->size(), v)};
}

inline EvenFunction zero_function(const Factored& r, unsigned s) {
  return constant_function(r, s, 0);
}

/// g_d: indicator of (n, r^s)_s = d^s.
inline EvenFunction basis_function(const Factored& r, unsigned s, std::uint64_t d) {
  auto domain = even_domain(r, s);
  std::vector<Rational> values(domain->size(), Rational(0));
  values[domain->index_of(d)] = 1;
  return {domain, std::move(values)};
}

/// rho_{r,s}: indicator of (n, r^s)_s = 1.
inline EvenFunction rho(const Factored& r, unsigned s) { return basis_function(r, s, 1); }

/// c_{r,s} viewed as an element of B_{r,s}.
inline EvenFunction crs_function(const Factored& r, unsigned s) {
  auto domain = even_domain(r, s);
  std::vector<Rational> values;
  values.reserve(domain->size());
  for (const auto& d : domain->divisors()) {
    values.emplace_back(crs_divisor_formula(r, s, power(d, s)));
  }
  return {domain, std::move(values)};
}

/// Compresses a full-period table to its divisor representation. Throws
/// DomainError if the table is not (r,s)-even.
inline EvenFunction from_period_table(const Factored& r, unsigned s, const PeriodTable& table) {
  auto domain = even_domain(r, s);
  const std::uint64_t big_n = domain->period();
  if (table.size() != big_n) {
    throw DomainError("period table has " + std::to_string(table.size()) +
                      " entries, expected " + std::to_string(big_n));
  }
  std::vector<Rational> values(domain->size());
  std::vector<bool> seen(domain->size(), false);
  for (std::uint64_t n = 1; n <= big_n; ++n) {
    const std::size_t k = domain->class_index(to_integer(n));
    if (!seen[k]) {
      values[k] = table[n - 1];
      seen[k] = true;
    } else if (values[k] != table[n - 1]) {
      throw DomainError("table is not (r,s)-even: value at n=" + std::to_string(n) +
                        " differs from its class representative");
    }
  }
  return {domain, std::move(values)};
}

// Evaluation and transforms -------------------------------------------------

/// f(n) = f((n, r^s)_s). n = 0 is the same residue as r^s.
template <class Tag>
const Rational& evaluate(const DivisorTable<Tag>& f, const Integer& n) {
  if (sgn(n) < 0) throw DomainError("n must be nonnegative");
  return f[f.domain()->class_index(n)];
}

template <class Tag>
PeriodTable expand_period(const DivisorTable<Tag>& f) {
  const auto classes = f.domain()->period_classes();
  PeriodTable out;
  out.reserve(classes.size());
  for (std::size_t k : classes) out.push_back(f[k]);
  return out;
}

namespace detail {

template <class In>
std::vector<Rational> apply_transform(const DivisorTable<In>& in) {
  const auto& dom = *in.domain();
  std::vector<Rational> out(dom.size(), Rational(0));
  for (std::size_t row = 0; row < dom.size(); ++row) {
    Rational acc = 0;
    for (std::size_t col = 0; col < dom.size(); ++col) {
      if (sgn(in[col]) == 0) continue;
      acc += in[col] * Rational(dom.transform(row, col));
    }
    out[row] = std::move(acc);
  }
  return out;
}

}  // namespace detail

/// f^(e^s) = sum_{d | r} f(d^s) c_{r/d,s}(e^s).
inline Spectrum dft(const EvenFunction& f) {
  return {f.domain(), detail::apply_transform(f)};
}

/// f(e^s) = r^{-s} sum_{d | r} F(d^s) c_{r/d,s}(e^s).
inline EvenFunction idft(const Spectrum& spectrum) {
  auto values = detail::apply_transform(spectrum);
  const Rational scale(Integer(1), spectrum.domain()->modulus());
  for (auto& v : values) v *= scale;
  return {spectrum.domain(), std::move(values)};
}

/// A spectrum is itself (r,s)-even.
inline EvenFunction as_function(const Spectrum& spectrum) {
  return spectrum.retag<FunctionTag>();
}
inline Spectrum as_spectrum(const EvenFunction& f) { return f.retag<SpectrumTag>(); }

// McCarthy coefficients ------------------------------------------------------

/// alpha(d) = F((r/d)^s) / r^s.
inline AlphaCoefficients alpha_from_spectrum(const Spectrum& spectrum) {
  const auto& dom = *spectrum.domain();
  const Rational scale(Integer(1), dom.modulus());
  std::vector<Rational> alpha(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const auto co = quotient(dom.r(), dom.divisors()[i]).value();
    alpha[i] = spectrum.at_divisor(co) * scale;
  }
  return {spectrum.domain(), std::move(alpha)};
}

/// alpha(d) = (r^s J_s(d))^{-1} sum_{m=1}^{r^s} f(m) c_{d,s}(m), summed over
/// the full period.
inline AlphaCoefficients alpha_bruteforce(const EvenFunction& f) {
  const auto& dom = *f.domain();
  const std::uint64_t big_n = dom.period();
  std::vector<Rational> alpha(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const Factored& d = dom.divisors()[i];
    Rational sum = 0;
    for (std::uint64_t m = 1; m <= big_n; ++m) {
      const Integer mm = to_integer(m);
      const Rational& fm = evaluate(f, mm);
      if (sgn(fm) == 0) continue;
      sum += fm * Rational(crs_divisor_formula(d, dom.s(), mm));
    }
    alpha[i] = sum / Rational(dom.modulus() * jordan_totient(d, dom.s()));
  }
  return {f.domain(), std::move(alpha)};
}

/// sum_{d | r} alpha(d) c_{d,s}(n).
inline Rational reconstruct(const AlphaCoefficients& alpha, const Integer& n) {
  const auto& dom = *alpha.domain();
  Rational sum = 0;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    if (sgn(alpha[i]) == 0) continue;
    sum += alpha[i] * Rational(crs_divisor_formula(dom.divisors()[i], dom.s(), n));
  }
  return sum;
}

/// The even function f(n) = sum_{d | r} g(d) c_{d,s}(n) for coefficients g.
inline EvenFunction synthesize(const AlphaCoefficients& coefficients) {
  const auto& dom = *coefficients.domain();
  std::vector<Rational> values;
  values.reserve(dom.size());
  for (const auto& e : dom.divisors()) {
    values.push_back(reconstruct(coefficients, power(e, dom.s())));
  }
  return {coefficients.domain(), std::move(values)};
}

/// Given f(n) = sum_{d | r} g(d) c_{d,s}(n), recovers g(m) with
/// m^s = r^s / (n, r^s)_s as r^{-s} sum_{d | r} f(r^s/d^s) c_{d,s}(n).
inline Rational invert(const EvenFunction& f, const Integer& n) {
  const auto& dom = *f.domain();
  Rational sum = 0;
  for (const auto& d : dom.divisors()) {
    const Rational& value = f.at_divisor(quotient(dom.r(), d).value());
    if (sgn(value) == 0) continue;
    sum += value * Rational(crs_divisor_formula(d, dom.s(), n));
  }
  return sum / Rational(dom.modulus());
}

/// The m with m^s = r^s / (n, r^s)_s.
inline Factored inversion_index(const Factored& r, unsigned s, const Integer& n) {
  return quotient(r, generalized_gcd_root(n, r, s));
}

// Cauchy convolution ---------------------------------------------------------

/// f (x) g computed spectrally: idft(dft(f) . dft(g)).
inline EvenFunction cauchy_convolve(const EvenFunction& f, const EvenFunction& g) {
  require_same_domain(f, g);
  return idft(pointwise_product(dft(f), dft(g)));
}

/// (f (x) g)(n) = sum_{k mod r^s} f(k) g(n - k) over the full period.
inline PeriodTable cauchy_convolve_direct(const EvenFunction& f, const EvenFunction& g) {
  require_same_domain(f, g);
  const auto classes = f.domain()->period_classes();
  const std::size_t big_n = classes.size();
  PeriodTable out(big_n, Rational(0));
  for (std::size_t n = 1; n <= big_n; ++n) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= big_n; ++k) {
      const Rational& fk = f[classes[k - 1]];
      if (sgn(fk) == 0) continue;
      std::size_t diff = (n + big_n - k) % big_n;
      if (diff == 0) diff = big_n;
      acc += fk * g[classes[diff - 1]];
    }
    out[n - 1] = std::move(acc);
  }
  return out;
}

// Identities -----------------------------------------------------------------

/// Number of n in [1, r^s] with (n, r^s)_s = d^s; equals J_s(r/d).
inline Integer class_size(const Factored& r, unsigned s, const Factored& d) {
  return jordan_totient(quotient(r, d), s);
}

/// sum_{n=1}^{r^s} |f^(n)|^2 == r^s sum_{d | r} |f(d^s)|^2 J_s(r/d), with the
/// class sizes also confirmed by counting over the period.
inline bool parseval_check(const EvenFunction& f) {
  const auto& dom = *f.domain();
  const auto classes = dom.period_classes();
  const Spectrum spectrum = dft(f);
  Rational lhs = 0;
  std::vector<std::uint64_t> counts(dom.size(), 0);
  for (std::size_t k : classes) {
    lhs += spectrum[k] * spectrum[k];
    ++counts[k];
  }
  Rational rhs = 0;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const Integer weight = class_size(dom.r(), dom.s(), dom.divisors()[i]);
    if (weight != to_integer(counts[i])) return false;
    rhs += f[i] * f[i] * Rational(weight);
  }
  rhs *= Rational(dom.modulus());
  return lhs == rhs;
}

/// sum_{n=1}^{r^s} c_{r,s}(n)^2 over the full period.
inline Integer crs_square_sum(const Factored& r, unsigned s) {
  const auto dom = even_domain(r, s);
  const std::uint64_t big_n = dom->period();
  Integer sum = 0;
  for (std::uint64_t n = 1; n <= big_n; ++n) {
    const Integer c = crs_divisor_formula(r, s, to_integer(n));
    sum += c * c;
  }
  return sum;
}

/// r^s J_s(r): the square sum of c_{r,s} predicted by Parseval applied to rho.
/// J_s(r) is also the number of n <= r^s with (n, r^s)_s = 1.
inline Integer crs_square_sum_closed_form(const Factored& r, unsigned s) {
  return power(r, s) * jordan_totient(r, s);
}

/// sum_{d | r} c_{d,s}(n) c_{r,s}((r/d)^s) == r^s [(n, r^s)_s = 1].
inline bool orthogonality_check(const Factored& r, unsigned s, const Integer& n) {
  Integer sum = 0;
  for (const auto& d : divisors(r)) {
    sum += crs_divisor_formula(d, s, n) *
           crs_divisor_formula(r, s, power(quotient(r, d), s));
  }
  const Integer expected =
      generalized_gcd_root(n, r, s).is_one() ? power(r, s) : Integer(0);
  return sum == expected;
}

namespace detail {
inline void require_even(const Factored& r) {
  if (r.exponent_of(2) == 0) {
    throw DomainError("alternating sum requires even r, got " + std::to_string(r.value()));
  }
}
}  // namespace detail

/// sum_{d | r} (-1)^{d^s} c_{r/d,s}(n), r even.
inline Integer alternating_sum(const Factored& r, unsigned s, const Integer& n) {
  detail::require_even(r);
  Integer sum = 0;
  for (const auto& d : divisors(r)) {
    const Integer c = crs_divisor_formula(quotient(r, d), s, n);
    if (d.value() % 2 == 0) {
      sum += c;
    } else {
      sum -= c;
    }
  }
  return sum;
}

/// The stated alternating-sum identity: r^s when n = r^s/2 (mod r^s), else 0.
/// It holds for s = 1 only; see alternating_sum_closed_form for general s.
inline bool alternating_sum_check(const Factored& r, unsigned s, const Integer& n) {
  const Integer modulus = power(r, s);
  const Integer half = modulus / 2;
  Integer residue = n % modulus;
  const Integer expected = residue == half ? modulus : Integer(0);
  return alternating_sum(r, s, n) == expected;
}

/// Value of the alternating sum for every s: with t = r^s / 2^s it is
/// 2t [t | n] - r^s [r^s | n]. The sum is the transform of n -> +1 if 2^s | n
/// and -1 otherwise.
inline Integer alternating_sum_closed_form(const Factored& r, unsigned s, const Integer& n) {
  detail::require_even(r);
  const Integer modulus = power(r, s);
  const Integer t = modulus / pow(2, s);
  Integer out = 0;
  if (divides(t, n)) out += 2 * t;
  if (divides(modulus, n)) out -= modulus;
  return out;
}

}  // namespace rseven
