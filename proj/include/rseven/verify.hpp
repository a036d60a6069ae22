#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "rseven/congruence.hpp"
#include "rseven/even_algebra.hpp"
#include "rseven/holder.hpp"
#include "rseven/ramanujan.hpp"
#include "rseven/sampling.hpp"
#include "rseven/serialize.hpp"

// Exhaustive identity sweeps behind `rseven verify`.

namespace rseven {

struct VerifyOptions {
  unsigned r_max = 24;
  unsigned s_max = 2;
  std::uint64_t seed = 1;
  /// Random samples drawn per (r, s) by the randomized suites.
  unsigned samples = 3;
  bool inject_transform_fault = false;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t checks_passed = 0;
  std::uint64_t checks_failed = 0;
  std::uint64_t skipped = 0;
  std::optional<std::string> counterexample;
};

struct RunReport {
  std::string command;
  json parameters = json::object();
  std::vector<SuiteResult> results;
  std::uint64_t checks_passed = 0;
  std::uint64_t checks_failed = 0;
  double elapsed_ms = 0;

  std::optional<std::string> first_counterexample() const {
    for (const auto& r : results) {
      if (r.counterexample) return r.suite + ": " + *r.counterexample;
    }
    return std::nullopt;
  }

  json to_json() const {
    json suites = json::array();
    for (const auto& r : results) {
      suites.push_back({{"suite", r.suite},
                        {"checks_passed", r.checks_passed},
                        {"checks_failed", r.checks_failed},
                        {"skipped", r.skipped},
                        {"counterexample", r.counterexample ? json(*r.counterexample) : json()}});
    }
    auto first = first_counterexample();
    return {{"command", command},
            {"parameters", parameters},
            {"results", std::move(suites)},
            {"checks_passed", checks_passed},
            {"checks_failed", checks_failed},
            {"elapsed_ms", elapsed_ms},
            {"counterexample", first ? json(*first) : json()}};
  }
};

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {
      "involution", "parseval", "orthogonality", "divisor-sum", "alternating", "convolution",
      "inversion", "multiplicativity", "holder", "congruence"};
  return names;
}

namespace detail {

class CheckLog {
 public:
  explicit CheckLog(std::string suite) { result_.suite = std::move(suite); }

  template <class Describe>
  bool check(bool ok, Describe&& describe) {
    if (ok) {
      ++result_.checks_passed;
    } else {
      ++result_.checks_failed;
      if (!result_.counterexample) result_.counterexample = describe();
    }
    return ok;
  }

  void skip() { ++result_.skipped; }
  SuiteResult finish() { return std::move(result_); }

 private:
  SuiteResult result_;
};

inline std::string at(std::uint64_t r, unsigned s) {
  return "r=" + std::to_string(r) + " s=" + std::to_string(s);
}

inline std::string at(std::uint64_t r, unsigned s, std::uint64_t n) {
  return at(r, s) + " n=" + std::to_string(n);
}

/// Calls body(r, s) for r in 1..r_max, s in 1..s_max whose period fits `limit`.
template <class Body>
void sweep(const VerifyOptions& opt, CheckLog& log, std::uint64_t limit, Body&& body) {
  for (unsigned s = 1; s <= opt.s_max; ++s) {
    for (unsigned r = 1; r <= opt.r_max; ++r) {
      if (pow(r, s) > limit) {
        log.skip();
        continue;
      }
      body(factor(r), s);
    }
  }
}

inline SuiteResult suite_involution(const VerifyOptions& opt, std::mt19937_64& rng) {
  CheckLog log("involution");
  sweep(opt, log, ~std::uint64_t{0}, [&](const Factored& r, unsigned s) {
    const Rational scale(power(r, s));
    for (unsigned i = 0; i < opt.samples; ++i) {
      const EvenFunction f = random_even_function(r, s, rng);
      log.check(as_function(dft(as_function(dft(f)))) == scale * f,
                [&] { return "dft(dft(f)) != r^s f at " + at(r.value(), s); });
    }
    log.check(as_function(dft(rho(r, s))) == crs_function(r, s),
              [&] { return "dft(rho) != c at " + at(r.value(), s); });
    log.check(idft(as_spectrum(crs_function(r, s))) == rho(r, s),
              [&] { return "idft(c) != rho at " + at(r.value(), s); });
  });
  return log.finish();
}

inline SuiteResult suite_parseval(const VerifyOptions& opt, std::mt19937_64& rng) {
  CheckLog log("parseval");
  sweep(opt, log, kPeriodLimit, [&](const Factored& r, unsigned s) {
    for (unsigned i = 0; i < opt.samples; ++i) {
      log.check(parseval_check(random_even_function(r, s, rng)),
                [&] { return "Parseval fails for a random f at " + at(r.value(), s); });
    }
    log.check(crs_square_sum(r, s) == crs_square_sum_closed_form(r, s),
              [&] { return "sum c^2 != r^s J_s(r) at " + at(r.value(), s); });
  });
  return log.finish();
}

inline SuiteResult suite_orthogonality(const VerifyOptions& opt) {
  CheckLog log("orthogonality");
  sweep(opt, log, kPeriodLimit, [&](const Factored& r, unsigned s) {
    const std::uint64_t big_n = to_u64(power(r, s));
    for (std::uint64_t n = 1; n <= big_n; ++n) {
      log.check(orthogonality_check(r, s, to_integer(n)),
                [&] { return "orthogonality fails at " + at(r.value(), s, n); });
    }
  });
  return log.finish();
}

inline SuiteResult suite_divisor_sum(const VerifyOptions& opt) {
  CheckLog log("divisor-sum");
  sweep(opt, log, kPeriodLimit, [&](const Factored& r, unsigned s) {
    const std::uint64_t big_n = to_u64(power(r, s));
    for (std::uint64_t n = 1; n <= big_n; ++n) {
      log.check(crs_divisor_sum_check(r, s, to_integer(n)),
                [&] { return "sum_{d|r} c_{d,s}(n) wrong at " + at(r.value(), s, n); });
    }
    log.check(jordan_divisor_sum_check(r, s),
              [&] { return "sum J_s(d) != r^s at " + at(r.value(), s); });
  });
  return log.finish();
}

inline SuiteResult suite_alternating(const VerifyOptions& opt) {
  CheckLog log("alternating");
  sweep(opt, log, kPeriodLimit, [&](const Factored& r, unsigned s) {
    if (r.value() % 2 != 0) return;
    const std::uint64_t big_n = to_u64(power(r, s));
    for (std::uint64_t n = 1; n <= big_n; ++n) {
      const Integer nn = to_integer(n);
      log.check(alternating_sum(r, s, nn) == alternating_sum_closed_form(r, s, nn),
                [&] { return "alternating sum != closed form at " + at(r.value(), s, n); });
      if (s == 1) {
        log.check(alternating_sum_check(r, s, nn),
                  [&] { return "alternating-sum identity fails at " + at(r.value(), s, n); });
      }
    }
  });
  return log.finish();
}

inline SuiteResult suite_convolution(const VerifyOptions& opt, std::mt19937_64& rng) {
  CheckLog log("convolution");
  sweep(opt, log, 2000, [&](const Factored& r, unsigned s) {
    const EvenFunction f = random_even_function(r, s, rng);
    const EvenFunction g = random_even_function(r, s, rng);
    const EvenFunction fg = cauchy_convolve(f, g);
    log.check(expand_period(fg) == cauchy_convolve_direct(f, g),
              [&] { return "spectral and direct convolution differ at " + at(r.value(), s); });
    log.check(dft(fg) == pointwise_product(dft(f), dft(g)),
              [&] { return "dft(f (x) g) != dft(f) dft(g) at " + at(r.value(), s); });
    const Rational scale(power(r, s));
    log.check(alpha_from_spectrum(dft(fg)) ==
                  scale * pointwise_product(alpha_from_spectrum(dft(f)),
                                            alpha_from_spectrum(dft(g))),
              [&] { return "alpha(f (x) g) != r^s alpha(f) alpha(g) at " + at(r.value(), s); });
  });
  return log.finish();
}

inline SuiteResult suite_inversion(const VerifyOptions& opt, std::mt19937_64& rng) {
  CheckLog log("inversion");
  sweep(opt, log, kPeriodLimit, [&](const Factored& r, unsigned s) {
    const AlphaCoefficients g = random_table<AlphaTag>(r, s, rng);
    const EvenFunction f = synthesize(g);
    const std::uint64_t big_n = to_u64(power(r, s));
    for (std::uint64_t n = 1; n <= big_n; ++n) {
      const Integer nn = to_integer(n);
      const Factored m = inversion_index(r, s, nn);
      log.check(invert(f, nn) == g.at_divisor(m.value()),
                [&] { return "inversion formula fails at " + at(r.value(), s, n); });
      log.check(reconstruct(g, nn) == evaluate(f, nn),
                [&] { return "reconstruction fails at " + at(r.value(), s, n); });
    }
    log.check(alpha_from_spectrum(dft(f)) == g,
              [&] { return "McCarthy coefficients not recovered at " + at(r.value(), s); });
    if (big_n <= 2000) {
      log.check(alpha_bruteforce(f) == g,
                [&] { return "brute-force alpha disagrees at " + at(r.value(), s); });
    }
  });
  return log.finish();
}

inline SuiteResult suite_multiplicativity(const VerifyOptions& opt, std::mt19937_64& rng) {
  CheckLog log("multiplicativity");
  constexpr std::uint64_t kArgMax = 12;
  for (unsigned s = 1; s <= opt.s_max; ++s) {
    const CompletelyEvenSequence seq{
        random_strongly_multiplicative(rng, s, std::uint64_t{opt.r_max} * opt.r_max), s};
    for (std::uint64_t q = 1; q <= opt.r_max; ++q) {
      for (std::uint64_t r = 1; r <= opt.r_max; ++r) {
        if (std::gcd(q, r) != 1) continue;
        const Factored fq = factor(q), fr = factor(r), fqr = factor(q * r);
        const EvenFunction eq = realize(seq, fq), er = realize(seq, fr), eqr = realize(seq, fqr);
        const Spectrum sq = dft(eq), sr = dft(er), sqr = dft(eqr);
        for (std::uint64_t n = 1; n <= kArgMax; ++n) {
          const Integer nn = to_integer(n);
          log.check(evaluate(sqr, nn) == evaluate(sq, nn) * evaluate(sr, nn), [&] {
            return "spectrum not multiplicative in r at q=" + std::to_string(q) + " " +
                   at(r, s, n);
          });
          log.check(crs_divisor_formula(fqr, s, nn) ==
                        crs_divisor_formula(fq, s, nn) * crs_divisor_formula(fr, s, nn),
                    [&] { return "c not multiplicative in r at q=" + std::to_string(q) + " " +
                                 at(r, s, n); });
          if (std::gcd(n, q) != 1) continue;
          for (std::uint64_t m = 1; m <= kArgMax; ++m) {
            if (std::gcd(m, n) != 1 || std::gcd(m, r) != 1) continue;
            log.check(evaluate(eqr, to_integer(m * n)) ==
                          evaluate(eq, to_integer(m)) * evaluate(er, nn),
                      [&] { return "f_{qr}(mn) != f_q(m) f_r(n) at q=" + std::to_string(q) +
                                   " m=" + std::to_string(m) + " " + at(r, s, n); });
          }
        }
      }
    }
    for (std::uint64_t r = 1; r <= opt.r_max; ++r) {
      const Spectrum sr = dft(realize(seq, factor(r)));
      const Rational& at_one = evaluate(sr, 1);
      for (std::uint64_t m = 1; m <= kArgMax; ++m) {
        for (std::uint64_t n = m; n <= kArgMax; ++n) {
          if (std::gcd(m, n) != 1) continue;
          log.check(evaluate(sr, to_integer(m)) * evaluate(sr, to_integer(n)) ==
                        at_one * evaluate(sr, to_integer(m * n)),
                    [&] { return "quasi-multiplicativity fails at m=" + std::to_string(m) +
                                 " " + at(r, s, n); });
        }
      }
    }
  }
  return log.finish();
}

inline SuiteResult suite_holder(const VerifyOptions& opt, std::mt19937_64& rng) {
  CheckLog log("holder");
  sweep(opt, log, kPeriodLimit, [&](const Factored& r, unsigned s) {
    std::vector<CompletelyEvenSequence> seqs{{StronglyMultiplicativeFn::epsilon(), s}};
    for (unsigned i = 0; i < opt.samples; ++i) {
      seqs.push_back({random_strongly_multiplicative(rng, s, opt.r_max), s});
    }
    const std::uint64_t big_n = to_u64(power(r, s));
    for (const auto& seq : seqs) {
      const Spectrum spectrum = dft(realize(seq, r));
      for (std::uint64_t n = 1; n <= big_n; ++n) {
        const Integer nn = to_integer(n);
        log.check(holder_dft(seq, r, nn) == evaluate(spectrum, nn),
                  [&] { return "Holder identity fails at " + at(r.value(), s, n); });
      }
    }
    log.check(crs_holder(r, s, power(r, s)) == jordan_totient(r, s),
              [&] { return "c_{r,s}(r^s) != J_s(r) at " + at(r.value(), s); });
  });
  return log.finish();
}

inline SuiteResult suite_congruence(const VerifyOptions& opt) {
  CheckLog log("congruence");
  constexpr unsigned kMaxTerms = 4;
  sweep(opt, log, kPeriodLimit, [&](const Factored& r, unsigned s) {
    const Integer modulus = power(r, s);
    const std::uint64_t big_n = to_u64(modulus);
    const Integer admissible = to_integer(admissible_residue_count(r, s));
    for (unsigned k = 1; k <= kMaxTerms; ++k) {
      if (k * modulus * modulus > kBruteForceWorkLimit) {
        log.skip();
        continue;
      }
      const auto table = count_table_bruteforce(r, s, k);
      Integer total = 0;
      for (std::uint64_t n = 1; n <= big_n; ++n) {
        const Integer nn = to_integer(n);
        const Integer spectral = count_spectral(r, s, k, nn);
        total += spectral;
        log.check(spectral == table[n - 1], [&] {
          return "spectral count != brute force at k=" + std::to_string(k) + " " +
                 at(r.value(), s, n);
        });
        if (k == 1) {
          log.check(spectral == (generalized_gcd_root(nn, r, s).is_one() ? 1 : 0), [&] {
            return "N(n,1) != rho(n) at " + at(r.value(), s, n);
          });
        }
      }
      log.check(total == pow(admissible, k), [&] {
        return "sum_n N(n,k) != (admissible residues)^k at k=" + std::to_string(k) + " " +
               at(r.value(), s);
      });
    }
  });
  return log.finish();
}

class ScopedTransformFault {
 public:
  explicit ScopedTransformFault(bool enable)
      : previous_(fault_injection::transform_off_by_one.exchange(enable)) {}
  ~ScopedTransformFault() { fault_injection::transform_off_by_one.store(previous_); }
  ScopedTransformFault(const ScopedTransformFault&) = delete;
  ScopedTransformFault& operator=(const ScopedTransformFault&) = delete;

 private:
  bool previous_;
};

}  // namespace detail

inline SuiteResult run_suite(std::string_view name, const VerifyOptions& opt,
                             std::mt19937_64& rng) {
  if (name == "involution") return detail::suite_involution(opt, rng);
  if (name == "parseval") return detail::suite_parseval(opt, rng);
  if (name == "orthogonality") return detail::suite_orthogonality(opt);
  if (name == "divisor-sum") return detail::suite_divisor_sum(opt);
  if (name == "alternating") return detail::suite_alternating(opt);
  if (name == "convolution") return detail::suite_convolution(opt, rng);
  if (name == "inversion") return detail::suite_inversion(opt, rng);
  if (name == "multiplicativity") return detail::suite_multiplicativity(opt, rng);
  if (name == "holder") return detail::suite_holder(opt, rng);
  if (name == "congruence") return detail::suite_congruence(opt);
  throw DomainError("unknown suite '" + std::string(name) + "'");
}

/// Runs one suite, or every suite for "all".
inline RunReport run_verify(std::string_view suite, const VerifyOptions& opt) {
  if (suite != "all") {
    const auto& names = verify_suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
      throw DomainError("unknown suite '" + std::string(suite) + "'");
    }
  }
  if (opt.r_max == 0 || opt.s_max == 0) throw DomainError("--r-max and --s-max must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  detail::ScopedTransformFault fault(opt.inject_transform_fault);
  std::mt19937_64 rng(opt.seed);
  RunReport report;
  report.command = "verify";
  report.parameters = {{"suite", std::string(suite)},
                       {"r_max", opt.r_max},
                       {"s_max", opt.s_max},
                       {"seed", opt.seed}};
  std::vector<std::string> names;
  if (suite == "all") {
    names = verify_suite_names();
  } else {
    names.emplace_back(suite);
  }
  for (const auto& name : names) {
    report.results.push_back(run_suite(name, opt, rng));
    report.checks_passed += report.results.back().checks_passed;
    report.checks_failed += report.results.back().checks_failed;
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

}  // namespace rseven
