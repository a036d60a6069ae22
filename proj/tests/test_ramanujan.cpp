#include <gtest/gtest.h>

#include <numeric>

#include "rseven/ramanujan.hpp"
#include "support/oracles.hpp"

using namespace rseven;

TEST(CrsDivisorFormula, Examples) {
  EXPECT_EQ(crs_divisor_formula(factor(1), 1, 0), 1);
  EXPECT_EQ(crs_divisor_formula(factor(2), 2, 4), 3);
  EXPECT_EQ(crs_divisor_formula(factor(2), 2, 1), -1);
}

TEST(CrsExponentialOracle, Examples) {
  EXPECT_EQ(crs_exponential_oracle(factor(2), 1, 1), -1);
  EXPECT_EQ(crs_exponential_oracle(factor(3), 1, 3), 2);
  EXPECT_EQ(crs_exponential_oracle(factor(2), 2, 4), 3);
}

TEST(CrsExponentialOracle, CapacityAndTolerance) {
  EXPECT_THROW(crs_exponential_oracle(factor(1001), 2, 1), CapacityError);
  // A tolerance below double precision must trip the residual check.
  EXPECT_THROW(crs_exponential_oracle(factor(97), 2, 5, 1e-30), OracleInconsistency);
}

TEST(CrsHolder, Examples) {
  EXPECT_EQ(crs_holder(factor(4), 1, 1), 0);
  EXPECT_EQ(crs_holder(factor(4), 1, 4), 2);
  EXPECT_EQ(crs_holder(factor(2), 2, 4), 3);
}

TEST(CrsPrimePower, Examples) {
  EXPECT_EQ(crs_prime_power(2, 1, 1, 2), 1);
  EXPECT_EQ(crs_prime_power(2, 1, 1, 1), -1);
  EXPECT_EQ(crs_prime_power(3, 2, 1, 3), -3);
  EXPECT_THROW(crs_prime_power(4, 1, 1, 1), DomainError);
  EXPECT_THROW(crs_prime_power(2, 0, 1, 1), DomainError);
}

TEST(CrsDivisorSum, Examples) {
  EXPECT_TRUE(crs_divisor_sum_check(factor(6), 1, 6));
  EXPECT_EQ(crs_divisor_sum(factor(6), 1, 6), 6);
  EXPECT_TRUE(crs_divisor_sum_check(factor(6), 1, 1));
  EXPECT_EQ(crs_divisor_sum(factor(6), 1, 1), 0);
  // r^s = 4 divides 4: c_{1,2}(4) + c_{2,2}(4) = 1 + 3 = 4
  EXPECT_TRUE(crs_divisor_sum_check(factor(2), 2, 4));
  EXPECT_EQ(crs_divisor_sum(factor(2), 2, 4), 4);
}

TEST(Crs, RejectsBadArguments) {
  EXPECT_THROW(crs_divisor_formula(factor(3), 0, 1), DomainError);
  EXPECT_THROW(crs_holder(factor(3), 1, -1), DomainError);
  EXPECT_THROW(parse_crs_method("fast"), DomainError);
}

// Three-way agreement on a smaller sweep than the acceptance run.
TEST(Crs, ThreeMethodsAgree) {
  for (unsigned s = 1; s <= 3; ++s) {
    for (std::uint64_t r = 1; r <= 20 && oracle::ipow(r, s) <= 4000; ++r) {
      const Factored fr = factor(r);
      const auto fft = oracle::crs_table_fft(r, s);
      for (std::uint64_t n = 1; n <= oracle::ipow(r, s); ++n) {
        const Integer d = crs_divisor_formula(fr, s, n);
        ASSERT_EQ(d, crs_holder(fr, s, n)) << r << ' ' << s << ' ' << n;
        ASSERT_NEAR(fft[n - 1].real(), d.get_d(), 1e-6);
        ASSERT_NEAR(fft[n - 1].imag(), 0.0, 1e-6);
        if (r <= 8) ASSERT_EQ(d, crs_exponential_oracle(fr, s, n));
      }
    }
  }
}

TEST(Crs, PeriodicAndEven) {
  for (unsigned s = 1; s <= 3; ++s) {
    for (std::uint64_t r = 1; r <= 15; ++r) {
      const Factored fr = factor(r);
      const Integer modulus = power(fr, s);
      for (std::uint64_t n = 1; n <= 300; ++n) {
        const Integer c = crs_divisor_formula(fr, s, n);
        ASSERT_EQ(c, crs_divisor_formula(fr, s, n + modulus));
        ASSERT_EQ(c, crs_divisor_formula(fr, s, generalized_gcd(n, modulus, s)));
      }
      ASSERT_EQ(crs_divisor_formula(fr, s, 0), crs_divisor_formula(fr, s, modulus));
    }
  }
}

TEST(Crs, MultiplicativeInR) {
  for (unsigned s = 1; s <= 2; ++s) {
    for (std::uint64_t q = 1; q <= 30; ++q) {
      for (std::uint64_t r = 1; r <= 30; ++r) {
        if (std::gcd(q, r) != 1) continue;
        for (std::uint64_t n = 0; n <= 40; ++n) {
          ASSERT_EQ(crs_divisor_formula(factor(q * r), s, n),
                    crs_divisor_formula(factor(q), s, n) * crs_divisor_formula(factor(r), s, n));
        }
      }
    }
  }
}

TEST(Crs, AtModulusIsJordanTotient) {
  for (unsigned s = 1; s <= 3; ++s) {
    for (std::uint64_t r = 1; r <= 40; ++r) {
      const Factored fr = factor(r);
      EXPECT_EQ(crs_divisor_formula(fr, s, power(fr, s)), jordan_totient(fr, s));
    }
  }
}

TEST(Crs, PrimePowerClosedFormMatches) {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (unsigned lambda = 1; lambda <= 3; ++lambda) {
      for (unsigned s = 1; s <= 2; ++s) {
        const Factored r = Factored::from_factors({{p, lambda}});
        for (std::uint64_t n = 0; n <= 400; ++n) {
          ASSERT_EQ(crs_prime_power(p, lambda, s, n), crs_divisor_formula(r, s, n));
        }
      }
    }
  }
}

TEST(Crs, HandlesLargeArguments) {
  // n far beyond 64 bits reduces through valuations only.
  const Integer huge = pow(Integer(2), 200) * 3;
  EXPECT_EQ(crs_divisor_formula(factor(12), 2, huge), crs_divisor_formula(factor(12), 2, 48));
  EXPECT_EQ(crs_holder(factor(12), 2, huge), crs_divisor_formula(factor(12), 2, 48));
}
