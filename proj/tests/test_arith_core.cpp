#include <gtest/gtest.h>

#include <numeric>

#include "rseven/arith_core.hpp"
#include "support/oracles.hpp"

using namespace rseven;

namespace {

std::vector<std::uint64_t> values(const std::vector<Factored>& fs) {
  std::vector<std::uint64_t> out;
  for (const auto& f : fs) out.push_back(f.value());
  return out;
}

}  // namespace

TEST(Factor, Examples) {
  EXPECT_TRUE(factor(1).is_one());
  EXPECT_EQ(factor(1).value(), 1u);

  const Factored twelve = factor(12);
  ASSERT_EQ(twelve.factors().size(), 2u);
  EXPECT_EQ(twelve.factors()[0], (PrimePower{2, 2}));
  EXPECT_EQ(twelve.factors()[1], (PrimePower{3, 1}));

  const Factored p = factor(97);
  ASSERT_EQ(p.factors().size(), 1u);
  EXPECT_EQ(p.factors()[0], (PrimePower{97, 1}));
}

TEST(Factor, RejectsNonPositive) {
  EXPECT_THROW(factor(0), DomainError);
  EXPECT_THROW(factor(-5), DomainError);
}

TEST(Factor, CeilingIsACapacityError) {
  EXPECT_THROW(factor(Integer("1000000007"), 1'000'000'000), CapacityError);
  EXPECT_NO_THROW(factor(1'000'000'000));
  EXPECT_EQ(factor(1000, 100'000).value(), 1000u);
}

TEST(Factor, FromFactorsValidates) {
  EXPECT_THROW(Factored::from_factors({{4, 1}}), DomainError);
  EXPECT_THROW(Factored::from_factors({{3, 1}, {2, 1}}), DomainError);
  EXPECT_THROW(Factored::from_factors({{2, 0}}), DomainError);
  EXPECT_EQ(Factored::from_factors({{2, 3}, {5, 1}}).value(), 40u);
}

TEST(Factor, ReconstructsAndCountsDivisorsUpTo10000) {
  for (std::uint64_t n = 1; n <= 10'000; ++n) {
    const Factored f = factor(n);
    std::uint64_t product = 1;
    std::uint64_t last = 1;
    for (const auto& pp : f.factors()) {
      ASSERT_GT(pp.prime, last);
      ASSERT_GE(pp.exponent, 1u);
      last = pp.prime;
      product *= oracle::ipow(pp.prime, pp.exponent);
    }
    ASSERT_EQ(product, n);
    std::uint64_t tau = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
      if (n % d == 0) tau += (d * d == n) ? 1 : 2;
    }
    ASSERT_EQ(divisors(f).size(), tau) << n;
    ASSERT_EQ(divisor_count(f), tau) << n;
  }
}

TEST(Divisors, Examples) {
  EXPECT_EQ(values(divisors(factor(1))), (std::vector<std::uint64_t>{1}));
  EXPECT_EQ(values(divisors(factor(12))), (std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(values(divisors(factor(8))), (std::vector<std::uint64_t>{1, 2, 4, 8}));
}

TEST(Divisors, MatchTrialDivision) {
  for (std::uint64_t n = 1; n <= 500; ++n) {
    ASSERT_EQ(values(divisors(factor(n))), oracle::divisors(n)) << n;
  }
}

TEST(Divisors, QuotientAndMultiply) {
  const Factored n = factor(360);
  for (const auto& d : divisors(n)) {
    const Factored q = quotient(n, d);
    EXPECT_EQ(q.value() * d.value(), 360u);
    EXPECT_EQ(multiply(q, d), n);
  }
  EXPECT_THROW(quotient(factor(12), factor(8)), DomainError);
  EXPECT_THROW(quotient(factor(12), factor(5)), DomainError);
}

TEST(GeneralizedGcd, Examples) {
  EXPECT_EQ(generalized_gcd(8, 4, 1), 4);
  EXPECT_EQ(generalized_gcd(72, 8, 3), 8);
  EXPECT_EQ(generalized_gcd(2, 4, 2), 1);
}

TEST(GeneralizedGcd, ZeroFirstArgumentGivesLargestPowerDividingB) {
  EXPECT_EQ(generalized_gcd(0, 16, 2), 16);
  EXPECT_EQ(generalized_gcd(0, 24, 2), 4);
  EXPECT_EQ(generalized_gcd(0, 8, 3), 8);
}

TEST(GeneralizedGcd, Errors) {
  EXPECT_THROW(generalized_gcd(3, 4, 0), DomainError);
  EXPECT_THROW(generalized_gcd(0, 0, 1), DomainError);
  EXPECT_THROW(generalized_gcd(-1, 4, 1), DomainError);
}

TEST(GeneralizedGcd, MaximalSthPowerDividingBoth) {
  for (std::uint64_t s = 1; s <= 3; ++s) {
    for (std::uint64_t a = 0; a <= 500; ++a) {
      for (std::uint64_t b = 1; b <= 500; b += (a % 7) + 1) {
        const Integer g = generalized_gcd(a, b, s);
        const std::uint64_t gv = to_u64(g);
        ASSERT_EQ(b % gv, 0u);
        ASSERT_EQ(a % gv, 0u);
        if (a > 0) ASSERT_EQ(gv, oracle::generalized_gcd(a, b, s)) << a << ' ' << b << ' ' << s;
        std::uint64_t root = 1;
        while (oracle::ipow(root + 1, s) <= gv) ++root;
        ASSERT_EQ(oracle::ipow(root, s), gv);
      }
    }
  }
}

TEST(GeneralizedGcd, RootAgreesWithDirectValue) {
  for (unsigned s = 1; s <= 3; ++s) {
    for (std::uint64_t r = 1; r <= 30; ++r) {
      const Factored fr = factor(r);
      const Integer modulus = power(fr, s);
      for (std::uint64_t n = 0; n <= 200; ++n) {
        const Factored root = generalized_gcd_root(n, fr, s);
        ASSERT_EQ(power(root, s), generalized_gcd(n, modulus, s));
        ASSERT_EQ(r % root.value(), 0u);
      }
    }
  }
}

TEST(GeneralizedGcd, Periodicity) {
  for (unsigned s = 1; s <= 3; ++s) {
    for (std::uint64_t r = 1; oracle::ipow(r, s) <= 10'000; ++r) {
      const std::uint64_t big_n = oracle::ipow(r, s);
      const std::uint64_t step = std::max<std::uint64_t>(1, big_n / 97);
      for (std::uint64_t n = 0; n <= big_n; n += step) {
        ASSERT_EQ(generalized_gcd(n + big_n, big_n, s), generalized_gcd(n, big_n, s));
      }
    }
  }
}

TEST(Mobius, Examples) {
  EXPECT_EQ(mobius(factor(1)), 1);
  EXPECT_EQ(mobius(factor(6)), 1);
  EXPECT_EQ(mobius(factor(12)), 0);
  EXPECT_EQ(mobius(factor(30)), -1);
}

TEST(JordanTotient, Examples) {
  EXPECT_EQ(jordan_totient(factor(1), 3), 1);
  EXPECT_EQ(jordan_totient(factor(2), 2), 3);
  EXPECT_EQ(jordan_totient(factor(4), 1), 2);
  EXPECT_THROW(jordan_totient(factor(4), 0), DomainError);
}

TEST(JordanTotient, PhiMatchesCoprimeCount) {
  for (std::uint64_t n = 1; n <= 500; ++n) {
    ASSERT_EQ(jordan_totient(factor(n), 1), oracle::euler_phi(n)) << n;
  }
}

TEST(JordanTotient, CountsGeneralizedCoprimeResidues) {
  // J_s(n) = #{k <= n^s : (k, n^s)_s = 1}
  for (unsigned s = 1; s <= 3; ++s) {
    for (std::uint64_t n = 1; oracle::ipow(n, s) <= 5000; ++n) {
      const std::uint64_t big = oracle::ipow(n, s);
      std::uint64_t count = 0;
      for (std::uint64_t k = 1; k <= big; ++k) count += oracle::generalized_gcd(k, big, s) == 1;
      ASSERT_EQ(jordan_totient(factor(n), s), count) << n << ' ' << s;
    }
  }
}

TEST(DirichletConvolution, Examples) {
  EXPECT_EQ(dirichlet_convolve(mobius_function(), constant_one(), factor(6)), 0);
  EXPECT_EQ(dirichlet_convolve(mobius_function(), constant_one(), factor(1)), 1);
  EXPECT_EQ(dirichlet_convolve(constant_one(), jordan_function(1), factor(4)), 4);
}

TEST(DirichletConvolution, MobiusTimesOneIsUnit) {
  const auto unit = dirichlet_unit();
  for (std::uint64_t n = 1; n <= 1000; ++n) {
    const Factored f = factor(n);
    ASSERT_EQ(dirichlet_convolve(mobius_function(), constant_one(), f), unit(f)) << n;
    ASSERT_EQ(unit(f), n == 1 ? 1 : 0);
  }
}

TEST(DirichletConvolution, AcceptsTabulatedFunctions) {
  auto identity = [](const Factored& n) { return Rational(to_integer(n.value())); };
  // (id * mu)(n) = phi(n)
  for (std::uint64_t n = 1; n <= 200; ++n) {
    ASSERT_EQ(dirichlet_convolve(identity, mobius_function(), factor(n)),
              Rational(jordan_totient(factor(n), 1)));
  }
}

TEST(JordanDivisorSum, Examples) {
  EXPECT_TRUE(jordan_divisor_sum_check(factor(1), 3));
  EXPECT_TRUE(jordan_divisor_sum_check(factor(12), 2));
  EXPECT_TRUE(jordan_divisor_sum_check(factor(30), 1));
}

TEST(JordanDivisorSum, HoldsUpTo500) {
  for (unsigned s = 1; s <= 3; ++s) {
    for (std::uint64_t n = 1; n <= 500; ++n) {
      ASSERT_TRUE(jordan_divisor_sum_check(factor(n), s)) << n << ' ' << s;
    }
  }
}

TEST(MultiplicativeSpec, EvaluatesOnPrimePowers) {
  const auto j2 = jordan_function(2);
  EXPECT_EQ(j2(factor(1)), 1);
  EXPECT_EQ(j2(factor(12)), Rational(jordan_totient(factor(12), 2)));
  EXPECT_EQ(mobius_function()(factor(30)), -1);
}
