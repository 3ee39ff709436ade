#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "trigroup/ring.hpp"

using namespace trigroup;

namespace {

std::vector<long long> as_ll(const IntPolynomial& p) {
  std::vector<long long> v;
  for (const auto& c : p.coefficients()) v.push_back(c.convert_to<long long>());
  return v;
}

RingElement random_element(const RingPtr& ring, std::mt19937_64& rng, int bound = 20) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  std::vector<BigInt> c(static_cast<std::size_t>(ring->degree()));
  for (auto& v : c) v = dist(rng);
  return RingElement(ring, std::move(c));
}

QuotientElement random_quotient(const QuotientPtr& ring, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(0, ring->modulus() - 1);
  std::vector<std::uint32_t> c(static_cast<std::size_t>(ring->degree()));
  for (auto& v : c) v = dist(rng);
  return QuotientElement(ring, std::move(c));
}

}  // namespace

TEST(CyclotomicPoly, SmallCases) {
  EXPECT_EQ(as_ll(cyclotomic_poly(1)), (std::vector<long long>{-1, 1}));
  EXPECT_EQ(as_ll(cyclotomic_poly(5)), (std::vector<long long>{1, 1, 1, 1, 1}));
  EXPECT_EQ(as_ll(cyclotomic_poly(12)), (std::vector<long long>{1, 0, -1, 0, 1}));
}

TEST(CyclotomicPoly, MatchesRootProduct) {
  for (int n = 1; n <= 64; ++n) {
    const auto v = as_ll(cyclotomic_poly(n));
    const auto o = oracle::phi_numeric(n);
    EXPECT_EQ(v, std::vector<long long>(o.begin(), o.end())) << "n=" << n;
    EXPECT_EQ(cyclotomic_poly(n).degree(), oracle::phi(n));
  }
}

TEST(RealMinimalPoly, SmallCases) {
  EXPECT_EQ(as_ll(real_minimal_poly(5)), (std::vector<long long>{-1, 1, 1}));
  EXPECT_EQ(as_ll(real_minimal_poly(8)), (std::vector<long long>{-2, 0, 1}));
  EXPECT_EQ(as_ll(real_minimal_poly(7)), (std::vector<long long>{-1, -2, 1, 1}));
  EXPECT_EQ(as_ll(real_minimal_poly(12)), (std::vector<long long>{-3, 0, 1}));
  EXPECT_THROW(real_minimal_poly(2), std::invalid_argument);
}

TEST(RealMinimalPoly, PalindromicIdentityUpTo64) {
  for (int n = 3; n <= 64; ++n) {
    const auto psi = real_minimal_poly(n);
    ASSERT_TRUE(psi.is_monic());
    ASSERT_EQ(psi.degree(), oracle::phi(n) / 2) << "n=" << n;
    const auto lifted = oracle::palindromic_lift(psi.coefficients());
    EXPECT_EQ(lifted, cyclotomic_poly(n).coefficients()) << "n=" << n;
  }
}

TEST(RealMinimalPoly, RootAtTwiceCosine) {
  for (int n = 3; n <= 64; ++n) {
    const auto psi = real_minimal_poly(n);
    // rounding error of Horner evaluation is bounded by eps * sum |c_i| 2^i
    double scale = 0;
    const auto& cs = psi.coefficients();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) scale = 2 * scale + std::abs(it->convert_to<double>());
    EXPECT_NEAR(psi.eval(2.0 * std::cos(2.0 * M_PI / n)), 0.0, 1e-13 * scale) << "n=" << n;
    const auto o = oracle::psi_numeric(n);
    EXPECT_EQ(as_ll(psi), std::vector<long long>(o.begin(), o.end())) << "n=" << n;
  }
}

TEST(RingMul, Examples) {
  const auto r5 = NumberRing::real(5);
  const auto x5 = RingElement::generator(r5);
  EXPECT_EQ((x5 * x5).coeffs(), (std::vector<BigInt>{1, -1}));
  const auto r12 = NumberRing::real(12);
  const auto x12 = RingElement::generator(r12);
  EXPECT_EQ((x12 * x12).coeffs(), (std::vector<BigInt>{3, 0}));
  EXPECT_EQ((RingElement::one(r12) * x12).coeffs(), x12.coeffs());
  EXPECT_THROW(x5 * x12, std::invalid_argument);
}

TEST(RingMul, RingAxiomsExact) {
  std::mt19937_64 rng(11);
  for (int n : {5, 7, 9, 12, 13, 16, 15}) {
    for (auto ring : {NumberRing::real(n), NumberRing::cyclotomic(n)}) {
      for (int t = 0; t < 20; ++t) {
        const auto a = random_element(ring, rng), b = random_element(ring, rng), c = random_element(ring, rng);
        EXPECT_EQ((a * b).coeffs(), (b * a).coeffs());
        EXPECT_EQ(((a * b) * c).coeffs(), (a * (b * c)).coeffs());
        EXPECT_EQ((a * (b + c)).coeffs(), (a * b + a * c).coeffs());
      }
    }
  }
}

TEST(RingMul, RingAxiomsModN) {
  std::mt19937_64 rng(12);
  for (int n : {5, 7, 12, 16}) {
    for (std::uint64_t N : {2u, 4u, 9u, 10u, 97u}) {
      const auto q = QuotientRing::over(NumberRing::real(n), N);
      for (int t = 0; t < 20; ++t) {
        const auto a = random_quotient(q, rng), b = random_quotient(q, rng), c = random_quotient(q, rng);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
      }
    }
  }
}

TEST(RingMul, ReductionCommutesWithProduct) {
  std::mt19937_64 rng(13);
  for (int n : {7, 12, 15}) {
    const auto ring = NumberRing::real(n);
    const auto q = QuotientRing::over(ring, 8);
    for (int t = 0; t < 20; ++t) {
      const auto a = random_element(ring, rng), b = random_element(ring, rng);
      EXPECT_EQ(QuotientElement::reduce(a * b, q), QuotientElement::reduce(a, q) * QuotientElement::reduce(b, q));
    }
  }
}

TEST(RingMul, ModulusMismatchRejected) {
  const auto ring = NumberRing::real(7);
  const auto a = QuotientElement::one(QuotientRing::over(ring, 4));
  const auto b = QuotientElement::one(QuotientRing::over(ring, 8));
  EXPECT_THROW(a * b, std::invalid_argument);
}

TEST(TryInvert, Examples) {
  const auto q12 = QuotientRing::over(NumberRing::real(12), 2);
  // x^2 = 3 = 1 mod 2, so x is a unit and x + 1 is nilpotent
  const auto x12 = QuotientElement::reduce(RingElement::generator(NumberRing::real(12)), q12);
  EXPECT_TRUE(try_invert(x12).has_value());
  const auto y12 = x12 + QuotientElement::one(q12);
  EXPECT_FALSE(try_invert(y12).has_value());
  // brute force: nothing in the 4-element ring inverts x + 1
  for (std::uint32_t u = 0; u < 2; ++u)
    for (std::uint32_t v = 0; v < 2; ++v) EXPECT_FALSE(y12 * QuotientElement(q12, {u, v}) == QuotientElement::one(q12));

  const auto q5 = QuotientRing::over(NumberRing::real(5), 2);
  const auto x5 = QuotientElement::reduce(RingElement::generator(NumberRing::real(5)), q5);
  const auto inv = try_invert(x5);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(x5 * *inv, QuotientElement::one(q5));
  int found = 0;
  for (std::uint32_t u = 0; u < 2; ++u)
    for (std::uint32_t v = 0; v < 2; ++v) found += x5 * QuotientElement(q5, {u, v}) == QuotientElement::one(q5);
  EXPECT_EQ(found, 1);

  for (std::uint64_t N : {2u, 3u, 16u, 35u}) {
    const auto q = QuotientRing::over(NumberRing::real(9), N);
    const auto one = try_invert(QuotientElement::one(q));
    ASSERT_TRUE(one.has_value());
    EXPECT_EQ(*one, QuotientElement::one(q));
  }
}

TEST(TryInvert, ComposesToOne) {
  std::mt19937_64 rng(14);
  int successes = 0;
  for (int n : {5, 7, 9, 12, 13}) {
    for (std::uint64_t N : {2u, 4u, 6u, 9u, 25u, 49u}) {
      const auto q = QuotientRing::over(NumberRing::real(n), N);
      for (int t = 0; t < 25; ++t) {
        const auto a = random_quotient(q, rng);
        if (const auto b = try_invert(a)) {
          ++successes;
          EXPECT_EQ(a * *b, QuotientElement::one(q));
        }
      }
    }
  }
  EXPECT_GT(successes, 100);
}

TEST(TryInvert, AgreesWithBruteForceOnSmallRings) {
  for (int n : {5, 7, 8, 12}) {
    for (std::uint64_t N : {2u, 3u, 4u}) {
      const auto q = QuotientRing::over(NumberRing::real(n), N);
      const oracle::SmallRing R(static_cast<std::int64_t>(N), oracle::psi_numeric(n));
      if (R.size() > 81) continue;
      for (std::int64_t i = 0; i < R.size(); ++i) {
        const auto v = R.element(i);
        bool unit = false;
        for (std::int64_t j = 0; j < R.size() && !unit; ++j) unit = R.mul(v, R.element(j)) == R.constant(1);
        std::vector<std::uint32_t> c(v.begin(), v.end());
        EXPECT_EQ(try_invert(QuotientElement(q, c)).has_value(), unit) << "n=" << n << " N=" << N << " i=" << i;
      }
    }
  }
}

TEST(Embed, Examples) {
  const auto r5 = NumberRing::real(5);
  const auto c5 = NumberRing::cyclotomic(5);
  EXPECT_EQ(embed_real_to_cyclotomic(RingElement::one(r5), c5).coeffs(), (std::vector<BigInt>{1, 0, 0, 0}));
  EXPECT_EQ(embed_real_to_cyclotomic(RingElement::generator(r5), c5).coeffs(), (std::vector<BigInt>{-1, 0, -1, -1}));
}

TEST(Embed, InjectiveHomomorphism) {
  std::mt19937_64 rng(15);
  for (int n : {5, 7, 8, 9, 12, 15, 16}) {
    const auto r = NumberRing::real(n);
    const auto c = NumberRing::cyclotomic(n);
    for (int t = 0; t < 20; ++t) {
      const auto a = random_element(r, rng), b = random_element(r, rng);
      const auto ea = embed_real_to_cyclotomic(a, c), eb = embed_real_to_cyclotomic(b, c);
      EXPECT_EQ(embed_real_to_cyclotomic(a + b, c).coeffs(), (ea + eb).coeffs());
      EXPECT_EQ(embed_real_to_cyclotomic(a * b, c).coeffs(), (ea * eb).coeffs());
      if (!(a - b).is_zero()) EXPECT_FALSE((ea - eb).is_zero());
    }
  }
}

TEST(Json, PolynomialAndQuotientRoundTrip) {
  const auto psi = real_minimal_poly(13);
  EXPECT_EQ(poly_from_json(poly_to_json(psi)).coefficients(), psi.coefficients());
  const auto q = QuotientRing::over(NumberRing::real(13), 7);
  std::mt19937_64 rng(16);
  const auto a = random_quotient(q, rng);
  const auto j = to_json(a);
  EXPECT_EQ(j.at("n"), 13);
  EXPECT_EQ(j.at("N"), 7);
  EXPECT_EQ(quotient_from_json(j), a);
}
