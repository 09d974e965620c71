#include <gtest/gtest.h>

#include <random>

#include "orbitforge/matrix.hpp"
#include "orbitforge/polynomial.hpp"

namespace of = orbitforge;
using of::Integer;
using of::Polynomial;
using of::Rational;

namespace {

Polynomial x(int i, int j) { return Polynomial::x(i, j); }

// Up to five terms over x_{1,1}..x_{2,2} and t, exponents <= 2, coefficients in [-4,4].
Polynomial random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> terms(0, 5), coeff(-4, 4), exp(0, 2);
  Polynomial p;
  const int count = terms(rng);
  for (int i = 0; i < count; ++i) {
    Polynomial term(coeff(rng));
    for (int r = 1; r <= 2; ++r)
      for (int c = 1; c <= 2; ++c)
        for (int e = exp(rng); e > 0; --e) term *= x(r, c);
    if (exp(rng) == 2) term *= Polynomial::chart_variable();
    p += term;
  }
  return p;
}

TEST(Polynomial, AdditionExamples) {
  EXPECT_TRUE((x(1, 2) + -x(1, 2)).is_zero());
  EXPECT_EQ((x(1, 1) + x(2, 2)).to_string(), "x_2_2 + x_1_1");
  EXPECT_EQ((x(1, 1) + x(2, 2) + x(3, 3)).to_string(), "x_3_3 + x_2_2 + x_1_1");
}

TEST(Polynomial, MultiplicationExamples) {
  EXPECT_EQ((x(1, 1) * x(2, 2)).to_string(), "x_1_1*x_2_2");
  const Polynomial p = x(1, 1) * x(2, 3) - 3 * x(3, 1);
  EXPECT_EQ(p * Polynomial(1), p);
  EXPECT_EQ((x(1, 1) + x(1, 2)) * (x(1, 1) - x(1, 2)), x(1, 2) * x(1, 2) * Polynomial(-1) + x(1, 1) * x(1, 1));
  EXPECT_EQ(((x(1, 1) + x(1, 2)) * (x(1, 1) - x(1, 2))).to_string(), "-x_1_2^2 + x_1_1^2");
}

TEST(Polynomial, TermOrderIsGradedLex) {
  // degree first, then the largest variable decides
  const Polynomial p = Polynomial(5) + x(1, 1) + x(3, 3) * x(1, 1) + x(2, 1) * x(2, 1) + Polynomial::chart_variable();
  ASSERT_EQ(p.term_count(), 5u);
  EXPECT_EQ(p.to_string(), "x_1_1*x_3_3 + x_2_1^2 + t + x_1_1 + 5");
  EXPECT_EQ(p.degree(), 2);
  EXPECT_FALSE(p.is_homogeneous());
}

TEST(Polynomial, ZeroAndConstants) {
  const Polynomial zero;
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(zero.degree(), -1);
  EXPECT_EQ(zero.to_string(), "0");
  EXPECT_TRUE(Polynomial(7).is_constant());
  EXPECT_TRUE((Polynomial(3) - Polynomial(3)).is_zero());
  EXPECT_EQ(Polynomial(-2).to_string(), "-2");
}

TEST(Polynomial, CoefficientOfVariable) {
  const Polynomial t = Polynomial::chart_variable();
  const Polynomial p = t * t * x(1, 1) + t * t * 2 + t * x(2, 2) - 7;
  EXPECT_EQ(p.coefficient_of(of::kChartVar, 2), x(1, 1) + 2);
  EXPECT_EQ(p.coefficient_of(of::kChartVar, 1), x(2, 2));
  EXPECT_EQ(p.coefficient_of(of::kChartVar, 0), Polynomial(-7));
}

class RingAxioms : public ::testing::TestWithParam<int> {};

TEST_P(RingAxioms, HoldOnRandomPolynomials) {
  std::mt19937_64 rng(GetParam());
  for (int trial = 0; trial < 40; ++trial) {
    const Polynomial a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(a + Polynomial(), a);
    EXPECT_EQ(a * Polynomial(1), a);
    EXPECT_TRUE((a * Polynomial()).is_zero());
    if (!a.is_zero() && !b.is_zero()) EXPECT_EQ((a * b).degree(), a.degree() + b.degree());
  }
}

TEST_P(RingAxioms, EvaluationIsAHomomorphism) {
  std::mt19937_64 rng(GetParam() + 1000);
  std::uniform_int_distribution<int> entry(-6, 6), den(1, 4);
  for (int trial = 0; trial < 30; ++trial) {
    const Polynomial a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    of::RationalMatrix point(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) point(r, s) = Rational(entry(rng), den(rng));
    const Rational t(entry(rng), den(rng));
    EXPECT_EQ(of::evaluate(a * b + c, point, t), of::evaluate(a, point, t) * of::evaluate(b, point, t) + of::evaluate(c, point, t));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RingAxioms, ::testing::Values(1, 2, 3, 4));

TEST(Evaluate, Examples) {
  of::RationalMatrix j21(3, 3);
  j21(0, 1) = 1;
  EXPECT_EQ(of::evaluate(x(1, 2), j21), 1);
  EXPECT_EQ(of::evaluate(x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1), j21), 0);
  EXPECT_EQ(of::evaluate(of::determinant(of::generic_matrix(3)), j21), 0);
  EXPECT_THROW(of::evaluate(Polynomial::chart_variable() * x(1, 1), j21), of::DomainError);
  EXPECT_EQ(of::evaluate(Polynomial::chart_variable() * 2 + x(1, 2), j21, Rational(1, 2)), 2);
  EXPECT_THROW(of::evaluate(x(4, 1), j21), of::DomainError);
}

TEST(MatrixPower, Examples) {
  const auto X = of::generic_matrix(3);
  EXPECT_EQ(of::matrix_power(X, 1), X);
  EXPECT_EQ(of::matrix_power(X, 2)(0, 0), x(1, 1) * x(1, 1) + x(1, 2) * x(2, 1) + x(1, 3) * x(3, 1));
  of::IntegerMatrix j21(3, 3);
  j21(0, 1) = 1;
  EXPECT_TRUE(of::matrix_power(j21, 2).is_zero());
  EXPECT_THROW(of::matrix_power(X, 0), of::DomainError);
}

TEST(MatrixPower, ExponentsAdd) {
  for (int n = 1; n <= 3; ++n) {
    const auto X = of::generic_matrix(n);
    for (int a = 1; a <= 2; ++a)
      for (int b = 1; b <= 2; ++b)
        EXPECT_EQ(of::matrix_power(X, a + b), of::matrix_power(X, a) * of::matrix_power(X, b)) << n << a << b;
  }
}

TEST(Minor, Examples) {
  const auto X = of::generic_matrix(3);
  EXPECT_EQ(of::minor(X, {1, 2}, {1, 2}), x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1));
  EXPECT_EQ(of::minor(X, {}, {}), Polynomial(1));
  EXPECT_EQ(of::minor(X, {1, 2, 3}, {1, 2, 3}).term_count(), 6u);
  // unordered index lists are sorted; no sign prefactor
  EXPECT_EQ(of::minor(X, {2, 1}, {1, 2}), of::minor(X, {1, 2}, {1, 2}));
  try {
    of::minor(X, {1, 2}, {1});
    FAIL();
  } catch (const of::DomainError& e) {
    EXPECT_STREQ(e.what(), "non-square minor");
  }
  EXPECT_THROW(of::minor(X, {1, 4}, {1, 2}), of::DomainError);
  EXPECT_THROW(of::minor(X, {1, 1}, {1, 2}), of::DomainError);
}

// Laplace table against the Leibniz permutation sum, all minors of size <= 4.
TEST(Minor, TableAgreesWithLeibniz) {
  for (int n = 1; n <= 4; ++n) {
    const auto X = of::generic_matrix(n);
    const of::MinorTable table(X, n);
    for (int s = 0; s <= n; ++s)
      for (auto rows : table.subsets(s))
        for (auto cols : table.subsets(s))
          EXPECT_EQ(table.minor(rows, cols), of::minor_leibniz(X, of::to_indices(rows), of::to_indices(cols)));
  }
}

TEST(Minor, TableOfAPowerAgreesWithLeibniz) {
  const auto X2 = of::matrix_power(of::generic_matrix(3), 2);
  const of::MinorTable table(X2, 3);
  for (int s = 1; s <= 3; ++s)
    for (auto rows : table.subsets(s))
      for (auto cols : table.subsets(s))
        EXPECT_EQ(table.minor(rows, cols), of::minor_leibniz(X2, of::to_indices(rows), of::to_indices(cols)));
}

TEST(Minor, DeterminantMatchesNumericElimination) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int n = 1; n <= 5; ++n) {
    const Polynomial det = of::determinant(of::generic_matrix(n));
    for (int trial = 0; trial < 5; ++trial) {
      of::RationalMatrix m(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = entry(rng);
      EXPECT_EQ(of::evaluate(det, m), of::determinant(m));
    }
  }
}

TEST(Coefficients, Examples) {
  const auto det3 = of::determinant(of::generic_matrix(3));
  auto cs = of::coefficients(det3);
  EXPECT_EQ(std::count(cs.begin(), cs.end(), Integer(1)), 3);
  EXPECT_EQ(std::count(cs.begin(), cs.end(), Integer(-1)), 3);
  EXPECT_TRUE(of::coefficients(Polynomial()).empty());
  cs = of::coefficients(x(1, 1) * 2 + 3);
  EXPECT_EQ(cs, (std::vector<Integer>{2, 3}));
}

TEST(OccurrenceCount, Examples) {
  EXPECT_EQ(of::occurrence_count(of::determinant(of::generic_matrix(3)), of::matrix_var(1, 1)), 2u);
  EXPECT_EQ(of::occurrence_count(of::determinant(of::generic_matrix(2)), of::matrix_var(1, 2)), 1u);
  const auto det4 = of::determinant(of::generic_matrix(4));
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) EXPECT_EQ(of::occurrence_count(det4, of::matrix_var(i, j)), 6u);
}

TEST(OmegaG, FollowsTheStatedSum) {
  const auto det2 = of::determinant(of::generic_matrix(2));
  // C(2,1) + C(3,1) with n = 2 as written; reading n as the 4 variables gives C(4,3) + C(5,3)
  EXPECT_EQ(of::omega_g(det2, 2), 5);
  EXPECT_EQ(of::omega_g(det2, 4), 14);
  EXPECT_EQ(of::omega_g(x(1, 1) + x(2, 2), 3), 3);
  EXPECT_EQ(of::omega_g(x(1, 1), 1), 1);
  try {
    of::omega_g(Polynomial(), 2);
    FAIL();
  } catch (const of::DomainError& e) {
    EXPECT_STREQ(e.what(), "degree undefined");
  }
}

TEST(Binomial, SmallValues) {
  EXPECT_EQ(of::binomial(5, 2), 10);
  EXPECT_EQ(of::binomial(5, 0), 1);
  EXPECT_EQ(of::binomial(3, 4), 0);
  EXPECT_EQ(of::factorial(0), 1);
  EXPECT_EQ(of::factorial(5), 120);
}

}  // namespace
