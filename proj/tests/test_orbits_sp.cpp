#include <gtest/gtest.h>

#include <random>

#include "orbitforge/orbits_sp.hpp"

namespace of = orbitforge;
using of::Partition;
using of::Polynomial;
using of::Rational;
using of::SpMode;

namespace {

Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

// X in sp_2m iff Omega X is symmetric, so X = Omega^-1 S = -Omega S.
of::RationalMatrix random_sp_element(int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> entry(-4, 4);
  const int n = 2 * m;
  of::RationalMatrix s(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c) s(r, c) = s(c, r) = entry(rng);
  of::RationalMatrix minus_omega = of::RationalMatrix(n, n) - of::omega_matrix(m).cast<Rational>();
  return minus_omega * s;
}

bool all_vanish(const of::SymplecticConstraints& c, const of::RationalMatrix& x) {
  for (const auto& e : c.entries)
    if (of::evaluate(e.poly, x) != 0) return false;
  return true;
}

TEST(Omega, SmallCases) {
  of::IntegerMatrix two(2, 2);
  two(0, 1) = 1;
  two(1, 0) = -1;
  EXPECT_EQ(of::omega_matrix(1), two);
  const auto four = of::omega_matrix(2);
  EXPECT_EQ(four(0, 3), 1);
  EXPECT_EQ(four(1, 2), -1);
  EXPECT_EQ(four(2, 1), 1);
  EXPECT_EQ(four(3, 0), -1);
  for (int m = 1; m <= 6; ++m) {
    const auto omega = of::omega_matrix(m);
    EXPECT_EQ(omega.transpose(), of::IntegerMatrix(2 * m, 2 * m) - omega);
    EXPECT_EQ(of::determinant(omega.cast<Rational>()), 1);
  }
  EXPECT_THROW(of::omega_matrix(0), of::DomainError);
}

TEST(LieEquations, Examples) {
  const auto one = of::symplectic_lie_equations(1);
  ASSERT_EQ(one.entries.size(), 1u);
  EXPECT_EQ(one.entries[0].poly, Polynomial::x(1, 1) + Polynomial::x(2, 2));
  EXPECT_TRUE(all_vanish(one, of::jordan_matrix(P({2})).cast<Rational>()));
  for (int m = 1; m <= 4; ++m) {
    const auto lie = of::symplectic_lie_equations(m);
    EXPECT_EQ(lie.entries.size(), static_cast<std::size_t>(m * (2 * m - 1)));
    EXPECT_EQ(lie.equations().size(), lie.entries.size());
    EXPECT_TRUE(all_vanish(lie, of::RationalMatrix(2 * m, 2 * m)));
  }
}

TEST(LieEquations, CutOutTheLieAlgebra) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int m = 1; m <= 3; ++m) {
    const auto lie = of::symplectic_lie_equations(m);
    for (int trial = 0; trial < 30; ++trial) {
      of::RationalMatrix x = random_sp_element(m, rng);
      EXPECT_TRUE(of::in_symplectic_algebra(x));
      EXPECT_TRUE(all_vanish(lie, x));
      const int row = entry(rng) + 3;
      x(row < 2 * m ? row : 0, 0) += 1;
      EXPECT_EQ(all_vanish(lie, x), of::in_symplectic_algebra(x));
    }
  }
}

TEST(LambdaSets, Cardinalities) {
  for (int m = 1; m <= 3; ++m) {
    const auto sets = of::lambda_sp_sets(m);
    EXPECT_EQ(sets.entries.size(), static_cast<std::size_t>(4 * m * m));
    EXPECT_EQ(sets.family_size("lambda-odd"), static_cast<std::size_t>(m));
    EXPECT_EQ(sets.family_size("lambda-even"), static_cast<std::size_t>(m));
    EXPECT_EQ(sets.family_size("lambda-rest"), static_cast<std::size_t>(4 * m * m - 2 * m));
  }
  EXPECT_EQ(of::lambda_sp_sets(1).entries.size(), 4u);
  EXPECT_EQ(of::lambda_sp_sets(2).entries.size(), 16u);
}

// The quadratic parts are the entries of X^T Omega X, negated for the even
// family.
TEST(LambdaSets, QuadraticPartsAreEntriesOfTheGramProduct) {
  for (int m = 1; m <= 3; ++m) {
    const int n = 2 * m;
    const auto X = of::generic_matrix(n);
    of::SymbolicMatrix omega(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) omega(r, c) = Polynomial(of::omega_matrix(m)(r, c));
    const auto gram = X.transpose() * omega * X;
    for (const auto& e : of::lambda_sp_sets(m).entries) {
      const Polynomial quadratic = e.family == "lambda-rest" ? e.poly : e.poly - 1;
      const Polynomial expected = e.family == "lambda-even" ? -gram(e.r - 1, e.s - 1) : gram(e.r - 1, e.s - 1);
      EXPECT_EQ(quadratic, expected) << e.family << " " << e.r << "," << e.s;
      if (e.family == "lambda-rest") EXPECT_NE(e.s, n + 1 - e.r);
      else EXPECT_EQ(e.s, n + 1 - e.r);
    }
  }
}

TEST(LambdaSets, OffAntidiagonalEntriesVanishAtTheIdentity) {
  for (int m = 1; m <= 3; ++m) {
    const auto identity = of::RationalMatrix::identity(2 * m);
    for (const auto& e : of::lambda_sp_sets(m).entries)
      if (e.family == "lambda-rest") EXPECT_EQ(of::evaluate(e.poly, identity), 0);
  }
}

TEST(SpClosure, SmallExamples) {
  const auto two = of::sp_closure_equations(P({2}));
  EXPECT_EQ(two.size(), 6u);
  EXPECT_EQ(two.metadata().at("sp_mode"), "lie");
  EXPECT_EQ(two.metadata().at("gerstenhaber"), "true");
  EXPECT_TRUE(two.contains(Polynomial::x(1, 1) + Polynomial::x(2, 2)));
  const auto origin = of::sp_closure_equations(P({1, 1}));
  EXPECT_EQ(origin.size(), 5u);
  const auto paper = of::sp_closure_equations(P({2}), SpMode::paper);
  EXPECT_EQ(paper.metadata().at("condition"), "group condition");
  try {
    of::sp_closure_equations(P({3, 1}));
    FAIL();
  } catch (const of::DomainError& e) {
    EXPECT_STREQ(e.what(), "no symplectic orbit for this partition");
  }
  EXPECT_THROW(of::sp_closure_equations(P({2, 1})), of::DomainError);
}

TEST(SpCharts, Counts) {
  EXPECT_EQ(of::sp_orbit_charts(P({2})).charts.size(), 4u);
  const auto origin = of::sp_orbit_charts(P({1, 1}));
  EXPECT_TRUE(origin.charts.empty());
  EXPECT_TRUE(origin.warning);
  EXPECT_EQ(of::sp_orbit_charts(P({2, 2})).charts.size(), 36u);
  EXPECT_THROW(of::sp_orbit_charts(P({3, 1})), of::DomainError);
}

TEST(Gating, ExhaustiveUpToSix) {
  for (int m = 1; m <= 3; ++m)
    for (const auto& lambda : of::enumerate_partitions(2 * m)) {
      bool generated = false;
      try {
        if (of::closure_expansion_bound(lambda) <= 5e7) of::sp_closure_equations(lambda);
        else of::require_symplectic_partition(lambda);
        generated = true;
      } catch (const of::DomainError&) {
      }
      EXPECT_EQ(generated, of::gerstenhaber_valid(lambda)) << lambda.to_string();
    }
}

TEST(Representative, InTheAlgebraWithTheRightJordanType) {
  for (int m = 1; m <= 4; ++m)
    for (const auto& mu : of::symplectic_partitions(m)) {
      const auto x = of::symplectic_representative(mu).cast<Rational>();
      EXPECT_TRUE(of::in_symplectic_algebra(x)) << mu.to_string();
      EXPECT_TRUE(of::has_jordan_type(x, mu)) << mu.to_string();
    }
  EXPECT_THROW(of::symplectic_representative(P({3, 1})), of::DomainError);
}

TEST(Sampling, StaysInTheOrbit) {
  for (int m = 1; m <= 3; ++m)
    for (const auto& mu : of::symplectic_partitions(m))
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto point = of::sample_sp_orbit_point(mu, seed);
        EXPECT_TRUE(of::in_symplectic_algebra(point.matrix));
        EXPECT_TRUE(of::has_jordan_type(point.matrix, mu));
        EXPECT_EQ(point.matrix, of::sample_sp_orbit_point(mu, seed).matrix);
      }
}

TEST(SpOracle, AgreesWithDominanceForSmallM) {
  for (int m = 1; m <= 2; ++m) {
    const auto report = of::sp_stratification_oracle(m, 8, 4);
    EXPECT_TRUE(report.all_agree()) << m;
    EXPECT_TRUE(report.skipped.empty());
    const std::size_t np = of::symplectic_partitions(m).size();
    EXPECT_EQ(report.cells.size(), np * np);
  }
}

TEST(SpOracle, BudgetSkipsLargeClosures) {
  const auto report = of::sp_stratification_oracle(2, 2, 4, 10.0);
  EXPECT_FALSE(report.skipped.empty());
  EXPECT_TRUE(report.all_agree());
}

}  // namespace
