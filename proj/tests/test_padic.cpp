#include <gtest/gtest.h>

#include <random>

#include "orbitforge/padic.hpp"

namespace of = orbitforge;
using of::Integer;
using of::Partition;
using of::Polynomial;

namespace {

Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

bool naive_prime(long long v) {
  if (v < 2) return false;
  for (long long d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

TEST(CoefficientBound, Examples) {
  EXPECT_EQ(of::coefficient_bound(P({2, 1})), 1);
  EXPECT_EQ(of::coefficient_bound(P({1, 1, 1})), 1);
  EXPECT_EQ(of::coefficient_bound(P({3})), 2);
  EXPECT_EQ(of::coefficient_bound(P({5})), 24);
}

TEST(AdmissiblePrime, Examples) {
  EXPECT_EQ(of::smallest_admissible_prime(1), 2);
  EXPECT_EQ(of::smallest_admissible_prime(2), 3);
  EXPECT_EQ(of::smallest_admissible_prime(6), 7);
  EXPECT_EQ(of::smallest_admissible_prime(24), 29);
  EXPECT_EQ(of::smallest_admissible_prime(of::factorial(20)), Integer("2432902008176640029"));
  EXPECT_THROW(of::smallest_admissible_prime(0), of::DomainError);
}

TEST(IsPrime, MatchesTrialDivision) {
  for (long long v = -3; v < 5000; ++v) EXPECT_EQ(of::is_prime(v), naive_prime(v)) << v;
  for (long long v = (1 << 20) - 50; v < (1 << 20) + 2000; ++v) EXPECT_EQ(of::is_prime(v), naive_prime(v)) << v;
  EXPECT_TRUE(of::is_prime(Integer("170141183460469231731687303715884105727")));
  EXPECT_FALSE(of::is_prime(Integer("170141183460469231731687303715884105727") * 3));
}

TEST(CoefficientReport, TwoOne) {
  const auto report = of::coefficient_report(P({2, 1}));
  EXPECT_EQ(report.paper_bound, 1);
  EXPECT_EQ(report.prime, 2);
  EXPECT_EQ(report.max_coeff_F, 1);
  EXPECT_EQ(report.max_coeff_H, 1);
  EXPECT_FALSE(report.f_exceeds_h());
  EXPECT_EQ(report.closure_sets.size(), 18u);
  EXPECT_EQ(report.nonvanishing_sets.size(), 9u);
}

TEST(CoefficientReport, Origin) {
  const auto report = of::coefficient_report(P({1, 1, 1}));
  EXPECT_EQ(report.max_coeff_F, 1);
  EXPECT_EQ(report.paper_bound, 1);
  EXPECT_EQ(report.prime, 2);
  EXPECT_TRUE(report.nonvanishing_sets.empty());
}

// Maxima recomputed from scratch, then compared with the bound.
TEST(CoefficientReport, MaximaWithinBoundUpToFour) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& lambda : of::enumerate_partitions(n)) {
      const auto report = of::coefficient_report(lambda);
      Integer max_f = 0;
      const auto closure = of::closure_equations(lambda);
      for (const auto& eq : closure.equations())
        for (const auto& t : eq.poly.terms()) max_f = std::max(max_f, Integer(abs(t.coeff)));
      EXPECT_EQ(report.max_coeff_F, max_f) << lambda.to_string();
      EXPECT_LE(report.max_coeff_F, report.paper_bound) << lambda.to_string();
      EXPECT_GT(report.prime, report.paper_bound);
      EXPECT_TRUE(of::is_prime(report.prime));
    }
}

TEST(DetOccurrences, Examples) {
  EXPECT_TRUE(of::verify_det_occurrences(2));
  EXPECT_TRUE(of::verify_det_occurrences(3));
  EXPECT_EQ(of::det_occurrences(3).front(), 2u);
  EXPECT_EQ(of::det_occurrences(2).front(), 1u);
  const auto five = of::det_occurrences(5);
  EXPECT_EQ(five.size(), 25u);
  for (auto c : five) EXPECT_EQ(c, 24u);
  try {
    of::det_occurrences(7);
    FAIL();
  } catch (const of::DomainError& e) {
    EXPECT_STREQ(e.what(), "expansion too large");
  }
  EXPECT_THROW(of::det_occurrences(0), of::DomainError);
}

TEST(DetOccurrences, CoefficientsAreUnits) {
  for (int n = 1; n <= 5; ++n) {
    const auto det = of::determinant(of::generic_matrix(n));
    EXPECT_EQ(of::max_abs_coefficient(det), 1);
    EXPECT_EQ(of::Integer(det.term_count()), of::factorial(n));
  }
}

TEST(ReduceModP, Examples) {
  const auto f = of::closure_equations(P({2, 1}));
  const auto reduced = of::reduce_mod_p(f, 2);
  EXPECT_EQ(reduced.metadata().at("modulus"), "2");
  for (const auto& eq : reduced.equations())
    for (const auto& t : eq.poly.terms()) EXPECT_EQ(t.coeff, 1);
  const auto kept = of::reduce_mod_p(f, 101);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t t = 0; t < f.equations()[i].poly.term_count(); ++t) {
      const auto& c = f.equations()[i].poly.terms()[t].coeff;
      if (c > 0) EXPECT_EQ(kept.equations()[i].poly.terms()[t].coeff, c);
    }
  EXPECT_EQ(of::reduce_mod_p(Polynomial::x(1, 1) * 5 + 3, 5), Polynomial(3));
  EXPECT_THROW(of::reduce_mod_p(f, 4), of::DomainError);
  EXPECT_THROW(of::reduce_mod_p(f, 1), of::DomainError);
}

TEST(ReduceModP, DropsAndMergesEquations) {
  of::EquationSet eqs("gl", 2);
  eqs.add(Polynomial::x(1, 1) * 3, of::MinorSource{1, 1, 1});
  eqs.add(Polynomial::x(1, 2) + 1, of::MinorSource{1, 1, 2});
  eqs.add(Polynomial::x(1, 2) + 4, of::MinorSource{1, 2, 2});
  const auto reduced = of::reduce_mod_p(eqs, 3);
  EXPECT_EQ(reduced.size(), 1u);
  EXPECT_EQ(reduced.dropped_zero(), 1u);
  EXPECT_EQ(reduced.equations()[0].provenance.size(), 2u);
}

TEST(ReduceModP, IsAHomomorphism) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int n = 1; n <= 4; ++n)
    for (const auto& lambda : of::enumerate_partitions(n)) {
      const auto eqs = of::closure_equations(lambda);
      for (int p : {2, 3, 5, 7}) {
        for (int trial = 0; trial < 10; ++trial) {
          std::vector<Integer> point(n * n);
          for (auto& v : point) v = entry(rng);
          of::PointEvaluator<Integer> at(n, point);
          for (const auto& eq : eqs.equations()) {
            Integer lhs = at(of::reduce_mod_p(eq.poly, p)) % p, rhs = at(eq.poly) % p;
            if (lhs < 0) lhs += p;
            if (rhs < 0) rhs += p;
            EXPECT_EQ(lhs, rhs);
          }
        }
      }
    }
}

}  // namespace
