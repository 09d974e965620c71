#include <gtest/gtest.h>

#include "orbitforge/weyman.hpp"

namespace of = orbitforge;
using of::Partition;
using of::Polynomial;
using of::VipConvention;

namespace {

Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

of::IndexSet complement(int n, of::IndexMask mask) { return of::to_indices(of::full_mask(n) & ~mask); }

// det of the ([n]\Q, [n]\P) submatrix of tI + X, coefficient of t^(n-i-p).
Polynomial cofactor_oracle(int n, int i, int p, of::IndexMask Pm, of::IndexMask Qm) {
  auto shifted = of::generic_matrix(n);
  for (int d = 0; d < n; ++d) shifted(d, d) += Polynomial::chart_variable();
  const Polynomial det = of::minor_leibniz(shifted, complement(n, Qm), complement(n, Pm));
  return det.coefficient_of(of::kChartVar, static_cast<std::uint16_t>(n - i - p));
}

// Sum over J of X(P u J | Q u J), J outside P u Q with |J| = p - i.
Polynomial literal_oracle(int n, int i, int p, of::IndexMask Pm, of::IndexMask Qm) {
  const auto X = of::generic_matrix(n);
  Polynomial sum;
  for (auto J : of::subsets_of_size(n, p - i))
    if (!(J & (Pm | Qm))) sum += of::minor_leibniz(X, of::to_indices(Pm | J), of::to_indices(Qm | J));
  return sum;
}

TEST(Vip, WorkedExamples) {
  const auto trace = of::v_ip_generators(0, 1, 3);
  ASSERT_EQ(trace.spanning.size(), 1u);
  EXPECT_EQ(trace.spanning[0].poly, Polynomial::x(1, 1) + Polynomial::x(2, 2) + Polynomial::x(3, 3));

  const auto det = of::v_ip_generators(0, 3, 3);
  ASSERT_EQ(det.spanning.size(), 1u);
  EXPECT_EQ(det.spanning[0].poly, of::determinant(of::generic_matrix(3)));

  EXPECT_TRUE(of::v_ip_generators(3, 1, 3).trivial());

  const auto v22 = of::v_ip_generators(2, 2, 3);
  ASSERT_EQ(v22.spanning.size(), 9u);
  const auto X = of::generic_matrix(3);
  for (const auto& s : v22.spanning)
    EXPECT_EQ(s.poly, of::minor(X, of::to_indices(s.rows), of::to_indices(s.cols)));
}

TEST(Vip, SecondPrincipalSum) {
  const auto v02 = of::v_ip_generators(0, 2, 3);
  ASSERT_EQ(v02.spanning.size(), 1u);
  const auto X = of::generic_matrix(3);
  EXPECT_EQ(v02.spanning[0].poly, of::minor(X, {1, 2}, {1, 2}) + of::minor(X, {1, 3}, {1, 3}) + of::minor(X, {2, 3}, {2, 3}));
}

TEST(Vip, ArgumentChecks) {
  EXPECT_THROW(of::v_ip_generators(-1, 1, 3), of::DomainError);
  EXPECT_THROW(of::v_ip_generators(0, 0, 3), of::DomainError);
  EXPECT_THROW(of::v_ip_generators(0, 4, 3), of::DomainError);
  EXPECT_THROW(of::v_ip_generators(0, 1, 21), of::DomainError);
  EXPECT_THROW(of::parse_vip_convention("other"), of::DomainError);
  EXPECT_EQ(of::parse_vip_convention("cofactor"), VipConvention::cofactor);
}

TEST(Vip, LiteralMatchesIndependentSum) {
  for (int n = 1; n <= 4; ++n)
    for (int p = 1; p <= n; ++p)
      for (int i = 0; i <= p; ++i) {
        const auto gen = of::v_ip_generators(i, p, n, VipConvention::literal);
        std::size_t with_choices = 0;
        for (auto Pm : of::subsets_of_size(n, i))
          for (auto Qm : of::subsets_of_size(n, i))
            if (of::popcount(of::full_mask(n) & ~(Pm | Qm)) >= p - i) ++with_choices;
        ASSERT_EQ(gen.spanning.size(), with_choices) << n << i << p;
        for (const auto& s : gen.spanning) EXPECT_EQ(s.poly, literal_oracle(n, i, p, s.rows, s.cols));
      }
}

TEST(Vip, CofactorMatchesCharacteristicExpansion) {
  for (int n = 1; n <= 4; ++n)
    for (int p = 1; p <= n; ++p)
      for (int i = 0; i <= p; ++i) {
        const auto gen = of::v_ip_generators(i, p, n, VipConvention::cofactor);
        for (const auto& s : gen.spanning) EXPECT_EQ(s.poly, cofactor_oracle(n, i, p, s.rows, s.cols)) << n << i << p;
        if (n - i - p < 0) EXPECT_TRUE(gen.trivial());
      }
}

// With i = 0 both conventions give the sum of principal p-minors.
TEST(Vip, ConventionsAgreeOnTraces) {
  for (int n = 1; n <= 4; ++n)
    for (int p = 1; p <= n; ++p) {
      const auto a = of::v_ip_generators(0, p, n, VipConvention::literal);
      const auto b = of::v_ip_generators(0, p, n, VipConvention::cofactor);
      ASSERT_EQ(a.spanning.size(), 1u);
      ASSERT_EQ(b.spanning.size(), 1u);
      EXPECT_EQ(a.spanning[0].poly, b.spanning[0].poly);
    }
}

TEST(JLambda, TwoOneLabels) {
  const auto pres = of::j_lambda_generators(P({2, 1}));
  std::vector<std::pair<int, int>> nontrivial;
  for (const auto& set : pres.sets)
    if (!set.trivial()) nontrivial.emplace_back(set.i, set.p);
  const std::vector<std::pair<int, int>> expected = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 2}};
  EXPECT_EQ(nontrivial, expected);
  EXPECT_TRUE(pres.sets.back().trivial());
  EXPECT_EQ(pres.sets.back().i, 3);
  EXPECT_EQ(pres.sets.back().p, 1);
  EXPECT_EQ(pres.count_before_dedup(), 21u);
  EXPECT_EQ(pres.generators.metadata().at("vip_convention"), "literal");
}

TEST(JLambda, OriginContainsEntries) {
  const auto pres = of::j_lambda_generators(P({1, 1, 1}));
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) EXPECT_TRUE(pres.generators.contains(Polynomial::x(i, j)));
}

TEST(JLambda, RegularOrbitHasAllTraces) {
  for (int n = 1; n <= 4; ++n) {
    const auto pres = of::j_lambda_generators(P({n}));
    for (int p = 1; p <= n; ++p) {
      const auto& set = pres.sets[p - 1];
      EXPECT_EQ(set.i, 0);
      EXPECT_EQ(set.p, p);
      EXPECT_EQ(set.spanning.size(), 1u);
    }
    for (int i = 1; i <= n; ++i) EXPECT_EQ(pres.sets[n + i - 1].p, of::weyman_lambda_i(P({n}), i));
  }
}

TEST(Compare, TwoOneCounts) {
  const auto cmp = of::compare_generator_sets(P({2, 1}), 5, 1);
  EXPECT_EQ(cmp.closure_count, 18u);
  EXPECT_EQ(cmp.weyman_count_before_dedup, 21u);
  EXPECT_TRUE(cmp.sets_agree());
  EXPECT_TRUE(cmp.matches_dominance());
}

TEST(Compare, OriginVanishesOnlyAtTheOrigin) {
  const auto cmp = of::compare_generator_sets(P({1, 1, 1}), 4, 2);
  for (const auto& c : cmp.cells) {
    const int want = c.mu == P({1, 1, 1}) ? c.samples : 0;
    EXPECT_EQ(c.closure_vanishes, want);
    EXPECT_EQ(c.weyman_vanishes, want);
  }
}

TEST(Compare, PartitionsOfTwo) {
  for (const auto& lambda : of::enumerate_partitions(2))
    EXPECT_TRUE(of::compare_generator_sets(lambda, 6, 3).matches_dominance()) << lambda.to_string();
}

// The cofactor generators cut out the same sampled sets as F_lambda for
// every partition of n <= 5.
TEST(Compare, CofactorConventionAgreesWithClosure) {
  for (int n = 1; n <= 5; ++n)
    for (const auto& lambda : of::enumerate_partitions(n)) {
      const auto cmp = of::compare_generator_sets(lambda, n <= 4 ? 10 : 4, 7, VipConvention::cofactor);
      EXPECT_TRUE(cmp.sets_agree()) << lambda.to_string();
      EXPECT_TRUE(cmp.matches_dominance()) << lambda.to_string();
    }
}

// Taken literally, V_{2,2} for [3] and [2,1] is the same set of 2x2 minors
// (lambda(2) = 2 in both cases), which forces rank <= 1 and so excludes the
// regular orbit from its own closure.
TEST(Compare, LiteralConventionCutsOutTooLittleForTheRegularOrbit) {
  EXPECT_EQ(of::weyman_lambda_i(P({3}), 2), of::weyman_lambda_i(P({2, 1}), 2));
  const auto cmp = of::compare_generator_sets(P({3}), 5, 1, VipConvention::literal);
  EXPECT_FALSE(cmp.sets_agree());
  for (const auto& c : cmp.cells)
    if (c.mu == P({3})) EXPECT_EQ(c.weyman_vanishes, 0);
}

}  // namespace
