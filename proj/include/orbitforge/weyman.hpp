#pragma once

#include <bit>
#include <optional>
#include <string>
#include <vector>

#include "equation_set.hpp"
#include "matrix.hpp"
#include "orbits_gl.hpp"
#include "parallel.hpp"
#include "partitions.hpp"
#include "polynomial.hpp"
#include "subsets.hpp"

namespace orbitforge {

/// How the spanning polynomial of V_{i,p} for a pair (P, Q) is formed.
enum class VipConvention {
  /// sum over J disjoint from P u Q, |J| = p - i, of the unsigned minor
  /// X(P u J | Q u J)
  literal,
  /// coefficient of t^(n-i-p) in the minor of tI + X on rows [n]\Q and
  /// columns [n]\P; a signed sum of X((P\Q) u J | (Q\P) u J) over the same J
  cofactor,
};

inline const char* to_string(VipConvention c) { return c == VipConvention::cofactor ? "cofactor" : "literal"; }

inline VipConvention parse_vip_convention(const std::string& text) {
  if (text == "literal") return VipConvention::literal;
  if (text == "cofactor") return VipConvention::cofactor;
  throw DomainError("unknown V_{i,p} convention '" + text + "' (expected literal or cofactor)");
}

struct SpanningPolynomial {
  IndexMask rows;  ///< P
  IndexMask cols;  ///< Q
  Polynomial poly;
};

struct VipGenerator {
  int i = 0;
  int p = 0;
  VipConvention convention = VipConvention::literal;
  /// One entry per ordered pair (P, Q) with at least one admissible J,
  /// pairs in lexicographic order.
  std::vector<SpanningPolynomial> spanning;

  bool trivial() const { return spanning.empty(); }
};

namespace detail {

inline int position_in(IndexMask set, int index0) {
  return std::popcount(set & ((IndexMask{1} << index0) - 1)) + 1;
}

/// Subsets of `pool` with exactly `size` elements, in increasing mask order.
inline std::vector<IndexMask> submasks_of_size(IndexMask pool, int size) {
  std::vector<IndexMask> out;
  if (size < 0 || size > popcount(pool)) return out;
  for (IndexMask sub = pool;; sub = (sub - 1) & pool) {
    if (popcount(sub) == size) out.push_back(sub);
    if (sub == 0) break;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

inline std::optional<Polynomial> literal_spanning(const MinorTable& x, int i, int p, IndexMask P, IndexMask Q) {
  const IndexMask pool = full_mask(x.dim()) & ~(P | Q);
  const auto choices = submasks_of_size(pool, p - i);
  if (choices.empty()) return std::nullopt;
  Polynomial sum;
  for (IndexMask J : choices) sum += x.minor(P | J, Q | J);
  return sum;
}

inline std::optional<Polynomial> cofactor_spanning(const MinorTable& x, int i, int p, IndexMask P, IndexMask Q) {
  const int n = x.dim();
  const IndexMask rows = full_mask(n) & ~Q, cols = full_mask(n) & ~P;
  const int e = n - i - p;
  const auto removed_sets = submasks_of_size(rows & cols, e);
  if (removed_sets.empty()) return std::nullopt;
  Polynomial sum;
  for (IndexMask removed : removed_sets) {
    int parity = 0;
    for (IndexMask scan = removed; scan; scan &= scan - 1) {
      const int j = std::countr_zero(scan);
      parity += position_in(rows, j) + position_in(cols, j);
    }
    const Polynomial& m = x.minor(rows & ~removed, cols & ~removed);
    if (parity % 2) sum -= m;
    else sum += m;
  }
  return sum;
}

}  // namespace detail

/// V_{i,p} from a precomputed minor table of X (sizes up to p).
inline VipGenerator v_ip_generators(const MinorTable& x, int i, int p, VipConvention convention) {
  const int n = x.dim();
  if (i < 0) throw DomainError("V_{i,p} needs i >= 0");
  if (p < 1 || p > n) throw DomainError("V_{i,p} needs 1 <= p <= n");
  VipGenerator out{i, p, convention, {}};
  if (i > p) return out;
  const auto& subsets = x.subsets(i);
  const std::size_t width = subsets.size();
  std::vector<std::optional<Polynomial>> slots(width * width);
  parallel_for(width * width, [&](std::size_t slot) {
    const IndexMask P = subsets[slot / width], Q = subsets[slot % width];
    slots[slot] = convention == VipConvention::literal ? detail::literal_spanning(x, i, p, P, Q)
                                                       : detail::cofactor_spanning(x, i, p, P, Q);
  });
  for (std::size_t slot = 0; slot < slots.size(); ++slot)
    if (slots[slot]) out.spanning.push_back({subsets[slot / width], subsets[slot % width], std::move(*slots[slot])});
  return out;
}

inline VipGenerator v_ip_generators(int i, int p, int n, VipConvention convention = VipConvention::literal) {
  if (n < 1 || n > 20) throw DomainError("V_{i,p} needs 1 <= n <= 20");
  if (p < 1 || p > n) throw DomainError("V_{i,p} needs 1 <= p <= n");
  return v_ip_generators(MinorTable(generic_matrix(n), p), i, p, convention);
}

/// Generator list for J_lambda: V_{0,p} for p = 1..n, then V_{i,lambda(i)}
/// for i = 1..n. Every label is kept in `sets`, trivial ones included.
struct JLambdaPresentation {
  Partition lambda;
  VipConvention convention = VipConvention::literal;
  std::vector<VipGenerator> sets;
  EquationSet generators;

  /// Spanning polynomials over all labels, duplicates included.
  std::size_t count_before_dedup() const { return generators.count_before_dedup(); }
};

inline JLambdaPresentation j_lambda_generators(const Partition& lambda,
                                               VipConvention convention = VipConvention::literal) {
  const int n = lambda.size();
  if (n > 20) throw DomainError("V_{i,p} needs 1 <= n <= 20");
  JLambdaPresentation out{lambda, convention, {}, EquationSet("gl", n, lambda)};
  out.generators.set_metadata("generator_family", "weyman");
  out.generators.set_metadata("vip_convention", to_string(convention));
  out.generators.set_metadata("minor_sign_convention", kMinorSignConvention);
  out.generators.set_metadata("monomial_order", kMonomialOrder);
  const MinorTable x(generic_matrix(n), n);
  for (int p = 1; p <= n; ++p) out.sets.push_back(v_ip_generators(x, 0, p, convention));
  for (int i = 1; i <= n; ++i) out.sets.push_back(v_ip_generators(x, i, weyman_lambda_i(lambda, i), convention));
  for (const auto& set : out.sets)
    for (const auto& s : set.spanning) out.generators.add(s.poly, WeymanSource{set.i, set.p, s.rows, s.cols});
  return out;
}

/// Sampled behaviour of both generator sets on one orbit O_mu.
struct GeneratorComparisonCell {
  Partition mu;
  bool expected;  ///< dominance_leq(mu, lambda)
  int samples;
  int closure_vanishes;
  int weyman_vanishes;
  int agreements;  ///< samples on which both sets give the same verdict
};

struct GeneratorComparison {
  Partition lambda;
  VipConvention convention = VipConvention::literal;
  std::size_t closure_count = 0;
  std::size_t closure_count_before_dedup = 0;
  std::size_t weyman_count = 0;
  std::size_t weyman_count_before_dedup = 0;
  std::vector<GeneratorComparisonCell> cells;
  /// Polynomials that occur verbatim in both sets, in closure order.
  std::vector<Polynomial> common;

  /// Both sets vanish on exactly the same sampled points.
  bool sets_agree() const {
    for (const auto& c : cells)
      if (c.agreements != c.samples) return false;
    return true;
  }
  /// Both sets vanish on every sample of mu <= lambda and on none of the others.
  bool matches_dominance() const {
    for (const auto& c : cells) {
      const int want = c.expected ? c.samples : 0;
      if (c.closure_vanishes != want || c.weyman_vanishes != want) return false;
    }
    return true;
  }
};

/// Compares F_lambda with the J_lambda generator list on sampled points of
/// every orbit of the same n (sample seeds as in stratification_oracle).
inline GeneratorComparison compare_generator_sets(const Partition& lambda, int samples, std::uint64_t seed,
                                                  VipConvention convention = VipConvention::literal) {
  if (samples < 0) throw DomainError("samples must be non-negative");
  const int n = lambda.size();
  const EquationSet closure = closure_equations(lambda);
  const JLambdaPresentation weyman = j_lambda_generators(lambda, convention);
  GeneratorComparison report;
  report.lambda = lambda;
  report.convention = convention;
  report.closure_count = closure.size();
  report.closure_count_before_dedup = closure.count_before_dedup();
  report.weyman_count = weyman.generators.size();
  report.weyman_count_before_dedup = weyman.count_before_dedup();
  for (const auto& eq : closure.equations())
    if (weyman.generators.contains(eq.poly)) report.common.push_back(eq.poly);

  const CompiledEquations compiled_closure(closure);
  const CompiledEquations compiled_weyman(weyman.generators);
  const auto partitions = enumerate_partitions(n);
  const auto points = sample_all_orbits(n, samples, seed);
  const std::size_t np = partitions.size();
  std::vector<std::array<char, 2>> verdicts(np * samples);
  parallel_for(np * samples, [&](std::size_t slot) {
    PointTester tester(points[slot / samples][slot % samples].matrix);
    verdicts[slot] = {static_cast<char>(tester.vanishes_on(compiled_closure)),
                      static_cast<char>(tester.vanishes_on(compiled_weyman))};
  });
  for (std::size_t mu = 0; mu < np; ++mu) {
    GeneratorComparisonCell cell{partitions[mu], dominance_leq(partitions[mu], lambda), samples, 0, 0, 0};
    for (int s = 0; s < samples; ++s) {
      const auto& v = verdicts[mu * samples + s];
      cell.closure_vanishes += v[0];
      cell.weyman_vanishes += v[1];
      cell.agreements += v[0] == v[1];
    }
    report.cells.push_back(cell);
  }
  return report;
}

}  // namespace orbitforge
