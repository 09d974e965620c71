#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "equation_set.hpp"
#include "evaluation.hpp"
#include "matrix.hpp"
#include "parallel.hpp"
#include "partitions.hpp"
#include "polynomial.hpp"
#include "version.hpp"

namespace orbitforge {

/// How far the power loop of the closure construction runs.
enum class KRange {
  pruned,  ///< k = 1 .. first k with r_k = 0
  full,    ///< k = 1 .. n
};

inline const char* to_string(KRange range) { return range == KRange::full ? "full" : "pruned"; }

/// Block-diagonal nilpotent Jordan matrix, blocks in the order of the parts,
/// 1s on the first superdiagonal of each block.
inline IntegerMatrix jordan_matrix(const Partition& mu) {
  IntegerMatrix out(mu.size(), mu.size());
  int offset = 0;
  for (int part : mu.parts()) {
    for (int i = 0; i + 1 < part; ++i) out(offset + i, offset + i + 1) = 1;
    offset += part;
  }
  return out;
}

/// An r_k x r_k minor of X^k, the j-th one in (rows, cols) lexicographic order.
struct LabeledMinor {
  int j;
  int k;
  IndexMask rows;
  IndexMask cols;
  Polynomial h;
};

namespace detail {

inline int power_loop_end(const Partition& lambda, KRange range) {
  return range == KRange::full ? lambda.size() : rank_sequence(lambda).k_stop();
}

/// Walks X, X^2, ... and hands each power's minor table (sizes up to
/// r_k + 1) to the visitor.
template <class Visitor>
void for_each_power_table(const Partition& lambda, int k_end, int extra_size, Visitor&& visit) {
  const int n = lambda.size();
  const RankSequence ranks = rank_sequence(lambda);
  const SymbolicMatrix x = generic_matrix(n);
  SymbolicMatrix power = x;
  for (int k = 1; k <= k_end; ++k) {
    if (k > 1) power = power * x;
    const int r = ranks.rank(k);
    const MinorTable table(power, std::min(n, r + extra_size));
    visit(k, r, table);
  }
}

inline EquationSet new_closure_set(const Partition& lambda, KRange range) {
  EquationSet eqs("gl", lambda.size(), lambda);
  eqs.set_metadata("k_range", to_string(range));
  eqs.set_metadata("minor_sign_convention", kMinorSignConvention);
  eqs.set_metadata("monomial_order", kMonomialOrder);
  return eqs;
}

}  // namespace detail

/// Upper bound on the monomial products expanded while generating F_lambda:
/// an s-minor of X^k expands into at most s! * (n^(k-1))^s products.
/// Lets callers skip orbits whose closure equations are impractically large.
inline double closure_expansion_bound(const Partition& lambda, KRange range = KRange::pruned) {
  const int n = lambda.size();
  const RankSequence ranks = rank_sequence(lambda);
  double total = 0;
  for (int k = 1; k <= detail::power_loop_end(lambda, range); ++k) {
    const int s = ranks.rank(k) + 1;
    if (s > n) continue;
    const double pairs = static_cast<double>(binomial(n, s)) * static_cast<double>(binomial(n, s));
    total += pairs * static_cast<double>(factorial(s)) * std::pow(static_cast<double>(n), (k - 1) * s);
  }
  return total;
}

/// F_lambda: for each k, every (r_k + 1)-minor of X^k. Together they cut out
/// the closure of O_lambda (rank(X^k) <= r_k for all k).
inline EquationSet closure_equations(const Partition& lambda, KRange range = KRange::pruned) {
  EquationSet eqs = detail::new_closure_set(lambda, range);
  detail::for_each_power_table(lambda, detail::power_loop_end(lambda, range), 1,
                               [&](int k, int r, const MinorTable& table) {
                                 for (IndexMask rows : table.subsets(r + 1))
                                   for (IndexMask cols : table.subsets(r + 1))
                                     eqs.add(table.minor(rows, cols), MinorSource{k, rows, cols});
                               });
  return eqs;
}

/// H_lambda: for each k with r_k >= 1, all C(n, r_k)^2 minors of X^k of size r_k.
inline std::vector<LabeledMinor> nonvanishing_minors(const Partition& lambda) {
  std::vector<LabeledMinor> out;
  const RankSequence ranks = rank_sequence(lambda);
  const int k_end = ranks.k_stop() - 1;
  if (k_end < 1) return out;
  detail::for_each_power_table(lambda, k_end, 0, [&](int k, int r, const MinorTable& table) {
    int j = 0;
    for (IndexMask rows : table.subsets(r))
      for (IndexMask cols : table.subsets(r)) out.push_back({++j, k, rows, cols, table.minor(rows, cols)});
  });
  return out;
}

/// Closure equations together with H_lambda, computed from shared power tables.
struct OrbitEquations {
  EquationSet closure;
  std::vector<LabeledMinor> nonvanishing;
};

inline OrbitEquations orbit_equations(const Partition& lambda, KRange range = KRange::pruned) {
  OrbitEquations out{detail::new_closure_set(lambda, range), {}};
  const RankSequence ranks = rank_sequence(lambda);
  const int k_end = detail::power_loop_end(lambda, range);
  detail::for_each_power_table(lambda, k_end, 1, [&](int k, int r, const MinorTable& table) {
    for (IndexMask rows : table.subsets(r + 1))
      for (IndexMask cols : table.subsets(r + 1))
        out.closure.add(table.minor(rows, cols), MinorSource{k, rows, cols});
    if (r >= 1) {
      int j = 0;
      for (IndexMask rows : table.subsets(r))
        for (IndexMask cols : table.subsets(r))
          out.nonvanishing.push_back({++j, k, rows, cols, table.minor(rows, cols)});
    }
  });
  return out;
}

inline Polynomial chart_relation(const Polynomial& h) { return h * Polynomial::chart_variable() - Polynomial(1); }

/// Builds one chart per inverted minor over a shared base equation set.
inline ChartAtlas make_atlas(EquationSet base, const std::vector<LabeledMinor>& minors) {
  ChartAtlas atlas;
  atlas.base = std::make_shared<const EquationSet>(std::move(base));
  for (const auto& m : minors)
    atlas.charts.push_back({atlas.base, m.h, chart_relation(m.h), m.j, m.k, m.rows, m.cols});
  return atlas;
}

/// O_lambda as the union of the closure localized at each h in H_lambda.
/// The origin orbit [1,...,1] has no charts and gets a warning instead.
inline ChartAtlas localization_charts(const Partition& lambda, KRange range = KRange::pruned) {
  OrbitEquations data = orbit_equations(lambda, range);
  ChartAtlas atlas = make_atlas(std::move(data.closure), data.nonvanishing);
  if (lambda.is_all_ones())
    atlas.warning = "orbit " + lambda.to_string() + " is the origin; it has no localization charts";
  return atlas;
}

/// A point of a nilpotent orbit: P^-1 J_mu P for a unimodular P.
struct OrbitPoint {
  RationalMatrix matrix;
  Partition source;
  std::uint64_t seed = 0;
};

/// Row operation "row += multiplier * source_row", i.e. I + c*e_{row,col}.
struct ElementaryOp {
  int row;
  int col;
  int multiplier;
};

/// 2n elementary operations with multipliers in [-3, 3]; seed 0 means no
/// operations (P = I).
inline std::vector<ElementaryOp> elementary_ops_from_seed(int n, std::uint64_t seed) {
  std::vector<ElementaryOp> ops;
  if (seed == 0 || n < 2) return ops;
  std::mt19937_64 rng(seed);
  for (int step = 0; step < 2 * n; ++step) {
    const int row = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    int col = static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
    if (col >= row) ++col;
    const int multiplier = static_cast<int>(rng() % 7) - 3;
    ops.push_back({row, col, multiplier});
  }
  return ops;
}

/// Checks nilpotency and rank(M^k) = sum_i f^k(mu_i) for k = 1..n.
inline bool has_jordan_type(const RationalMatrix& m, const Partition& mu) {
  const int n = mu.size();
  if (m.rows() != n || !m.is_square()) return false;
  const RankSequence ranks = rank_sequence(mu);
  RationalMatrix power = m;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) power = power * m;
    if (rank(power) != ranks.rank(k)) return false;
  }
  return power.is_zero();
}

inline OrbitPoint conjugate_jordan(const Partition& mu, std::span<const ElementaryOp> ops, std::uint64_t seed = 0) {
  const int n = mu.size();
  IntegerMatrix p = IntegerMatrix::identity(n);
  IntegerMatrix p_inverse = IntegerMatrix::identity(n);
  for (const auto& op : ops) {
    IntegerMatrix step = IntegerMatrix::identity(n);
    IntegerMatrix step_inverse = IntegerMatrix::identity(n);
    step(op.row, op.col) = op.multiplier;
    step_inverse(op.row, op.col) = -op.multiplier;
    p = p * step;
    p_inverse = step_inverse * p_inverse;
  }
  const IntegerMatrix conjugated = p_inverse * jordan_matrix(mu) * p;
  OrbitPoint point{conjugated.cast<Rational>(), mu, seed};
  if (!has_jordan_type(point.matrix, mu))
    throw std::logic_error("sampled orbit point lost its Jordan type for " + mu.to_string());
  return point;
}

inline OrbitPoint sample_orbit_point(const Partition& mu, std::uint64_t seed) {
  const auto ops = elementary_ops_from_seed(mu.size(), seed);
  return conjugate_jordan(mu, ops, seed);
}

/// Mixes a master seed with indices into a nonzero sample seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(master);
  h = mix(h ^ a);
  h = mix(h ^ b);
  h = mix(h ^ c);
  return h == 0 ? 1 : h;
}

/// Row-major entries of a point with integer coordinates, or nullopt.
inline std::optional<std::vector<Integer>> integer_entries(const RationalMatrix& point) {
  std::vector<Integer> entries;
  for (const auto& v : point.data()) {
    if (denominator(v) != 1) return std::nullopt;
    entries.push_back(numerator(v));
  }
  return entries;
}

/// Exact zero tests of polynomials at a fixed point. Integer points go
/// through the multi-modular tester.
class PointTester {
 public:
  explicit PointTester(const RationalMatrix& point) : n_(point.rows()) {
    if (auto entries = integer_entries(point)) integer_.emplace(n_, std::move(*entries));
    else rational_.emplace(n_, point.data());
  }

  int dim() const { return n_; }

  bool vanishes(const Polynomial& p) {
    if (rational_) return (*rational_)(p) == 0;
    return integer_->vanishes(CompiledEquations(n_, {&p}), 0);
  }

  /// True iff every equation is exactly 0 here.
  bool vanishes_on(const CompiledEquations& eqs) {
    if (integer_) return integer_->vanishes_on(eqs);
    for (std::size_t i = 0; i < eqs.size(); ++i)
      if ((*rational_)(eqs.polynomial(i)) != 0) return false;
    return true;
  }
  bool vanishes_on(const EquationSet& eqs) { return vanishes_on(CompiledEquations(eqs)); }

 private:
  int n_;
  std::optional<IntegerPointTester> integer_;
  std::optional<PointEvaluator<Rational>> rational_;
};

inline bool membership_test(const OrbitPoint& point, const EquationSet& eqs) {
  if (point.matrix.rows() != eqs.n()) throw DomainError("point and equation set dimensions differ");
  PointTester tester(point.matrix);
  return tester.vanishes_on(eqs);
}

/// One (mu, lambda) cell of the stratification check.
struct OracleCell {
  Partition mu;
  Partition lambda;
  bool expected;  ///< dominance_leq(mu, lambda)
  int samples;
  int agreements;
};

struct StratificationReport {
  int n = 0;
  std::vector<OracleCell> cells;
  /// lambdas left out because their equations exceed the size budget
  std::vector<Partition> skipped;

  std::size_t total_samples() const {
    std::size_t total = 0;
    for (const auto& c : cells) total += static_cast<std::size_t>(c.samples);
    return total;
  }
  std::size_t total_agreements() const {
    std::size_t total = 0;
    for (const auto& c : cells) total += static_cast<std::size_t>(c.agreements);
    return total;
  }
  bool all_agree() const { return total_agreements() == total_samples(); }
};

/// samples points of every orbit O_mu, sample s of mu seeded by derive_seed(seed, n, mu, s).
inline std::vector<std::vector<OrbitPoint>> sample_all_orbits(int n, int samples, std::uint64_t seed) {
  const auto partitions = enumerate_partitions(n);
  std::vector<std::vector<OrbitPoint>> points(partitions.size(), std::vector<OrbitPoint>(samples));
  parallel_for(partitions.size() * samples, [&](std::size_t slot) {
    const std::size_t mu = slot / samples, s = slot % samples;
    points[mu][s] = sample_orbit_point(partitions[mu], derive_seed(seed, n, mu, s));
  });
  return points;
}

/// For all mu, lambda of n: does every sampled point of O_mu satisfy F_lambda
/// exactly when mu <= lambda in dominance order?
inline StratificationReport stratification_oracle(int n, int samples, std::uint64_t seed,
                                                  KRange range = KRange::pruned) {
  StratificationReport report{n, {}, {}};
  const auto partitions = enumerate_partitions(n);
  const auto points = sample_all_orbits(n, samples, seed);
  std::vector<EquationSet> closures;
  for (const auto& lambda : partitions) closures.push_back(closure_equations(lambda, range));
  std::vector<CompiledEquations> compiled;
  for (const auto& eqs : closures) compiled.emplace_back(eqs);

  const std::size_t np = partitions.size();
  // one task per (mu, sample): each owns its evaluator and walks all lambdas
  std::vector<std::vector<char>> verdicts(np * samples, std::vector<char>(np));
  parallel_for(np * samples, [&](std::size_t slot) {
    const std::size_t mu = slot / samples, s = slot % samples;
    PointTester tester(points[mu][s].matrix);
    for (std::size_t lambda = 0; lambda < np; ++lambda) verdicts[slot][lambda] = tester.vanishes_on(compiled[lambda]);
  });
  for (std::size_t mu = 0; mu < np; ++mu)
    for (std::size_t lambda = 0; lambda < np; ++lambda) {
      const bool expected = dominance_leq(partitions[mu], partitions[lambda]);
      int agree = 0;
      for (int s = 0; s < samples; ++s) agree += (verdicts[mu * samples + s][lambda] != 0) == expected;
      report.cells.push_back({partitions[mu], partitions[lambda], expected, samples, agree});
    }
  return report;
}

}  // namespace orbitforge
