#pragma once

#include <random>
#include <string>
#include <vector>

#include "equation_set.hpp"
#include "matrix.hpp"
#include "orbits_gl.hpp"
#include "partitions.hpp"
#include "polynomial.hpp"
#include "version.hpp"

namespace orbitforge {

/// Which equations cut sp_2m out of gl_2m.
enum class SpMode {
  lie,    ///< X^T Omega + Omega X = 0
  paper,  ///< the three quadratic families (a group-type condition)
};

inline const char* to_string(SpMode mode) { return mode == SpMode::paper ? "paper" : "lie"; }

inline SpMode parse_sp_mode(const std::string& text) {
  if (text == "lie") return SpMode::lie;
  if (text == "paper") return SpMode::paper;
  throw DomainError("unknown sp mode '" + text + "' (expected lie or paper)");
}

/// Omega(i, 2m+1-i) = (-1)^(i+1), zero elsewhere.
inline IntegerMatrix omega_matrix(int m) {
  if (m < 1 || 2 * m > kMaxDim) throw DomainError("omega needs 1 <= m <= " + std::to_string(kMaxDim / 2));
  const int n = 2 * m;
  IntegerMatrix out(n, n);
  for (int i = 1; i <= n; ++i) out(i - 1, n - i) = i % 2 ? 1 : -1;
  return out;
}

struct SymplecticEquation {
  std::string family;
  int r;
  int s;
  Polynomial poly;
};

struct SymplecticConstraints {
  int m = 0;
  SpMode mode = SpMode::lie;
  /// Every constructed equation in construction order, zero ones included.
  std::vector<SymplecticEquation> entries;

  std::size_t family_size(const std::string& family) const {
    std::size_t count = 0;
    for (const auto& e : entries) count += e.family == family;
    return count;
  }

  EquationSet equations() const {
    EquationSet out("sp", 2 * m);
    add_to(out);
    return out;
  }

  void add_to(EquationSet& eqs) const {
    for (const auto& e : entries) eqs.add(e.poly, SymplecticSource{e.family, e.r, e.s});
  }
};

/// Entries (r, s), r < s, of X^T Omega + Omega X. The expression is skew, so
/// the diagonal vanishes identically and (s, r) is the negative of (r, s).
inline SymplecticConstraints symplectic_lie_equations(int m) {
  const IntegerMatrix omega = omega_matrix(m);
  const int n = 2 * m;
  SymplecticConstraints out{m, SpMode::lie, {}};
  for (int r = 1; r <= n; ++r)
    for (int s = r + 1; s <= n; ++s) {
      // (X^T Omega)(r,s) = x_{a,r} Omega(a,s) and (Omega X)(r,s) = Omega(r,b) x_{b,s}
      const int a = n + 1 - s, b = n + 1 - r;
      Polynomial entry = Polynomial::x(a, r).scaled(omega(a - 1, s - 1)) + Polynomial::x(b, s).scaled(omega(r - 1, b - 1));
      out.entries.push_back({"lie", r, s, std::move(entry)});
    }
  return out;
}

namespace detail {
/// sum_{k=1}^{2m} (-1)^(k + shift) x_{2m+1-k,i} x_{k,j}
inline Polynomial alternating_pair_sum(int m, int i, int j, int shift) {
  const int n = 2 * m;
  Polynomial sum;
  for (int k = 1; k <= n; ++k) {
    const Polynomial product = Polynomial::x(n + 1 - k, i) * Polynomial::x(k, j);
    if ((k + shift) % 2) sum -= product;
    else sum += product;
  }
  return sum;
}
}  // namespace detail

/// The three quadratic families, signs unrepaired:
///   lambda-odd  (2q+1, n-2q), q = 0..m-1:  1 + sum (-1)^k     x_{n+1-k,i} x_{k,j}
///   lambda-even (2q, n-2q+1), q = 1..m:    1 + sum (-1)^(k+1) x_{n+1-k,i} x_{k,j}
///   lambda-rest every other (r, s):            sum (-1)^k     x_{n+1-k,r} x_{k,s}
inline SymplecticConstraints lambda_sp_sets(int m) {
  omega_matrix(m);
  const int n = 2 * m;
  SymplecticConstraints out{m, SpMode::paper, {}};
  for (int q = 0; q < m; ++q) {
    const int i = 2 * q + 1, j = n - 2 * q;
    out.entries.push_back({"lambda-odd", i, j, Polynomial(1) + detail::alternating_pair_sum(m, i, j, 0)});
  }
  for (int q = 1; q <= m; ++q) {
    const int i = 2 * q, j = n - 2 * q + 1;
    out.entries.push_back({"lambda-even", i, j, Polynomial(1) + detail::alternating_pair_sum(m, i, j, 1)});
  }
  // the excluded pairs of both families are exactly the anti-diagonal s = n+1-r
  for (int r = 1; r <= n; ++r)
    for (int s = 1; s <= n; ++s)
      if (s != n + 1 - r) out.entries.push_back({"lambda-rest", r, s, detail::alternating_pair_sum(m, r, s, 0)});
  return out;
}

inline SymplecticConstraints symplectic_constraints(int m, SpMode mode) {
  return mode == SpMode::paper ? lambda_sp_sets(m) : symplectic_lie_equations(m);
}

/// Throws unless lambda labels a nilpotent orbit of sp_2m.
inline void require_symplectic_partition(const Partition& lambda) {
  if (!gerstenhaber_valid(lambda)) throw DomainError("no symplectic orbit for this partition");
}

/// F_lambda together with the chosen symplectic constraints.
inline EquationSet sp_closure_equations(const Partition& lambda, SpMode mode = SpMode::lie,
                                        KRange range = KRange::pruned) {
  require_symplectic_partition(lambda);
  const int m = lambda.size() / 2;
  const EquationSet gl = closure_equations(lambda, range);
  EquationSet out("sp", lambda.size(), lambda);
  for (const auto& [key, value] : gl.metadata()) out.set_metadata(key, value);
  out.set_metadata("sp_mode", to_string(mode));
  out.set_metadata("gerstenhaber", "true");
  out.set_metadata("omega_sign_pattern", kOmegaSignPattern);
  if (mode == SpMode::paper) out.set_metadata("condition", "group condition");
  out.append(gl);
  symplectic_constraints(m, mode).add_to(out);
  return out;
}

/// Localization charts over the symplectic closure, inverted minors from H_lambda.
inline ChartAtlas sp_orbit_charts(const Partition& lambda, SpMode mode = SpMode::lie,
                                  KRange range = KRange::pruned) {
  require_symplectic_partition(lambda);
  ChartAtlas atlas = make_atlas(sp_closure_equations(lambda, mode, range), nonvanishing_minors(lambda));
  if (lambda.is_all_ones())
    atlas.warning = "orbit " + lambda.to_string() + " is the origin; it has no localization charts";
  return atlas;
}

inline bool in_symplectic_algebra(const RationalMatrix& x) {
  if (!x.is_square() || x.rows() % 2) return false;
  const RationalMatrix omega = omega_matrix(x.rows() / 2).cast<Rational>();
  return (x.transpose() * omega + omega * x).is_zero();
}

/// A nilpotent element of sp_2m (for the form Omega) with Jordan type mu.
/// Each even part is one Jordan chain whose Gram matrix is already the
/// alternating anti-diagonal; equal odd parts are taken two at a time and
/// their chains paired against each other. The resulting hyperbolic pairs
/// are then sent to the pairs (a, n+1-a) of Omega by a signed permutation.
inline IntegerMatrix symplectic_representative(const Partition& mu) {
  require_symplectic_partition(mu);
  const int n = mu.size();
  IntegerMatrix model(n, n);
  struct HyperbolicPair {
    int x, y, form;  // form = B(e_x, e_y)
  };
  std::vector<HyperbolicPair> pairs;
  int offset = 0;
  auto chain = [&](int k) {
    for (int j = 1; j < k; ++j) model(offset + j - 1, offset + j) = 1;
    offset += k;
  };
  const auto& parts = mu.parts();
  for (std::size_t idx = 0; idx < parts.size(); ++idx) {
    const int k = parts[idx];
    if (k % 2 == 0) {
      for (int i = 1; i <= k / 2; ++i) pairs.push_back({offset + i - 1, offset + k - i, i % 2 ? 1 : -1});
      chain(k);
    } else {
      const int u = offset, w = offset + k;
      for (int i = 1; i <= k; ++i) pairs.push_back({u + i - 1, w + k - i, i % 2 ? 1 : -1});
      chain(k);
      chain(k);
      ++idx;  // the partner part, equal by Gerstenhaber
    }
  }
  IntegerMatrix s(n, n);
  for (int a = 1; a <= n / 2; ++a) {
    const auto& pair = pairs[a - 1];
    s(pair.x, a - 1) = 1;
    s(pair.y, n - a) = pair.form * (a % 2 ? 1 : -1);
  }
  return s.transpose() * model * s;
}

/// X -> T^-1 X T with T = I + c v v^T Omega, v = e_a + sign * e_b (sign 0: v = e_a).
struct SymplecticTransvection {
  int a;
  int b;
  int sign;
  int multiplier;
};

inline std::vector<SymplecticTransvection> symplectic_ops_from_seed(int n, std::uint64_t seed) {
  std::vector<SymplecticTransvection> ops;
  if (seed == 0) return ops;
  std::mt19937_64 rng(seed);
  for (int step = 0; step < 2 * n; ++step) {
    const int a = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    int b = static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
    if (b >= a) ++b;
    const int sign = static_cast<int>(rng() % 3) - 1;
    const int multiplier = static_cast<int>(rng() % 7) - 3;
    ops.push_back({a, b, sign, multiplier});
  }
  return ops;
}

inline OrbitPoint sample_sp_orbit_point(const Partition& mu, std::uint64_t seed) {
  const int n = mu.size();
  const IntegerMatrix omega = omega_matrix(n / 2);
  IntegerMatrix x = symplectic_representative(mu);
  for (const auto& op : symplectic_ops_from_seed(n, seed)) {
    IntegerMatrix v(n, 1);
    v(op.a, 0) = 1;
    v(op.b, 0) += op.sign;
    IntegerMatrix step = v * v.transpose() * omega;
    IntegerMatrix t = IntegerMatrix::identity(n), t_inverse = IntegerMatrix::identity(n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        t(r, c) += op.multiplier * step(r, c);
        t_inverse(r, c) -= op.multiplier * step(r, c);
      }
    x = t_inverse * x * t;
  }
  OrbitPoint point{x.cast<Rational>(), mu, seed};
  if (!in_symplectic_algebra(point.matrix) || !has_jordan_type(point.matrix, mu))
    throw std::logic_error("symplectic sample left sp_2m or lost its Jordan type for " + mu.to_string());
  return point;
}

/// Partitions of 2m admitted by Gerstenhaber's condition, in enumeration order.
inline std::vector<Partition> symplectic_partitions(int m) {
  std::vector<Partition> out;
  for (auto& p : enumerate_partitions(2 * m))
    if (gerstenhaber_valid(p)) out.push_back(std::move(p));
  return out;
}

/// Stratification check inside sp_2m (lie mode): a sampled point of
/// O^sp_mu satisfies the symplectic closure equations of lambda iff
/// mu <= lambda. lambdas whose closure expansion bound exceeds
/// `expansion_budget` are listed in `skipped` instead of generated.
inline StratificationReport sp_stratification_oracle(int m, int samples, std::uint64_t seed,
                                                     double expansion_budget = 5e7) {
  const int n = 2 * m;
  StratificationReport report{n, {}, {}};
  const auto partitions = symplectic_partitions(m);
  const std::size_t np = partitions.size();
  std::vector<std::vector<OrbitPoint>> points(np, std::vector<OrbitPoint>(samples));
  parallel_for(np * samples, [&](std::size_t slot) {
    const std::size_t mu = slot / samples, s = slot % samples;
    points[mu][s] = sample_sp_orbit_point(partitions[mu], derive_seed(seed, n, mu, s));
  });
  std::vector<std::size_t> kept;
  std::vector<EquationSet> closures;
  for (std::size_t l = 0; l < np; ++l) {
    if (closure_expansion_bound(partitions[l]) > expansion_budget) {
      report.skipped.push_back(partitions[l]);
      continue;
    }
    kept.push_back(l);
    closures.push_back(sp_closure_equations(partitions[l], SpMode::lie));
  }
  std::vector<CompiledEquations> compiled;
  for (const auto& eqs : closures) compiled.emplace_back(eqs);
  std::vector<std::vector<char>> verdicts(np * samples, std::vector<char>(kept.size()));
  parallel_for(np * samples, [&](std::size_t slot) {
    PointTester tester(points[slot / samples][slot % samples].matrix);
    for (std::size_t l = 0; l < kept.size(); ++l) verdicts[slot][l] = tester.vanishes_on(compiled[l]);
  });
  for (std::size_t mu = 0; mu < np; ++mu)
    for (std::size_t l = 0; l < kept.size(); ++l) {
      const Partition& lambda = partitions[kept[l]];
      const bool expected = dominance_leq(partitions[mu], lambda);
      int agree = 0;
      for (int s = 0; s < samples; ++s) agree += (verdicts[mu * samples + s][l] != 0) == expected;
      report.cells.push_back({partitions[mu], lambda, expected, samples, agree});
    }
  return report;
}

}  // namespace orbitforge
