#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/miller_rabin.hpp>

#include "equation_set.hpp"
#include "matrix.hpp"
#include "orbits_gl.hpp"
#include "partitions.hpp"
#include "polynomial.hpp"

namespace orbitforge {

/// max{r_k}!, the coefficient size the closure equations are claimed not to exceed.
inline Integer coefficient_bound(const Partition& lambda) { return factorial(rank_sequence(lambda).max_rank()); }

/// Deterministic for the sizes that arise here (a fixed-seed Miller-Rabin
/// with 25 rounds; exact trial division below 2^20).
inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (n < (1 << 20)) {
    const auto v = static_cast<std::uint32_t>(n);
    for (std::uint32_t d = 2; d * d <= v; ++d)
      if (v % d == 0) return false;
    return true;
  }
  std::mt19937 rng(0x5eed);
  return boost::multiprecision::miller_rabin_test(n, 25, rng);
}

/// Smallest prime strictly greater than bound.
inline Integer smallest_admissible_prime(const Integer& bound) {
  if (bound < 1) throw DomainError("coefficient bound must be >= 1");
  Integer p = bound + 1;
  while (!is_prime(p)) ++p;
  return p;
}

inline Integer max_abs_coefficient(const Polynomial& g) {
  Integer out = 0;
  for (const auto& c : coefficients(g)) out = std::max(out, Integer(abs(c)));
  return out;
}

struct LabeledCoefficients {
  std::string label;
  std::vector<Integer> values;  ///< C_g in term order
};

struct CoefficientReport {
  Partition lambda;
  Integer max_coeff_F = 0;
  Integer max_coeff_H = 0;
  Integer paper_bound = 1;
  Integer prime = 2;
  std::vector<LabeledCoefficients> closure_sets;
  std::vector<LabeledCoefficients> nonvanishing_sets;

  /// The strict inequality max C_F > max C_H, reported but not required.
  bool f_exceeds_h() const { return max_coeff_F > max_coeff_H; }
  bool within_bound() const { return max_coeff_F <= paper_bound; }
};

inline CoefficientReport coefficient_report(const Partition& lambda) {
  CoefficientReport report;
  report.lambda = lambda;
  report.paper_bound = coefficient_bound(lambda);
  report.prime = smallest_admissible_prime(report.paper_bound);
  const OrbitEquations data = orbit_equations(lambda);
  for (const auto& eq : data.closure.equations()) {
    report.max_coeff_F = std::max(report.max_coeff_F, max_abs_coefficient(eq.poly));
    report.closure_sets.push_back({describe(eq.provenance.front()), coefficients(eq.poly)});
  }
  for (const auto& h : data.nonvanishing) {
    report.max_coeff_H = std::max(report.max_coeff_H, max_abs_coefficient(h.h));
    report.nonvanishing_sets.push_back(
        {"h_" + std::to_string(h.j) + "," + std::to_string(h.k), coefficients(h.h)});
  }
  return report;
}

/// occurrence_count(det X_n, x_{i,j}) for every (i, j), by full Leibniz expansion.
inline std::vector<std::size_t> det_occurrences(int n) {
  if (n < 1 || n > 6) throw DomainError("expansion too large");
  const SymbolicMatrix x = generic_matrix(n);
  IndexSet all(n);
  std::iota(all.begin(), all.end(), 1);
  const Polynomial det = minor_leibniz(x, all, all);
  std::vector<std::size_t> out;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) out.push_back(occurrence_count(det, matrix_var(i, j)));
  return out;
}

/// Every variable occurs in exactly (n-1)! terms of det(X_n).
inline bool verify_det_occurrences(int n) {
  const auto counts = det_occurrences(n);
  const Integer expected = factorial(n - 1);
  return std::all_of(counts.begin(), counts.end(), [&](std::size_t c) { return Integer(c) == expected; });
}

/// Least non-negative residue of every coefficient; vanishing terms dropped.
inline Polynomial reduce_mod_p(const Polynomial& g, const Integer& p) {
  if (p < 2) throw DomainError("modulus must be at least 2");
  std::vector<Term> terms;
  for (const auto& t : g.terms()) {
    Integer r = t.coeff % p;
    if (r < 0) r += p;
    if (r != 0) terms.push_back({t.monomial, std::move(r)});
  }
  return Polynomial::from_terms(std::move(terms));
}

/// Reduces every equation modulo the prime p. Equations that become 0 are
/// dropped (and counted); ones that become equal are merged.
inline EquationSet reduce_mod_p(const EquationSet& eqs, const Integer& p) {
  if (!is_prime(p)) throw DomainError("modulus " + p.str() + " is not prime");
  EquationSet out(eqs.algebra(), eqs.n(), eqs.lambda());
  for (const auto& [key, value] : eqs.metadata()) out.set_metadata(key, value);
  out.set_metadata("modulus", p.str());
  for (const auto& eq : eqs.equations()) {
    const Polynomial reduced = reduce_mod_p(eq.poly, p);
    for (const auto& source : eq.provenance) out.add(reduced, source);
  }
  return out;
}

}  // namespace orbitforge
