#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "equation_set.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"

namespace orbitforge {

/// Zero tests of many polynomials at integer points, decided exactly by
/// evaluating modulo seven primes just below 2^31:
///   - a nonzero residue proves the value is nonzero;
///   - if every residue is zero and |value| provably stays below the product
///     of the primes, the value is zero;
///   - otherwise the polynomial is evaluated over Z.
namespace modular {

inline constexpr std::array<std::uint64_t, 7> kPrimes = {
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549, 2147483543,
};
/// Each prime exceeds 2^30, so their product exceeds 2^210.
inline constexpr int kProductBits = 7 * 30;

using Residues = std::array<std::uint64_t, kPrimes.size()>;

/// Residues below 2^31 keep products inside 64 bits; the moduli are
/// constants after unrolling, so the reductions avoid hardware division.
template <std::size_t I>
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return a * b % kPrimes[I];
}

template <class F>
inline void for_each_prime(F&& f) {
  [&]<std::size_t... I>(std::index_sequence<I...>) {
    (f(std::integral_constant<std::size_t, I>{}), ...);
  }(std::make_index_sequence<kPrimes.size()>{});
}

inline Residues residues(const Integer& value) {
  Residues out{};
  for (std::size_t i = 0; i < kPrimes.size(); ++i) {
    Integer r = value % kPrimes[i];
    if (r < 0) r += kPrimes[i];
    out[i] = static_cast<std::uint64_t>(r);
  }
  return out;
}

/// Number of bits needed for |value|.
inline int bit_length(const Integer& value) {
  return value == 0 ? 0 : static_cast<int>(msb(abs(value))) + 1;
}

}  // namespace modular

/// Polynomials flattened for repeated modular evaluation. The sources must
/// outlive the compiled form.
class CompiledEquations {
 public:
  explicit CompiledEquations(const EquationSet& eqs) : n_(eqs.n()) {
    for (const auto& eq : eqs.equations()) add(eq.poly);
  }
  CompiledEquations(int n, std::vector<const Polynomial*> polys) : n_(n) {
    for (const Polynomial* p : polys) add(*p);
  }

  const Polynomial& polynomial(std::size_t index) const { return *entries_[index].source; }
  int dim() const { return n_; }
  int max_exponent() const { return max_exp_; }
  std::size_t size() const { return entries_.size(); }

 private:
  friend class IntegerPointTester;

  /// Factors are stored largest variable first. Consecutive terms in grlex
  /// order often start with the same factors; `shared` counts how many
  /// leading factors a term has in common with the previous one.
  struct CompiledTerm {
    std::uint32_t first_factor;
    std::uint16_t factor_count;
    std::uint16_t shared;
  };
  struct Factor {
    std::uint16_t slot;
    std::uint16_t exp;
    friend bool operator==(const Factor&, const Factor&) = default;
  };
  struct Entry {
    const Polynomial* source;
    std::uint32_t first_term;
    std::uint32_t term_end;
    int coeff_bits;
    int degree;
    bool needs_exact = false;
  };

  void add(const Polynomial& poly) {
    Entry entry;
    entry.source = &poly;
    entry.first_term = static_cast<std::uint32_t>(terms_.size());
    Integer abs_sum = 0;
    std::size_t previous = factors_.size(), previous_count = 0;
    for (const auto& term : poly.terms()) {
      CompiledTerm ct{static_cast<std::uint32_t>(factors_.size()), 0, 0};
      const auto& mono = term.monomial.factors();
      for (auto f = mono.rbegin(); f != mono.rend(); ++f) {
        if (f->var == kChartVar) {
          entry.needs_exact = true;
          continue;
        }
        if (var_row(f->var) > n_ || var_col(f->var) > n_)
          throw DomainError("variable " + var_name(f->var) + " outside the point's dimension");
        factors_.push_back({static_cast<std::uint16_t>((var_row(f->var) - 1) * n_ + var_col(f->var) - 1), f->exp});
        max_exp_ = std::max<int>(max_exp_, f->exp);
      }
      ct.factor_count = static_cast<std::uint16_t>(factors_.size() - ct.first_factor);
      while (ct.shared < ct.factor_count && ct.shared < previous_count &&
             factors_[previous + ct.shared] == factors_[ct.first_factor + ct.shared])
        ++ct.shared;
      previous = ct.first_factor;
      previous_count = ct.factor_count;
      terms_.push_back(ct);
      coeffs_.push_back(modular::residues(term.coeff));
      abs_sum += abs(term.coeff);
    }
    entry.term_end = static_cast<std::uint32_t>(terms_.size());
    entry.coeff_bits = modular::bit_length(abs_sum);
    entry.degree = poly.degree();
    entries_.push_back(entry);
  }

  int n_;
  int max_exp_ = 1;
  std::vector<CompiledTerm> terms_;
  std::vector<modular::Residues> coeffs_;
  std::vector<Factor> factors_;
  std::vector<Entry> entries_;
};

/// Exact zero tests at one integer point.
class IntegerPointTester {
 public:
  IntegerPointTester(int n, std::vector<Integer> entries) : n_(n), entries_(std::move(entries)) {
    for (const auto& v : entries_) {
      value_bits_ = std::max(value_bits_, modular::bit_length(v));
      entry_residues_.push_back(modular::residues(v));
    }
  }

  /// Exact test of equation `index` of the compiled set.
  bool vanishes(const CompiledEquations& eqs, std::size_t index) {
    const auto& entry = eqs.entries_[index];
    if (entry.needs_exact) return exact_value(eqs.polynomial(index)) == 0;
    ensure_powers(eqs.max_exponent());
    // |value| < 2^bound, so zero modulo ceil(bound / 30) primes means zero
    const int bound = entry.coeff_bits + entry.degree * value_bits_;
    const std::size_t needed = static_cast<std::size_t>((bound + 29) / 30);
    const std::size_t used = std::min(std::max<std::size_t>(needed, 1), modular::kPrimes.size());
    bool zero = true;
    modular::for_each_prime([&](auto i) {
      if (zero && i < used) zero = residue(eqs, entry, i) == 0;
    });
    if (!zero) return false;
    if (needed <= modular::kPrimes.size()) return true;
    return exact_value(eqs.polynomial(index)) == 0;
  }

  bool vanishes_on(const CompiledEquations& eqs) {
    for (std::size_t i = 0; i < eqs.size(); ++i)
      if (!vanishes(eqs, i)) return false;
    return true;
  }

 private:
  template <std::size_t I>
  std::uint64_t residue(const CompiledEquations& eqs, const CompiledEquations::Entry& entry,
                        std::integral_constant<std::size_t, I>) {
    constexpr std::uint64_t p = modular::kPrimes[I];
    std::uint64_t total = 0;
    prefix_.resize(static_cast<std::size_t>(std::max(entry.degree, 0)) + 1);
    prefix_[0] = 1;
    for (std::uint32_t t = entry.first_term; t < entry.term_end; ++t) {
      const auto& term = eqs.terms_[t];
      const auto* factor = &eqs.factors_[term.first_factor];
      for (std::size_t f = term.shared; f < term.factor_count; ++f)
        prefix_[f + 1] = modular::mul_mod<I>(prefix_[f], powers_[factor[f].slot * stride_ + factor[f].exp][I]);
      total += modular::mul_mod<I>(eqs.coeffs_[t][I], prefix_[term.factor_count]);
      if (total >= p) total -= p;
    }
    return total;
  }

  Integer exact_value(const Polynomial& p) {
    if (!exact_) exact_.emplace(n_, entries_);
    return (*exact_)(p);
  }

  void ensure_powers(int max_exp) {
    if (max_exp < stride_) return;
    stride_ = max_exp + 1;
    powers_.assign(entries_.size() * stride_, {});
    for (std::size_t slot = 0; slot < entries_.size(); ++slot) {
      modular::Residues current;
      current.fill(1);
      for (int e = 0; e < stride_; ++e) {
        powers_[slot * stride_ + e] = current;
        modular::for_each_prime([&](auto i) { current[i] = modular::mul_mod<i>(current[i], entry_residues_[slot][i]); });
      }
    }
  }

  int n_;
  std::vector<Integer> entries_;
  std::vector<modular::Residues> entry_residues_;
  int value_bits_ = 0;
  int stride_ = 0;
  std::vector<modular::Residues> powers_;
  std::vector<std::uint64_t> prefix_;
  std::optional<PointEvaluator<Integer>> exact_;
};

}  // namespace orbitforge
