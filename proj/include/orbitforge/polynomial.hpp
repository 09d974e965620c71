#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace orbitforge {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Variable id. x_{i,j} is encoded row-major as (i << 8) | j with 1-based
/// indices, so numeric order is x_{1,1} < x_{1,2} < ... < x_{n,n}; the
/// chart variable t gets the largest id.
using VarId = std::uint16_t;

inline constexpr VarId kChartVar = 0xFFFF;
inline constexpr int kMaxDim = 254;

constexpr VarId matrix_var(int row, int col) {
  return static_cast<VarId>((row << 8) | col);
}
constexpr int var_row(VarId v) { return v >> 8; }
constexpr int var_col(VarId v) { return v & 0xFF; }

inline std::string var_name(VarId v) {
  if (v == kChartVar) return "t";
  return "x_" + std::to_string(var_row(v)) + "_" + std::to_string(var_col(v));
}

struct VarPower {
  VarId var;
  std::uint16_t exp;
  friend bool operator==(const VarPower&, const VarPower&) = default;
};

/// Product of variable powers; factors sorted by ascending VarId, no zero exponents.
class Monomial {
 public:
  using Factors = boost::container::small_vector<VarPower, 8>;

  Monomial() = default;
  static Monomial of(VarId var, std::uint16_t exp = 1) {
    Monomial m;
    if (exp > 0) {
      m.factors_.push_back({var, exp});
      m.degree_ = exp;
    }
    return m;
  }
  /// Factors may come in any order; repeated variables are merged.
  static Monomial from_factors(std::vector<VarPower> factors) {
    std::sort(factors.begin(), factors.end(), [](auto a, auto b) { return a.var < b.var; });
    Monomial m;
    for (auto f : factors) {
      if (f.exp == 0) continue;
      if (!m.factors_.empty() && m.factors_.back().var == f.var)
        m.factors_.back().exp = static_cast<std::uint16_t>(m.factors_.back().exp + f.exp);
      else
        m.factors_.push_back(f);
      m.degree_ += f.exp;
    }
    return m;
  }

  const Factors& factors() const { return factors_; }
  std::uint32_t degree() const { return degree_; }
  bool is_one() const { return factors_.empty(); }

  std::uint16_t exponent(VarId var) const {
    for (auto f : factors_)
      if (f.var == var) return f.exp;
    return 0;
  }
  bool contains(VarId var) const { return exponent(var) > 0; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin(), j = b.factors_.begin();
    while (i != a.factors_.end() && j != b.factors_.end()) {
      if (i->var < j->var) {
        out.factors_.push_back(*i++);
      } else if (j->var < i->var) {
        out.factors_.push_back(*j++);
      } else {
        out.factors_.push_back({i->var, static_cast<std::uint16_t>(i->exp + j->exp)});
        ++i, ++j;
      }
    }
    out.factors_.insert(out.factors_.end(), i, a.factors_.end());
    out.factors_.insert(out.factors_.end(), j, b.factors_.end());
    out.degree_ = a.degree_ + b.degree_;
    return out;
  }

  /// Monomial with `var` removed.
  Monomial without(VarId var) const {
    Monomial out;
    for (auto f : factors_)
      if (f.var != var) {
        out.factors_.push_back(f);
        out.degree_ += f.exp;
      }
    return out;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.factors_ == b.factors_;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto f : factors_) {
      h ^= (static_cast<std::uint64_t>(f.var) << 16) | f.exp;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

 private:
  Factors factors_;
  std::uint32_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Graded lexicographic comparison; among equal degrees the exponent of the
/// largest variable (t, then x_{n,n}, ...) decides first.
inline bool grlex_less(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  auto i = a.factors().rbegin(), j = b.factors().rbegin();
  for (; i != a.factors().rend() && j != b.factors().rend(); ++i, ++j) {
    if (i->var != j->var) return i->var < j->var;
    if (i->exp != j->exp) return i->exp < j->exp;
  }
  return i == a.factors().rend() && j != b.factors().rend();
}

struct Term {
  Monomial monomial;
  Integer coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial with Integer coefficients. Terms are kept in descending
/// grlex order with no zero coefficients, so equal polynomials have equal
/// term vectors.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(int c) : Polynomial(Integer(c)) {}  // NOLINT(google-explicit-constructor)
  Polynomial(const Integer& c) {                 // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.push_back({Monomial{}, c});
  }
  static Polynomial variable(VarId v) { return from_term(Monomial::of(v), 1); }
  static Polynomial x(int row, int col) { return variable(matrix_var(row, col)); }
  static Polynomial chart_variable() { return variable(kChartVar); }
  static Polynomial from_term(Monomial m, Integer c) {
    Polynomial p;
    if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
  }
  /// Collects like terms and canonicalizes; input order is irrelevant.
  static Polynomial from_terms(std::vector<Term> terms) {
    std::unordered_map<Monomial, Integer, MonomialHash> acc;
    acc.reserve(terms.size());
    for (auto& t : terms) acc[std::move(t.monomial)] += t.coeff;
    return from_accumulator(std::move(acc));
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().monomial.degree()); }

  bool is_homogeneous() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const Term& t) { return static_cast<int>(t.monomial.degree()) == degree(); });
  }

  bool contains(VarId var) const {
    return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.monomial.contains(var); });
  }

  /// Coefficient of var^e viewed as a polynomial in the remaining variables.
  Polynomial coefficient_of(VarId var, std::uint16_t e) const {
    std::vector<Term> picked;
    for (const auto& t : terms_)
      if (t.monomial.exponent(var) == e) picked.push_back({t.monomial.without(var), t.coeff});
    return from_terms(std::move(picked));
  }

  Polynomial operator-() const {
    Polynomial out = *this;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }
  Polynomial& operator+=(const Polynomial& b) { return *this = merge(*this, b, false); }
  Polynomial& operator-=(const Polynomial& b) { return *this = merge(*this, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.terms_.size() == 1 && a.terms_[0].monomial.is_one()) return b.scaled(a.terms_[0].coeff);
    if (b.terms_.size() == 1 && b.terms_[0].monomial.is_one()) return a.scaled(b.terms_[0].coeff);
    std::unordered_map<Monomial, Integer, MonomialHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) acc[ta.monomial * tb.monomial] += ta.coeff * tb.coeff;
    return from_accumulator(std::move(acc));
  }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  Polynomial scaled(const Integer& c) const {
    if (c == 0) return {};
    Polynomial out = *this;
    for (auto& t : out.terms_) t.coeff *= c;
    return out;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::size_t hash() const {
    std::size_t h = terms_.size();
    for (const auto& t : terms_) {
      h = h * 1000003u ^ t.monomial.hash();
      h = h * 1000003u ^ std::hash<std::string>{}(t.coeff.str());
    }
    return h;
  }

  /// Human-readable form with explicit `*` and `^`, e.g. "x_1_1^2 - 2*x_1_2*t + 3".
  std::string to_string() const { return format(var_name); }

  /// Same layout with caller-chosen variable names.
  template <class Namer>
  std::string format(const Namer& name) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      Integer magnitude = abs(t.coeff);
      if (first) {
        if (t.coeff < 0) out += "-";
      } else {
        out += t.coeff < 0 ? " - " : " + ";
      }
      first = false;
      std::string mono;
      for (const auto& f : t.monomial.factors()) {
        if (!mono.empty()) mono += "*";
        mono += name(f.var);
        if (f.exp > 1) mono += "^" + std::to_string(f.exp);
      }
      if (mono.empty()) {
        out += magnitude.str();
      } else {
        if (magnitude != 1) out += magnitude.str() + "*";
        out += mono;
      }
    }
    return out;
  }

 private:
  static Polynomial from_accumulator(std::unordered_map<Monomial, Integer, MonomialHash>&& acc) {
    Polynomial out;
    out.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) out.terms_.push_back({m, std::move(c)});
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const Term& a, const Term& b) { return grlex_less(b.monomial, a.monomial); });
    return out;
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    Polynomial out;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && grlex_less(j->monomial, i->monomial))) {
        out.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || grlex_less(i->monomial, j->monomial)) {
        out.terms_.push_back({j->monomial, subtract ? Integer(-j->coeff) : j->coeff});
        ++j;
      } else {
        Integer c = subtract ? Integer(i->coeff - j->coeff) : Integer(i->coeff + j->coeff);
        if (c != 0) out.terms_.push_back({i->monomial, std::move(c)});
        ++i, ++j;
      }
    }
    return out;
  }

  std::vector<Term> terms_;
};

struct PolynomialHash {
  std::size_t operator()(const Polynomial& p) const { return p.hash(); }
};

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

/// All coefficients of g (the projections pi_t for every term t), in term order.
inline std::vector<Integer> coefficients(const Polynomial& g) {
  std::vector<Integer> out;
  out.reserve(g.term_count());
  for (const auto& t : g.terms()) out.push_back(t.coeff);
  return out;
}

/// Number of terms of g whose monomial contains var.
inline std::size_t occurrence_count(const Polynomial& g, VarId var) {
  return static_cast<std::size_t>(std::count_if(g.terms().begin(), g.terms().end(),
                                                [&](const Term& t) { return t.monomial.contains(var); }));
}

inline Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

inline Integer factorial(int n) {
  Integer out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

/// Sum_{d=1}^{deg g} C(d + n - 1, n - 1), computed exactly as written (n, not n^2).
inline Integer omega_g(const Polynomial& g, int n) {
  if (g.is_zero()) throw DomainError("degree undefined");
  if (n < 1) throw DomainError("omega_g needs a positive dimension");
  Integer out = 0;
  for (int d = 1; d <= g.degree(); ++d) out += binomial(d + n - 1, n - 1);
  return out;
}

/// Caches powers of the point's coordinates so many polynomials can be
/// evaluated at one point cheaply. Scalar is Integer or Rational.
template <class Scalar>
class PointEvaluator {
 public:
  /// entries is row-major: x_{i,j} takes entries[(i-1)*n + (j-1)].
  PointEvaluator(int n, std::vector<Scalar> entries, std::optional<Scalar> t_value = std::nullopt)
      : n_(n), entries_(std::move(entries)), t_value_(std::move(t_value)), powers_(entries_.size() + 1) {
    if (static_cast<int>(entries_.size()) != n * n) throw DomainError("evaluation point must be n x n");
  }

  Scalar operator()(const Polynomial& p) {
    Scalar total = 0;
    for (const auto& term : p.terms()) {
      Scalar value = Scalar(term.coeff);
      for (auto f : term.monomial.factors()) value *= power(f.var, f.exp);
      total += value;
    }
    return total;
  }

 private:
  const Scalar& power(VarId var, std::uint16_t exp) {
    std::size_t slot;
    const Scalar* base;
    if (var == kChartVar) {
      if (!t_value_) throw DomainError("polynomial uses the chart variable t but no t value was supplied");
      slot = entries_.size();
      base = &*t_value_;
    } else {
      const int r = var_row(var), c = var_col(var);
      if (r < 1 || r > n_ || c < 1 || c > n_) throw DomainError("variable " + var_name(var) + " outside the point's dimension");
      slot = static_cast<std::size_t>((r - 1) * n_ + (c - 1));
      base = &entries_[slot];
    }
    auto& cache = powers_[slot];
    if (cache.empty()) cache.push_back(Scalar(1));
    while (cache.size() <= exp) cache.push_back(cache.back() * *base);
    return cache[exp];
  }

  int n_;
  std::vector<Scalar> entries_;
  std::optional<Scalar> t_value_;
  std::vector<std::vector<Scalar>> powers_;
};

}  // namespace orbitforge
