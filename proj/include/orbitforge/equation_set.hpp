#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "partitions.hpp"
#include "polynomial.hpp"
#include "subsets.hpp"

namespace orbitforge {

/// minor(X^k, rows, cols) = 0
struct MinorSource {
  int k;
  IndexMask rows;
  IndexMask cols;
  friend bool operator==(const MinorSource&, const MinorSource&) = default;
};

/// Spanning polynomial of V_{i,p} for the ordered pair (P, Q).
struct WeymanSource {
  int i;
  int p;
  IndexMask rows;
  IndexMask cols;
  friend bool operator==(const WeymanSource&, const WeymanSource&) = default;
};

/// Symplectic constraint: family is "lie" for entry (r, s) of X^T Omega + Omega X,
/// or "lambda-odd", "lambda-even", "lambda-rest" for the three quadratic families.
struct SymplecticSource {
  std::string family;
  int r;
  int s;
  friend bool operator==(const SymplecticSource&, const SymplecticSource&) = default;
};

/// h*t - 1 where h = minor(X^k, rows, cols) is the j-th r_k x r_k minor.
struct ChartSource {
  int j;
  int k;
  IndexMask rows;
  IndexMask cols;
  friend bool operator==(const ChartSource&, const ChartSource&) = default;
};

using Provenance = std::variant<MinorSource, WeymanSource, SymplecticSource, ChartSource>;

inline std::string describe(const Provenance& source) {
  struct Visitor {
    std::string operator()(const MinorSource& m) const {
      return "k=" + std::to_string(m.k) + " rows=" + format_indices(m.rows) + " cols=" + format_indices(m.cols);
    }
    std::string operator()(const WeymanSource& w) const {
      return "V_{" + std::to_string(w.i) + "," + std::to_string(w.p) + "} P=" + format_indices(w.rows) +
             " Q=" + format_indices(w.cols);
    }
    std::string operator()(const SymplecticSource& s) const {
      return "sp:" + s.family + " (" + std::to_string(s.r) + "," + std::to_string(s.s) + ")";
    }
    std::string operator()(const ChartSource& c) const {
      return "chart j=" + std::to_string(c.j) + " k=" + std::to_string(c.k) + " h=X^k" +
             format_indices(c.rows) + "|" + format_indices(c.cols);
    }
  };
  return std::visit(Visitor{}, source);
}

struct Equation {
  Polynomial poly;
  /// Every generator that produced this polynomial, in generation order.
  std::vector<Provenance> provenance;
};

/// Ordered, deduplicated list of polynomials (each read as "= 0").
/// Insertion order is the canonical output order; a polynomial seen again
/// only gains a provenance entry. Zero polynomials are dropped but counted.
class EquationSet {
 public:
  EquationSet() = default;
  EquationSet(std::string algebra, int n, std::optional<Partition> lambda = std::nullopt)
      : algebra_(std::move(algebra)), n_(n), lambda_(std::move(lambda)) {}

  const std::string& algebra() const { return algebra_; }
  int n() const { return n_; }
  const std::optional<Partition>& lambda() const { return lambda_; }
  const std::vector<Equation>& equations() const { return equations_; }
  std::size_t size() const { return equations_.size(); }
  bool empty() const { return equations_.empty(); }
  /// Number of add() calls, i.e. the count before deduplication.
  std::size_t count_before_dedup() const { return added_; }

  /// Free-form string metadata carried into every serialization.
  const std::map<std::string, std::string>& metadata() const { return metadata_; }
  void set_metadata(const std::string& key, std::string value) { metadata_[key] = std::move(value); }

  void add(Polynomial poly, Provenance source) {
    ++added_;
    if (poly.is_zero()) {
      ++dropped_zero_;
      return;
    }
    auto& bucket = index_[poly.hash()];
    for (std::size_t idx : bucket)
      if (equations_[idx].poly == poly) {
        equations_[idx].provenance.push_back(std::move(source));
        return;
      }
    bucket.push_back(equations_.size());
    equations_.push_back({std::move(poly), {std::move(source)}});
  }

  /// Appends every equation of other (with all its provenances).
  void append(const EquationSet& other) {
    for (const auto& eq : other.equations_)
      for (const auto& source : eq.provenance) add(eq.poly, source);
    added_ += other.dropped_zero_;
    dropped_zero_ += other.dropped_zero_;
  }

  std::size_t dropped_zero() const { return dropped_zero_; }

  /// Restores the pre-dedup counters after deserialization.
  void set_counters(std::size_t added, std::size_t dropped_zero) {
    added_ = added;
    dropped_zero_ = dropped_zero;
  }

  bool contains(const Polynomial& poly) const {
    auto it = index_.find(poly.hash());
    if (it == index_.end()) return false;
    for (std::size_t idx : it->second)
      if (equations_[idx].poly == poly) return true;
    return false;
  }

  /// Variables used by any equation, in ascending id order.
  std::vector<VarId> variables() const {
    std::vector<VarId> vars;
    for (const auto& eq : equations_)
      for (const auto& t : eq.poly.terms())
        for (auto f : t.monomial.factors()) vars.push_back(f.var);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
  }

 private:
  std::string algebra_ = "gl";
  int n_ = 0;
  std::optional<Partition> lambda_;
  std::vector<Equation> equations_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> index_;
  std::map<std::string, std::string> metadata_;
  std::size_t added_ = 0;
  std::size_t dropped_zero_ = 0;
};

/// One localization piece: the closure equations plus h*t - 1.
struct Chart {
  std::shared_ptr<const EquationSet> base;
  Polynomial inverted_minor;
  Polynomial chart_relation;
  /// 1-based position of h among the r_k x r_k minors of X^k.
  int j;
  int k;
  IndexMask rows;
  IndexMask cols;

  /// base equations followed by the chart relation.
  EquationSet equations() const {
    EquationSet out(base->algebra(), base->n(), base->lambda());
    out.append(*base);
    for (const auto& [key, value] : base->metadata()) out.set_metadata(key, value);
    out.add(chart_relation, ChartSource{j, k, rows, cols});
    return out;
  }
};

struct ChartAtlas {
  std::shared_ptr<const EquationSet> base;
  std::vector<Chart> charts;
  /// Set when the atlas is empty for a structural reason (origin orbit).
  std::optional<std::string> warning;
};

}  // namespace orbitforge
