#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "error.hpp"
#include "parallel.hpp"
#include "polynomial.hpp"
#include "subsets.hpp"

namespace orbitforge {

/// Row-major dense matrix with 0-based element access.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, const T& fill = T(0)) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(int n) {
    DenseMatrix out(n, n);
    for (int i = 0; i < n; ++i) out(i, i) = T(1);
    return out;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(int r, int c) { return data_[r * cols_ + c]; }
  const T& operator()(int r, int c) const { return data_[r * cols_ + c]; }
  const std::vector<T>& data() const { return data_; }

  DenseMatrix transpose() const {
    DenseMatrix out(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  template <class U>
  DenseMatrix<U> cast() const {
    DenseMatrix<U> out(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) out(r, c) = U((*this)(r, c));
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& v) { return v == T(0); });
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix dimension mismatch in product");
    DenseMatrix out(a.rows_, b.cols_);
    for (int r = 0; r < a.rows_; ++r)
      for (int s = 0; s < a.cols_; ++s) {
        const T& left = a(r, s);
        if (left == T(0)) continue;
        for (int c = 0; c < b.cols_; ++c)
          if (!(b(s, c) == T(0))) out(r, c) += left * b(s, c);
      }
    return out;
  }
  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using SymbolicMatrix = DenseMatrix<Polynomial>;
using IntegerMatrix = DenseMatrix<Integer>;
using RationalMatrix = DenseMatrix<Rational>;

/// The generic matrix X with entry (i, j) = x_{i,j}.
inline SymbolicMatrix generic_matrix(int n) {
  if (n < 1 || n > kMaxDim) throw DomainError("matrix dimension out of range");
  SymbolicMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = Polynomial::x(i + 1, j + 1);
  return out;
}

template <class T>
DenseMatrix<T> matrix_power(const DenseMatrix<T>& m, int k) {
  if (k < 1) throw DomainError("matrix power needs k >= 1");
  if (!m.is_square()) throw DomainError("matrix power needs a square matrix");
  DenseMatrix<T> out = m;
  for (int i = 1; i < k; ++i) out = out * m;
  return out;
}

/// Every minor of a square symbolic matrix up to a given size, computed by
/// Laplace expansion along the first selected row with memoization over
/// (row subset, column subset) pairs: the size-s layer is built from the
/// size-(s-1) layer, so all C(n,s)^2 minors of one size share their work.
class MinorTable {
 public:
  MinorTable(const SymbolicMatrix& m, int max_size) : n_(m.rows()), layers_(max_size + 1) {
    if (!m.is_square()) throw DomainError("minor table needs a square matrix");
    if (max_size < 0 || max_size > n_) throw DomainError("minor size out of range");
    if (n_ > 20) throw DomainError("minor table supports n <= 20");
    position_.assign(std::size_t{1} << n_, -1);
    for (int s = 0; s <= max_size; ++s) {
      auto subsets = subsets_of_size(n_, s);
      for (std::size_t i = 0; i < subsets.size(); ++i) position_[subsets[i]] = static_cast<int>(i);
      subsets_.push_back(std::move(subsets));
    }
    layers_[0] = {Polynomial(1)};
    for (int s = 1; s <= max_size; ++s) build_layer(m, s);
  }

  int dim() const { return n_; }
  int max_size() const { return static_cast<int>(layers_.size()) - 1; }

  /// Size-s subsets in lexicographic order.
  const std::vector<IndexMask>& subsets(int s) const { return subsets_.at(s); }

  const Polynomial& minor(IndexMask rows, IndexMask cols) const {
    const int s = popcount(rows);
    if (s != popcount(cols)) throw DomainError("non-square minor");
    if (s > max_size()) throw DomainError("minor size exceeds table");
    if ((rows | cols) & ~full_mask(n_)) throw DomainError("minor index outside matrix");
    const std::size_t width = subsets_[s].size();
    return layers_[s][position_[rows] * width + position_[cols]];
  }

 private:
  void build_layer(const SymbolicMatrix& m, int s) {
    const auto& subs = subsets_[s];
    const std::size_t width = subs.size();
    auto& layer = layers_[s];
    layer.assign(width * width, Polynomial{});
    const auto& previous = layers_[s - 1];
    const std::size_t prev_width = subsets_[s - 1].size();
    parallel_for(width * width, [&](std::size_t slot) {
      const IndexMask rows = subs[slot / width];
      const IndexMask cols = subs[slot % width];
      const int top = std::countr_zero(rows);
      const IndexMask rest_rows = rows & (rows - 1);
      Polynomial sum;
      int position = 0;
      for (IndexMask scan = cols; scan; scan &= scan - 1, ++position) {
        const int col = std::countr_zero(scan);
        const Polynomial& entry = m(top, col);
        if (entry.is_zero()) continue;
        const IndexMask rest_cols = cols & ~(IndexMask{1} << col);
        const Polynomial& sub =
            previous[static_cast<std::size_t>(position_[rest_rows]) * prev_width + position_[rest_cols]];
        if (sub.is_zero()) continue;
        Polynomial product = entry * sub;
        if (position % 2) sum -= product;
        else sum += product;
      }
      layer[slot] = std::move(sum);
    });
  }

  int n_;
  std::vector<int> position_;
  std::vector<std::vector<IndexMask>> subsets_;
  std::vector<std::vector<Polynomial>> layers_;
};

namespace detail {
inline void check_minor_indices(const SymbolicMatrix& m, const IndexSet& rows, const IndexSet& cols) {
  if (rows.size() != cols.size()) throw DomainError("non-square minor");
  for (int i : rows)
    if (i < 1 || i > m.rows()) throw DomainError("minor row index out of range");
  for (int j : cols)
    if (j < 1 || j > m.cols()) throw DomainError("minor column index out of range");
}

inline SymbolicMatrix submatrix(const SymbolicMatrix& m, IndexSet rows, IndexSet cols) {
  std::sort(rows.begin(), rows.end());
  std::sort(cols.begin(), cols.end());
  const int s = static_cast<int>(rows.size());
  SymbolicMatrix sub(s, s);
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) sub(a, b) = m(rows[a] - 1, cols[b] - 1);
  return sub;
}
}  // namespace detail

/// Determinant of the submatrix on rows P and columns Q (1-based, taken in
/// ascending order, no sign prefactor). The empty minor is 1.
inline Polynomial minor(const SymbolicMatrix& m, const IndexSet& rows, const IndexSet& cols) {
  detail::check_minor_indices(m, rows, cols);
  to_mask(rows);
  to_mask(cols);
  if (rows.empty()) return Polynomial(1);
  const SymbolicMatrix sub = detail::submatrix(m, rows, cols);
  const int s = sub.rows();
  return MinorTable(sub, s).minor(full_mask(s), full_mask(s));
}

/// Same minor by the Leibniz permutation sum. Independent of MinorTable;
/// used to cross-check it.
inline Polynomial minor_leibniz(const SymbolicMatrix& m, const IndexSet& rows, const IndexSet& cols) {
  detail::check_minor_indices(m, rows, cols);
  to_mask(rows);
  to_mask(cols);
  const SymbolicMatrix sub = detail::submatrix(m, rows, cols);
  const int s = sub.rows();
  std::vector<int> sigma(s);
  std::iota(sigma.begin(), sigma.end(), 0);
  Polynomial det;
  do {
    int inversions = 0;
    for (int a = 0; a < s; ++a)
      for (int b = a + 1; b < s; ++b)
        if (sigma[a] > sigma[b]) ++inversions;
    Polynomial product(inversions % 2 ? -1 : 1);
    for (int a = 0; a < s && !product.is_zero(); ++a) product *= sub(a, sigma[a]);
    det += product;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return det;
}

inline Polynomial determinant(const SymbolicMatrix& m) {
  IndexSet all(m.rows());
  std::iota(all.begin(), all.end(), 1);
  return minor(m, all, all);
}

/// Rank over Q by Gaussian elimination.
inline int rank(RationalMatrix m) {
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int pivot = r;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(r, j));
    for (int i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      const Rational factor = m(i, c) / m(r, c);
      for (int j = c; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
    }
    ++r;
  }
  return r;
}

inline int rank(const IntegerMatrix& m) { return rank(m.cast<Rational>()); }

/// Determinant over Q by Gaussian elimination.
inline Rational determinant(RationalMatrix m) {
  if (!m.is_square()) throw DomainError("determinant needs a square matrix");
  Rational det = 1;
  const int n = m.rows();
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    while (pivot < n && m(pivot, c) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(m(pivot, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Rational factor = m(i, c) / m(c, c);
      for (int j = c; j < n; ++j) m(i, j) -= factor * m(c, j);
    }
  }
  return det;
}

/// Exact substitution of an n x n point (and optionally t) into p.
inline Rational evaluate(const Polynomial& p, const RationalMatrix& point,
                         std::optional<Rational> t_value = std::nullopt) {
  if (!point.is_square()) throw DomainError("evaluation point must be square");
  PointEvaluator<Rational> at(point.rows(), point.data(), std::move(t_value));
  return at(p);
}

/// Evaluates every entry of a symbolic matrix at a numeric point.
template <class Scalar>
DenseMatrix<Scalar> evaluate_matrix(const SymbolicMatrix& m, PointEvaluator<Scalar>& at) {
  DenseMatrix<Scalar> out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r, c) = at(m(r, c));
  return out;
}

}  // namespace orbitforge
