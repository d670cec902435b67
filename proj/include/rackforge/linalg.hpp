#ifndef RACKFORGE_LINALG_HPP
#define RACKFORGE_LINALG_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "rackforge/scalar.hpp"

namespace rackforge {

/// Dense row-major matrix over an exact or floating scalar.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, T fill = scalar_traits<T>::zero())
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = scalar_traits<T>::one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  Matrix operator+(const Matrix& o) const {
    Matrix r(rows_, cols_);
    for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    Matrix r(rows_, cols_);
    for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    Matrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (scalar_traits<T>::is_zero(a, 0.0)) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) = r(i, j) + a * o(k, j);
      }
    return r;
  }
  Matrix operator*(const T& s) const {
    Matrix r(rows_, cols_);
    for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] * s;
    return r;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> r(rows_, scalar_traits<T>::zero());
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r[i] = r[i] + (*this)(i, j) * v[j];
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  T trace() const {
    T t = scalar_traits<T>::zero();
    for (int i = 0; i < rows_; ++i) t = t + (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const T& v : data_) m = std::max(m, scalar_traits<T>::abs_double(v));
    return m;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const T& s, const Matrix<T>& m) {
  return m * s;
}

namespace detail {

/// Pivot choice: exact scalars take the first nonzero, floats the largest magnitude.
template <class T>
int pick_pivot(const Matrix<T>& m, int col, int from_row, double tol) {
  if constexpr (scalar_traits<T>::exact) {
    for (int i = from_row; i < m.rows(); ++i)
      if (!scalar_traits<T>::is_zero(m(i, col), 0.0)) return i;
    return -1;
  } else {
    int best = -1;
    double best_abs = tol;
    for (int i = from_row; i < m.rows(); ++i) {
      double a = scalar_traits<T>::abs_double(m(i, col));
      if (a > best_abs) {
        best_abs = a;
        best = i;
      }
    }
    return best;
  }
}

}  // namespace detail

/// In-place reduced row echelon form. Returns pivot column indices.
/// Pivots are leftmost-first, rows scaled to a leading 1, so the result is the
/// canonical form of the row space; equality of RREFs decides subspace equality.
template <class T>
std::vector<int> rref(Matrix<T>& m, double tol = scalar_traits<T>::default_tol()) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = detail::pick_pivot(m, col, row, tol);
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    T inv = scalar_traits<T>::one() / m(row, col);
    for (int j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    m(row, col) = scalar_traits<T>::one();
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row) continue;
      T f = m(i, col);
      if (scalar_traits<T>::is_zero(f, 0.0)) continue;
      for (int j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(row, j);
      m(i, col) = scalar_traits<T>::zero();
    }
    pivots.push_back(col);
    ++row;
  }
  if constexpr (!scalar_traits<T>::exact) {
    // Flush sub-tolerance residue so downstream equality tests see clean zeros.
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (scalar_traits<T>::is_zero(m(i, j), tol) && !scalar_traits<T>::is_zero(m(i, j), 0.0))
          m(i, j) = scalar_traits<T>::zero();
  }
  return pivots;
}

template <class T>
int rank(Matrix<T> m, double tol = scalar_traits<T>::default_tol()) {
  return static_cast<int>(rref(m, tol).size());
}

/// Basis of the null space of m, one column vector per free variable.
template <class T>
std::vector<std::vector<T>> kernel_basis(Matrix<T> m, double tol = scalar_traits<T>::default_tol()) {
  int n = m.cols();
  std::vector<int> pivots = rref(m, tol);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(n, scalar_traits<T>::zero());
    v[free] = scalar_traits<T>::one();
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solve A x = b. Empty optional when inconsistent; under-determined systems
/// return the particular solution with free variables at zero.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b,
                                    double tol = scalar_traits<T>::default_tol()) {
  Matrix<T> aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  std::vector<int> pivots = rref(aug, tol);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<T> x(a.cols(), scalar_traits<T>::zero());
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(static_cast<int>(r), a.cols());
  return x;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a, double tol = scalar_traits<T>::default_tol()) {
  int n = a.rows();
  Matrix<T> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = scalar_traits<T>::one();
  }
  std::vector<int> pivots = rref(aug, tol);
  if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1) return std::nullopt;
  Matrix<T> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class T>
Matrix<double> to_double(const Matrix<T>& m) {
  Matrix<double> r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = scalar_traits<T>::to_double(m(i, j));
  return r;
}

template <class T>
std::vector<double> to_double(const std::vector<T>& v) {
  std::vector<double> r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = scalar_traits<T>::to_double(v[i]);
  return r;
}

template <class T>
std::vector<T> vec_add(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <class T>
std::vector<T> vec_sub(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class T>
std::vector<T> vec_scale(const T& s, const std::vector<T>& a) {
  std::vector<T> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

template <class T>
double vec_norm2(const std::vector<T>& a) {
  double s = 0.0;
  for (const T& v : a) {
    double d = scalar_traits<T>::abs_double(v);
    s += d * d;
  }
  return std::sqrt(s);
}

template <class T>
double vec_norm_inf(const std::vector<T>& a) {
  double m = 0.0;
  for (const T& v : a) m = std::max(m, scalar_traits<T>::abs_double(v));
  return m;
}

/// Row space in canonical (RREF, zero rows dropped) form. Two subspaces are
/// equal iff their canonical matrices are equal entrywise.
template <class T>
class Subspace {
 public:
  Subspace() = default;
  Subspace(Matrix<T> generators, double tol = scalar_traits<T>::default_tol()) {
    std::vector<int> pivots = rref(generators, tol);
    dim_ = static_cast<int>(pivots.size());
    basis_ = Matrix<T>(dim_, generators.cols());
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < generators.cols(); ++j) basis_(i, j) = generators(i, j);
  }

  static Subspace from_vectors(const std::vector<std::vector<T>>& vecs, int ambient_dim,
                               double tol = scalar_traits<T>::default_tol()) {
    Matrix<T> g(static_cast<int>(vecs.size()), ambient_dim);
    for (size_t i = 0; i < vecs.size(); ++i)
      for (int j = 0; j < ambient_dim; ++j) g(static_cast<int>(i), j) = vecs[i][j];
    return Subspace(std::move(g), tol);
  }

  int dim() const { return dim_; }
  int ambient_dim() const { return basis_.cols(); }
  const Matrix<T>& basis() const { return basis_; }

  std::vector<T> basis_vector(int i) const {
    std::vector<T> v(basis_.cols());
    for (int j = 0; j < basis_.cols(); ++j) v[j] = basis_(i, j);
    return v;
  }

  bool contains(const std::vector<T>& v, double tol = scalar_traits<T>::default_tol()) const {
    Matrix<T> aug(dim_ + 1, basis_.cols());
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < basis_.cols(); ++j) aug(i, j) = basis_(i, j);
    for (int j = 0; j < basis_.cols(); ++j) aug(dim_, j) = v[j];
    return rank(std::move(aug), tol) == dim_;
  }

  bool contains_subspace(const Subspace& other, double tol = scalar_traits<T>::default_tol()) const {
    for (int i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_vector(i), tol)) return false;
    return true;
  }

  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

 private:
  int dim_ = 0;
  Matrix<T> basis_;
};

}  // namespace rackforge

#endif
