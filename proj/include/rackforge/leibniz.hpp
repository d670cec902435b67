#ifndef RACKFORGE_LEIBNIZ_HPP
#define RACKFORGE_LEIBNIZ_HPP

#include <string>
#include <utility>
#include <vector>

#include "rackforge/linalg.hpp"
#include "rackforge/report.hpp"

namespace rackforge {

/// Algebra given by structure constants: [e_i, e_j] = sum_k c[i][j][k] e_k.
/// The bracket is arbitrary bilinear; which identities hold is checked, never
/// assumed. Scalar mode is uniform per instance.
template <class T>
struct LeibnizAlgebra {
  int dim = 0;
  std::vector<std::string> basis_labels;
  std::vector<std::vector<std::vector<T>>> c;

  static LeibnizAlgebra zero(int n) {
    LeibnizAlgebra a;
    a.dim = n;
    a.c.assign(n, std::vector<std::vector<T>>(n, std::vector<T>(n, scalar_traits<T>::zero())));
    a.basis_labels.resize(n);
    for (int i = 0; i < n; ++i) a.basis_labels[i] = "e" + std::to_string(i + 1);
    return a;
  }

  void set_bracket(int i, int j, std::vector<T> v) { c[i][j] = std::move(v); }

  std::vector<T> basis_vector(int i) const {
    std::vector<T> v(dim, scalar_traits<T>::zero());
    v[i] = scalar_traits<T>::one();
    return v;
  }

  std::vector<T> bracket(const std::vector<T>& x, const std::vector<T>& y) const {
    std::vector<T> r(dim, scalar_traits<T>::zero());
    for (int i = 0; i < dim; ++i) {
      if (scalar_traits<T>::is_zero(x[i], 0.0)) continue;
      for (int j = 0; j < dim; ++j) {
        if (scalar_traits<T>::is_zero(y[j], 0.0)) continue;
        for (int k = 0; k < dim; ++k) r[k] = r[k] + x[i] * y[j] * c[i][j][k];
      }
    }
    return r;
  }

  bool well_formed() const {
    if (dim < 0 || static_cast<int>(c.size()) != dim) return false;
    for (const auto& row : c) {
      if (static_cast<int>(row.size()) != dim) return false;
      for (const auto& v : row)
        if (static_cast<int>(v.size()) != dim) return false;
    }
    return true;
  }
};

template <class T>
LeibnizAlgebra<double> to_double(const LeibnizAlgebra<T>& alg) {
  LeibnizAlgebra<double> r = LeibnizAlgebra<double>::zero(alg.dim);
  r.basis_labels = alg.basis_labels;
  for (int i = 0; i < alg.dim; ++i)
    for (int j = 0; j < alg.dim; ++j)
      for (int k = 0; k < alg.dim; ++k) r.c[i][j][k] = scalar_traits<T>::to_double(alg.c[i][j][k]);
  return r;
}

/// Matrix of y -> [x, y] in the given basis; linear in x.
template <class T>
Matrix<T> adjoint_map(const LeibnizAlgebra<T>& alg, const std::vector<T>& x) {
  if (static_cast<int>(x.size()) != alg.dim) fail(ErrorKind::Input, "adjoint_map: length mismatch");
  Matrix<T> m(alg.dim, alg.dim);
  for (int i = 0; i < alg.dim; ++i) {
    if (scalar_traits<T>::is_zero(x[i], 0.0)) continue;
    for (int j = 0; j < alg.dim; ++j)
      for (int k = 0; k < alg.dim; ++k) m(k, j) = m(k, j) + x[i] * alg.c[i][j][k];
  }
  return m;
}

namespace detail {

template <class T>
Counterexample make_witness(std::vector<int> indices, const std::vector<T>& defect) {
  Counterexample w;
  w.indices = std::move(indices);
  w.defect.reserve(defect.size());
  for (const T& v : defect) w.defect.push_back(scalar_traits<T>::to_string(v));
  w.defect_norm = vec_norm2(defect);
  return w;
}

}  // namespace detail

/// Left derivation property of every ad_{e_i}, checked on all basis triples.
/// Residual per triple (i,j,k): [e_i,[e_j,e_k]] - [[e_i,e_j],e_k] - [e_j,[e_i,e_k]].
template <class T>
VerificationReport verify_leibniz(const LeibnizAlgebra<T>& alg,
                                  double tol = scalar_traits<T>::default_tol()) {
  if (!alg.well_formed()) fail(ErrorKind::Input, "structure table shape mismatch");
  CheckRecord rec;
  rec.name = "left-leibniz";
  rec.passed = true;
  for (int i = 0; i < alg.dim; ++i)
    for (int j = 0; j < alg.dim; ++j)
      for (int k = 0; k < alg.dim; ++k) {
        std::vector<T> lhs = alg.bracket(alg.basis_vector(i), alg.c[j][k]);
        std::vector<T> rhs = vec_add(alg.bracket(alg.c[i][j], alg.basis_vector(k)),
                                     alg.bracket(alg.basis_vector(j), alg.c[i][k]));
        std::vector<T> defect = vec_sub(lhs, rhs);
        double norm = vec_norm2(defect);
        rec.max_residual = std::max(rec.max_residual, norm);
        if (norm > tol) {
          if (rec.passed) rec.witness = detail::make_witness({i + 1, j + 1, k + 1}, defect);
          rec.passed = false;
        }
      }
  VerificationReport rep;
  rep.checks.push_back(std::move(rec));
  return rep;
}

template <class T>
bool is_antisymmetric(const LeibnizAlgebra<T>& alg, double tol = scalar_traits<T>::default_tol()) {
  for (int i = 0; i < alg.dim; ++i)
    for (int j = 0; j < alg.dim; ++j)
      for (int k = 0; k < alg.dim; ++k)
        if (!scalar_traits<T>::is_zero(alg.c[i][j][k] + alg.c[j][i][k], tol)) return false;
  return true;
}

/// Lie test: antisymmetry plus the left derivation identity (together they
/// imply Jacobi).
template <class T>
VerificationReport verify_lie(const LeibnizAlgebra<T>& alg,
                              double tol = scalar_traits<T>::default_tol()) {
  VerificationReport rep = verify_leibniz(alg, tol);
  CheckRecord anti;
  anti.name = "antisymmetry";
  anti.passed = true;
  for (int i = 0; i < alg.dim; ++i)
    for (int j = 0; j < alg.dim; ++j) {
      std::vector<T> defect = vec_add(alg.c[i][j], alg.c[j][i]);
      double norm = vec_norm2(defect);
      anti.max_residual = std::max(anti.max_residual, norm);
      if (norm > tol) {
        if (anti.passed) anti.witness = detail::make_witness({i + 1, j + 1}, defect);
        anti.passed = false;
      }
    }
  rep.checks.push_back(std::move(anti));
  return rep;
}

/// Span of all squares [x, x]. By bilinearity the generators
/// {[e_i,e_i]} and {[e_i,e_j]+[e_j,e_i], i<j} suffice. The result must be a
/// two-sided ideal; a violation means the input was not a Leibniz algebra.
template <class T>
Subspace<T> squares_ideal(const LeibnizAlgebra<T>& alg,
                          double tol = scalar_traits<T>::default_tol()) {
  std::vector<std::vector<T>> gens;
  for (int i = 0; i < alg.dim; ++i)
    for (int j = i; j < alg.dim; ++j)
      gens.push_back(i == j ? alg.c[i][i] : vec_add(alg.c[i][j], alg.c[j][i]));
  Subspace<T> q = Subspace<T>::from_vectors(gens, alg.dim, tol);
  for (int b = 0; b < q.dim(); ++b) {
    std::vector<T> v = q.basis_vector(b);
    for (int j = 0; j < alg.dim; ++j) {
      if (!q.contains(alg.bracket(v, alg.basis_vector(j)), tol) ||
          !q.contains(alg.bracket(alg.basis_vector(j), v), tol))
        fail(ErrorKind::Precondition, "square span is not a two-sided ideal");
    }
  }
  return q;
}

/// Kernel of x -> ad_x, i.e. {x : [x, e_j] = 0 for all j}.
template <class T>
Subspace<T> left_center(const LeibnizAlgebra<T>& alg,
                        double tol = scalar_traits<T>::default_tol()) {
  Matrix<T> m(alg.dim * alg.dim, alg.dim);
  for (int i = 0; i < alg.dim; ++i)
    for (int j = 0; j < alg.dim; ++j)
      for (int k = 0; k < alg.dim; ++k) m(j * alg.dim + k, i) = alg.c[i][j][k];
  return Subspace<T>::from_vectors(kernel_basis(std::move(m), tol), alg.dim, tol);
}

template <class T>
struct QuotientResult {
  LeibnizAlgebra<T> algebra;
  Matrix<T> projection;              // quotient_dim x dim
  std::vector<int> complement_coords;  // original coordinate behind each quotient basis vector
};

/// Quotient by a two-sided ideal. The quotient basis is the classes of the
/// coordinates not hit by the ideal's echelon pivots, which fixes the result
/// deterministically.
template <class T>
QuotientResult<T> quotient_by_ideal(const LeibnizAlgebra<T>& alg, const Subspace<T>& ideal,
                                    double tol = scalar_traits<T>::default_tol()) {
  int n = alg.dim;
  for (int b = 0; b < ideal.dim(); ++b) {
    std::vector<T> v = ideal.basis_vector(b);
    for (int j = 0; j < n; ++j) {
      if (!ideal.contains(alg.bracket(v, alg.basis_vector(j)), tol) ||
          !ideal.contains(alg.bracket(alg.basis_vector(j), v), tol))
        fail(ErrorKind::Precondition, "quotient_by_ideal: subspace is not a two-sided ideal");
    }
  }

  // Pivot columns of the ideal basis; the complementary coordinates survive.
  std::vector<bool> is_pivot(n, false);
  std::vector<int> pivot_col(ideal.dim());
  for (int r = 0; r < ideal.dim(); ++r) {
    int col = 0;
    while (col < n && scalar_traits<T>::is_zero(ideal.basis()(r, col), 0.0)) ++col;
    pivot_col[r] = col;
    is_pivot[col] = true;
  }
  std::vector<int> free_cols;
  for (int j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  int q = static_cast<int>(free_cols.size());

  // proj(x)_a = x_{f_a} - sum_r x_{p_r} b_r[f_a]: reduce mod the ideal, read
  // off the surviving coordinates.
  Matrix<T> proj(q, n);
  for (int a = 0; a < q; ++a) {
    proj(a, free_cols[a]) = scalar_traits<T>::one();
    for (int r = 0; r < ideal.dim(); ++r) proj(a, pivot_col[r]) = -ideal.basis()(r, free_cols[a]);
  }

  LeibnizAlgebra<T> quot = LeibnizAlgebra<T>::zero(q);
  for (int a = 0; a < q; ++a) quot.basis_labels[a] = alg.basis_labels[free_cols[a]];
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) quot.c[a][b] = proj.apply(alg.c[free_cols[a]][free_cols[b]]);
  return {std::move(quot), std::move(proj), std::move(free_cols)};
}

}  // namespace rackforge

#endif
