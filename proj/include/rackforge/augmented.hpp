#ifndef RACKFORGE_AUGMENTED_HPP
#define RACKFORGE_AUGMENTED_HPP

#include <utility>
#include <vector>

#include "rackforge/leibniz.hpp"

namespace rackforge {

/// Lie algebra g acting on a module h through an equivariant map p: h -> g.
/// action[a] is the operator of the a-th g-basis vector on h. The induced
/// bracket on h is [x, y] = action_of(p(x)) applied to y.
template <class T>
struct AugmentedLeibnizAlgebra {
  int h_dim = 0;
  LeibnizAlgebra<T> g;
  Matrix<T> p;                    // dim_g x dim_h
  std::vector<Matrix<T>> action;  // dim_g entries, each dim_h x dim_h

  bool well_formed() const {
    if (!g.well_formed() || p.rows() != g.dim || p.cols() != h_dim) return false;
    if (static_cast<int>(action.size()) != g.dim) return false;
    for (const auto& m : action)
      if (m.rows() != h_dim || m.cols() != h_dim) return false;
    return true;
  }

  /// Operator of an arbitrary g-vector on h, expanded linearly.
  Matrix<T> action_of(const std::vector<T>& xi) const {
    Matrix<T> m(h_dim, h_dim);
    for (int a = 0; a < g.dim; ++a) {
      if (scalar_traits<T>::is_zero(xi[a], 0.0)) continue;
      for (int i = 0; i < h_dim; ++i)
        for (int j = 0; j < h_dim; ++j) m(i, j) = m(i, j) + xi[a] * action[a](i, j);
    }
    return m;
  }
};

template <class T>
AugmentedLeibnizAlgebra<double> to_double(const AugmentedLeibnizAlgebra<T>& aug) {
  AugmentedLeibnizAlgebra<double> r;
  r.h_dim = aug.h_dim;
  r.g = to_double(aug.g);
  r.p = to_double(aug.p);
  for (const auto& m : aug.action) r.action.push_back(to_double(m));
  return r;
}

template <class T>
std::vector<T> derived_bracket(const AugmentedLeibnizAlgebra<T>& aug, const std::vector<T>& x,
                               const std::vector<T>& y) {
  if (static_cast<int>(x.size()) != aug.h_dim || static_cast<int>(y.size()) != aug.h_dim)
    fail(ErrorKind::Input, "derived_bracket: length mismatch");
  return aug.action_of(aug.p.apply(x)).apply(y);
}

/// The bracket on h induced by the augmentation, tabulated on the basis.
template <class T>
LeibnizAlgebra<T> derived_algebra(const AugmentedLeibnizAlgebra<T>& aug) {
  LeibnizAlgebra<T> alg = LeibnizAlgebra<T>::zero(aug.h_dim);
  for (int i = 0; i < aug.h_dim; ++i) {
    std::vector<T> ei(aug.h_dim, scalar_traits<T>::zero());
    ei[i] = scalar_traits<T>::one();
    Matrix<T> op = aug.action_of(aug.p.apply(ei));
    for (int j = 0; j < aug.h_dim; ++j)
      for (int k = 0; k < aug.h_dim; ++k) alg.c[i][j][k] = op(k, j);
  }
  return alg;
}

/// Full audit of the augmentation data: g is Lie, the action is a
/// representation, p intertwines the action with ad_g, the induced bracket is
/// Leibniz, and the square span sits inside Ker p inside the left center.
template <class T>
VerificationReport verify_augmented(const AugmentedLeibnizAlgebra<T>& aug,
                                    double tol = scalar_traits<T>::default_tol()) {
  if (!aug.well_formed()) fail(ErrorKind::Input, "augmentation shape mismatch");
  VerificationReport rep;

  {
    VerificationReport lie = verify_lie(aug.g, tol);
    for (auto& c : lie.checks) {
      c.name = "g-" + c.name;
      rep.checks.push_back(std::move(c));
    }
  }

  CheckRecord repr;
  repr.name = "action-representation";
  repr.passed = true;
  for (int a = 0; a < aug.g.dim; ++a)
    for (int b = 0; b < aug.g.dim; ++b) {
      Matrix<T> lhs = aug.action_of(aug.g.c[a][b]);
      Matrix<T> rhs = aug.action[a] * aug.action[b] - aug.action[b] * aug.action[a];
      double norm = (lhs - rhs).max_abs();
      repr.max_residual = std::max(repr.max_residual, norm);
      if (norm > tol) {
        if (repr.passed) repr.witness = Counterexample{{a + 1, b + 1}, {}, norm};
        repr.passed = false;
      }
    }
  rep.checks.push_back(std::move(repr));

  CheckRecord equi;
  equi.name = "p-equivariance";
  equi.passed = true;
  for (int a = 0; a < aug.g.dim; ++a) {
    // p(action_a x) = [g_a, p(x)] on every h-basis vector x.
    for (int i = 0; i < aug.h_dim; ++i) {
      std::vector<T> x(aug.h_dim, scalar_traits<T>::zero());
      x[i] = scalar_traits<T>::one();
      std::vector<T> lhs = aug.p.apply(aug.action[a].apply(x));
      std::vector<T> rhs = aug.g.bracket(aug.g.basis_vector(a), aug.p.apply(x));
      std::vector<T> defect = vec_sub(lhs, rhs);
      double norm = vec_norm2(defect);
      equi.max_residual = std::max(equi.max_residual, norm);
      if (norm > tol) {
        if (equi.passed) equi.witness = detail::make_witness({a + 1, i + 1}, defect);
        equi.passed = false;
      }
    }
  }
  rep.checks.push_back(std::move(equi));

  LeibnizAlgebra<T> derived = derived_algebra(aug);
  {
    VerificationReport leib = verify_leibniz(derived, tol);
    leib.checks[0].name = "derived-bracket-leibniz";
    rep.checks.push_back(std::move(leib.checks[0]));
  }

  CheckRecord chain;
  chain.name = "squares-in-kerp-in-center";
  chain.passed = true;
  if (rep.find("derived-bracket-leibniz")->passed) {
    Subspace<T> q = squares_ideal(derived, tol);
    Subspace<T> kerp = Subspace<T>::from_vectors(kernel_basis(aug.p, tol), aug.h_dim, tol);
    Subspace<T> z = left_center(derived, tol);
    chain.passed = kerp.contains_subspace(q, tol) && z.contains_subspace(kerp, tol);
    chain.note = "dim Q=" + std::to_string(q.dim()) + ", dim Ker p=" + std::to_string(kerp.dim()) +
                 ", dim z=" + std::to_string(z.dim());
  } else {
    chain.passed = false;
    chain.note = "skipped: derived bracket is not Leibniz";
  }
  rep.checks.push_back(std::move(chain));

  return rep;
}

/// The augmentation every Leibniz algebra carries: g is the quotient by the
/// square span, p the projection, and the class of e_i acts as ad_{e_i}. The
/// action is well defined because the square span annihilates h on the left;
/// that inclusion is re-checked here and a failure signals a bug upstream.
template <class T>
AugmentedLeibnizAlgebra<T> canonical_augmentation(const LeibnizAlgebra<T>& alg,
                                                  double tol = scalar_traits<T>::default_tol()) {
  Subspace<T> q = squares_ideal(alg, tol);
  for (int b = 0; b < q.dim(); ++b) {
    Matrix<T> ad = adjoint_map(alg, q.basis_vector(b));
    if (ad.max_abs() > tol) fail(ErrorKind::Internal, "square span does not act trivially");
  }

  QuotientResult<T> quot = quotient_by_ideal(alg, q, tol);
  AugmentedLeibnizAlgebra<T> aug;
  aug.h_dim = alg.dim;
  aug.g = std::move(quot.algebra);
  aug.p = std::move(quot.projection);
  aug.action.reserve(aug.g.dim);
  for (int col : quot.complement_coords)
    aug.action.push_back(adjoint_map(alg, alg.basis_vector(col)));
  return aug;
}

}  // namespace rackforge

#endif
