#ifndef RACKFORGE_MATFUN_HPP
#define RACKFORGE_MATFUN_HPP

#include <string>
#include <utility>

#include "rackforge/monic_poly.hpp"

namespace rackforge {

template <class T>
struct JordanPair {
  Matrix<T> S;  // diagonalizable over C
  Matrix<T> N;  // nilpotent, commutes with S, S + N is the input
};

struct StripVerdict {
  bool member = false;
  double margin = 0.0;  // tau - max |Im eigenvalue|
  double max_im = 0.0;
};

struct InjectivityVerdict {
  bool preconditions_met = false;
  bool violation = false;
  double exp_dist = 0.0;
  double arg_dist = 0.0;
};

/// Max row sum; submultiplicative, drives truncation bounds.
template <class T>
double norm_inf(const Matrix<T>& x) {
  double best = 0.0;
  for (int i = 0; i < x.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < x.cols(); ++j) s += scalar_traits<T>::abs_double(x(i, j));
    best = std::max(best, s);
  }
  return best;
}

template <class T>
bool is_nilpotent(const Matrix<T>& x, double tol = scalar_traits<T>::default_tol()) {
  Matrix<T> p = x;
  for (int k = 1; k < x.rows(); ++k) p = p * x;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      if (!scalar_traits<T>::is_zero(p(i, j), tol)) return false;
  return true;
}

/// exp of a nilpotent matrix: the series terminates, so the result is exact
/// in rational mode.
template <class T>
Matrix<T> mat_exp_nilpotent(const Matrix<T>& x) {
  if (!is_nilpotent(x)) fail(ErrorKind::Precondition, "mat_exp_nilpotent: matrix is not nilpotent");
  int n = x.rows();
  Matrix<T> acc = Matrix<T>::identity(n);
  Matrix<T> term = Matrix<T>::identity(n);
  T k_scalar = scalar_traits<T>::zero();
  for (int k = 1; k < n; ++k) {
    k_scalar = k_scalar + scalar_traits<T>::one();
    term = (term * x) * (scalar_traits<T>::one() / k_scalar);
    acc = acc + term;
  }
  return acc;
}

/// (I - e^{-X})/X as its terminating series for nilpotent X.
template <class T>
Matrix<T> h_series_nilpotent(const Matrix<T>& x) {
  if (!is_nilpotent(x)) fail(ErrorKind::Precondition, "h_series_nilpotent: matrix is not nilpotent");
  int n = x.rows();
  Matrix<T> acc = Matrix<T>::identity(n);
  Matrix<T> power = Matrix<T>::identity(n);
  T rp1 = scalar_traits<T>::one();
  T factorial = scalar_traits<T>::one();
  bool negate = true;
  for (int r = 1; r < n; ++r) {
    power = power * x;
    rp1 = rp1 + scalar_traits<T>::one();
    factorial = factorial * rp1;  // (r+1)!
    Matrix<T> term = power * (scalar_traits<T>::one() / factorial);
    acc = negate ? acc - term : acc + term;
    negate = !negate;
  }
  return acc;
}

/// log of unipotent U: the series in (U - I) terminates. Exact inverse of
/// mat_exp_nilpotent in rational mode.
template <class T>
Matrix<T> unipotent_log(const Matrix<T>& u) {
  int n = u.rows();
  Matrix<T> e = u - Matrix<T>::identity(n);
  if (!is_nilpotent(e)) fail(ErrorKind::Precondition, "unipotent_log: U - I is not nilpotent");
  Matrix<T> acc(n, n);
  Matrix<T> power = Matrix<T>::identity(n);
  T r_scalar = scalar_traits<T>::zero();
  bool negate = false;
  for (int r = 1; r < n; ++r) {
    power = power * e;
    r_scalar = r_scalar + scalar_traits<T>::one();
    Matrix<T> term = power * (scalar_traits<T>::one() / r_scalar);
    acc = negate ? acc - term : acc + term;
    negate = !negate;
  }
  return acc;
}

/// Scaling-and-squaring exponential; the Taylor degree is raised until the
/// truncation remainder bound on the scaled matrix is below tol.
Matrix<double> mat_exp(const Matrix<double>& x, double tol = 1e-13);

/// Series for (I - e^{-X})/X, truncated once the remainder bound drops
/// below tol.
Matrix<double> h_series(const Matrix<double>& x, double tol = 1e-13);

double det(const Matrix<double>& x);

/// Strict test that every eigenvalue has |Im| < tau. A hair of slack keeps
/// boundary spectra (computed in floating point) on the non-member side.
StripVerdict strip_membership(const Matrix<double>& x, double tau);
StripVerdict strip_membership(const Matrix<Rat>& x, double tau);
StripVerdict strip_from_roots(const std::vector<std::complex<double>>& rts, double tau);

/// Exact semisimple + nilpotent split via the Newton iteration on the
/// squarefree part of the characteristic polynomial; S and N come out as
/// polynomials in the input. All four defining identities are re-checked.
JordanPair<Rat> jordan_chevalley(const Matrix<Rat>& x);

/// Float fallback: interpolate on the clustered spectrum. Approximate; sets
/// `warning` when eigenvalue clusters are too close for the result to be
/// trustworthy.
JordanPair<double> jordan_chevalley(const Matrix<double>& x, std::string* warning = nullptr);

/// Semisimple and nilpotent parts of e^X, computed as (e^{X_S}, e^X - e^{X_S})
/// from the exact split of X; the multiplicative decomposition is re-verified
/// numerically.
std::pair<Matrix<double>, Matrix<double>> functional_jordan_parts(const Matrix<Rat>& x,
                                                                  double tol = 1e-9);

/// Near-collision test for injectivity of exp on the open pi-strip: flags a
/// violation when exponentials nearly coincide but the arguments do not.
InjectivityVerdict exp_injectivity_probe(const Matrix<double>& x, const Matrix<double>& y,
                                         double tol);

/// Principal logarithm near the identity: inverse scaling-squaring with
/// Denman-Beavers square roots, then the log series.
Matrix<double> principal_log(const Matrix<double>& m, double tol = 1e-13);

}  // namespace rackforge

#endif
