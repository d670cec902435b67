#ifndef RACKFORGE_POLY_HPP
#define RACKFORGE_POLY_HPP

#include <utility>
#include <vector>

#include "rackforge/linalg.hpp"

namespace rackforge {

/// Dense univariate polynomial, ascending coefficients (coef[k] multiplies
/// lambda^k). Exact over Rat; the same code runs in double for float-mode
/// inputs.
template <class T>
struct Polynomial {
  std::vector<T> coef;

  Polynomial() = default;
  explicit Polynomial(std::vector<T> cs) : coef(std::move(cs)) { trim(); }

  static Polynomial constant(T v) { return Polynomial(std::vector<T>{std::move(v)}); }

  void trim() {
    while (!coef.empty() && scalar_traits<T>::is_zero(coef.back(), 0.0)) coef.pop_back();
  }

  int degree() const { return static_cast<int>(coef.size()) - 1; }
  bool is_zero() const { return coef.empty(); }

  const T& leading() const { return coef.back(); }

  T operator[](int k) const {
    return k < static_cast<int>(coef.size()) ? coef[k] : scalar_traits<T>::zero();
  }

  bool operator==(const Polynomial& o) const { return coef == o.coef; }

  Polynomial operator+(const Polynomial& o) const {
    std::vector<T> r(std::max(coef.size(), o.coef.size()), scalar_traits<T>::zero());
    for (size_t k = 0; k < r.size(); ++k) r[k] = (*this)[static_cast<int>(k)] + o[static_cast<int>(k)];
    return Polynomial(std::move(r));
  }
  Polynomial operator-(const Polynomial& o) const {
    std::vector<T> r(std::max(coef.size(), o.coef.size()), scalar_traits<T>::zero());
    for (size_t k = 0; k < r.size(); ++k) r[k] = (*this)[static_cast<int>(k)] - o[static_cast<int>(k)];
    return Polynomial(std::move(r));
  }
  Polynomial operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    std::vector<T> r(coef.size() + o.coef.size() - 1, scalar_traits<T>::zero());
    for (size_t i = 0; i < coef.size(); ++i)
      for (size_t j = 0; j < o.coef.size(); ++j) r[i + j] = r[i + j] + coef[i] * o.coef[j];
    return Polynomial(std::move(r));
  }
  Polynomial scaled(const T& s) const {
    std::vector<T> r(coef.size());
    for (size_t k = 0; k < coef.size(); ++k) r[k] = coef[k] * s;
    return Polynomial(std::move(r));
  }

  Polynomial derivative() const {
    if (coef.size() <= 1) return Polynomial();
    std::vector<T> r(coef.size() - 1);
    for (size_t k = 1; k < coef.size(); ++k) {
      T factor = scalar_traits<T>::zero();
      for (size_t c = 0; c < k; ++c) factor = factor + scalar_traits<T>::one();
      r[k - 1] = coef[k] * factor;
    }
    return Polynomial(std::move(r));
  }

  Polynomial monic() const {
    if (is_zero()) fail(ErrorKind::Precondition, "monic(): zero polynomial");
    T inv = scalar_traits<T>::one() / leading();
    return scaled(inv);
  }

  T eval(const T& x) const {
    T acc = scalar_traits<T>::zero();
    for (auto it = coef.rbegin(); it != coef.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Matrix<T> eval(const Matrix<T>& x) const {
    int n = x.rows();
    Matrix<T> acc(n, n);
    for (auto it = coef.rbegin(); it != coef.rend(); ++it) {
      acc = acc * x;
      for (int i = 0; i < n; ++i) acc(i, i) = acc(i, i) + *it;
    }
    return acc;
  }
};

/// Euclidean division; the divisor's leading coefficient must be invertible.
template <class T>
std::pair<Polynomial<T>, Polynomial<T>> divmod(const Polynomial<T>& num, const Polynomial<T>& den) {
  if (den.is_zero()) fail(ErrorKind::Precondition, "divmod: division by zero polynomial");
  Polynomial<T> rem = num;
  std::vector<T> quot(std::max(0, num.degree() - den.degree() + 1), scalar_traits<T>::zero());
  T lead_inv = scalar_traits<T>::one() / den.leading();
  while (!rem.is_zero() && rem.degree() >= den.degree()) {
    int shift = rem.degree() - den.degree();
    T f = rem.leading() * lead_inv;
    quot[shift] = quot[shift] + f;
    std::vector<T> sub(shift + den.coef.size(), scalar_traits<T>::zero());
    for (size_t k = 0; k < den.coef.size(); ++k) sub[shift + k] = den.coef[k] * f;
    rem = rem - Polynomial<T>(std::move(sub));
  }
  return {Polynomial<T>(std::move(quot)), std::move(rem)};
}

/// Monic gcd by the Euclidean algorithm; each remainder is re-normalized to
/// keep coefficient growth in check.
template <class T>
Polynomial<T> poly_gcd(Polynomial<T> a, Polynomial<T> b) {
  if (a.is_zero()) return b.is_zero() ? b : b.monic();
  if (b.is_zero()) return a.monic();
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    Polynomial<T> r = divmod(a, b).second;
    a = std::move(b);
    b = r.is_zero() ? std::move(r) : r.monic();
  }
  return a;
}

/// f / gcd(f, f'): same roots as f, each simple.
template <class T>
Polynomial<T> squarefree_part(const Polynomial<T>& f) {
  Polynomial<T> g = poly_gcd(f, f.derivative());
  auto [q, r] = divmod(f, g);
  if (!r.is_zero()) fail(ErrorKind::Internal, "squarefree_part: non-exact division");
  return q.monic();
}

/// Characteristic polynomial det(lambda I - X) by Faddeev-LeVerrier: only
/// ring operations and division by 1..n, so exact over Rat.
template <class T>
Polynomial<T> char_poly(const Matrix<T>& x) {
  int n = x.rows();
  if (n != x.cols()) fail(ErrorKind::Input, "char_poly: matrix not square");
  std::vector<T> cs(n + 1, scalar_traits<T>::zero());
  cs[n] = scalar_traits<T>::one();
  Matrix<T> m = Matrix<T>::identity(n);
  T k_scalar = scalar_traits<T>::zero();
  for (int k = 1; k <= n; ++k) {
    k_scalar = k_scalar + scalar_traits<T>::one();
    Matrix<T> xm = x * m;
    T ck = -(xm.trace() / k_scalar);
    cs[n - k] = ck;
    m = xm;
    for (int i = 0; i < n; ++i) m(i, i) = m(i, i) + ck;
  }
  return Polynomial<T>(std::move(cs));
}

/// Minimal polynomial: first monic dependence among vectorized powers of X.
template <class T>
Polynomial<T> min_poly(const Matrix<T>& x) {
  int n = x.rows();
  std::vector<Matrix<T>> powers{Matrix<T>::identity(n)};
  for (int k = 1; k <= n; ++k) {
    powers.push_back(powers.back() * x);
    // Solve sum_{j<k} c_j X^j = X^k: columns are the vectorized lower powers.
    Matrix<T> sys(n * n, k);
    std::vector<T> rhs(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        for (int col = 0; col < k; ++col) sys(i * n + j, col) = powers[col](i, j);
        rhs[i * n + j] = powers[k](i, j);
      }
    auto sol = solve(sys, rhs);
    if (sol) {
      std::vector<T> cs(k + 1, scalar_traits<T>::zero());
      for (int j = 0; j < k; ++j) cs[j] = -(*sol)[j];
      cs[k] = scalar_traits<T>::one();
      return Polynomial<T>(std::move(cs));
    }
  }
  fail(ErrorKind::Internal, "min_poly: no dependence up to full degree");
}

}  // namespace rackforge

#endif
