#ifndef RACKFORGE_MONIC_POLY_HPP
#define RACKFORGE_MONIC_POLY_HPP

#include <complex>
#include <vector>

#include "rackforge/poly.hpp"

namespace rackforge {

/// Monic polynomial for root analysis: f(lambda) = lambda^n + a[0] lambda^{n-1}
/// + ... + a[n-1]. Leading coefficient 1 is implicit.
struct MonicPolynomial {
  std::vector<std::complex<double>> a;

  int degree() const { return static_cast<int>(a.size()); }

  double coeff_norm() const {
    double s = 0.0;
    for (const auto& v : a) s += std::abs(v);
    return s;
  }

  std::complex<double> eval(std::complex<double> z) const {
    std::complex<double> acc(1.0, 0.0);
    for (const auto& v : a) acc = acc * z + v;
    return acc;
  }

  bool operator==(const MonicPolynomial& o) const { return a == o.a; }
};

/// Every root mu satisfies |mu| <= max(1, sum |a_j|).
inline double root_bound(const MonicPolynomial& f) { return std::max(1.0, f.coeff_norm()); }

/// Expand prod (lambda - z_i); symmetric in the z_i by construction.
MonicPolynomial from_roots(const std::vector<std::complex<double>>& z);

/// All roots with multiplicity via companion-matrix eigenvalues. Near-equal
/// roots (within 1e-7 * max(1, coeff norm)) are merged onto their cluster
/// mean so multiplicities come out exact; output is sorted by (re, im).
/// Residual above tol * max(1, coeff norm)^degree raises a numeric error.
std::vector<std::complex<double>> roots(const MonicPolynomial& f, double tol = 1e-9);

/// Degree-descending view of an exact monic polynomial. Equal rational inputs
/// convert to bit-identical doubles.
template <class T>
MonicPolynomial to_monic(const Polynomial<T>& p) {
  if (p.is_zero() || !scalar_traits<T>::is_zero(p.leading() - scalar_traits<T>::one(), 0.0))
    fail(ErrorKind::Precondition, "to_monic: polynomial is not monic");
  MonicPolynomial f;
  f.a.resize(p.degree());
  for (int r = 1; r <= p.degree(); ++r)
    f.a[r - 1] = std::complex<double>(scalar_traits<T>::to_double(p[p.degree() - r]), 0.0);
  return f;
}

}  // namespace rackforge

#endif
