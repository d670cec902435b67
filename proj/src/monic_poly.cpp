#include "rackforge/monic_poly.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

namespace rackforge {

MonicPolynomial from_roots(const std::vector<std::complex<double>>& z) {
  // Incrementally multiply out (lambda - z_i); coeffs kept degree-descending.
  std::vector<std::complex<double>> a;
  for (const auto& root : z) {
    a.push_back({0.0, 0.0});
    for (size_t k = a.size(); k-- > 0;) {
      std::complex<double> above = k == 0 ? std::complex<double>(1.0, 0.0) : a[k - 1];
      a[k] -= root * above;
    }
  }
  return MonicPolynomial{std::move(a)};
}

std::vector<std::complex<double>> roots(const MonicPolynomial& f, double tol) {
  int n = f.degree();
  if (n == 0) return {};

  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) comp(i + 1, i) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -f.a[n - 1 - i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
  if (solver.info() != Eigen::Success) fail(ErrorKind::Numeric, "roots: eigensolver failed");

  std::vector<std::complex<double>> raw(n);
  for (int i = 0; i < n; ++i) raw[i] = solver.eigenvalues()(i);
  std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });

  // Merge near-coincident eigenvalues onto their cluster mean so repeated
  // roots come back with exact multiplicity.
  double radius = 1e-7 * std::max(1.0, f.coeff_norm());
  std::vector<std::vector<std::complex<double>>> clusters;
  for (const auto& r : raw) {
    bool placed = false;
    for (auto& c : clusters) {
      std::complex<double> mean(0.0, 0.0);
      for (const auto& m : c) mean += m;
      mean /= static_cast<double>(c.size());
      if (std::abs(r - mean) <= radius) {
        c.push_back(r);
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({r});
  }

  std::vector<std::complex<double>> out;
  out.reserve(n);
  for (const auto& c : clusters) {
    std::complex<double> mean(0.0, 0.0);
    for (const auto& m : c) mean += m;
    mean /= static_cast<double>(c.size());
    for (size_t k = 0; k < c.size(); ++k) out.push_back(mean);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });

  double allowed = tol * std::pow(std::max(1.0, f.coeff_norm()), n);
  for (const auto& r : out)
    if (std::abs(f.eval(r)) >= allowed)
      fail(ErrorKind::Numeric, "roots: residual above tolerance");
  return out;
}

}  // namespace rackforge
