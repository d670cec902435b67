#include "rackforge/cutoff.hpp"

#include <complex>

#include "rackforge/monic_poly.hpp"

namespace rackforge {

void IntegrationConfig::validate() const {
  if (!(tau_prime > 0.0) || !(tau > tau_prime) || !(tau <= M_PI * (1.0 + 1e-12)))
    fail(ErrorKind::Config, "strip parameters need 0 < tau' < tau <= pi");
  if (!(fd_step > 0.0)) fail(ErrorKind::Config, "fd_step must be positive");
  if (samples < 1) fail(ErrorKind::Config, "samples must be at least 1");
  if (!(tol > 0.0)) fail(ErrorKind::Config, "tol must be positive");
  if (!(tangent_tol > 0.0)) fail(ErrorKind::Config, "tangent_tol must be positive");
}

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double plateau(double s, double tau_prime, double tau) {
  if (s <= tau_prime) return 1.0;
  if (s >= tau) return 0.0;
  double up = bump(tau - s);
  double down = bump(s - tau_prime);
  double denom = up + down;
  if (denom == 0.0) return s - tau_prime < tau - s ? 1.0 : 0.0;
  return up / denom;
}

double max_im_from_charpoly(const Polynomial<double>& f) {
  if (f.degree() <= 0) return 0.0;
  double m = 0.0;
  for (const auto& z : roots(to_monic(f))) m = std::max(m, std::abs(z.imag()));
  return m;
}

double spectral_height(const LeibnizAlgebra<double>& g, const std::vector<double>& xi) {
  return max_im_from_charpoly(char_poly(adjoint_map(g, xi)));
}

double invariant_cutoff_from_charpoly(const Polynomial<double>& f, const IntegrationConfig& cfg) {
  cfg.validate();
  return plateau(max_im_from_charpoly(f), cfg.tau_prime, cfg.tau);
}

double invariant_cutoff(const LeibnizAlgebra<double>& g, const std::vector<double>& xi,
                        const IntegrationConfig& cfg) {
  return invariant_cutoff_from_charpoly(char_poly(adjoint_map(g, xi)), cfg);
}

double invariant_cutoff(const LeibnizAlgebra<Rat>& g, const std::vector<Rat>& xi,
                        const IntegrationConfig& cfg) {
  Polynomial<Rat> f = char_poly(adjoint_map(g, xi));
  std::vector<double> cs(f.coef.size());
  for (size_t i = 0; i < f.coef.size(); ++i) cs[i] = scalar_traits<Rat>::to_double(f.coef[i]);
  return invariant_cutoff_from_charpoly(Polynomial<double>(std::move(cs)), cfg);
}

}  // namespace rackforge
