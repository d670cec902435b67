#ifndef RACKFORGE_CUTOFF_HPP
#define RACKFORGE_CUTOFF_HPP

#include <cmath>
#include <cstdint>

#include "rackforge/leibniz.hpp"
#include "rackforge/poly.hpp"

namespace rackforge {

/// Knobs of the pullback construction. The strip pair must satisfy
/// 0 < tau_prime < tau <= pi; everything downstream validates through here.
struct IntegrationConfig {
  double tau_prime = M_PI / 2.0;
  double tau = M_PI;
  double fd_step = 1e-3;
  int samples = 256;
  uint64_t seed = 0;
  double tol = 1e-9;
  double tangent_tol = 1e-4;  // relative, for tangent-bracket recovery

  void validate() const;
};

/// e^{-1/t} for t > 0, else 0.
double bump(double t);

/// Plateau profile: 1 on (-inf, tau_prime], 0 on [tau, inf), bump quotient
/// between. Underflow of both bump terms snaps to the nearer plateau value,
/// so boundary evaluations are exact.
double plateau(double s, double tau_prime, double tau);

/// Largest |Im root| of a monic real polynomial, 0 for degree 0.
double max_im_from_charpoly(const Polynomial<double>& f);

/// beta(xi) = max |Im mu| over the spectrum of ad_xi.
double spectral_height(const LeibnizAlgebra<double>& g, const std::vector<double>& xi);

double invariant_cutoff_from_charpoly(const Polynomial<double>& f, const IntegrationConfig& cfg);

/// gamma(xi) = plateau(beta(xi)). Conjugation-invariant because beta only
/// sees the characteristic polynomial of ad_xi.
double invariant_cutoff(const LeibnizAlgebra<double>& g, const std::vector<double>& xi,
                        const IntegrationConfig& cfg);

/// Rational route: the characteristic polynomial is computed exactly, then
/// converted. Conjugate inputs produce the identical polynomial, hence
/// bitwise-identical cutoff values.
double invariant_cutoff(const LeibnizAlgebra<Rat>& g, const std::vector<Rat>& xi,
                        const IntegrationConfig& cfg);

}  // namespace rackforge

#endif
