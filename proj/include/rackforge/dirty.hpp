#ifndef RACKFORGE_DIRTY_HPP
#define RACKFORGE_DIRTY_HPP

#include <vector>

#include "rackforge/augmented.hpp"
#include "rackforge/cutoff.hpp"
#include "rackforge/group_model.hpp"

namespace rackforge {

/// Point of the pullback carrier: an algebra vector sitting over a group
/// element, tied together by p(x) = s(gp).
struct RackPoint {
  Point x;
  Point gp;
};

/// Cutoff-weighted logarithm s(g') = gamma(log g') log g', extended by zero
/// where the log chart does not reach. s(e) = 0 exactly.
Point section_s(const GroupModel& model, const Point& gp, const IntegrationConfig& cfg);

/// s vanishes at the identity (exact) and its differential there is the
/// identity (central differences in the element chart).
VerificationReport section_tangency(const GroupModel& model, const IntegrationConfig& cfg);

/// s(g g' g^{-1}) = Ad(g) s(g') over sampled pairs.
VerificationReport section_equivariance_check(const GroupModel& model, const IntegrationConfig& cfg,
                                              int n_samples, uint64_t seed,
                                              ExecPolicy policy = ExecPolicy::Serial);

/// The pullback rack: carrier {(x, g') : p(x) = s(g')} with the group acting
/// by (x, g') -> (rho_g x, g g' g^{-1}). Immutable after build.
struct DirtyRack {
  AugmentedLeibnizAlgebra<double> aug;
  GroupModel model;
  IntegrationConfig config;

  Matrix<double> p_pinv;                    // right inverse of p
  std::vector<std::vector<double>> kernel;  // basis of Ker p

  int fiber_dim() const { return static_cast<int>(kernel.size()); }

  double membership_defect(const RackPoint& m) const;
  bool in_carrier(const RackPoint& m) const;

  RackPoint base_point() const;  // (0, e)

  /// In-carrier point over a sampled group element: the least-squares lift of
  /// s plus a kernel perturbation.
  RackPoint sample(SampleRng& rng, double scale) const;

  /// Integrated action of g on h: product of exponentials of the action
  /// operators over the model's word factorization of g.
  Matrix<double> rho(const Point& gp) const;

  /// Flattened (x ++ gp) views for the generic rack machinery.
  AugmentedRackStructure augmented_structure() const;
  RackStructure rack_structure() const;
};

DirtyRack build_pullback_rack(const AugmentedLeibnizAlgebra<double>& aug, const GroupModel& model,
                              const IntegrationConfig& cfg);

/// (m.x, m.gp) |> (m'.x, m'.gp) = (rho_{m.gp} m'.x, conj(m.gp, m'.gp)).
/// Both inputs and the output must satisfy carrier membership.
RackPoint rack_product_M(const DirtyRack& rack, const RackPoint& m, const RackPoint& mp);

/// At sampled base points: every kernel direction stays on the carrier and
/// every lifted g-direction leaves it, so fibers are affine of dim Ker p.
VerificationReport fiber_dimension_check(const DirtyRack& rack, int n_base, uint64_t seed);

/// Mixed finite differences of the rack product along the curves
/// t -> (t e_i, exp(t p e_i)) against the derived bracket, all basis pairs.
VerificationReport tangent_check(const DirtyRack& rack);

/// Lie input through its canonical augmentation: fibers are points and the
/// rack transports to plain group conjugation.
VerificationReport lie_case_reduction(const LeibnizAlgebra<double>& lie, const GroupModel& model,
                                      const IntegrationConfig& cfg);

/// The claimed nilradical basis spans a nilpotent ideal, and translating by
/// it never moves the characteristic polynomial of ad (exact).
VerificationReport verify_nilradical_translation(const LeibnizAlgebra<Rat>& g,
                                                 const std::vector<std::vector<Rat>>& nilbasis,
                                                 const IntegrationConfig& cfg);

/// Chart audit over sampled strip-interior points: log of exp round trip,
/// the derivative-of-exp formula through h(ad_xi), and invertibility of h.
VerificationReport exp_chart_check(const GroupModel& model, const IntegrationConfig& cfg,
                                   int n_samples, uint64_t seed);

}  // namespace rackforge

#endif
