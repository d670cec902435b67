#ifndef RACKFORGE_GROUP_MODEL_HPP
#define RACKFORGE_GROUP_MODEL_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rackforge/leibniz.hpp"
#include "rackforge/rack.hpp"

namespace rackforge {

/// Explicit simply connected group realization over a fixed Lie algebra.
/// Elements are coordinate tuples; exp/log translate between the algebra and
/// the group, Ad is the adjoint action on the algebra, and exp_word_factor
/// writes any element as a product of exponentials (used to integrate
/// representations given only on the algebra level).
struct GroupModel {
  std::string name;
  LeibnizAlgebra<double> algebra;
  int elem_dim = 0;
  Point identity;
  std::vector<double> sample_box;  // per-coordinate half-widths for algebra samples

  std::function<Point(const Point&, const Point&)> multiply;
  std::function<Point(const Point&)> inverse;
  std::function<Point(const Point&)> exp;                  // algebra vector -> element
  std::function<std::optional<Point>(const Point&)> log;   // element -> algebra vector
  std::function<Matrix<double>(const Point&)> Ad;
  std::function<std::vector<Point>(const Point&)> exp_word_factor;

  Point conj(const Point& g, const Point& h) const { return multiply(multiply(g, h), inverse(g)); }

  /// Algebra vector drawn from the model's sampling box.
  Point sample_algebra(SampleRng& rng, double scale) const {
    Point xi(algebra.dim);
    for (int i = 0; i < algebra.dim; ++i) xi[i] = rng.next_in(-scale * sample_box[i], scale * sample_box[i]);
    return xi;
  }

  /// Group ops view for the rack layer; samples are exponentials of box draws.
  GroupOps ops() const;
};

/// Exponential coordinates on a nilpotent Lie algebra; the truncated
/// Baker-Campbell-Hausdorff sum is the exact group law up to nilpotency
/// class 4, higher classes are rejected.
GroupModel nilpotent_bch_model(const LeibnizAlgebra<double>& g, double tol = 1e-9);

/// The fixed algebra of the plane-motion cover: basis (r, x, y) with
/// [r,x] = y, [r,y] = -x.
LeibnizAlgebra<double> e2_cover_algebra();

/// Universal cover of the plane motion group, R acting on R^2 by rotation,
/// in closed form. The log domain is |theta| < pi.
GroupModel e2_cover_model();

/// Local chart through a faithful matrix representation: elements carry
/// their principal-log coordinates, products go through the matrix
/// exponential and logarithm. Valid near the identity only.
GroupModel matrix_local_model(const LeibnizAlgebra<double>& g,
                              const std::vector<Matrix<double>>& rep, double tol = 1e-9);

/// Sampled audit of the model contract: group axioms, exp(0) = identity,
/// log of exp, Ad(exp xi) against the exponential of ad_xi, and word
/// factorizations multiplying back to their element.
VerificationReport verify_group_model(const GroupModel& model, int n_samples, uint64_t seed,
                                      double tol = 1e-9, double scale = 0.5);

/// Smallest c with all (c+1)-fold brackets zero, or dim+1 if the lower
/// central series has not died by then.
int nilpotency_class(const LeibnizAlgebra<double>& g, double tol = 1e-9);

}  // namespace rackforge

#endif
