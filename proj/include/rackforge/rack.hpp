#ifndef RACKFORGE_RACK_HPP
#define RACKFORGE_RACK_HPP

#include <functional>
#include <vector>

#include "rackforge/batch.hpp"
#include "rackforge/leibniz.hpp"
#include "rackforge/report.hpp"
#include "rackforge/rng.hpp"

namespace rackforge {

using Point = std::vector<double>;

/// Pointed carrier with a binary product and a seeded sampler of points near
/// the unit. The carrier is described by coordinates; `in_carrier` may be
/// empty when every coordinate tuple is a point.
struct RackStructure {
  int dim = 0;
  Point unit;
  std::function<Point(const Point&, const Point&)> product;
  std::function<Point(SampleRng&, double)> sampler;
  std::function<bool(const Point&)> in_carrier;
};

struct GroupOps {
  int dim = 0;
  Point identity;
  std::function<Point(const Point&, const Point&)> multiply;
  std::function<Point(const Point&)> inverse;
  std::function<Point(SampleRng&, double)> sampler;

  Point conj(const Point& g, const Point& h) const { return multiply(multiply(g, h), inverse(g)); }
};

/// Carrier acted on by a group, with a map phi to the group that intertwines
/// the action with conjugation.
struct AugmentedRackStructure {
  int dim = 0;
  Point unit;
  GroupOps group;
  std::function<Point(const Point&)> phi;
  std::function<Point(const Point&, const Point&)> ell;  // (group element, point) -> point
  std::function<Point(SampleRng&, double)> sampler;
  std::function<bool(const Point&)> in_carrier;
};

/// Unit laws, self-distributivity, and sampled injectivity of y -> x|>y over
/// seeded triples. Result slots are written per sample, so serial and
/// parallel runs produce identical reports.
VerificationReport check_rack_axioms(const RackStructure& rack, int n_samples, uint64_t seed,
                                     double tol = 1e-9, double scale = 0.5,
                                     ExecPolicy policy = ExecPolicy::Serial);

RackStructure trivial_rack(int dim);
RackStructure conjugation_rack(const GroupOps& group);
RackStructure kinyon_rack(const LeibnizAlgebra<double>& alg);

/// Product x |>_f y := f(x) |> y. The pointedness and equivariance of f are
/// sampled preconditions; a defect above tol is a precondition error.
RackStructure gauge(const RackStructure& rack, const std::function<Point(const Point&)>& f,
                    int n_check, uint64_t seed = 1, double tol = 1e-9);

/// Product through the augmentation: x |> y := ell_{phi(x)}(y). The
/// augmented-rack identities are sampled preconditions.
RackStructure from_augmented(const AugmentedRackStructure& aug, int n_check, uint64_t seed = 1,
                             double tol = 1e-9);

/// Sampled verification of the augmented-rack identities themselves:
/// ell_g(e) = e and phi(ell_g(x)) = g phi(x) g^{-1}.
VerificationReport check_augmented_rack(const AugmentedRackStructure& aug, int n_samples,
                                        uint64_t seed, double tol = 1e-9, double scale = 0.5);

struct TangentTable {
  std::vector<std::vector<std::vector<double>>> c;  // c[i][j][k]
  double error_estimate = 0.0;

  double max_abs() const {
    double m = 0.0;
    for (const auto& plane : c)
      for (const auto& row : plane)
        for (double v : row) m = std::max(m, std::abs(v));
    return m;
  }
};

/// Structure constants of the bracket the rack induces at the unit: mixed
/// second derivative of (s e_i) |> (u e_j), approximated by the 4-point
/// central difference at steps (t, eps). The error estimate compares against
/// the half-step table.
TangentTable tangent_leibniz(const RackStructure& rack, int dim, double t = 1e-3,
                             double eps = 1e-3);

}  // namespace rackforge

#endif
