#include "rackforge/rack.hpp"

#include <array>
#include <cmath>

#include "rackforge/matfun.hpp"

namespace rackforge {

namespace {

Point box_sample(SampleRng& rng, int dim, double scale) {
  return rng.next_vector(dim, -scale, scale);
}

struct SampleDefects {
  double unit_left = 0.0;
  double unit_right = 0.0;
  double selfdist = 0.0;
  bool injectivity_ok = true;
  bool carrier_ok = true;
};

std::array<Point, 3> draw_triple(const RackStructure& rack, uint64_t seed, size_t index,
                                 double scale) {
  SampleRng rng = SampleRng::for_sample(seed, index);
  std::array<Point, 3> pts{rack.sampler(rng, scale), rack.sampler(rng, scale),
                           rack.sampler(rng, scale)};
  return pts;
}

}  // namespace

VerificationReport check_rack_axioms(const RackStructure& rack, int n_samples, uint64_t seed,
                                     double tol, double scale, ExecPolicy policy) {
  if (n_samples < 1) fail(ErrorKind::Precondition, "check_rack_axioms: need at least one sample");

  std::vector<SampleDefects> slots(n_samples);
  for_each_index(policy, static_cast<size_t>(n_samples), [&](size_t i) {
    auto [x, y, z] = draw_triple(rack, seed, i, scale);
    SampleDefects d;
    if (rack.in_carrier && (!rack.in_carrier(x) || !rack.in_carrier(y) || !rack.in_carrier(z))) {
      d.carrier_ok = false;
      slots[i] = d;
      return;
    }
    d.unit_left = vec_norm_inf(vec_sub(rack.product(rack.unit, x), x));
    d.unit_right = vec_norm_inf(vec_sub(rack.product(x, rack.unit), rack.unit));
    Point lhs = rack.product(x, rack.product(y, z));
    Point rhs = rack.product(rack.product(x, y), rack.product(x, z));
    d.selfdist = vec_norm_inf(vec_sub(lhs, rhs));
    if (vec_norm_inf(vec_sub(y, z)) > 1e-6)
      d.injectivity_ok = vec_norm_inf(vec_sub(rack.product(x, y), rack.product(x, z))) > tol;
    slots[i] = d;
  });

  for (int i = 0; i < n_samples; ++i)
    if (!slots[i].carrier_ok) fail(ErrorKind::Model, "sampler produced a point off the carrier");

  VerificationReport rep;
  auto reduce = [&](const std::string& name, auto getter, int axiom) {
    CheckRecord rec;
    rec.name = name;
    rec.passed = true;
    rec.samples = n_samples;
    for (int i = 0; i < n_samples; ++i) {
      double v = getter(slots[i]);
      rec.max_residual = std::max(rec.max_residual, v);
      if (v > tol && rec.passed) {
        rec.passed = false;
        // Re-derive the failing sample's defect vector for the report.
        auto [x, y, z] = draw_triple(rack, seed, static_cast<size_t>(i), scale);
        Point defect;
        if (axiom == 0)
          defect = vec_sub(rack.product(rack.unit, x), x);
        else if (axiom == 1)
          defect = vec_sub(rack.product(x, rack.unit), rack.unit);
        else
          defect = vec_sub(rack.product(x, rack.product(y, z)),
                           rack.product(rack.product(x, y), rack.product(x, z)));
        rec.witness = detail::make_witness({i + 1}, defect);
      }
    }
    rep.checks.push_back(std::move(rec));
  };
  reduce("unit-absorbs-left", [](const SampleDefects& d) { return d.unit_left; }, 0);
  reduce("unit-absorbs-right", [](const SampleDefects& d) { return d.unit_right; }, 1);
  reduce("self-distributivity", [](const SampleDefects& d) { return d.selfdist; }, 2);

  CheckRecord inj;
  inj.name = "left-translation-injectivity";
  inj.passed = true;
  inj.samples = n_samples;
  for (int i = 0; i < n_samples; ++i)
    if (!slots[i].injectivity_ok) {
      if (inj.passed) inj.witness = Counterexample{{i + 1}, {}, 0.0};
      inj.passed = false;
      inj.max_residual = 1.0;
    }
  rep.checks.push_back(std::move(inj));
  return rep;
}

RackStructure trivial_rack(int dim) {
  if (dim < 0) fail(ErrorKind::Input, "trivial_rack: negative dimension");
  RackStructure r;
  r.dim = dim;
  r.unit.assign(dim, 0.0);
  r.product = [](const Point&, const Point& y) { return y; };
  r.sampler = [dim](SampleRng& rng, double scale) { return box_sample(rng, dim, scale); };
  return r;
}

RackStructure conjugation_rack(const GroupOps& group) {
  RackStructure r;
  r.dim = group.dim;
  r.unit = group.identity;
  r.product = [group](const Point& x, const Point& y) { return group.conj(x, y); };
  r.sampler = group.sampler;
  return r;
}

RackStructure kinyon_rack(const LeibnizAlgebra<double>& alg) {
  RackStructure r;
  r.dim = alg.dim;
  r.unit.assign(alg.dim, 0.0);
  r.product = [alg](const Point& x, const Point& y) {
    return mat_exp(adjoint_map(alg, x)).apply(y);
  };
  int dim = alg.dim;
  r.sampler = [dim](SampleRng& rng, double scale) { return box_sample(rng, dim, scale); };
  return r;
}

RackStructure gauge(const RackStructure& rack, const std::function<Point(const Point&)>& f,
                    int n_check, uint64_t seed, double tol) {
  if (vec_norm_inf(vec_sub(f(rack.unit), rack.unit)) > tol)
    fail(ErrorKind::Precondition, "gauge: map does not fix the unit");
  for (int i = 0; i < n_check; ++i) {
    SampleRng rng = SampleRng::for_sample(seed, static_cast<size_t>(i));
    Point x = rack.sampler(rng, 0.5);
    Point y = rack.sampler(rng, 0.5);
    double defect = vec_norm_inf(vec_sub(f(rack.product(x, y)), rack.product(x, f(y))));
    if (defect > tol)
      fail(ErrorKind::Precondition, "gauge: map is not equivariant (defect " +
                                        std::to_string(defect) + ")");
  }
  RackStructure r = rack;
  auto base = rack.product;
  r.product = [base, f](const Point& x, const Point& y) { return base(f(x), y); };
  return r;
}

VerificationReport check_augmented_rack(const AugmentedRackStructure& aug, int n_samples,
                                        uint64_t seed, double tol, double scale) {
  VerificationReport rep;
  CheckRecord fix;
  fix.name = "action-fixes-unit";
  fix.passed = true;
  fix.samples = n_samples;
  CheckRecord twist;
  twist.name = "phi-intertwines-conjugation";
  twist.passed = true;
  twist.samples = n_samples;
  for (int i = 0; i < n_samples; ++i) {
    SampleRng rng = SampleRng::for_sample(seed, static_cast<size_t>(i));
    Point g = aug.group.sampler(rng, scale);
    Point x = aug.sampler(rng, scale);
    double d1 = vec_norm_inf(vec_sub(aug.ell(g, aug.unit), aug.unit));
    fix.max_residual = std::max(fix.max_residual, d1);
    if (d1 > tol) fix.passed = false;
    double d2 =
        vec_norm_inf(vec_sub(aug.phi(aug.ell(g, x)), aug.group.conj(g, aug.phi(x))));
    twist.max_residual = std::max(twist.max_residual, d2);
    if (d2 > tol) twist.passed = false;
  }
  rep.checks.push_back(std::move(fix));
  rep.checks.push_back(std::move(twist));
  return rep;
}

RackStructure from_augmented(const AugmentedRackStructure& aug, int n_check, uint64_t seed,
                             double tol) {
  VerificationReport pre = check_augmented_rack(aug, n_check, seed, tol);
  if (!pre.all_passed())
    fail(ErrorKind::Precondition,
         "from_augmented: augmented-rack identities fail (max defect " +
             std::to_string(pre.max_residual()) + ")");
  RackStructure r;
  r.dim = aug.dim;
  r.unit = aug.unit;
  r.product = [aug](const Point& x, const Point& y) { return aug.ell(aug.phi(x), y); };
  r.sampler = aug.sampler;
  r.in_carrier = aug.in_carrier;
  return r;
}

TangentTable tangent_leibniz(const RackStructure& rack, int dim, double t, double eps) {
  if (t <= 0 || eps <= 0) fail(ErrorKind::Precondition, "tangent_leibniz: steps must be positive");

  auto chart = [&](int i, double s) {
    Point p = rack.unit;
    p[i] += s;
    if (rack.in_carrier && !rack.in_carrier(p))
      fail(ErrorKind::Model, "tangent_leibniz: chart point left the carrier");
    return p;
  };
  auto table_at = [&](double ts, double us) {
    std::vector<std::vector<std::vector<double>>> c(
        dim, std::vector<std::vector<double>>(dim, std::vector<double>(dim, 0.0)));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        Point pp = rack.product(chart(i, ts), chart(j, us));
        Point pm = rack.product(chart(i, ts), chart(j, -us));
        Point mp = rack.product(chart(i, -ts), chart(j, us));
        Point mm = rack.product(chart(i, -ts), chart(j, -us));
        for (int k = 0; k < dim; ++k)
          c[i][j][k] = (pp[k] - mp[k] - pm[k] + mm[k]) / (4.0 * ts * us);
      }
    return c;
  };

  TangentTable out;
  out.c = table_at(t, eps);
  auto half = table_at(t / 2.0, eps / 2.0);
  double diff = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) diff = std::max(diff, std::abs(out.c[i][j][k] - half[i][j][k]));
  out.error_estimate = diff * (4.0 / 3.0);
  return out;
}

}  // namespace rackforge
