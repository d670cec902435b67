#include "rackforge/dirty.hpp"

#include <algorithm>
#include <cmath>

#include "rackforge/matfun.hpp"

namespace rackforge {

namespace {

Point flat(const RackPoint& m) {
  Point out = m.x;
  out.insert(out.end(), m.gp.begin(), m.gp.end());
  return out;
}

RackPoint split(const Point& pt, int h_dim) {
  return RackPoint{Point(pt.begin(), pt.begin() + h_dim), Point(pt.begin() + h_dim, pt.end())};
}

}  // namespace

Point section_s(const GroupModel& model, const Point& gp, const IntegrationConfig& cfg) {
  cfg.validate();
  auto lg = model.log(gp);
  if (!lg) return Point(static_cast<size_t>(model.algebra.dim), 0.0);
  double beta = spectral_height(model.algebra, *lg);
  if (beta > M_PI * (1.0 + 1e-9))
    fail(ErrorKind::Model, "log chart returned a vector outside the pi-strip");
  double gamma = plateau(beta, cfg.tau_prime, cfg.tau);
  return vec_scale(gamma, *lg);
}

VerificationReport section_tangency(const GroupModel& model, const IntegrationConfig& cfg) {
  cfg.validate();
  if (model.elem_dim != model.algebra.dim)
    fail(ErrorKind::Precondition, "tangency check needs an algebra-shaped element chart");

  VerificationReport rep;
  CheckRecord at_e;
  at_e.name = "section-at-identity";
  at_e.passed = vec_norm_inf(section_s(model, model.identity, cfg)) == 0.0;
  at_e.note = "exact";

  CheckRecord tangent;
  tangent.name = "section-tangent-identity";
  tangent.passed = true;
  double h = cfg.fd_step;
  for (int j = 0; j < model.elem_dim; ++j) {
    Point plus = model.identity, minus = model.identity;
    plus[j] += h;
    minus[j] -= h;
    Point sp = section_s(model, plus, cfg);
    Point sm = section_s(model, minus, cfg);
    for (int k = 0; k < model.algebra.dim; ++k) {
      double want = j == k ? 1.0 : 0.0;
      double d = std::abs((sp[k] - sm[k]) / (2.0 * h) - want);
      tangent.max_residual = std::max(tangent.max_residual, d);
    }
  }
  tangent.passed = tangent.max_residual <= 1e-6;

  rep.checks = {std::move(at_e), std::move(tangent)};
  return rep;
}

VerificationReport section_equivariance_check(const GroupModel& model, const IntegrationConfig& cfg,
                                              int n_samples, uint64_t seed, ExecPolicy policy) {
  cfg.validate();
  if (n_samples < 1) fail(ErrorKind::Precondition, "need at least one sample");
  std::vector<double> defects(static_cast<size_t>(n_samples), 0.0);
  for_each_index(policy, static_cast<size_t>(n_samples), [&](size_t i) {
    SampleRng rng = SampleRng::for_sample(seed, i);
    Point xi = model.sample_algebra(rng, 0.5);
    Point eta = model.sample_algebra(rng, 0.5);
    Point g = model.exp(xi);
    Point gp = model.exp(eta);
    Point lhs = section_s(model, model.conj(g, gp), cfg);
    Point rhs = model.Ad(g).apply(section_s(model, gp, cfg));
    defects[i] = vec_norm_inf(vec_sub(lhs, rhs));
  });

  CheckRecord rec;
  rec.name = "section-equivariance";
  rec.passed = true;
  rec.samples = n_samples;
  for (size_t i = 0; i < defects.size(); ++i) {
    rec.max_residual = std::max(rec.max_residual, defects[i]);
    if (defects[i] >= cfg.tol && rec.passed) {
      rec.passed = false;
      Counterexample w;
      w.indices = {static_cast<int>(i) + 1};
      w.defect_norm = defects[i];
      rec.witness = w;
    }
  }
  VerificationReport rep;
  rep.checks = {std::move(rec)};
  return rep;
}

double DirtyRack::membership_defect(const RackPoint& m) const {
  return vec_norm_inf(vec_sub(aug.p.apply(m.x), section_s(model, m.gp, config)));
}

bool DirtyRack::in_carrier(const RackPoint& m) const { return membership_defect(m) <= config.tol; }

RackPoint DirtyRack::base_point() const {
  return RackPoint{Point(static_cast<size_t>(aug.h_dim), 0.0), model.identity};
}

RackPoint DirtyRack::sample(SampleRng& rng, double scale) const {
  Point eta = model.sample_algebra(rng, scale);
  Point gp = model.exp(eta);
  Point x = p_pinv.apply(section_s(model, gp, config));
  for (const auto& k : kernel) x = vec_add(x, vec_scale(rng.next_in(-scale, scale), k));
  return RackPoint{std::move(x), std::move(gp)};
}

Matrix<double> DirtyRack::rho(const Point& gp) const {
  Matrix<double> r = Matrix<double>::identity(aug.h_dim);
  for (const Point& w : model.exp_word_factor(gp)) r = r * mat_exp(aug.action_of(w));
  return r;
}

AugmentedRackStructure DirtyRack::augmented_structure() const {
  AugmentedRackStructure a;
  int h_dim = aug.h_dim;
  a.dim = h_dim + model.elem_dim;
  a.unit = flat(base_point());
  a.group = model.ops();
  a.phi = [h_dim](const Point& pt) { return Point(pt.begin() + h_dim, pt.end()); };
  a.ell = [self = *this, h_dim](const Point& g, const Point& pt) {
    RackPoint m = split(pt, h_dim);
    return flat(RackPoint{self.rho(g).apply(m.x), self.model.conj(g, m.gp)});
  };
  a.sampler = [self = *this](SampleRng& rng, double scale) { return flat(self.sample(rng, scale)); };
  a.in_carrier = [self = *this, h_dim](const Point& pt) {
    return self.in_carrier(split(pt, h_dim));
  };
  return a;
}

RackStructure DirtyRack::rack_structure() const {
  RackStructure r;
  int h_dim = aug.h_dim;
  r.dim = aug.h_dim + model.elem_dim;
  r.unit = flat(base_point());
  r.product = [self = *this, h_dim](const Point& a, const Point& b) {
    return flat(rack_product_M(self, split(a, h_dim), split(b, h_dim)));
  };
  r.sampler = [self = *this](SampleRng& rng, double scale) { return flat(self.sample(rng, scale)); };
  r.in_carrier = [self = *this, h_dim](const Point& pt) {
    return self.in_carrier(split(pt, h_dim));
  };
  return r;
}

DirtyRack build_pullback_rack(const AugmentedLeibnizAlgebra<double>& aug, const GroupModel& model,
                              const IntegrationConfig& cfg) {
  cfg.validate();
  if (!aug.well_formed()) fail(ErrorKind::Input, "augmentation shape mismatch");
  if (model.algebra.dim != aug.g.dim)
    fail(ErrorKind::Input, "model algebra dimension does not match the augmentation base");
  double worst = 0.0;
  for (int i = 0; i < aug.g.dim; ++i)
    for (int j = 0; j < aug.g.dim; ++j)
      worst = std::max(worst, vec_norm_inf(vec_sub(model.algebra.c[i][j], aug.g.c[i][j])));
  if (worst > 1e-9) fail(ErrorKind::Config, "model algebra differs from the augmentation base");

  VerificationReport audit = verify_augmented(aug, cfg.tol);
  if (!audit.all_passed()) {
    std::string name = "augmentation";
    for (const auto& c : audit.checks)
      if (!c.passed) {
        name = c.name;
        break;
      }
    fail(ErrorKind::Precondition, "augmentation invariants fail at " + name);
  }

  if (rank(aug.p, cfg.tol) != aug.g.dim)
    fail(ErrorKind::Config, "p does not map onto the model algebra");

  DirtyRack r;
  r.aug = aug;
  r.model = model;
  r.config = cfg;
  Matrix<double> pt = aug.p.transpose();
  auto gram_inv = inverse(aug.p * pt, cfg.tol);
  if (!gram_inv) fail(ErrorKind::Config, "p does not map onto the model algebra");
  r.p_pinv = pt * *gram_inv;
  r.kernel = kernel_basis(aug.p, cfg.tol);
  return r;
}

RackPoint rack_product_M(const DirtyRack& rack, const RackPoint& m, const RackPoint& mp) {
  if (rack.membership_defect(m) > rack.config.tol ||
      rack.membership_defect(mp) > rack.config.tol)
    fail(ErrorKind::Precondition, "rack product input off the carrier");
  RackPoint out{rack.rho(m.gp).apply(mp.x), rack.model.conj(m.gp, mp.gp)};
  double d = rack.membership_defect(out);
  if (d > rack.config.tol)
    fail(ErrorKind::Model,
         "rack product left the carrier (defect " + std::to_string(d) + ")");
  return out;
}

VerificationReport fiber_dimension_check(const DirtyRack& rack, int n_base, uint64_t seed) {
  if (n_base < 1) fail(ErrorKind::Precondition, "need at least one base point");
  CheckRecord shape;
  shape.name = "fiber-dimension";
  shape.passed = rack.fiber_dim() == rack.aug.h_dim - rack.aug.g.dim;
  shape.note = "dim " + std::to_string(rack.fiber_dim());

  CheckRecord affine;
  affine.name = "fiber-affine-structure";
  affine.passed = true;
  affine.samples = n_base;
  for (int i = 0; i < n_base; ++i) {
    SampleRng rng = SampleRng::for_sample(seed, static_cast<size_t>(i));
    RackPoint m = rack.sample(rng, 0.5);
    for (const auto& k : rack.kernel) {
      RackPoint shifted{vec_add(m.x, k), m.gp};
      double d = rack.membership_defect(shifted);
      affine.max_residual = std::max(affine.max_residual, d);
      if (d > rack.config.tol) affine.passed = false;
    }
    for (int a = 0; a < rack.aug.g.dim; ++a) {
      Point dir(static_cast<size_t>(rack.aug.g.dim), 0.0);
      dir[a] = 1.0;
      RackPoint shifted{vec_add(m.x, rack.p_pinv.apply(dir)), m.gp};
      if (rack.membership_defect(shifted) <= 10.0 * rack.config.tol) affine.passed = false;
    }
  }

  VerificationReport rep;
  rep.checks = {std::move(shape), std::move(affine)};
  return rep;
}

VerificationReport tangent_check(const DirtyRack& rack) {
  const auto& aug = rack.aug;
  const auto& cfg = rack.config;
  int n = aug.h_dim;
  double t = cfg.fd_step;

  double reach = 0.0;
  for (int i = 0; i < n; ++i) {
    Point pei(static_cast<size_t>(aug.g.dim), 0.0);
    for (int a = 0; a < aug.g.dim; ++a) pei[a] = aug.p(a, i);
    reach = std::max(reach, t * spectral_height(rack.model.algebra, pei));
  }
  if (reach >= 0.9 * cfg.tau_prime)
    fail(ErrorKind::Config, "difference steps leave the cutoff plateau; reduce fd_step");

  auto curve = [&](int i, double s) {
    Point x(static_cast<size_t>(n), 0.0);
    x[i] = s;
    Point pei(static_cast<size_t>(aug.g.dim), 0.0);
    for (int a = 0; a < aug.g.dim; ++a) pei[a] = s * aug.p(a, i);
    return RackPoint{std::move(x), rack.model.exp(pei)};
  };

  LeibnizAlgebra<double> want = derived_algebra(aug);
  double scale = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, vec_norm_inf(want.c[i][j]));

  CheckRecord rec;
  rec.name = "tangent-bracket-recovery";
  rec.samples = 0;
  double err = 0.0;
  int wi = 0, wj = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Point fpp = rack_product_M(rack, curve(i, t), curve(j, t)).x;
      Point fmp = rack_product_M(rack, curve(i, -t), curve(j, t)).x;
      Point fpm = rack_product_M(rack, curve(i, t), curve(j, -t)).x;
      Point fmm = rack_product_M(rack, curve(i, -t), curve(j, -t)).x;
      for (int k = 0; k < n; ++k) {
        double got = (fpp[k] - fmp[k] - fpm[k] + fmm[k]) / (4.0 * t * t);
        double d = std::abs(got - want.c[i][j][k]);
        if (d > err) {
          err = d;
          wi = i;
          wj = j;
        }
      }
    }
  rec.max_residual = err / scale;
  rec.passed = rec.max_residual <= cfg.tangent_tol;
  if (!rec.passed) {
    Counterexample w;
    w.indices = {wi + 1, wj + 1};
    w.defect_norm = err;
    rec.witness = w;
  }
  rec.note = "relative to largest structure constant";

  VerificationReport rep;
  rep.checks = {std::move(rec)};
  return rep;
}

VerificationReport lie_case_reduction(const LeibnizAlgebra<double>& lie, const GroupModel& model,
                                      const IntegrationConfig& cfg) {
  cfg.validate();
  if (!verify_lie(lie, cfg.tol).all_passed())
    fail(ErrorKind::Precondition, "reduction needs a Lie algebra");
  AugmentedLeibnizAlgebra<double> aug = canonical_augmentation(lie, cfg.tol);
  if (!kernel_basis(aug.p, cfg.tol).empty())
    fail(ErrorKind::Precondition, "pullback fibers are positive-dimensional");
  DirtyRack rack = build_pullback_rack(aug, model, cfg);

  CheckRecord fib;
  fib.name = "fiber-dimension-zero";
  fib.passed = rack.fiber_dim() == 0;

  auto lift = [&](const Point& gp) {
    return RackPoint{rack.p_pinv.apply(section_s(model, gp, cfg)), gp};
  };

  CheckRecord transport;
  transport.name = "conjugation-transport";
  transport.passed = true;
  transport.samples = cfg.samples;
  for (int i = 0; i < cfg.samples; ++i) {
    SampleRng rng = SampleRng::for_sample(cfg.seed, static_cast<size_t>(i));
    Point g = model.exp(model.sample_algebra(rng, 0.5));
    Point g2 = model.exp(model.sample_algebra(rng, 0.5));
    RackPoint out = rack_product_M(rack, lift(g), lift(g2));
    double d = vec_norm_inf(vec_sub(out.gp, model.conj(g, g2)));
    d = std::max(d, vec_norm_inf(vec_sub(out.x, lift(out.gp).x)));
    transport.max_residual = std::max(transport.max_residual, d);
    if (d >= cfg.tol && transport.passed) {
      transport.passed = false;
      Counterexample w;
      w.indices = {i + 1};
      w.defect_norm = d;
      transport.witness = w;
    }
  }

  VerificationReport rep;
  rep.checks = {std::move(fib), std::move(transport)};
  return rep;
}

VerificationReport verify_nilradical_translation(const LeibnizAlgebra<Rat>& g,
                                                 const std::vector<std::vector<Rat>>& nilbasis,
                                                 const IntegrationConfig& cfg) {
  cfg.validate();
  if (!g.well_formed()) fail(ErrorKind::Input, "malformed structure table");
  for (const auto& v : nilbasis)
    if (static_cast<int>(v.size()) != g.dim)
      fail(ErrorKind::Input, "nilradical vector length mismatch");

  Subspace<Rat> span = Subspace<Rat>::from_vectors(nilbasis, g.dim, 0.0);
  for (int i = 0; i < g.dim; ++i)
    for (int b = 0; b < span.dim(); ++b) {
      std::vector<Rat> v = span.basis_vector(b);
      if (!span.contains(g.bracket(g.basis_vector(i), v), 0.0) ||
          !span.contains(g.bracket(v, g.basis_vector(i)), 0.0))
        fail(ErrorKind::Precondition, "claimed basis does not span an ideal");
    }

  std::vector<std::vector<Rat>> layer;
  for (int b = 0; b < span.dim(); ++b) layer.push_back(span.basis_vector(b));
  bool died = span.dim() == 0;
  for (int depth = 0; depth < g.dim && !died; ++depth) {
    std::vector<std::vector<Rat>> next;
    for (int b = 0; b < span.dim(); ++b)
      for (const auto& w : layer) next.push_back(g.bracket(span.basis_vector(b), w));
    Subspace<Rat> s = Subspace<Rat>::from_vectors(next, g.dim, 0.0);
    died = s.dim() == 0;
    layer.clear();
    for (int b = 0; b < s.dim(); ++b) layer.push_back(s.basis_vector(b));
  }
  if (!died) fail(ErrorKind::Precondition, "claimed ideal is not nilpotent");

  CheckRecord rec;
  rec.name = "charpoly-translation-invariance";
  rec.passed = true;
  rec.samples = cfg.samples;
  rec.note = "exact";
  auto draw_rat = [](SampleRng& rng) {
    long num = static_cast<long>(rng.next_small_int(41)) - 20;
    long den = 1 + static_cast<long>(rng.next_small_int(4));
    Rat r(num, den);
    r.canonicalize();
    return r;
  };
  for (int i = 0; i < cfg.samples; ++i) {
    SampleRng rng = SampleRng::for_sample(cfg.seed, static_cast<size_t>(i));
    std::vector<Rat> xi(static_cast<size_t>(g.dim));
    for (auto& c : xi) c = draw_rat(rng);
    std::vector<Rat> eta(static_cast<size_t>(g.dim), Rat(0));
    for (const auto& v : nilbasis) eta = vec_add(eta, vec_scale(draw_rat(rng), v));
    Polynomial<Rat> base = char_poly(adjoint_map(g, xi));
    Polynomial<Rat> moved = char_poly(adjoint_map(g, vec_add(xi, eta)));
    if (!(base == moved)) {
      rec.passed = false;
      rec.max_residual = 1.0;
      if (!rec.witness) {
        Counterexample w;
        w.indices = {i + 1};
        rec.witness = w;
      }
    }
  }

  VerificationReport rep;
  rep.checks = {std::move(rec)};
  return rep;
}

VerificationReport exp_chart_check(const GroupModel& model, const IntegrationConfig& cfg,
                                   int n_samples, uint64_t seed) {
  cfg.validate();
  if (n_samples < 1) fail(ErrorKind::Precondition, "need at least one sample");

  CheckRecord round;
  round.name = "log-roundtrip";
  round.passed = true;
  round.samples = n_samples;
  CheckRecord deriv;
  deriv.name = "derivative-of-exp";
  deriv.passed = true;
  deriv.samples = n_samples;
  CheckRecord invert;
  invert.name = "h-invertibility";
  invert.passed = true;
  invert.samples = n_samples;
  double min_det = -1.0;
  int skipped = 0;

  double h = cfg.fd_step;
  for (int i = 0; i < n_samples; ++i) {
    SampleRng rng = SampleRng::for_sample(seed, static_cast<size_t>(i));
    Point xi = model.sample_algebra(rng, 0.8);
    Matrix<double> ad = adjoint_map(model.algebra, xi);
    StripVerdict verdict = strip_membership(ad, M_PI);
    if (!verdict.member || verdict.margin <= 0.05 * M_PI) {
      ++skipped;
      continue;
    }

    Point g = model.exp(xi);
    auto lg = model.log(g);
    if (!lg) {
      round.passed = false;
      round.max_residual = std::max(round.max_residual, 1.0);
      continue;
    }
    double dr = vec_norm_inf(vec_sub(*lg, xi));
    round.max_residual = std::max(round.max_residual, dr);
    if (dr > cfg.tol) round.passed = false;

    Point eta = model.sample_algebra(rng, 0.5);
    Point lhs = vec_scale(1.0 / (2.0 * h),
                          vec_sub(model.exp(vec_add(xi, vec_scale(h, eta))),
                                  model.exp(vec_sub(xi, vec_scale(h, eta)))));
    Matrix<double> hs = h_series(ad);
    Point zeta = hs.apply(eta);
    Point rhs = vec_scale(1.0 / (2.0 * h),
                          vec_sub(model.multiply(g, model.exp(vec_scale(h, zeta))),
                                  model.multiply(g, model.exp(vec_scale(-h, zeta)))));
    double dd = vec_norm_inf(vec_sub(lhs, rhs)) / std::max(1.0, vec_norm_inf(lhs));
    deriv.max_residual = std::max(deriv.max_residual, dd);
    if (dd > cfg.tangent_tol) deriv.passed = false;

    double dt = std::abs(det(hs));
    if (min_det < 0.0 || dt < min_det) min_det = dt;
    if (dt <= 1e-9) invert.passed = false;
  }
  if (min_det >= 0.0) invert.note = "min |det h| " + std::to_string(min_det);
  if (skipped > 0) round.note = std::to_string(skipped) + " samples outside the strip skipped";

  VerificationReport rep;
  rep.checks = {std::move(round), std::move(deriv), std::move(invert)};
  return rep;
}

}  // namespace rackforge
