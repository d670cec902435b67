#include "rackforge/group_model.hpp"

#include <cmath>

#include "rackforge/matfun.hpp"

namespace rackforge {

GroupOps GroupModel::ops() const {
  GroupOps g;
  g.dim = elem_dim;
  g.identity = identity;
  g.multiply = multiply;
  g.inverse = inverse;
  auto exp_fn = exp;
  auto box = sample_box;
  int adim = algebra.dim;
  g.sampler = [exp_fn, box, adim](SampleRng& rng, double scale) {
    Point xi(adim);
    for (int i = 0; i < adim; ++i) xi[i] = rng.next_in(-scale * box[i], scale * box[i]);
    return exp_fn(xi);
  };
  return g;
}

int nilpotency_class(const LeibnizAlgebra<double>& g, double tol) {
  std::vector<std::vector<double>> layer;
  for (int i = 0; i < g.dim; ++i) layer.push_back(g.basis_vector(i));
  for (int c = 1; c <= g.dim + 1; ++c) {
    std::vector<std::vector<double>> next;
    for (int i = 0; i < g.dim; ++i)
      for (const auto& v : layer) next.push_back(g.bracket(g.basis_vector(i), v));
    Subspace<double> span = Subspace<double>::from_vectors(next, g.dim, tol);
    if (span.dim() == 0) return c;
    layer.clear();
    for (int b = 0; b < span.dim(); ++b) layer.push_back(span.basis_vector(b));
  }
  return g.dim + 1;
}

GroupModel nilpotent_bch_model(const LeibnizAlgebra<double>& g, double tol) {
  if (!verify_lie(g, tol).all_passed())
    fail(ErrorKind::Config, "nilpotent-bch: algebra is not a Lie algebra");
  int cls = nilpotency_class(g, tol);
  if (cls > 4)
    fail(ErrorKind::Config,
         "nilpotent-bch: nilpotency class " + std::to_string(cls) +
             " exceeds the degree-4 product expansion");

  GroupModel m;
  m.name = "nilpotent-bch";
  m.algebra = g;
  m.elem_dim = g.dim;
  m.identity.assign(g.dim, 0.0);
  m.sample_box.assign(g.dim, 1.0);

  m.multiply = [g](const Point& x, const Point& y) {
    // Degree-4 product expansion in exponential coordinates; exact for
    // nilpotency class <= 4.
    Point xy = g.bracket(x, y);
    Point xxy = g.bracket(x, xy);
    Point yyx = g.bracket(y, g.bracket(y, x));
    Point yxxy = g.bracket(y, xxy);
    Point z = vec_add(x, y);
    z = vec_add(z, vec_scale(0.5, xy));
    z = vec_add(z, vec_scale(1.0 / 12.0, vec_add(xxy, yyx)));
    z = vec_sub(z, vec_scale(1.0 / 24.0, yxxy));
    return z;
  };
  m.inverse = [](const Point& x) { return vec_scale(-1.0, x); };
  m.exp = [](const Point& xi) { return xi; };
  m.log = [](const Point& gp) { return std::optional<Point>(gp); };
  m.Ad = [g](const Point& gp) { return mat_exp_nilpotent(adjoint_map(g, gp)); };
  m.exp_word_factor = [](const Point& gp) { return std::vector<Point>{gp}; };
  return m;
}

LeibnizAlgebra<double> e2_cover_algebra() {
  LeibnizAlgebra<double> g = LeibnizAlgebra<double>::zero(3);
  g.basis_labels = {"r", "x", "y"};
  g.c[0][1][2] = 1.0;   // [r,x] = y
  g.c[1][0][2] = -1.0;
  g.c[0][2][1] = -1.0;  // [r,y] = -x
  g.c[2][0][1] = 1.0;
  return g;
}

namespace {

// 2x2 rotation applied to (v[1], v[2]) of a 3-vector-style pair.
void rotate(double theta, double& a, double& b) {
  double c = std::cos(theta), s = std::sin(theta);
  double na = c * a - s * b;
  double nb = s * a + c * b;
  a = na;
  b = nb;
}

// Entries of V(theta) = integral of the rotation over [0,1]:
// diag sin(theta)/theta, off-diagonal (1-cos(theta))/theta.
void v_entries(double theta, double& diag, double& off) {
  if (std::abs(theta) < 1e-2) {
    double t2 = theta * theta;
    diag = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    off = theta * (0.5 - t2 / 24.0 + t2 * t2 / 720.0);
  } else {
    diag = std::sin(theta) / theta;
    off = (1.0 - std::cos(theta)) / theta;
  }
}

// Entries of V(theta)^{-1}: diag (theta/2) cot(theta/2), off-diagonal theta/2.
void v_inverse_entries(double theta, double& diag, double& off) {
  off = theta / 2.0;
  if (std::abs(theta) < 1e-2) {
    double t2 = theta * theta;
    diag = 1.0 - t2 / 12.0 - t2 * t2 / 720.0;
  } else {
    diag = theta * std::sin(theta) / (2.0 * (1.0 - std::cos(theta)));
  }
}

}  // namespace

GroupModel e2_cover_model() {
  GroupModel m;
  m.name = "e2-cover";
  m.algebra = e2_cover_algebra();
  m.elem_dim = 3;
  m.identity = {0.0, 0.0, 0.0};
  m.sample_box = {0.85 * M_PI, 1.0, 1.0};

  m.multiply = [](const Point& a, const Point& b) {
    double v1 = b[1], v2 = b[2];
    rotate(a[0], v1, v2);
    return Point{a[0] + b[0], a[1] + v1, a[2] + v2};
  };
  m.inverse = [](const Point& a) {
    double v1 = -a[1], v2 = -a[2];
    rotate(-a[0], v1, v2);
    return Point{-a[0], v1, v2};
  };
  m.exp = [](const Point& xi) {
    double diag, off;
    v_entries(xi[0], diag, off);
    return Point{xi[0], diag * xi[1] - off * xi[2], off * xi[1] + diag * xi[2]};
  };
  m.log = [](const Point& gp) -> std::optional<Point> {
    if (std::abs(gp[0]) >= M_PI * (1.0 - 1e-12)) return std::nullopt;
    double diag, off;
    v_inverse_entries(gp[0], diag, off);
    return Point{gp[0], diag * gp[1] + off * gp[2], -off * gp[1] + diag * gp[2]};
  };
  m.Ad = [](const Point& gp) {
    double c = std::cos(gp[0]), s = std::sin(gp[0]);
    Matrix<double> ad(3, 3);
    ad(0, 0) = 1.0;
    ad(1, 0) = gp[2];
    ad(2, 0) = -gp[1];
    ad(1, 1) = c;
    ad(1, 2) = -s;
    ad(2, 1) = s;
    ad(2, 2) = c;
    return ad;
  };
  auto log_fn = m.log;
  m.exp_word_factor = [log_fn](const Point& gp) {
    if (auto xi = log_fn(gp)) return std::vector<Point>{*xi};
    // Split off pure rotations until the leftover angle is inside the log
    // domain: (theta, v) = (a, 0)^{k-1} (a, R(-(k-1)a) v).
    int k = static_cast<int>(std::ceil(std::abs(gp[0]) / (M_PI / 2.0)));
    double a = gp[0] / k;
    double w1 = gp[1], w2 = gp[2];
    rotate(-(k - 1) * a, w1, w2);
    std::vector<Point> words(static_cast<size_t>(k - 1), Point{a, 0.0, 0.0});
    double diag, off;
    v_inverse_entries(a, diag, off);
    words.push_back(Point{a, diag * w1 + off * w2, -off * w1 + diag * w2});
    return words;
  };
  return m;
}

GroupModel matrix_local_model(const LeibnizAlgebra<double>& g,
                              const std::vector<Matrix<double>>& rep, double tol) {
  if (!verify_lie(g, tol).all_passed())
    fail(ErrorKind::Config, "matrix-local: algebra is not a Lie algebra");
  if (static_cast<int>(rep.size()) != g.dim)
    fail(ErrorKind::Config, "matrix-local: need one representation matrix per basis vector");
  int d = rep.empty() ? 0 : rep[0].rows();
  for (const auto& r : rep)
    if (r.rows() != d || r.cols() != d)
      fail(ErrorKind::Config, "matrix-local: representation matrices must share a square shape");

  // Faithfulness: the vectorized matrices must be independent.
  Matrix<double> stacked(d * d, g.dim);
  for (int b = 0; b < g.dim; ++b)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) stacked(i * d + j, b) = rep[b](i, j);
  if (rank(stacked, tol) != g.dim)
    fail(ErrorKind::Config, "matrix-local: representation is not faithful");

  // Bracket compatibility on basis pairs.
  auto rep_of = [rep, d](const Point& xi) {
    Matrix<double> m(d, d);
    for (size_t b = 0; b < rep.size(); ++b)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) += xi[b] * rep[b](i, j);
    return m;
  };
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b) {
      Matrix<double> lhs = rep_of(g.c[a][b]);
      Matrix<double> rhs = rep[a] * rep[b] - rep[b] * rep[a];
      if ((lhs - rhs).max_abs() > tol)
        fail(ErrorKind::Config, "matrix-local: matrices do not represent the bracket");
    }

  // Coordinates of a matrix in the representation image, with a residual
  // guard: products that fall off the image mean the chart has broken down.
  auto coords_of = [stacked, d, tol](const Matrix<double>& m) {
    std::vector<double> b(d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) b[i * d + j] = m(i, j);
    Matrix<double> st = stacked.transpose();
    Matrix<double> normal = st * stacked;
    auto sol = solve(normal, st.apply(b), tol);
    if (!sol) fail(ErrorKind::Numeric, "matrix-local: coordinate solve failed");
    Point residual = stacked.apply(*sol);
    double err = 0.0;
    for (size_t k = 0; k < residual.size(); ++k) err = std::max(err, std::abs(residual[k] - b[k]));
    if (err > 1e-7)
      fail(ErrorKind::Model, "matrix-local: product left the representation image (residual " +
                                 std::to_string(err) + ")");
    return *sol;
  };

  GroupModel m;
  m.name = "matrix-local";
  m.algebra = g;
  m.elem_dim = g.dim;
  m.identity.assign(g.dim, 0.0);
  m.sample_box.assign(g.dim, 0.4);

  m.multiply = [rep_of, coords_of](const Point& a, const Point& b) {
    Matrix<double> prod = mat_exp(rep_of(a)) * mat_exp(rep_of(b));
    return coords_of(principal_log(prod));
  };
  m.inverse = [](const Point& a) { return vec_scale(-1.0, a); };
  m.exp = [](const Point& xi) { return xi; };
  m.log = [](const Point& gp) { return std::optional<Point>(gp); };
  m.Ad = [g](const Point& gp) { return mat_exp(adjoint_map(g, gp)); };
  m.exp_word_factor = [](const Point& gp) { return std::vector<Point>{gp}; };
  return m;
}

VerificationReport verify_group_model(const GroupModel& model, int n_samples, uint64_t seed,
                                      double tol, double scale) {
  VerificationReport rep;
  CheckRecord axioms;
  axioms.name = "group-axioms";
  axioms.passed = true;
  axioms.samples = n_samples;
  CheckRecord expzero;
  expzero.name = "exp-at-zero";
  expzero.passed =
      vec_norm_inf(vec_sub(model.exp(Point(model.algebra.dim, 0.0)), model.identity)) <= tol;
  CheckRecord roundtrip;
  roundtrip.name = "log-of-exp";
  roundtrip.passed = true;
  roundtrip.samples = n_samples;
  CheckRecord adjoint;
  adjoint.name = "adjoint-matches-exp-of-ad";
  adjoint.passed = true;
  adjoint.samples = n_samples;
  CheckRecord words;
  words.name = "word-factorization";
  words.passed = true;
  words.samples = n_samples;

  for (int i = 0; i < n_samples; ++i) {
    SampleRng rng = SampleRng::for_sample(seed, static_cast<size_t>(i));
    Point xi = model.sample_algebra(rng, scale);
    Point eta = model.sample_algebra(rng, scale);
    Point zeta = model.sample_algebra(rng, scale);
    Point a = model.exp(xi), b = model.exp(eta), c = model.exp(zeta);

    double assoc = vec_norm_inf(vec_sub(model.multiply(model.multiply(a, b), c),
                                        model.multiply(a, model.multiply(b, c))));
    double unit = std::max(vec_norm_inf(vec_sub(model.multiply(model.identity, a), a)),
                           vec_norm_inf(vec_sub(model.multiply(a, model.identity), a)));
    double inv = vec_norm_inf(vec_sub(model.multiply(a, model.inverse(a)), model.identity));
    double worst = std::max({assoc, unit, inv});
    axioms.max_residual = std::max(axioms.max_residual, worst);
    if (worst > tol) axioms.passed = false;

    if (auto lg = model.log(a)) {
      double d = vec_norm_inf(vec_sub(*lg, xi));
      roundtrip.max_residual = std::max(roundtrip.max_residual, d);
      if (d > tol) roundtrip.passed = false;
    }

    Matrix<double> lhs = model.Ad(a);
    Matrix<double> rhs = mat_exp(adjoint_map(model.algebra, xi));
    double dad = (lhs - rhs).max_abs();
    adjoint.max_residual = std::max(adjoint.max_residual, dad);
    if (dad > tol) adjoint.passed = false;

    Point rebuilt = model.identity;
    for (const Point& w : model.exp_word_factor(a)) rebuilt = model.multiply(rebuilt, model.exp(w));
    double dw = vec_norm_inf(vec_sub(rebuilt, a));
    words.max_residual = std::max(words.max_residual, dw);
    if (dw > tol) words.passed = false;
  }

  rep.checks = {std::move(axioms), std::move(expzero), std::move(roundtrip), std::move(adjoint),
                std::move(words)};
  return rep;
}

}  // namespace rackforge
