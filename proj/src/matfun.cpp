#include "rackforge/matfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace rackforge {

namespace {

double factorial_d(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

/// Taylor degree so that the series tail at argument norm `m` stays under tol.
int taylor_degree(double m, double tol, int cap) {
  for (int d = 1; d <= cap; ++d) {
    double head = std::pow(m, d + 1) / factorial_d(d + 1);
    if (m < d + 2 && head / (1.0 - m / (d + 2)) < tol) return d;
  }
  fail(ErrorKind::Numeric, "series truncation bound not met; matrix norm too large");
}

}  // namespace

Matrix<double> mat_exp(const Matrix<double>& x, double tol) {
  if (tol <= 0) fail(ErrorKind::Precondition, "mat_exp: tol must be positive");
  int n = x.rows();
  double norm = norm_inf(x);
  int squarings = 0;
  double scaled = norm;
  while (scaled > 0.5) {
    scaled *= 0.5;
    ++squarings;
  }
  double factor = std::ldexp(1.0, -squarings);
  Matrix<double> a = x * factor;

  int degree = std::max(16, taylor_degree(0.5, tol, 40));
  Matrix<double> acc = Matrix<double>::identity(n);
  Matrix<double> term = Matrix<double>::identity(n);
  for (int k = 1; k <= degree; ++k) {
    term = (term * a) * (1.0 / k);
    acc = acc + term;
  }
  for (int s = 0; s < squarings; ++s) acc = acc * acc;
  return acc;
}

Matrix<double> h_series(const Matrix<double>& x, double tol) {
  if (tol <= 0) fail(ErrorKind::Precondition, "h_series: tol must be positive");
  int n = x.rows();
  double m = norm_inf(x);
  Matrix<double> acc = Matrix<double>::identity(n);
  Matrix<double> power = Matrix<double>::identity(n);
  double sign = -1.0;
  for (int r = 1; r <= 200; ++r) {
    power = power * x;
    acc = acc + power * (sign / factorial_d(r + 1));
    sign = -sign;
    double tail = std::pow(m, r + 1) / factorial_d(r + 2);
    if (m < r + 3 && tail / (1.0 - m / (r + 3)) < tol) return acc;
  }
  fail(ErrorKind::Numeric, "h_series: no convergence within degree cap");
}

double det(const Matrix<double>& x) {
  int n = x.rows();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = x(i, j);
  return m.determinant();
}

StripVerdict strip_from_roots(const std::vector<std::complex<double>>& rts, double tau) {
  double max_im = 0.0;
  for (const auto& r : rts) max_im = std::max(max_im, std::abs(r.imag()));
  StripVerdict v;
  v.max_im = max_im;
  v.margin = tau - max_im;
  v.member = v.margin > 1e-12 * std::max(1.0, tau);
  return v;
}

StripVerdict strip_membership(const Matrix<double>& x, double tau) {
  if (tau <= 0) fail(ErrorKind::Precondition, "strip_membership: tau must be positive");
  return strip_from_roots(roots(to_monic(char_poly(x).monic())), tau);
}

StripVerdict strip_membership(const Matrix<Rat>& x, double tau) {
  if (tau <= 0) fail(ErrorKind::Precondition, "strip_membership: tau must be positive");
  return strip_from_roots(roots(to_monic(char_poly(x))), tau);
}

JordanPair<Rat> jordan_chevalley(const Matrix<Rat>& x) {
  int n = x.rows();
  Polynomial<Rat> f = char_poly(x);
  Polynomial<Rat> q = squarefree_part(f);
  Polynomial<Rat> qd = q.derivative();

  Matrix<Rat> s = x;
  int cap = 2;
  while ((1 << cap) < n + 1) ++cap;
  bool converged = false;
  for (int iter = 0; iter <= cap + 1; ++iter) {
    Matrix<Rat> qs = q.eval(s);
    if (qs.max_abs() == 0.0) {
      converged = true;
      break;
    }
    auto inv = inverse(qd.eval(s));
    if (!inv) fail(ErrorKind::Internal, "semisimple iteration: derivative matrix not invertible");
    s = s - qs * *inv;
  }
  if (!converged) fail(ErrorKind::Internal, "semisimple iteration did not terminate");

  JordanPair<Rat> pair{s, x - s};
  if (!is_nilpotent(pair.N)) fail(ErrorKind::Internal, "nilpotent part check failed");
  if (!((pair.S * pair.N) == (pair.N * pair.S)))
    fail(ErrorKind::Internal, "semisimple and nilpotent parts do not commute");
  Polynomial<Rat> ms = min_poly(pair.S);
  if (poly_gcd(ms, ms.derivative()).degree() != 0)
    fail(ErrorKind::Internal, "semisimple part has repeated minimal-polynomial roots");
  return pair;
}

JordanPair<double> jordan_chevalley(const Matrix<double>& x, std::string* warning) {
  int n = x.rows();
  std::vector<std::complex<double>> rts = roots(to_monic(char_poly(x).monic()), 1e-7);

  // Distinct clustered eigenvalues with multiplicities.
  std::vector<std::complex<double>> values;
  std::vector<int> mult;
  for (const auto& r : rts) {
    if (!values.empty() && r == values.back())
      ++mult.back();
    else {
      values.push_back(r);
      mult.push_back(1);
    }
  }

  double min_sep = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < values.size(); ++i)
    for (size_t j = i + 1; j < values.size(); ++j)
      min_sep = std::min(min_sep, std::abs(values[i] - values[j]));
  if (warning) {
    *warning = (values.size() > 1 && min_sep < 1e-4)
                   ? "eigenvalue clusters separated by " + std::to_string(min_sep) +
                         "; interpolation is ill-conditioned"
                   : "";
  }

  // Interpolating p with p = lambda_c + O((lambda - lambda_c)^{m_c}) at each
  // cluster makes p(X) the semisimple part.
  Eigen::MatrixXcd sys = Eigen::MatrixXcd::Zero(n, n);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  int row = 0;
  for (size_t c = 0; c < values.size(); ++c) {
    for (int d = 0; d < mult[c]; ++d, ++row) {
      for (int k = d; k < n; ++k) {
        double fall = 1.0;
        for (int t = 0; t < d; ++t) fall *= (k - t);
        sys(row, k) = fall * std::pow(values[c], k - d);
      }
      rhs(row) = d == 0 ? values[c] : std::complex<double>(0.0, 0.0);
    }
  }
  Eigen::VectorXcd coef = sys.colPivHouseholderQr().solve(rhs);

  // Complex Horner on the real matrix; imaginary parts cancel for real input
  // (conjugate clusters), so the real part is the answer.
  std::vector<std::vector<std::complex<double>>> acc(
      n, std::vector<std::complex<double>>(n, {0.0, 0.0}));
  for (int k = n - 1; k >= 0; --k) {
    std::vector<std::vector<std::complex<double>>> next(
        n, std::vector<std::complex<double>>(n, {0.0, 0.0}));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::complex<double> v(0.0, 0.0);
        for (int t = 0; t < n; ++t) v += acc[i][t] * x(t, j);
        next[i][j] = v;
      }
    for (int i = 0; i < n; ++i) next[i][i] += coef(k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) acc[i][j] = next[i][j];
  }

  JordanPair<double> pair{Matrix<double>(n, n), Matrix<double>(n, n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pair.S(i, j) = acc[i][j].real();
  pair.N = x - pair.S;
  return pair;
}

std::pair<Matrix<double>, Matrix<double>> functional_jordan_parts(const Matrix<Rat>& x,
                                                                 double tol) {
  JordanPair<Rat> jp = jordan_chevalley(x);
  Matrix<double> exp_s = mat_exp(to_double(jp.S));
  // e^X = e^S e^N with the factors commuting; building it from the exact split
  // keeps the decomposition consistent by construction.
  Matrix<double> exp_x = exp_s * mat_exp_nilpotent(to_double(jp.N));

  if ((exp_x - mat_exp(to_double(x))).max_abs() > tol * std::max(1.0, norm_inf(exp_x)))
    fail(ErrorKind::Numeric, "exponential split disagrees with direct exponential");
  auto inv = inverse(exp_s);
  if (!inv) fail(ErrorKind::Numeric, "semisimple exponential factor not invertible");
  Matrix<double> u = *inv * exp_x;
  if (!is_nilpotent(u - Matrix<double>::identity(x.rows()), tol))
    fail(ErrorKind::Numeric, "unipotent factor check failed");
  return {exp_s, exp_x - exp_s};
}

InjectivityVerdict exp_injectivity_probe(const Matrix<double>& x, const Matrix<double>& y,
                                         double tol) {
  if (tol <= 0) fail(ErrorKind::Precondition, "exp_injectivity_probe: tol must be positive");
  InjectivityVerdict v;
  v.preconditions_met = strip_membership(x, M_PI).member && strip_membership(y, M_PI).member;
  if (!v.preconditions_met) return v;
  v.exp_dist = (mat_exp(x) - mat_exp(y)).max_abs();
  v.arg_dist = (x - y).max_abs();
  v.violation = v.exp_dist < tol && v.arg_dist > 1000.0 * tol;
  return v;
}

Matrix<double> principal_log(const Matrix<double>& m, double tol) {
  int n = m.rows();
  Matrix<double> a = m;
  int halvings = 0;
  while ((a - Matrix<double>::identity(n)).max_abs() > 0.25) {
    if (++halvings > 60) fail(ErrorKind::Numeric, "principal_log: square-root reduction stalled");
    // Denman-Beavers coupled iteration for the principal square root.
    Matrix<double> yk = a;
    Matrix<double> zk = Matrix<double>::identity(n);
    bool ok = false;
    for (int it = 0; it < 50; ++it) {
      auto yi = inverse(yk);
      auto zi = inverse(zk);
      if (!yi || !zi) fail(ErrorKind::Numeric, "principal_log: singular iterate");
      Matrix<double> yn = (yk + *zi) * 0.5;
      Matrix<double> zn = (zk + *yi) * 0.5;
      double delta = (yn - yk).max_abs();
      yk = yn;
      zk = zn;
      if (delta < 1e-15 * std::max(1.0, norm_inf(yk))) {
        ok = true;
        break;
      }
    }
    if (!ok) fail(ErrorKind::Numeric, "principal_log: square root did not converge");
    a = yk;
  }

  Matrix<double> e = a - Matrix<double>::identity(n);
  double en = norm_inf(e);
  Matrix<double> acc(n, n);
  Matrix<double> power = Matrix<double>::identity(n);
  double sign = 1.0;
  for (int r = 1; r <= 120; ++r) {
    power = power * e;
    acc = acc + power * (sign / r);
    sign = -sign;
    double tail = std::pow(en, r + 1) / (r + 1);
    if (en < 1.0 && tail / (1.0 - en) < tol) break;
    if (r == 120) fail(ErrorKind::Numeric, "principal_log: series did not converge");
  }
  return acc * std::ldexp(1.0, halvings);
}

}  // namespace rackforge
