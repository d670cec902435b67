#include "rackforge/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rackforge/cutoff.hpp"
#include "rackforge/dirty.hpp"
#include "rackforge/group_model.hpp"
#include "rackforge/matfun.hpp"
#include "rackforge/monic_poly.hpp"
#include "rackforge/rack.hpp"

namespace rackforge {

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Input, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Rat entry_to_rat(const ordered_json& v, const std::string& where) {
  if (v.is_string()) return rat_from_string(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long>());
  fail(ErrorKind::Input, where + ": rational entries must be \"p/q\" strings or integers");
}

double entry_to_double(const ordered_json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string())
    return scalar_traits<Rat>::to_double(rat_from_string(v.get<std::string>()));
  fail(ErrorKind::Input, where + ": numeric entry expected");
}

template <class T>
T entry_to(const ordered_json& v, const std::string& where);
template <>
Rat entry_to<Rat>(const ordered_json& v, const std::string& where) {
  return entry_to_rat(v, where);
}
template <>
double entry_to<double>(const ordered_json& v, const std::string& where) {
  return entry_to_double(v, where);
}

template <class T>
std::vector<T> parse_vec(const ordered_json& a, int n, const std::string& where) {
  if (!a.is_array() || static_cast<int>(a.size()) != n)
    fail(ErrorKind::Input, where + ": expected " + std::to_string(n) + " entries");
  std::vector<T> v;
  v.reserve(a.size());
  for (const auto& e : a) v.push_back(entry_to<T>(e, where));
  return v;
}

template <class T>
Matrix<T> parse_matrix(const ordered_json& a, int rows, int cols, const std::string& where) {
  if (!a.is_array() || static_cast<int>(a.size()) != rows)
    fail(ErrorKind::Input, where + ": expected " + std::to_string(rows) + " rows");
  Matrix<T> m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    std::vector<T> row = parse_vec<T>(a[static_cast<size_t>(i)], cols, where);
    for (int j = 0; j < cols; ++j) m(i, j) = row[static_cast<size_t>(j)];
  }
  return m;
}

template <class T>
LeibnizAlgebra<T> parse_bracket_table(const ordered_json& br, int n, const std::string& where) {
  if (!br.is_array() || static_cast<int>(br.size()) != n)
    fail(ErrorKind::Input, where + ": expected " + std::to_string(n) + " rows");
  LeibnizAlgebra<T> alg = LeibnizAlgebra<T>::zero(n);
  for (int i = 0; i < n; ++i) {
    const auto& row = br[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      fail(ErrorKind::Input, where + ": row " + std::to_string(i + 1) + " has the wrong length");
    for (int j = 0; j < n; ++j)
      alg.c[i][j] = parse_vec<T>(row[static_cast<size_t>(j)], n, where);
  }
  return alg;
}

template <class T>
AugmentedLeibnizAlgebra<T> parse_augmentation(const ordered_json& j, int h_dim) {
  AugmentedLeibnizAlgebra<T> aug;
  aug.h_dim = h_dim;
  int m = j.at("g_dimension").get<int>();
  if (m < 0 || m > h_dim) fail(ErrorKind::Input, "augmentation: g_dimension out of range");
  aug.g = parse_bracket_table<T>(j.at("g_bracket"), m, "g_bracket");
  aug.p = parse_matrix<T>(j.at("p"), m, h_dim, "p");
  const auto& act = j.at("action");
  if (!act.is_array() || static_cast<int>(act.size()) != m)
    fail(ErrorKind::Input, "action: expected one matrix per g basis vector");
  for (const auto& a : act) aug.action.push_back(parse_matrix<T>(a, h_dim, h_dim, "action"));
  return aug;
}

ordered_json vec_json(const std::vector<Rat>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(rat_to_string(x));
  return a;
}

ordered_json vec_json(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(x);
  return a;
}

template <class T>
ordered_json matrix_json(const Matrix<T>& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    std::vector<T> row(static_cast<size_t>(m.cols()));
    for (int j = 0; j < m.cols(); ++j) row[static_cast<size_t>(j)] = m(i, j);
    rows.push_back(vec_json(row));
  }
  return rows;
}

template <class T>
ordered_json ctable_json(const LeibnizAlgebra<T>& alg) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < alg.dim; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < alg.dim; ++j) row.push_back(vec_json(alg.c[i][j]));
    rows.push_back(row);
  }
  return rows;
}

template <class T>
ordered_json subspace_json(const Subspace<T>& s) {
  ordered_json o;
  o["dim"] = s.dim();
  ordered_json basis = ordered_json::array();
  for (int i = 0; i < s.dim(); ++i) basis.push_back(vec_json(s.basis_vector(i)));
  o["basis"] = basis;
  return o;
}

ordered_json check_json(const CheckRecord& c) {
  ordered_json o;
  o["name"] = c.name;
  o["passed"] = c.passed;
  o["max_residual"] = c.max_residual;
  o["samples"] = c.samples;
  if (c.witness) {
    ordered_json w;
    w["indices"] = c.witness->indices;
    if (!c.witness->defect.empty()) w["defect"] = c.witness->defect;
    w["norm"] = c.witness->defect_norm;
    o["witness"] = w;
  }
  if (!c.note.empty()) o["note"] = c.note;
  return o;
}

class ReportBuilder {
 public:
  ReportBuilder(const std::string& cmd, const std::string& input_path, const std::string& raw,
                const std::string& scalars, uint64_t seed)
      : start_(std::chrono::steady_clock::now()) {
    body["format"] = 1;
    body["command"] = cmd;
    body["input"] = input_path;
    body["input_digest"] = "fnv1a:" + hex64(fnv1a64(raw));
    body["scalars"] = scalars;
    body["seed"] = seed;
  }

  ReportBuilder(const std::string& cmd, const ParsedAlgebra& in, uint64_t seed)
      : ReportBuilder(cmd, in.path, in.raw, in.exact ? "rational" : "float64", seed) {}

  void add(CheckRecord c) { checks.push_back(std::move(c)); }
  void add(const VerificationReport& r) {
    for (const auto& c : r.checks) checks.push_back(c);
  }
  void add_prefixed(const VerificationReport& r, const std::string& prefix) {
    for (auto c : r.checks) {
      c.name = prefix + c.name;
      checks.push_back(std::move(c));
    }
  }

  int finish() {
    ordered_json arr = ordered_json::array();
    bool ok = true;
    for (const auto& c : checks) {
      ok = ok && c.passed;
      arr.push_back(check_json(c));
    }
    body["checks"] = arr;
    body["status"] = ok ? "pass" : "violation";
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                          start_)
                    .count();
    ordered_json report;
    report["header"] = ordered_json{{"tool", "rackforge"}, {"wall_ms", ms}};
    report["body"] = body;
    std::cout << report.dump(2) << "\n";
    std::cerr << "[rackforge] " << body["command"].get<std::string>() << ": " << checks.size()
              << " checks, " << (ok ? "all passed" : "violations found") << "\n";
    return ok ? 0 : 1;
  }

  ordered_json body;
  std::vector<CheckRecord> checks;

 private:
  std::chrono::steady_clock::time_point start_;
};

GroupModel build_model(const std::string& name, const LeibnizAlgebra<double>& g,
                       const std::vector<Matrix<double>>& rep) {
  if (name == "nilpotent-bch") return nilpotent_bch_model(g);
  if (name == "e2-cover") {
    GroupModel m = e2_cover_model();
    if (g.dim != m.algebra.dim)
      fail(ErrorKind::Config, "e2-cover needs a 3-dimensional base algebra");
    for (int i = 0; i < g.dim; ++i)
      for (int j = 0; j < g.dim; ++j)
        if (vec_norm_inf(vec_sub(g.c[i][j], m.algebra.c[i][j])) > 1e-9)
          fail(ErrorKind::Config, "base algebra does not match the plane-motion cover");
    return m;
  }
  if (name == "matrix-local") {
    if (rep.empty()) fail(ErrorKind::Config, "matrix-local needs a representation block");
    return matrix_local_model(g, rep);
  }
  fail(ErrorKind::Config, "unknown model " + name);
}

int cmd_verify(const std::string& path, double tol, uint64_t seed) {
  ParsedAlgebra in = parse_algebra_file(path);
  ReportBuilder rb("verify", in, seed);
  rb.body["options"] = ordered_json{{"tol", tol}};
  if (in.exact) {
    rb.add(verify_leibniz(in.rat, 0.0));
    rb.body["is_lie"] = is_antisymmetric(in.rat, 0.0);
    if (in.aug_rat) rb.add(verify_augmented(*in.aug_rat, 0.0));
  } else {
    rb.add(verify_leibniz(in.dbl, tol));
    rb.body["is_lie"] = is_antisymmetric(in.dbl, tol);
    if (in.aug_dbl) rb.add(verify_augmented(*in.aug_dbl, tol));
  }
  return rb.finish();
}

template <class T>
void analyze_lane(ReportBuilder& rb, const LeibnizAlgebra<T>& alg, double tol) {
  VerificationReport leib = verify_leibniz(alg, tol);
  rb.add(leib);
  if (!leib.all_passed()) {
    rb.body["analysis"] = ordered_json{{"note", "skipped: bracket is not Leibniz"}};
    return;
  }
  Subspace<T> q = squares_ideal(alg, tol);
  Subspace<T> z = left_center(alg, tol);

  CheckRecord chain;
  chain.name = "squares-inside-left-center";
  chain.passed = z.contains_subspace(q, tol);
  rb.add(chain);

  QuotientResult<T> quot = quotient_by_ideal(alg, q, tol);
  rb.add_prefixed(verify_lie(quot.algebra, tol), "quotient-");

  AugmentedLeibnizAlgebra<T> aug = canonical_augmentation(alg, tol);
  rb.add(verify_augmented(aug, tol));

  ordered_json a;
  a["squares_ideal"] = subspace_json(q);
  a["left_center"] = subspace_json(z);
  ordered_json qj;
  qj["dim"] = quot.algebra.dim;
  qj["labels"] = quot.algebra.basis_labels;
  qj["bracket"] = ctable_json(quot.algebra);
  qj["projection"] = matrix_json(quot.projection);
  a["quotient"] = qj;
  ordered_json gj;
  gj["g_dimension"] = aug.g.dim;
  gj["g_bracket"] = ctable_json(aug.g);
  gj["p"] = matrix_json(aug.p);
  ordered_json acts = ordered_json::array();
  for (const auto& m : aug.action) acts.push_back(matrix_json(m));
  gj["action"] = acts;
  a["canonical_augmentation"] = gj;
  rb.body["analysis"] = a;
}

int cmd_analyze(const std::string& path, double tol, uint64_t seed) {
  ParsedAlgebra in = parse_algebra_file(path);
  ReportBuilder rb("analyze", in, seed);
  rb.body["options"] = ordered_json{{"tol", tol}};
  if (in.exact)
    analyze_lane(rb, in.rat, 0.0);
  else
    analyze_lane(rb, in.dbl, tol);
  return rb.finish();
}

int cmd_integrate(const std::string& path, const std::string& model_flag,
                  const IntegrationConfig& cfg) {
  cfg.validate();
  ParsedAlgebra in = parse_algebra_file(path);
  ReportBuilder rb("integrate", in, cfg.seed);
  rb.body["options"] =
      ordered_json{{"tau_prime", cfg.tau_prime}, {"tau", cfg.tau},     {"fd_step", cfg.fd_step},
                   {"samples", cfg.samples},     {"tol", cfg.tol},     {"tangent_tol", cfg.tangent_tol}};

  AugmentedLeibnizAlgebra<double> aug =
      in.aug_dbl ? *in.aug_dbl : canonical_augmentation(in.dbl, cfg.tol);
  std::string name = !model_flag.empty() ? model_flag : in.model_name;
  if (name.empty()) fail(ErrorKind::Config, "no group model given; use --model or a model block");
  GroupModel model = build_model(name, aug.g, in.model_rep);
  rb.body["model"] = name;

  DirtyRack rack = build_pullback_rack(aug, model, cfg);
  rb.body["fiber_dimension"] = rack.fiber_dim();

  rb.add_prefixed(verify_group_model(model, 32, cfg.seed, 1e-9), "model-");
  rb.add(check_rack_axioms(rack.rack_structure(), cfg.samples, cfg.seed, cfg.tol, 0.5,
                           ExecPolicy::Parallel));

  CheckRecord member;
  member.name = "carrier-membership";
  member.passed = true;
  member.samples = cfg.samples;
  for (int i = 0; i < cfg.samples; ++i) {
    SampleRng rng = SampleRng::for_sample(cfg.seed, static_cast<size_t>(i));
    RackPoint m = rack.sample(rng, 0.5);
    RackPoint m2 = rack.sample(rng, 0.5);
    RackPoint out{rack.rho(m.gp).apply(m2.x), model.conj(m.gp, m2.gp)};
    double d = rack.membership_defect(out);
    member.max_residual = std::max(member.max_residual, d);
    if (d > cfg.tol) member.passed = false;
  }
  rb.add(member);

  rb.add(fiber_dimension_check(rack, 32, cfg.seed));
  rb.add(section_tangency(model, cfg));
  rb.add(section_equivariance_check(model, cfg, cfg.samples, cfg.seed, ExecPolicy::Parallel));

  VerificationReport tangent = tangent_check(rack);
  rb.add(tangent);
  if (const CheckRecord* t = tangent.find("tangent-bracket-recovery"))
    rb.body["tangent_error"] = t->max_residual;

  if (rack.fiber_dim() == 0 && is_antisymmetric(in.dbl, cfg.tol) && !in.aug_dbl)
    rb.add(lie_case_reduction(in.dbl, model, cfg));

  return rb.finish();
}

int cmd_strip(const std::string& path, double tau, double tau_prime, uint64_t seed) {
  IntegrationConfig cfg;
  cfg.tau = tau;
  cfg.tau_prime = tau_prime > 0.0 ? tau_prime : tau / 2.0;
  cfg.validate();

  std::string raw = read_file(path);
  ordered_json j;
  try {
    j = ordered_json::parse(raw);
  } catch (const std::exception& e) {
    fail(ErrorKind::Input, std::string("parse error: ") + e.what());
  }

  std::vector<std::pair<std::string, Matrix<double>>> mats;
  ParsedAlgebra in;
  bool have_algebra = false;
  if (j.is_object() && j.contains("matrices")) {
    if (j.value("format", 0) != 1) fail(ErrorKind::Input, "unsupported format (want 1)");
    for (const auto& entry : j.at("matrices")) {
      std::string mname = entry.at("name").get<std::string>();
      const auto& rows = entry.at("entries");
      int n = static_cast<int>(rows.size());
      mats.emplace_back(mname, parse_matrix<double>(rows, n, n, mname));
    }
  } else {
    in = parse_algebra_file(path);
    have_algebra = true;
    for (int i = 0; i < in.dbl.dim; ++i)
      mats.emplace_back("ad " + in.dbl.basis_labels[static_cast<size_t>(i)],
                        adjoint_map(in.dbl, in.dbl.basis_vector(i)));
  }

  ReportBuilder rb("strip", path, raw, "float64", seed);
  rb.body["options"] = ordered_json{{"tau", cfg.tau}, {"tau_prime", cfg.tau_prime}};

  ordered_json table = ordered_json::array();
  for (const auto& [mname, x] : mats) {
    MonicPolynomial f = to_monic(char_poly(x));
    double max_im = 0.0;
    for (const auto& z : roots(f)) max_im = std::max(max_im, std::abs(z.imag()));
    double margin = cfg.tau - max_im;
    ordered_json o;
    o["name"] = mname;
    o["member"] = margin > 1e-12 * std::max(1.0, cfg.tau);
    o["margin"] = margin;
    o["max_im"] = max_im;
    o["root_bound"] = root_bound(f);
    o["cutoff"] = plateau(max_im, cfg.tau_prime, cfg.tau);
    table.push_back(o);
  }
  rb.body["strip"] = table;

  if (have_algebra && !in.model_name.empty() && is_antisymmetric(in.dbl, 1e-9)) {
    GroupModel model = build_model(in.model_name, in.dbl, in.model_rep);
    rb.add(exp_chart_check(model, cfg, 64, seed));
  }

  return rb.finish();
}

int cmd_rackcheck(const std::string& path, const std::string& construction, int samples,
                  uint64_t seed, double tol, double step, double gauge_scale,
                  const std::string& model_flag) {
  ParsedAlgebra in = parse_algebra_file(path);
  ReportBuilder rb("rackcheck", in, seed);
  rb.body["options"] = ordered_json{{"construction", construction},
                                    {"samples", samples},
                                    {"tol", tol},
                                    {"step", step}};

  auto model_for = [&]() {
    std::string name = !model_flag.empty() ? model_flag : in.model_name;
    if (name.empty())
      fail(ErrorKind::Config, "construction needs a group model; use --model or a model block");
    return name;
  };

  RackStructure rack;
  int table_dim = in.dbl.dim;
  bool tangent_table = true;
  std::optional<DirtyRack> dirty;

  if (construction == "trivial") {
    rack = trivial_rack(in.dbl.dim);
  } else if (construction == "kinyon") {
    rack = kinyon_rack(in.dbl);
  } else if (construction == "gauged") {
    RackStructure base = kinyon_rack(in.dbl);
    rack = gauge(
        base, [gauge_scale](const Point& x) { return vec_scale(gauge_scale, x); }, 64, seed,
        std::max(tol, 1e-9));
    rb.body["gauge_scale"] = gauge_scale;
  } else if (construction == "conjugation") {
    GroupModel model = build_model(model_for(), in.dbl, in.model_rep);
    rack = conjugation_rack(model.ops());
    table_dim = model.elem_dim;
    rb.body["model"] = model.name;
  } else if (construction == "augmented" || construction == "dirty") {
    IntegrationConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.fd_step = step;
    AugmentedLeibnizAlgebra<double> aug =
        in.aug_dbl ? *in.aug_dbl : canonical_augmentation(in.dbl, cfg.tol);
    GroupModel model = build_model(model_for(), aug.g, in.model_rep);
    rb.body["model"] = model.name;
    dirty = build_pullback_rack(aug, model, cfg);
    rb.body["fiber_dimension"] = dirty->fiber_dim();
    rb.add(check_augmented_rack(dirty->augmented_structure(), samples, seed, tol));
    rack = dirty->rack_structure();
    tangent_table = false;
  } else {
    fail(ErrorKind::Config, "unknown construction " + construction);
  }

  rb.add(check_rack_axioms(rack, samples, seed, tol, 0.5, ExecPolicy::Parallel));

  if (tangent_table) {
    TangentTable t = tangent_leibniz(rack, table_dim, step, step);
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < table_dim; ++i) {
      ordered_json row = ordered_json::array();
      for (int jj = 0; jj < table_dim; ++jj) row.push_back(vec_json(t.c[i][jj]));
      rows.push_back(row);
    }
    rb.body["recovered_bracket"] = rows;
    rb.body["recovered_bracket_error"] = t.error_estimate;
  }
  if (construction == "dirty") {
    rb.add(fiber_dimension_check(*dirty, 32, seed));
    VerificationReport tangent = tangent_check(*dirty);
    rb.add(tangent);
    if (const CheckRecord* t = tangent.find("tangent-bracket-recovery"))
      rb.body["tangent_error"] = t->max_residual;
  }

  return rb.finish();
}

}  // namespace

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

uint64_t default_seed() {
  const char* env = std::getenv("RACKFORGE_SEED");
  if (!env || !*env) return 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0')
    fail(ErrorKind::Input, "RACKFORGE_SEED must be a nonnegative integer");
  return v;
}

ParsedAlgebra parse_algebra_file(const std::string& path) {
  ParsedAlgebra out;
  out.path = path;
  out.raw = read_file(path);
  ordered_json j;
  try {
    j = ordered_json::parse(out.raw);
  } catch (const std::exception& e) {
    fail(ErrorKind::Input, std::string("parse error: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::Input, "top level must be an object");
  if (j.value("format", 0) != 1) fail(ErrorKind::Input, "unsupported format (want 1)");
  std::string scalars = j.value("scalars", "rational");
  if (scalars != "rational" && scalars != "float64")
    fail(ErrorKind::Input, "scalars must be \"rational\" or \"float64\"");
  out.exact = scalars == "rational";
  int n = j.at("dimension").get<int>();
  if (n < 1 || n > 64) fail(ErrorKind::Input, "dimension out of range");

  if (out.exact) {
    out.rat = parse_bracket_table<Rat>(j.at("bracket"), n, "bracket");
    out.dbl = to_double(out.rat);
  } else {
    out.dbl = parse_bracket_table<double>(j.at("bracket"), n, "bracket");
  }
  if (j.contains("labels")) {
    const auto& ls = j.at("labels");
    if (!ls.is_array() || static_cast<int>(ls.size()) != n)
      fail(ErrorKind::Input, "labels: expected one per basis vector");
    for (int i = 0; i < n; ++i) {
      std::string l = ls[static_cast<size_t>(i)].get<std::string>();
      out.dbl.basis_labels[static_cast<size_t>(i)] = l;
      if (out.exact) out.rat.basis_labels[static_cast<size_t>(i)] = l;
    }
  }

  if (j.contains("augmentation")) {
    const auto& a = j.at("augmentation");
    if (out.exact) {
      out.aug_rat = parse_augmentation<Rat>(a, n);
      out.aug_dbl = to_double(*out.aug_rat);
    } else {
      out.aug_dbl = parse_augmentation<double>(a, n);
    }
  }

  if (j.contains("nilradical")) {
    for (const auto& row : j.at("nilradical")) {
      if (out.exact) {
        out.nilradical_rat.push_back(parse_vec<Rat>(row, n, "nilradical"));
        out.nilradical_dbl.push_back(to_double(out.nilradical_rat.back()));
      } else {
        out.nilradical_dbl.push_back(parse_vec<double>(row, n, "nilradical"));
      }
    }
  }

  if (j.contains("model")) {
    const auto& m = j.at("model");
    out.model_name = m.at("name").get<std::string>();
    if (m.contains("representation")) {
      for (const auto& r : m.at("representation")) {
        int d = static_cast<int>(r.size());
        out.model_rep.push_back(parse_matrix<double>(r, d, d, "representation"));
      }
    }
  }
  return out;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Leibniz algebra and Lie rack toolkit"};
  app.require_subcommand(1);

  std::string path, model, construction = "kinyon";
  double tol = 1e-9, step = 1e-3, gauge_scale = 0.5;
  double tau = M_PI, tau_prime = -1.0;
  int samples = 256;
  uint64_t seed = 0;
  int rc = 0;

  try {
    seed = default_seed();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  IntegrationConfig cfg;

  auto* verify = app.add_subcommand("verify", "check the bracket identities of an algebra file");
  verify->add_option("path", path, "algebra file")->required();
  verify->add_option("--tol", tol, "float-lane tolerance");
  verify->add_option("--seed", seed, "report seed");
  verify->callback([&]() { rc = cmd_verify(path, tol, seed); });

  auto* analyze =
      app.add_subcommand("analyze", "squares ideal, left center, quotient, canonical augmentation");
  analyze->add_option("path", path, "algebra file")->required();
  analyze->add_option("--tol", tol, "float-lane tolerance");
  analyze->add_option("--seed", seed, "report seed");
  analyze->callback([&]() { rc = cmd_analyze(path, tol, seed); });

  auto* integrate = app.add_subcommand("integrate", "build and audit the pullback rack");
  integrate->add_option("path", path, "algebra file")->required();
  integrate->add_option("--model", model, "group model name");
  integrate->add_option("--tau-prime", cfg.tau_prime, "plateau end");
  integrate->add_option("--tau", cfg.tau, "support end");
  integrate->add_option("--samples", cfg.samples, "sample count");
  integrate->add_option("--seed", cfg.seed, "sample seed");
  integrate->add_option("--step", cfg.fd_step, "finite-difference step");
  integrate->add_option("--tol", cfg.tol, "check tolerance");
  integrate->callback([&]() { rc = cmd_integrate(path, model, cfg); });

  auto* strip = app.add_subcommand("strip", "eigenvalue strips, margins, and cutoff values");
  strip->add_option("path", path, "algebra or matrix file")->required();
  strip->add_option("--tau", tau, "strip half-width");
  strip->add_option("--tau-prime", tau_prime, "plateau end (default tau/2)");
  strip->add_option("--seed", seed, "sample seed");
  strip->callback([&]() { rc = cmd_strip(path, tau, tau_prime, seed); });

  auto* rackcheck = app.add_subcommand("rackcheck", "rack constructions and axiom audits");
  rackcheck->add_option("path", path, "algebra file")->required();
  rackcheck->add_option("--construction", construction,
                        "trivial | conjugation | kinyon | gauged | augmented | dirty");
  rackcheck->add_option("--samples", samples, "sample count");
  rackcheck->add_option("--seed", seed, "sample seed");
  rackcheck->add_option("--tol", tol, "check tolerance");
  rackcheck->add_option("--step", step, "finite-difference step");
  rackcheck->add_option("--gauge-scale", gauge_scale, "scaling gauge factor");
  rackcheck->add_option("--model", model, "group model name");
  rackcheck->callback([&]() {
    rc = cmd_rackcheck(path, construction, samples, seed, tol, step, gauge_scale, model);
  });

  cfg.seed = seed;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

}  // namespace rackforge
