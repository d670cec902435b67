#ifndef RACKFORGE_SCALAR_HPP
#define RACKFORGE_SCALAR_HPP

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace rackforge {

/// Exact rational scalar. Arithmetic never rounds; comparisons are exact.
using Rat = mpq_class;

/// Error taxonomy shared by all modules. The CLI maps kinds to exit codes.
enum class ErrorKind { Input, Config, Precondition, Numeric, Model, Internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

/// Parse "num/den", "num", or a plain integer literal into an exact rational.
inline Rat rat_from_string(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) fail(ErrorKind::Input, "not a rational literal: '" + s + "'");
  if (q.get_den() == 0) fail(ErrorKind::Input, "zero denominator in rational literal: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  /// Default absolute tolerance for float-mode identity checks.
  static double default_tol() { return 1e-9; }
  static bool is_zero(double v, double tol) { return std::abs(v) <= tol; }
  static double abs_double(double v) { return std::abs(v); }
  static double to_double(double v) { return v; }
  static std::string to_string(double v) { return std::to_string(v); }
};

template <>
struct scalar_traits<Rat> {
  static constexpr bool exact = true;
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static double default_tol() { return 0.0; }
  static bool is_zero(const Rat& v, double /*tol*/) { return sgn(v) == 0; }
  static double abs_double(const Rat& v) { return std::abs(v.get_d()); }
  static double to_double(const Rat& v) { return v.get_d(); }
  static std::string to_string(const Rat& v) { return rat_to_string(v); }
};

}  // namespace rackforge

#endif
