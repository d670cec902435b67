#ifndef RACKFORGE_REPORT_HPP
#define RACKFORGE_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

namespace rackforge {

/// First witness of a failed identity: which indices broke it and the defect
/// vector's coordinates, printed in the scalar's own notation.
struct Counterexample {
  std::vector<int> indices;  // 1-based basis indices, e.g. {i, j, k}
  std::vector<std::string> defect;
  double defect_norm = 0.0;
};

struct CheckRecord {
  std::string name;
  bool passed = false;
  double max_residual = 0.0;
  long long samples = 0;  // 0 for exhaustive/basis checks
  std::optional<Counterexample> witness;
  std::string note;
};

struct VerificationReport {
  std::vector<CheckRecord> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  double max_residual() const {
    double m = 0.0;
    for (const auto& c : checks) m = m > c.max_residual ? m : c.max_residual;
    return m;
  }

  const CheckRecord* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

}  // namespace rackforge

#endif
