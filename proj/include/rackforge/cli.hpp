#ifndef RACKFORGE_CLI_HPP
#define RACKFORGE_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rackforge/augmented.hpp"
#include "rackforge/leibniz.hpp"

namespace rackforge {

/// Algebra description lifted from a JSON file. Rational files keep the exact
/// lane populated; the double lane is always available.
struct ParsedAlgebra {
  bool exact = false;
  std::string path;
  std::string raw;  // file bytes, for digesting

  LeibnizAlgebra<Rat> rat;
  LeibnizAlgebra<double> dbl;
  std::optional<AugmentedLeibnizAlgebra<Rat>> aug_rat;
  std::optional<AugmentedLeibnizAlgebra<double>> aug_dbl;
  std::vector<std::vector<Rat>> nilradical_rat;
  std::vector<std::vector<double>> nilradical_dbl;
  std::string model_name;
  std::vector<Matrix<double>> model_rep;  // matrix-local representation
};

ParsedAlgebra parse_algebra_file(const std::string& path);

uint64_t fnv1a64(const std::string& bytes);

/// Seed resolution: flag beats RACKFORGE_SEED beats 0.
uint64_t default_seed();

int run_cli(int argc, char** argv);

}  // namespace rackforge

#endif
