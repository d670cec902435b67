#ifndef RACKFORGE_RNG_HPP
#define RACKFORGE_RNG_HPP

#include <cstdint>
#include <vector>

namespace rackforge {

/// splitmix64 stream. Chosen over <random> engines so sampled values are
/// bit-identical across platforms and standard libraries.
class SampleRng {
 public:
  explicit SampleRng(uint64_t seed) : state_(seed) {}

  /// Independent stream for sample `index` under a run-level seed. Streams do
  /// not depend on how samples are scheduled across threads.
  static SampleRng for_sample(uint64_t run_seed, uint64_t index) {
    SampleRng mix(run_seed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
    mix.next_u64();
    return mix;
  }

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  /// Uniform integer in [0, n).
  uint64_t next_below(uint64_t n) { return next_u64() % n; }

  /// Small-integer rational coordinate in [-bound, bound], as a double-exact value.
  double next_small_int(int bound) {
    return static_cast<double>(static_cast<int64_t>(next_below(2 * bound + 1)) - bound);
  }

  std::vector<double> next_vector(int n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& x : v) x = next_in(lo, hi);
    return v;
  }

 private:
  uint64_t state_;
};

}  // namespace rackforge

#endif
