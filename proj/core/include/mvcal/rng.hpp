#pragma once

#include <cstdint>
#include <random>

namespace mvcal {

/// Deterministic random number generator.
///
/// Built on std::mt19937_64 (whose output sequence is fixed by the standard)
/// with hand-rolled transformations, so that streams are bit-reproducible
/// for a given seed across platforms and library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform draw on (0, 1).
  double uniform() {
    // 53-bit mantissa; reject exact zero so inverse-CDF transforms stay finite.
    for (;;) {
      const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  /// Standard normal draw via the inverse CDF.
  double normal();

  /// Chi-squared draw with integer degrees of freedom.
  double chisq(int df);

  /// Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n);

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Maps (master_seed, replication_index) to a stream seed via splitmix64
/// mixing. The map is fixed: changing it would change all simulation output
/// for a given master seed.
std::uint64_t replication_seed(std::uint64_t master_seed, std::uint64_t index);

}  // namespace mvcal
