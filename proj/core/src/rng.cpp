#include "mvcal/rng.hpp"

#include <stdexcept>

#include "mvcal/special.hpp"

namespace mvcal {

double Rng::normal() { return norm_quantile(uniform()); }

double Rng::chisq(int df) {
  if (df < 1) throw std::invalid_argument("chisq: df must be >= 1");
  double s = 0.0;
  for (int i = 0; i < df; ++i) {
    const double z = normal();
    s += z * z;
  }
  return s;
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection sampling on the top bits to avoid modulo bias.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    const std::uint64_t x = gen_();
    if (x < limit) return x % n;
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t replication_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(splitmix64(master_seed) ^ splitmix64(index + 0x51ed2701ULL));
}

}  // namespace mvcal
