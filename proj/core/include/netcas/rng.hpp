#pragma once

#include <cstdint>
#include <random>

namespace netcas {

// Deterministic RNG used everywhere in the simulator. Distribution sampling is
// hand-rolled (Box-Muller) instead of <random> distributions so that streams
// are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double normal01();

  // Lognormal with mean 1 and coefficient of variation cv. cv == 0 returns
  // exactly 1.0 without consuming generator state.
  double lognormal_unit(double cv);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// splitmix64 finalizer; used to derive independent stream seeds from one
// user-visible seed without correlated low bits.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace netcas
