#include "netcas/rng.hpp"

#include <cmath>

namespace netcas {

double Rng::normal01() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller on uniforms from the raw generator; u1 shifted into (0, 1].
  double u1 = 1.0 - uniform01();
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

double Rng::lognormal_unit(double cv) {
  if (cv <= 0.0) return 1.0;
  double sigma2 = std::log1p(cv * cv);
  double mu = -0.5 * sigma2;
  return std::exp(mu + std::sqrt(sigma2) * normal01());
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace netcas
