// Seeded generators for random states and operators used by property sweeps.

#pragma once

#include <cstdint>
#include <random>

#include "gqm/linalg.hpp"
#include "gqm/projective.hpp"

namespace gqm {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  double normal();
  Complex complex_normal();

  ComplexVector gaussian_vector(std::size_t dim);
  /// Unitarily invariant (Haar) random ray.
  Ray ray(std::size_t dim);
  /// (X + X^H)/2 with i.i.d. standard complex normal entries.
  HermitianOperator hermitian(std::size_t dim);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace gqm
