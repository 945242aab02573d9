#pragma once

// Seeded random numbers and random matrices.
//
// The generator is SplitMix64: a 64-bit counter advanced by the golden-ratio
// increment and passed through a fixed finalizer. Uniform doubles take the top
// 53 bits of each output. Normal draws use Box-Muller with two consecutive
// uniforms and discard the second variate. Matrices are filled row-major.
// Distribution code is written here rather than taken from <random> because
// the standard distributions are implementation-defined.

#include <cstdint>

#include "splitproj/linalg.hpp"

namespace splitproj {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform01();
  /// Uniform in [lo, hi].
  double uniform(double lo, double hi);
  /// Standard normal.
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
  std::uint64_t draws_ = 0;
};

Vector uniform_vector(std::size_t n, double lo, double hi, Rng& rng);

/// i.i.d. uniform entries in [lo, hi]; requires lo < hi.
Matrix uniform_matrix(std::size_t rows, std::size_t cols, double lo, double hi,
                      Rng& rng);

/// Haar-like random orthogonal matrix: modified Gram-Schmidt applied to the
/// columns of a matrix of standard normal draws. A numerically rank-deficient
/// draw is discarded and redrawn (at most `max_retries` times).
Matrix random_orthogonal(std::size_t dim, Rng& rng, int max_retries = 16);

}  // namespace splitproj
