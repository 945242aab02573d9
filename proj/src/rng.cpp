#include "splitproj/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace splitproj {

std::uint64_t Rng::next_u64() {
  ++draws_;
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("uniform: requires lo < hi");
  return lo + (hi - lo) * uniform01();
}

double Rng::normal() {
  // 1 - u lies in (0, 1], so the logarithm is finite.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vector uniform_vector(std::size_t n, double lo, double hi, Rng& rng) {
  if (!(lo < hi)) throw std::invalid_argument("uniform_vector: requires lo < hi");
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = rng.uniform(lo, hi);
  return v;
}

Matrix uniform_matrix(std::size_t rows, std::size_t cols, double lo, double hi,
                      Rng& rng) {
  if (!(lo < hi)) throw std::invalid_argument("uniform_matrix: requires lo < hi");
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("uniform_matrix: empty shape");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

Matrix random_orthogonal(std::size_t dim, Rng& rng, int max_retries) {
  if (dim == 0) throw std::invalid_argument("random_orthogonal: dim must be >= 1");

  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    Matrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.normal();

    // Column j of q is orthonormalised against columns 0..j-1.
    Matrix q = g;
    bool deficient = false;
    for (std::size_t j = 0; j < dim && !deficient; ++j) {
      double original = 0.0;
      for (std::size_t i = 0; i < dim; ++i) original += g(i, j) * g(i, j);
      for (std::size_t k = 0; k < j; ++k) {
        double proj = 0.0;
        for (std::size_t i = 0; i < dim; ++i) proj += q(i, k) * q(i, j);
        for (std::size_t i = 0; i < dim; ++i) q(i, j) -= proj * q(i, k);
      }
      double len = 0.0;
      for (std::size_t i = 0; i < dim; ++i) len += q(i, j) * q(i, j);
      len = std::sqrt(len);
      if (len <= 1e-10 * std::sqrt(original) || len == 0.0) {
        deficient = true;
        break;
      }
      for (std::size_t i = 0; i < dim; ++i) q(i, j) /= len;
    }
    if (!deficient) return q;
  }
  throw std::runtime_error("random_orthogonal: repeated rank-deficient draws");
}

}  // namespace splitproj
