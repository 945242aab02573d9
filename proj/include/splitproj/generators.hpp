#pragma once

// Reproducible random test instances of Nash-Cournot type and the two fixed
// counterexample instances.
//
// A generated instance has f(x, y) = ⟨P̄x + R̄y, y − x⟩ on C = [−1, 5]^m and
// F(u, v) = ⟨Pu + Rv, v − u⟩ on Q = [−2, 5]^k, with R̄, R symmetric PSD and
// R̄ − P̄, R − P negative semidefinite, a k×m matrix A with uniform entries in
// [−10, 10] and zero linear terms, so x* = 0 solves the problem.
//
// Random stream order, one Rng seeded with InstanceSpec::seed:
//   for each f component, then each F component (a spectral pair of size d):
//     d draws λ₁ ∈ [−10, 0], d draws λ₂ ∈ [1, 10], orthogonal Q₁, orthogonal Q₂
//     (resolvent-friendly F: d draws λ₂ and Q₂ only)
//   then A, row-major.
// Orthogonal matrices consume d² normal draws (two uniforms each) per attempt.

#include <cstdint>
#include <string>
#include <vector>

#include "splitproj/bifunctions.hpp"
#include "splitproj/instance.hpp"
#include "splitproj/rng.hpp"
#include "splitproj/sets.hpp"

namespace splitproj {

enum class Variant {
  /// P ≠ R for both bifunctions.
  kGeneral,
  /// F has P = R (symmetric PSD), so its resolvent is a proximal map.
  kResolventFriendly,
  /// n_f components on C and n_big_f on Q, all general.
  kScep,
};

std::string to_string(Variant v);
Variant parse_variant(const std::string& name);

struct InstanceSpec {
  std::size_t m = 30;
  std::size_t k = 20;
  std::uint64_t seed = 1;
  Variant variant = Variant::kGeneral;
  std::size_t n_f = 1;
  std::size_t n_big_f = 1;
  double c_lo = -1.0;
  double c_hi = 5.0;
  double q_lo = -2.0;
  double q_hi = 5.0;
  double a_lo = -10.0;
  double a_hi = 10.0;

  /// Throws std::invalid_argument on bad dimensions, counts or ranges.
  void validate() const;

  friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

/// Eigen-ranges for the spectral construction.
inline constexpr double kNsdEigLo = -10.0;
inline constexpr double kNsdEigHi = 0.0;
inline constexpr double kPsdEigLo = 1.0;
inline constexpr double kPsdEigHi = 10.0;

struct SpectralPair {
  Matrix p;  // x-coefficient, R − T
  Matrix r;  // y-coefficient, symmetric PSD
};

/// R = Q₂ diag(λ₂) Q₂ᵀ, T = Q₁ diag(λ₁) Q₁ᵀ, P = R − T. R and T are
/// symmetrised after the products.
SpectralPair spectral_pair_from(const Vector& lambda_nsd, const Vector& lambda_psd,
                                const Matrix& q_nsd, const Matrix& q_psd);

SpectralPair generate_spectral_pair(std::size_t dim, Rng& rng);

/// Symmetric PSD Q diag(λ) Qᵀ with λ ∈ [1, 10].
Matrix generate_psd_matrix(std::size_t dim, Rng& rng);

/// The concrete data of a generated instance.
struct GeneratedInstance {
  InstanceSpec spec;
  BoxSet c;
  BoxSet q;
  Matrix a;
  std::vector<QuadraticBifunction> f;
  std::vector<QuadraticBifunction> big_f;
  Vector known_solution;

  /// Uses f[0] and big_f[0].
  SepInstance sep() const;
  ScepInstance scep() const;

  friend bool operator==(const GeneratedInstance&, const GeneratedInstance&) = default;
};

GeneratedInstance generate_instance(const InstanceSpec& spec);

/// Convenience wrappers over generate_instance.
SepInstance generate_sep_instance(const InstanceSpec& spec);
ScepInstance generate_scep_instance(const InstanceSpec& spec);

/// Construction checks for one generated bifunction.
struct BifunctionCheck {
  double min_eig_r = 0.0;       // ≥ −1e-8 required
  double max_eig_r_minus_p = 0.0;  // ≤ 1e-8 required
  double r_asymmetry = 0.0;
  double worst_solution_value = 0.0;  // min over samples of f(x*, y), ≥ −1e-10
  double worst_monotonicity = 0.0;    // max of (f(x,y)+f(y,x))/‖y−x‖², ≤ 1e-8
  bool ok = false;
};

struct InstanceCheck {
  std::vector<BifunctionCheck> f;
  std::vector<BifunctionCheck> big_f;
  bool solution_in_sets = false;  // 0 ∈ C, A·0 ∈ Q
  bool resolvent_form = true;     // P = R for F in the resolvent-friendly variant
  bool ok = false;
};

/// Eigenvalue checks plus sampling f(x*, y) ≥ −1e-10 over `samples` random
/// y ∈ C (and the same for F on Q) and monotonicity over random pairs.
InstanceCheck verify_instance(const GeneratedInstance& inst, std::uint64_t sample_seed,
                              std::size_t samples = 1000);

/// C = Q = R², A = I, f = F = x₁y₂ − x₂y₁, x* = 0.
SepInstance make_rotation_instance();

/// C = {(t,0): t ≥ 1}, Q = {(t,s): t ≥ 1, s ≥ 1/√t}, A = I, indicator
/// bifunctions of C and Q, no solution.
SepInstance make_empty_solution_instance();

}  // namespace splitproj
