#include "splitproj/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace splitproj {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::kGeneral:
      return "general";
    case Variant::kResolventFriendly:
      return "resolvent_friendly";
    case Variant::kScep:
      return "scep";
  }
  return "unknown";
}

Variant parse_variant(const std::string& name) {
  if (name == "general") return Variant::kGeneral;
  if (name == "resolvent_friendly" || name == "resolvent") return Variant::kResolventFriendly;
  if (name == "scep") return Variant::kScep;
  throw std::invalid_argument("unknown variant '" + name + "'");
}

void InstanceSpec::validate() const {
  if (m < 1 || k < 1) throw std::invalid_argument("instance spec: m and k must be >= 1");
  if (n_f < 1 || n_big_f < 1)
    throw std::invalid_argument("instance spec: component counts must be >= 1");
  if (variant != Variant::kScep && (n_f != 1 || n_big_f != 1))
    throw std::invalid_argument("instance spec: component counts need the scep variant");
  if (!(c_lo <= 0.0 && 0.0 <= c_hi) || !(q_lo <= 0.0 && 0.0 <= q_hi))
    throw std::invalid_argument("instance spec: boxes must contain the origin");
  if (!(a_lo < a_hi)) throw std::invalid_argument("instance spec: empty range for A");
}

namespace {

/// Q diag(λ) Qᵀ, symmetrised.
Matrix rotate_diagonal(const Vector& lambda, const Matrix& q) {
  require_same_size(lambda.size(), q.rows(), "spectral construction");
  return symmetric_part(q * Matrix::diagonal(lambda) * q.transpose());
}

}  // namespace

SpectralPair spectral_pair_from(const Vector& lambda_nsd, const Vector& lambda_psd,
                                const Matrix& q_nsd, const Matrix& q_psd) {
  const Matrix t = rotate_diagonal(lambda_nsd, q_nsd);
  Matrix r = rotate_diagonal(lambda_psd, q_psd);
  return SpectralPair{r - t, std::move(r)};
}

SpectralPair generate_spectral_pair(std::size_t dim, Rng& rng) {
  const Vector lambda_nsd = uniform_vector(dim, kNsdEigLo, kNsdEigHi, rng);
  const Vector lambda_psd = uniform_vector(dim, kPsdEigLo, kPsdEigHi, rng);
  const Matrix q_nsd = random_orthogonal(dim, rng);
  const Matrix q_psd = random_orthogonal(dim, rng);
  return spectral_pair_from(lambda_nsd, lambda_psd, q_nsd, q_psd);
}

Matrix generate_psd_matrix(std::size_t dim, Rng& rng) {
  const Vector lambda = uniform_vector(dim, kPsdEigLo, kPsdEigHi, rng);
  const Matrix q = random_orthogonal(dim, rng);
  return rotate_diagonal(lambda, q);
}

SepInstance GeneratedInstance::sep() const {
  return SepInstance{std::make_shared<BoxSet>(c), std::make_shared<BoxSet>(q), a,
                     std::make_shared<QuadraticBifunction>(f.at(0)),
                     std::make_shared<QuadraticBifunction>(big_f.at(0)), known_solution};
}

ScepInstance GeneratedInstance::scep() const {
  ScepInstance out{std::make_shared<BoxSet>(c), std::make_shared<BoxSet>(q), a, {}, {},
                   known_solution};
  for (const auto& fi : f) out.f_list.push_back(std::make_shared<QuadraticBifunction>(fi));
  for (const auto& fj : big_f)
    out.big_f_list.push_back(std::make_shared<QuadraticBifunction>(fj));
  return out;
}

GeneratedInstance generate_instance(const InstanceSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);

  std::vector<QuadraticBifunction> f;
  for (std::size_t i = 0; i < spec.n_f; ++i) {
    SpectralPair pair = generate_spectral_pair(spec.m, rng);
    f.emplace_back(std::move(pair.p), std::move(pair.r), Vector(spec.m));
  }
  std::vector<QuadraticBifunction> big_f;
  for (std::size_t j = 0; j < spec.n_big_f; ++j) {
    if (spec.variant == Variant::kResolventFriendly) {
      Matrix m = generate_psd_matrix(spec.k, rng);
      big_f.emplace_back(m, m, Vector(spec.k));
    } else {
      SpectralPair pair = generate_spectral_pair(spec.k, rng);
      big_f.emplace_back(std::move(pair.p), std::move(pair.r), Vector(spec.k));
    }
  }
  Matrix a = uniform_matrix(spec.k, spec.m, spec.a_lo, spec.a_hi, rng);

  return GeneratedInstance{spec,
                           BoxSet::cube(spec.m, spec.c_lo, spec.c_hi),
                           BoxSet::cube(spec.k, spec.q_lo, spec.q_hi),
                           std::move(a),
                           std::move(f),
                           std::move(big_f),
                           Vector(spec.m)};
}

SepInstance generate_sep_instance(const InstanceSpec& spec) {
  return generate_instance(spec).sep();
}

ScepInstance generate_scep_instance(const InstanceSpec& spec) {
  return generate_instance(spec).scep();
}

namespace {

BifunctionCheck check_bifunction(const QuadraticBifunction& fn, const BoxSet& set,
                                 const Vector& solution, Rng& rng, std::size_t samples) {
  BifunctionCheck c;
  const Matrix& p = fn.x_coefficient();
  const Matrix& r = fn.y_coefficient();
  c.min_eig_r = symmetric_eigenvalues(r).front();
  c.max_eig_r_minus_p = symmetric_eigenvalues(r - p).back();
  c.r_asymmetry = (r - r.transpose()).max_abs();

  c.worst_solution_value = std::numeric_limits<double>::infinity();
  c.worst_monotonicity = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    const Vector y = uniform_vector(set.dim(), set.lo()[0], set.hi()[0], rng);
    c.worst_solution_value = std::min(c.worst_solution_value, fn.value(solution, y));
    const Vector x = uniform_vector(set.dim(), set.lo()[0], set.hi()[0], rng);
    const double dist = squared_norm(y - x);
    if (dist > 0.0) {
      c.worst_monotonicity =
          std::max(c.worst_monotonicity, (fn.value(x, y) + fn.value(y, x)) / dist);
    }
  }
  c.ok = c.min_eig_r >= -1e-8 && c.max_eig_r_minus_p <= 1e-8 &&
         c.r_asymmetry <= 1e-12 * std::max(1.0, r.max_abs()) &&
         c.worst_solution_value >= -1e-10 && c.worst_monotonicity <= 1e-8;
  return c;
}

}  // namespace

InstanceCheck verify_instance(const GeneratedInstance& inst, std::uint64_t sample_seed,
                              std::size_t samples) {
  InstanceCheck out;
  Rng rng(sample_seed);
  bool ok = true;
  for (const auto& fi : inst.f) {
    out.f.push_back(check_bifunction(fi, inst.c, inst.known_solution, rng, samples));
    ok = ok && out.f.back().ok;
  }
  const Vector image = inst.a.apply(inst.known_solution);
  for (const auto& fj : inst.big_f) {
    out.big_f.push_back(check_bifunction(fj, inst.q, image, rng, samples));
    ok = ok && out.big_f.back().ok;
    if (inst.spec.variant == Variant::kResolventFriendly)
      out.resolvent_form = out.resolvent_form && fj.x_coefficient() == fj.y_coefficient();
  }
  out.solution_in_sets = inst.c.contains(inst.known_solution) && inst.q.contains(image);
  out.ok = ok && out.solution_in_sets && out.resolvent_form;
  return out;
}

SepInstance make_rotation_instance() {
  auto rotation = std::make_shared<RotationBifunction>();
  return SepInstance{std::make_shared<WholeSpace>(2), std::make_shared<WholeSpace>(2),
                     Matrix::identity(2), rotation, rotation, Vector{0.0, 0.0}};
}

SepInstance make_empty_solution_instance() {
  auto c = std::make_shared<UnitRaySet>();
  auto q = std::make_shared<SqrtRegionSet>();
  return SepInstance{c,
                     q,
                     Matrix::identity(2),
                     std::make_shared<IndicatorBifunction>(c),
                     std::make_shared<IndicatorBifunction>(q),
                     std::nullopt};
}

}  // namespace splitproj
