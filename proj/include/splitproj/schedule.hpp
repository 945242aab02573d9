#pragma once

// Parameter sequences ρ_n, β_n, ε_n, μ_n and their validity conditions:
//
//   C1  ρ_n ≥ ρ_min > 0, ε_n ≥ 0, β_n > 0
//   C2  Σ β_n/ρ_n = ∞, Σ β_n ε_n/ρ_n < ∞, Σ β_n² < ∞
//   C3  0 < a ≤ μ_n ≤ 1/‖A‖²
//
// C1 and C3 are checked for every index that is used. C2 is a statement about
// infinite series; only the preset β_n = 1/(n+1)^s with s ∈ (1/2, 1], constant
// ρ and ε ≡ 0 carries a certificate. Other schedules get heuristic partial-sum
// warnings.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace splitproj {

class ScheduleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Sequence = std::function<double(std::size_t)>;

class ParamSchedule {
 public:
  struct Spec {
    Sequence rho;
    Sequence beta;
    Sequence eps;
    Sequence mu;
    double rho_min = 0.0;
    double mu_lower = 0.0;
    /// Upper bound on μ_n used by the C3 check, normally 1/‖A‖².
    double mu_upper = 0.0;
    /// Certified upper bound on ‖A‖₂ the bound above was derived from.
    double operator_norm = 0.0;
    bool certified = false;
    std::string descriptor;
  };

  explicit ParamSchedule(Spec spec);

  /// β_n = 1/(n+1)^s, ρ_n = rho, ε_n = 0, μ_n = mu_scale/‖A‖² with ‖A‖ replaced
  /// by its certified upper bound. Certified iff s ∈ (1/2, 1] and
  /// mu_scale ∈ (0, 1].
  static ParamSchedule power_beta(double s, double certified_norm, double rho = 1.0,
                                  double mu_scale = 1.0);

  /// As power_beta but with a fixed μ in place of mu_scale/‖A‖².
  static ParamSchedule power_beta_fixed_mu(double s, double certified_norm, double mu,
                                           double rho = 1.0);

  double rho(std::size_t n) const { return spec_.rho(n); }
  double beta(std::size_t n) const { return spec_.beta(n); }
  double eps(std::size_t n) const { return spec_.eps(n); }
  double mu(std::size_t n) const { return spec_.mu(n); }

  double rho_min() const { return spec_.rho_min; }
  double mu_lower() const { return spec_.mu_lower; }
  double mu_upper() const { return spec_.mu_upper; }
  double operator_norm() const { return spec_.operator_norm; }
  bool certified() const { return spec_.certified; }
  const std::string& descriptor() const { return spec_.descriptor; }

  /// δ_n = 2β_nε_n/ρ_n + 2β_n²
  double delta(std::size_t n) const;

  /// Throws ScheduleError naming the violated condition (C1 or C3).
  void validate_at(std::size_t n) const;

  /// Partial-sum heuristics for C2 over the first `horizon` terms. Empty for
  /// certified schedules.
  std::vector<std::string> series_warnings(std::size_t horizon = 100000) const;

 private:
  Spec spec_;
};

}  // namespace splitproj
