#include "splitproj/schedule.hpp"

#include <cmath>
#include <sstream>

namespace splitproj {

ParamSchedule::ParamSchedule(Spec spec) : spec_(std::move(spec)) {
  if (!spec_.rho || !spec_.beta || !spec_.eps || !spec_.mu)
    throw ScheduleError("schedule: all four sequences are required");
  if (!(spec_.rho_min > 0.0)) throw ScheduleError("schedule: C1 requires rho_min > 0");
  if (!(spec_.mu_lower > 0.0)) throw ScheduleError("schedule: C3 requires a > 0");
  if (!(spec_.mu_lower <= spec_.mu_upper))
    throw ScheduleError("schedule: C3 requires a <= upper bound on mu");
}

namespace {

std::string power_descriptor(double s, double rho, const std::string& mu) {
  std::ostringstream os;
  os << "beta=1/(n+1)^" << s << ";rho=" << rho << ";eps=0;mu=" << mu;
  return os.str();
}

ParamSchedule make_power(double s, double certified_norm, double rho, double mu,
                         bool mu_certified, std::string mu_label) {
  if (!(certified_norm > 0.0))
    throw ScheduleError("schedule: operator norm bound must be > 0");
  if (!(s > 0.0)) throw ScheduleError("schedule: beta exponent must be > 0");
  ParamSchedule::Spec spec;
  spec.rho = [rho](std::size_t) { return rho; };
  spec.beta = [s](std::size_t n) { return 1.0 / std::pow(static_cast<double>(n + 1), s); };
  spec.eps = [](std::size_t) { return 0.0; };
  spec.mu = [mu](std::size_t) { return mu; };
  spec.rho_min = rho;
  spec.mu_lower = mu;
  spec.mu_upper = 1.0 / (certified_norm * certified_norm);
  spec.operator_norm = certified_norm;
  spec.certified = s > 0.5 && s <= 1.0 && mu_certified;
  spec.descriptor = power_descriptor(s, rho, mu_label);
  return ParamSchedule(std::move(spec));
}

}  // namespace

ParamSchedule ParamSchedule::power_beta(double s, double certified_norm, double rho,
                                        double mu_scale) {
  if (!(mu_scale > 0.0)) throw ScheduleError("schedule: mu scale must be > 0");
  const double mu = mu_scale / (certified_norm * certified_norm);
  std::ostringstream label;
  if (mu_scale == 1.0) {
    label << "1/|A|^2";
  } else {
    label << mu_scale << "/|A|^2";
  }
  return make_power(s, certified_norm, rho, mu, mu_scale <= 1.0, label.str());
}

ParamSchedule ParamSchedule::power_beta_fixed_mu(double s, double certified_norm,
                                                 double mu, double rho) {
  std::ostringstream label;
  label << mu;
  const bool within = mu > 0.0 && mu <= 1.0 / (certified_norm * certified_norm);
  return make_power(s, certified_norm, rho, mu, within, label.str());
}

double ParamSchedule::delta(std::size_t n) const {
  const double b = beta(n);
  return 2.0 * b * eps(n) / rho(n) + 2.0 * b * b;
}

void ParamSchedule::validate_at(std::size_t n) const {
  const double r = rho(n), b = beta(n), e = eps(n), m = mu(n);
  auto fail = [n](const std::string& what) {
    throw ScheduleError("schedule invalid at n=" + std::to_string(n) + ": " + what);
  };
  if (!(r >= spec_.rho_min)) fail("C1 rho_n >= rho_min violated");
  if (!(e >= 0.0)) fail("C1 eps_n >= 0 violated");
  if (!(b > 0.0) || !std::isfinite(b)) fail("C1 beta_n > 0 violated");
  if (!(m >= spec_.mu_lower)) fail("C3 mu_n >= a violated");
  if (!(m <= spec_.mu_upper)) fail("C3 mu_n <= 1/|A|^2 violated");
}

std::vector<std::string> ParamSchedule::series_warnings(std::size_t horizon) const {
  std::vector<std::string> warnings;
  if (spec_.certified) return warnings;
  warnings.emplace_back("schedule is uncertified: C2 series conditions not proven");
  if (horizon < 4) return warnings;

  const std::size_t half = horizon / 2;
  double s1_half = 0, s1 = 0, s2_half = 0, s2 = 0, s3_half = 0, s3 = 0;
  for (std::size_t n = 0; n < horizon; ++n) {
    const double b = beta(n), r = rho(n), e = eps(n);
    s1 += b / r;
    s2 += b * e / r;
    s3 += b * b;
    if (n + 1 == half) {
      s1_half = s1;
      s2_half = s2;
      s3_half = s3;
    }
  }
  // A divergent series keeps growing over the second half; a convergent one
  // barely moves.
  if (s1 - s1_half < 1e-3 * s1_half)
    warnings.emplace_back("sum beta_n/rho_n appears to converge (C2 needs divergence)");
  if (s2 > 0.0 && s2 - s2_half > 0.5 * s2_half)
    warnings.emplace_back("sum beta_n*eps_n/rho_n appears to diverge");
  if (s3 - s3_half > 0.5 * s3_half)
    warnings.emplace_back("sum beta_n^2 appears to diverge");
  return warnings;
}

}  // namespace splitproj
