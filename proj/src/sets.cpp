#include "splitproj/sets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace splitproj {

BoxSet::BoxSet(Vector lo, Vector hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  require_same_size(lo_.size(), hi_.size(), "BoxSet bounds");
  if (lo_.empty()) throw std::invalid_argument("BoxSet: zero dimension");
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (!(lo_[i] <= hi_[i]))
      throw std::invalid_argument("BoxSet: lo > hi at index " + std::to_string(i));
  }
}

BoxSet BoxSet::cube(std::size_t dim, double lo, double hi) {
  return BoxSet(Vector(dim, lo), Vector(dim, hi));
}

Vector BoxSet::project(const Vector& x) const { return project_box(x, *this); }

bool BoxSet::contains(const Vector& x, double tol) const {
  if (x.size() != dim()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lo_[i] - tol && x[i] <= hi_[i] + tol)) return false;
  }
  return true;
}

std::string BoxSet::describe() const {
  std::ostringstream os;
  const bool uniform =
      std::all_of(lo_.begin(), lo_.end(), [&](double v) { return v == lo_[0]; }) &&
      std::all_of(hi_.begin(), hi_.end(), [&](double v) { return v == hi_[0]; });
  if (uniform) {
    os << "[" << lo_[0] << "," << hi_[0] << "]^" << dim();
  } else {
    os << "box(" << dim() << ")";
  }
  return os.str();
}

Vector project_box(const Vector& x, const BoxSet& box) {
  require_same_size(x.size(), box.dim(), "project_box");
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = std::min(box.hi()[i], std::max(box.lo()[i], x[i]));
  return out;
}

Vector WholeSpace::project(const Vector& x) const {
  require_same_size(x.size(), dim_, "WholeSpace::project");
  return x;
}

bool WholeSpace::contains(const Vector& x, double) const {
  return x.size() == dim_ && x.all_finite();
}

std::string WholeSpace::describe() const { return "R^" + std::to_string(dim_); }

Vector UnitRaySet::project(const Vector& x) const {
  require_same_size(x.size(), 2, "UnitRaySet::project");
  return Vector{std::max(1.0, x[0]), 0.0};
}

bool UnitRaySet::contains(const Vector& x, double tol) const {
  return x.size() == 2 && x[0] >= 1.0 - tol && std::abs(x[1]) <= tol;
}

std::string UnitRaySet::describe() const { return "{(t,0): t>=1}"; }

Vector SqrtRegionSet::project(const Vector& x) const {
  require_same_size(x.size(), 2, "SqrtRegionSet::project");
  if (contains(x)) return x;
  return project_onto_sqrt_region(x);
}

bool SqrtRegionSet::contains(const Vector& x, double tol) const {
  return x.size() == 2 && x[0] >= 1.0 - tol &&
         x[1] >= 1.0 / std::sqrt(std::max(x[0], 1.0)) - tol;
}

std::string SqrtRegionSet::describe() const { return "{(t,s): t>=1, s>=1/sqrt(t)}"; }

double sqrt_region_derivative(double t, double x) {
  return 2.0 * (t - x) - 1.0 / (t * t);
}

Vector project_onto_sqrt_region(const Vector& point) {
  require_same_size(point.size(), 2, "project_onto_sqrt_region");
  const double x = point[0];
  if (!(x >= 1.0) || point[1] != 0.0 || !std::isfinite(x)) {
    throw std::domain_error(
        "project_onto_sqrt_region: only points (x, 0) with x >= 1 are supported");
  }

  constexpr double kDerivativeTol = 1e-12;
  double lo = x;
  double hi = x + 1.0;
  double best = lo;
  double best_abs = std::abs(sqrt_region_derivative(lo, x));
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double d = sqrt_region_derivative(mid, x);
    if (std::abs(d) < best_abs) {
      best = mid;
      best_abs = std::abs(d);
    }
    if (best_abs <= kDerivativeTol || mid == lo || mid == hi) break;
    if (d < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (best_abs > kDerivativeTol) {
    throw std::runtime_error("project_onto_sqrt_region: bisection stalled with |h'| = " +
                             std::to_string(best_abs));
  }
  return Vector{best, 1.0 / std::sqrt(best)};
}

}  // namespace splitproj
