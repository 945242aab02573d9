#pragma once

// Closed convex feasible sets with projection oracles.

#include <memory>
#include <string>

#include "splitproj/linalg.hpp"

namespace splitproj {

class FeasibleSet {
 public:
  virtual ~FeasibleSet() = default;

  virtual std::size_t dim() const = 0;
  /// Metric projection P(x).
  virtual Vector project(const Vector& x) const = 0;
  virtual bool contains(const Vector& x, double tol = 0.0) const = 0;
  virtual std::string describe() const = 0;
};

using SetPtr = std::shared_ptr<const FeasibleSet>;

/// Axis-aligned box {x : lo ≤ x ≤ hi}.
class BoxSet final : public FeasibleSet {
 public:
  BoxSet(Vector lo, Vector hi);
  /// The cube [lo, hi]^dim.
  static BoxSet cube(std::size_t dim, double lo, double hi);

  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }

  std::size_t dim() const override { return lo_.size(); }
  Vector project(const Vector& x) const override;
  bool contains(const Vector& x, double tol = 0.0) const override;
  std::string describe() const override;

  friend bool operator==(const BoxSet& a, const BoxSet& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  Vector lo_;
  Vector hi_;
};

/// Componentwise clamp min(hi, max(lo, x)).
Vector project_box(const Vector& x, const BoxSet& box);

/// The whole space R^dim; projection is the identity.
class WholeSpace final : public FeasibleSet {
 public:
  explicit WholeSpace(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const override { return dim_; }
  Vector project(const Vector& x) const override;
  bool contains(const Vector& x, double tol = 0.0) const override;
  std::string describe() const override;

 private:
  std::size_t dim_;
};

/// The ray {(t, 0) : t ≥ 1} in R².
class UnitRaySet final : public FeasibleSet {
 public:
  std::size_t dim() const override { return 2; }
  /// (max(1, a), 0)
  Vector project(const Vector& x) const override;
  bool contains(const Vector& x, double tol = 0.0) const override;
  std::string describe() const override;
};

/// {(t, s) : t ≥ 1, s ≥ 1/√t} in R².
///
/// Projection is only supported where the divergence example needs it:
/// points already in the set (returned unchanged) and points (t, 0) with
/// t ≥ 1, for which see project_onto_sqrt_region.
class SqrtRegionSet final : public FeasibleSet {
 public:
  std::size_t dim() const override { return 2; }
  Vector project(const Vector& x) const override;
  bool contains(const Vector& x, double tol = 0.0) const override;
  std::string describe() const override;
};

/// Projection of (x, 0), x ≥ 1, onto {(t, s) : t ≥ 1, s ≥ 1/√t}.
///
/// The nearest point lies on the boundary curve s = 1/√t, at the minimiser t*
/// of h(t) = (t − x)² + 1/t over t ≥ 1. h is strictly convex with h′(x) < 0 and
/// h′(x + 1) > 0, so t* is found by bisection on h′ over [x, x + 1] until
/// |h′(t*)| ≤ 1e-12. Returns (t*, 1/√t*).
Vector project_onto_sqrt_region(const Vector& point);

/// h′(t) = 2(t − x) − 1/t²
double sqrt_region_derivative(double t, double x);

}  // namespace splitproj
