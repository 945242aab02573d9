#pragma once

// Bifunction oracles f(x, y) with f(x, x) = 0.
//
// Each oracle evaluates f and returns one element of the ε-diagonal
// subdifferential ∂_ε f(x, ·)(x). The quadratic and rotation oracles return the
// exact gradient of y ↦ f(x, y) at y = x, which lies in every ε-subdifferential,
// so ε is accepted but does not change the answer.

#include <memory>
#include <string>

#include "splitproj/linalg.hpp"
#include "splitproj/sets.hpp"

namespace splitproj {

class Bifunction {
 public:
  virtual ~Bifunction() = default;

  virtual std::size_t dim() const = 0;
  virtual double value(const Vector& x, const Vector& y) const = 0;
  virtual Vector diagonal_subgradient(const Vector& x, double eps) const = 0;
  virtual std::string describe() const = 0;
};

using BifunctionPtr = std::shared_ptr<const Bifunction>;

/// f(x, y) = ⟨Px + Ry + c, y − x⟩.
class QuadraticBifunction final : public Bifunction {
 public:
  QuadraticBifunction(Matrix p, Matrix r, Vector c);

  const Matrix& x_coefficient() const { return p_; }
  const Matrix& y_coefficient() const { return r_; }
  const Vector& offset() const { return c_; }

  std::size_t dim() const override { return c_.size(); }
  double value(const Vector& x, const Vector& y) const override;
  /// (P + R)x + c. This is ∇_y f(x, y) at y = x when R is symmetric.
  Vector diagonal_subgradient(const Vector& x, double eps) const override;
  std::string describe() const override { return "quadratic"; }

  friend bool operator==(const QuadraticBifunction& a, const QuadraticBifunction& b) {
    return a.p_ == b.p_ && a.r_ == b.r_ && a.c_ == b.c_;
  }

 private:
  Matrix p_;
  Matrix r_;
  Vector c_;
  Matrix sum_;  // P + R, cached
};

/// f(x, y) = x₁y₂ − x₂y₁ on R².
class RotationBifunction final : public Bifunction {
 public:
  std::size_t dim() const override { return 2; }
  double value(const Vector& x, const Vector& y) const override;
  /// (−x₂, x₁)
  Vector diagonal_subgradient(const Vector& x, double eps) const override;
  std::string describe() const override { return "rotation"; }
};

/// f(x, y) = δ_S(y) − δ_S(x) for the indicator δ_S of a set S.
///
/// Values are 0 when both points lie in S and ±∞ otherwise (NaN when neither
/// does). The diagonal subgradient at a point of S is 0; off S it throws.
class IndicatorBifunction final : public Bifunction {
 public:
  explicit IndicatorBifunction(SetPtr set, double membership_tol = 1e-12);

  std::size_t dim() const override { return set_->dim(); }
  double value(const Vector& x, const Vector& y) const override;
  Vector diagonal_subgradient(const Vector& x, double eps) const override;
  std::string describe() const override { return "indicator of " + set_->describe(); }

 private:
  SetPtr set_;
  double tol_;
};

/// f(x, y), dimension-checked.
double eval_bifunction(const Bifunction& f, const Vector& x, const Vector& y);

/// One element of ∂_ε f(x, ·)(x); eps must be ≥ 0.
Vector diagonal_subgradient(const Bifunction& f, const Vector& x, double eps);

}  // namespace splitproj
