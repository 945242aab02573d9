#include "splitproj/bifunctions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace splitproj {

QuadraticBifunction::QuadraticBifunction(Matrix p, Matrix r, Vector c)
    : p_(std::move(p)), r_(std::move(r)), c_(std::move(c)) {
  if (!p_.is_square() || !r_.is_square())
    throw DimensionError("QuadraticBifunction: coefficient matrices must be square");
  require_same_size(p_.rows(), c_.size(), "QuadraticBifunction P");
  require_same_size(r_.rows(), c_.size(), "QuadraticBifunction R");
  sum_ = p_ + r_;
}

double QuadraticBifunction::value(const Vector& x, const Vector& y) const {
  Vector lhs = p_.apply(x);
  lhs += r_.apply(y);
  lhs += c_;
  return dot(lhs, y - x);
}

Vector QuadraticBifunction::diagonal_subgradient(const Vector& x, double) const {
  Vector g = sum_.apply(x);
  g += c_;
  return g;
}

double RotationBifunction::value(const Vector& x, const Vector& y) const {
  return x[0] * y[1] - x[1] * y[0];
}

Vector RotationBifunction::diagonal_subgradient(const Vector& x, double) const {
  return Vector{-x[1], x[0]};
}

IndicatorBifunction::IndicatorBifunction(SetPtr set, double membership_tol)
    : set_(std::move(set)), tol_(membership_tol) {
  if (!set_) throw std::invalid_argument("IndicatorBifunction: null set");
}

double IndicatorBifunction::value(const Vector& x, const Vector& y) const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double dx = set_->contains(x, tol_) ? 0.0 : inf;
  const double dy = set_->contains(y, tol_) ? 0.0 : inf;
  return dy - dx;
}

Vector IndicatorBifunction::diagonal_subgradient(const Vector& x, double) const {
  if (!set_->contains(x, tol_)) {
    throw std::domain_error("IndicatorBifunction: subgradient requested off " +
                            set_->describe());
  }
  return Vector(x.size(), 0.0);
}

double eval_bifunction(const Bifunction& f, const Vector& x, const Vector& y) {
  require_same_size(x.size(), f.dim(), "eval_bifunction x");
  require_same_size(y.size(), f.dim(), "eval_bifunction y");
  return f.value(x, y);
}

Vector diagonal_subgradient(const Bifunction& f, const Vector& x, double eps) {
  require_same_size(x.size(), f.dim(), "diagonal_subgradient");
  if (!(eps >= 0.0)) throw std::invalid_argument("diagonal_subgradient: eps must be >= 0");
  return f.diagonal_subgradient(x, eps);
}

}  // namespace splitproj
