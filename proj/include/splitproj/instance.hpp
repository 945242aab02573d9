#pragma once

#include <optional>
#include <vector>

#include "splitproj/bifunctions.hpp"
#include "splitproj/linalg.hpp"
#include "splitproj/sets.hpp"

namespace splitproj {

/// Split equilibrium problem: find x ∈ C solving EP(f, C) with Ax solving
/// EP(F, Q).
struct SepInstance {
  SetPtr c;
  SetPtr q;
  Matrix a;
  BifunctionPtr f;
  BifunctionPtr big_f;
  std::optional<Vector> known_solution;

  std::size_t domain_dim() const { return a.cols(); }
  std::size_t range_dim() const { return a.rows(); }

  /// Checks dim(C) = cols(A), dim(Q) = rows(A) and the oracle dimensions.
  void validate() const;
};

/// Split common equilibrium problem: N bifunctions on C, M on Q.
struct ScepInstance {
  SetPtr c;
  SetPtr q;
  Matrix a;
  std::vector<BifunctionPtr> f_list;
  std::vector<BifunctionPtr> big_f_list;
  std::optional<Vector> known_solution;

  std::size_t domain_dim() const { return a.cols(); }
  std::size_t range_dim() const { return a.rows(); }

  void validate() const;
  /// The single-component problem built from f_list[0] and big_f_list[0].
  SepInstance first_components() const;
};

}  // namespace splitproj
