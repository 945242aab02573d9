#include "splitproj/instance.hpp"

#include <stdexcept>

namespace splitproj {

namespace {

void check_common(const SetPtr& c, const SetPtr& q, const Matrix& a,
                  const std::optional<Vector>& solution) {
  if (!c || !q) throw std::invalid_argument("instance: missing feasible set");
  if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("instance: empty A");
  require_same_size(c->dim(), a.cols(), "instance dim(C) vs cols(A)");
  require_same_size(q->dim(), a.rows(), "instance dim(Q) vs rows(A)");
  if (solution) require_same_size(solution->size(), a.cols(), "instance known solution");
}

void check_oracle(const BifunctionPtr& f, std::size_t dim, const char* what) {
  if (!f) throw std::invalid_argument(std::string("instance: missing ") + what);
  require_same_size(f->dim(), dim, what);
}

}  // namespace

void SepInstance::validate() const {
  check_common(c, q, a, known_solution);
  check_oracle(f, a.cols(), "bifunction f");
  check_oracle(big_f, a.rows(), "bifunction F");
}

void ScepInstance::validate() const {
  check_common(c, q, a, known_solution);
  if (f_list.empty() || big_f_list.empty())
    throw std::invalid_argument("ScepInstance: needs at least one f and one F component");
  for (const auto& f : f_list) check_oracle(f, a.cols(), "bifunction f_i");
  for (const auto& f : big_f_list) check_oracle(f, a.rows(), "bifunction F_j");
}

SepInstance ScepInstance::first_components() const {
  validate();
  return SepInstance{c, q, a, f_list.front(), big_f_list.front(), known_solution};
}

}  // namespace splitproj
