#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ldlab/algebra.hpp"

namespace ldlab {

// A finitely generated R-module, stored as a k-vector space with the action
// of every working basis element of R. Optionally graded (a degree per basis
// vector, with w_a raising degree by level(a)) and optionally embedded in a
// free module R^b.
template <ExactField F>
class RModule {
 public:
  using Element = typename F::Element;
  using AlgebraPtr = std::shared_ptr<const FiniteLocalAlgebra<F>>;

  struct Embedding {
    std::size_t rank;   // b
    Matrix<F> basis;    // rows: module basis vectors in R^b coordinates
  };

  RModule(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix<F>> actions,
          std::optional<std::vector<int>> degrees = std::nullopt, std::optional<Embedding> embedding = std::nullopt)
      : algebra_(std::move(algebra)),
        dim_(dim),
        actions_(std::move(actions)),
        degrees_(std::move(degrees)),
        embedding_(std::move(embedding)) {
    if (actions_.size() != algebra_->dim()) throw InvalidInput("module needs one action matrix per basis element of R");
    for (const auto& m : actions_)
      if (m.rows() != dim_ || m.cols() != dim_) throw InvalidInput("action matrix has the wrong shape");
    if (degrees_ && degrees_->size() != dim_) throw InvalidInput("degree list has the wrong length");
  }

  const AlgebraPtr& algebra() const { return algebra_; }
  std::size_t dim() const { return dim_; }
  // Action of working basis element a of R.
  const Matrix<F>& action(std::size_t a) const { return actions_.at(a); }
  const std::vector<Matrix<F>>& actions() const { return actions_; }
  bool is_graded() const { return degrees_.has_value(); }
  const std::optional<std::vector<int>>& degrees() const { return degrees_; }
  const std::optional<Embedding>& embedding() const { return embedding_; }

  // Action of an arbitrary element of R.
  Matrix<F> action_of(std::span<const Element> r) const {
    const F& f = algebra_->field();
    Matrix<F> m(f, dim_, dim_);
    for (std::size_t a = 0; a < r.size(); ++a) {
      if (f.is_zero(r[a])) continue;
      for (std::size_t i = 0; i < dim_; ++i) f.add_mul(m.row(i), r[a], actions_[a].row(i));
    }
    return m;
  }
  // Action of the designated generators of m.
  std::vector<Matrix<F>> generator_actions() const {
    std::vector<Matrix<F>> out;
    for (const auto& g : algebra_->m_generators()) out.push_back(action_of(g));
    return out;
  }

  // Module axioms: unit acts as identity, rho(w_a) rho(w_b) = rho(w_a w_b)
  // for all pairs, m acts nilpotently, degrees (if any) are respected.
  // Returns an empty string when all hold.
  std::string check_axioms() const;

 private:
  AlgebraPtr algebra_;
  std::size_t dim_;
  std::vector<Matrix<F>> actions_;
  std::optional<std::vector<int>> degrees_;
  std::optional<Embedding> embedding_;
};

template <ExactField F>
std::string RModule<F>::check_axioms() const {
  const auto& a = *algebra_;
  const F& f = a.field();
  if (!(actions_[0] == Matrix<F>::identity(f, dim_))) return "unit does not act as the identity";
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const auto lhs = actions_[i] * actions_[j];
      if (!(lhs == actions_[j] * actions_[i])) return "actions do not commute";
      if (!(lhs == action_of(a.basis_product(i, j)))) return "action does not respect the product of R";
    }
  }
  if (degrees_) {
    for (std::size_t w = 0; w < a.dim(); ++w)
      for (std::size_t c = 0; c < dim_; ++c)
        for (std::size_t r = 0; r < dim_; ++r)
          if (!f.is_zero(actions_[w](r, c)) &&
              (*degrees_)[r] != (*degrees_)[c] + static_cast<int>(a.level_of(w)))
            return "action is not homogeneous";
  }
  // m^{t+1} = 0 in R forces nilpotency, but check m M != M directly.
  if (dim_ > 0) {
    Matrix<F> rows(f, 0, dim_);
    for (std::size_t w = a.level_start(1); w < a.dim(); ++w)
      for (std::size_t c = 0; c < dim_; ++c) rows.append_row(actions_[w].column_vector(c));
    if (rank(rows) == dim_) return "m M = M for a nonzero module";
  }
  return {};
}

// R/m^n with basis the working basis elements of level < n. n = 0 gives the
// zero module, n > t gives R itself. Graded by level when R is graded.
template <ExactField F>
RModule<F> quotient_module(std::shared_ptr<const FiniteLocalAlgebra<F>> algebra, std::size_t n) {
  const auto& a = *algebra;
  const std::size_t m = a.level_start(n);
  std::vector<Matrix<F>> actions;
  for (std::size_t w = 0; w < a.dim(); ++w) actions.push_back(a.basis_operator(w).block(0, m, 0, m));
  std::optional<std::vector<int>> degrees;
  if (a.is_graded()) {
    degrees.emplace();
    for (std::size_t i = 0; i < m; ++i) degrees->push_back(static_cast<int>(a.level_of(i)));
  }
  return RModule<F>(std::move(algebra), m, std::move(actions), std::move(degrees));
}

// The residue field k = R/m, concentrated in degree 0.
template <ExactField F>
RModule<F> residue_field(std::shared_ptr<const FiniteLocalAlgebra<F>> algebra) {
  return quotient_module(std::move(algebra), 1);
}

}  // namespace ldlab
