#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ldlab/errors.hpp"
#include "ldlab/matrix.hpp"
#include "ldlab/subspace.hpp"

namespace ldlab {

// Raw multiplication table of a commutative k-algebra in some basis
// e_0..e_{d-1}, before any validation. products[(i * d + j) * d + k] is the
// coefficient of e_k in e_i * e_j.
template <ExactField F>
struct StructureTable {
  using Element = typename F::Element;

  F field;
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<Element> unit;                       // coordinates of 1
  std::vector<std::vector<Element>> m_generators;  // coordinates of generators of m
  std::vector<Element> products;

  std::span<const Element> product(std::size_t i, std::size_t j) const {
    return {products.data() + (i * dim + j) * dim, dim};
  }
};

namespace detail {

template <ExactField F>
std::vector<typename F::Element> table_multiply(const StructureTable<F>& t,
                                                std::span<const typename F::Element> u,
                                                std::span<const typename F::Element> v) {
  const F& f = t.field;
  std::vector<typename F::Element> out(t.dim, f.zero());
  for (std::size_t i = 0; i < t.dim; ++i) {
    if (f.is_zero(u[i])) continue;
    for (std::size_t j = 0; j < t.dim; ++j) {
      if (f.is_zero(v[j])) continue;
      f.add_mul(out, f.mul(u[i], v[j]), t.product(i, j));
    }
  }
  return out;
}

template <ExactField F>
bool vectors_equal(const F& f, std::span<const typename F::Element> a, std::span<const typename F::Element> b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!f.is_zero(f.sub(a[k], b[k]))) return false;
  return true;
}

}  // namespace detail

// Exhaustive commutativity, associativity and unit checks over the basis.
// Throws InvalidInput naming the first failing triple.
template <ExactField F>
void validate_table(const StructureTable<F>& t) {
  const std::size_t d = t.dim;
  const F& f = t.field;
  if (t.products.size() != d * d * d) throw InvalidInput("structure table has the wrong size");
  if (t.unit.size() != d) throw InvalidInput("unit has the wrong length");
  for (const auto& g : t.m_generators)
    if (g.size() != d) throw InvalidInput("m generator has the wrong length");
  std::vector<std::vector<typename F::Element>> basis(d, std::vector<typename F::Element>(d, f.zero()));
  for (std::size_t i = 0; i < d; ++i) basis[i][i] = f.one();
  for (std::size_t i = 0; i < d; ++i) {
    if (!detail::vectors_equal(f, detail::table_multiply(t, t.unit, basis[i]), basis[i])) {
      throw InvalidInput("unit law fails for basis element " + std::to_string(i));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!detail::vectors_equal(f, t.product(i, j), t.product(j, i))) {
        throw InvalidInput("table is not commutative at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const auto ij = std::vector<typename F::Element>(t.product(i, j).begin(), t.product(i, j).end());
      for (std::size_t k = 0; k < d; ++k) {
        const auto jk = std::vector<typename F::Element>(t.product(j, k).begin(), t.product(j, k).end());
        if (!detail::vectors_equal(f, detail::table_multiply(t, ij, basis[k]),
                                   detail::table_multiply(t, basis[i], jk))) {
          throw InvalidInput("table is not associative at (" + std::to_string(i) + ", " + std::to_string(j) +
                             ", " + std::to_string(k) + ")");
        }
      }
    }
  }
}

// A finite-dimensional commutative local k-algebra (R, m, k).
//
// Internally everything is expressed in a working basis adapted to the
// m-adic filtration: index 0 is the unit, followed by coset representatives
// of m/m^2, then of m^2/m^3, and so on. In this basis m^j is the span of the
// coordinates from level_start(j) on, so powers of m, the pieces of gr(R)
// and the quotients R/m^n are all coordinate subspaces.
template <ExactField F>
class FiniteLocalAlgebra {
 public:
  using Element = typename F::Element;
  using Vector = std::vector<Element>;

  // Validates (unless told not to), computes the filtration and switches to
  // the adapted basis. Throws InvalidInput if the table is not a local
  // algebra with maximal ideal generated by table.m_generators.
  static std::shared_ptr<const FiniteLocalAlgebra> create(StructureTable<F> table, bool validate = true);

  const F& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const StructureTable<F>& original_table() const { return original_; }

  // Largest t with m^t != 0; the nilpotency index is t + 1.
  std::size_t top_level() const { return level_start_.size() - 2; }
  std::size_t nilpotency_index() const { return top_level() + 1; }
  // First working index of level j; level_start(j) = dim for j > t.
  std::size_t level_start(std::size_t j) const {
    return j < level_start_.size() ? level_start_[j] : dim_;
  }
  std::size_t level_dim(std::size_t j) const { return level_start(j + 1) - level_start(j); }
  std::size_t level_of(std::size_t index) const { return level_of_[index]; }
  std::size_t embedding_dim() const { return level_dim(1); }
  // dim m^j, with m^j = R for j <= 0.
  std::size_t power_dim(std::size_t j) const { return dim_ - level_start(j); }
  std::vector<std::size_t> power_dims() const {
    std::vector<std::size_t> v;
    for (std::size_t j = 0; j <= top_level() + 1; ++j) v.push_back(power_dim(j));
    return v;
  }
  // m^j as subspaces of R in the original basis, j = 0..t+1.
  const std::vector<Subspace<F>>& filtration() const { return filtration_; }

  // True when w_a * w_b lies in level(a) + level(b) for all working basis
  // elements, i.e. the working basis is homogeneous and R is graded.
  bool is_graded() const { return graded_; }

  // Coefficient of w_k in w_i * w_j (working basis).
  const Element& structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
    return products_[(i * dim_ + j) * dim_ + k];
  }
  std::span<const Element> basis_product(std::size_t i, std::size_t j) const {
    return {products_.data() + (i * dim_ + j) * dim_, dim_};
  }
  Vector multiply(std::span<const Element> u, std::span<const Element> v) const;
  // Matrix of multiplication by a on R (working basis).
  Matrix<F> multiplication_operator(std::span<const Element> a) const;
  const Matrix<F>& basis_operator(std::size_t i) const { return operators_[i]; }

  Vector unit() const {
    Vector u(dim_, field_.zero());
    u[0] = field_.one();
    return u;
  }
  Vector basis_vector(std::size_t i) const {
    Vector u(dim_, field_.zero());
    u[i] = field_.one();
    return u;
  }
  bool in_power(std::span<const Element> a, std::size_t j) const {
    for (std::size_t k = 0; k < level_start(j); ++k)
      if (!field_.is_zero(a[k])) return false;
    return true;
  }
  // Largest j with a in m^j; top_level() + 1 for a = 0.
  std::size_t order(std::span<const Element> a) const {
    for (std::size_t k = 0; k < dim_; ++k)
      if (!field_.is_zero(a[k])) return level_of_[k];
    return top_level() + 1;
  }

  // The designated generators of m (e.g. the variable classes), working basis.
  const std::vector<Vector>& m_generators() const { return m_generators_; }
  // Change of coordinates between the original and working bases.
  Vector to_original(std::span<const Element> working) const { return to_original_.apply(working); }
  Vector to_working(std::span<const Element> original) const { return to_working_.apply(original); }
  const std::vector<std::string>& labels() const { return original_.labels; }

  std::string format_element(std::span<const Element> a) const;

 private:
  FiniteLocalAlgebra(StructureTable<F> table) : field_(table.field), original_(std::move(table)) {}

  F field_;
  StructureTable<F> original_;
  std::size_t dim_ = 0;
  std::vector<std::size_t> level_start_;  // size t + 2, last entry = dim
  std::vector<std::size_t> level_of_;
  std::vector<Subspace<F>> filtration_;
  std::vector<Element> products_;
  std::vector<Matrix<F>> operators_;
  std::vector<Vector> m_generators_;
  Matrix<F> to_original_{field_};
  Matrix<F> to_working_{field_};
  bool graded_ = true;
};

// Powers m^0 = R, m^1, ..., m^{t+1} = 0 of the ideal generated by gens, in
// the table's basis. Throws InvalidInput if m is not nilpotent or R/m is not
// one-dimensional.
template <ExactField F>
std::vector<Subspace<F>> compute_filtration(const StructureTable<F>& t) {
  const F& f = t.field;
  const std::size_t d = t.dim;
  std::vector<Subspace<F>> powers{Subspace<F>::full(f, d)};
  auto multiply_by_gens = [&](const Subspace<F>& s) {
    Matrix<F> rows(f, 0, d);
    for (const auto& g : t.m_generators)
      for (std::size_t i = 0; i < s.dim(); ++i) rows.append_row(detail::table_multiply(t, g, s.basis().row(i)));
    return Subspace<F>::span(std::move(rows));
  };
  while (!powers.back().is_zero()) {
    Subspace<F> next = multiply_by_gens(powers.back());
    if (next.dim() >= powers.back().dim()) {
      throw InvalidInput("the ideal generated by the m generators is not nilpotent");
    }
    powers.push_back(std::move(next));
  }
  if (d > 0 && powers.size() > 1 && powers[1].dim() + 1 != d) {
    throw InvalidInput("R/m has dimension " + std::to_string(d - powers[1].dim()) + ", expected 1");
  }
  if (d == 0) throw InvalidInput("the zero ring is not local");
  if (powers.size() == 1) powers.push_back(Subspace<F>::zero(f, d));
  if (powers[1].contains(t.unit)) throw InvalidInput("the unit lies in m");
  return powers;
}

template <ExactField F>
std::shared_ptr<const FiniteLocalAlgebra<F>> FiniteLocalAlgebra<F>::create(StructureTable<F> table, bool validate) {
  if (validate) validate_table(table);
  std::shared_ptr<FiniteLocalAlgebra> a(new FiniteLocalAlgebra(std::move(table)));
  const StructureTable<F>& t = a->original_;
  const F& f = a->field_;
  const std::size_t d = t.dim;
  a->dim_ = d;
  a->filtration_ = compute_filtration(t);
  const std::size_t levels = a->filtration_.size() - 1;  // t + 1

  // Working basis: unit, then complements of m^{j+1} in m^j for j = 1..t.
  Matrix<F> basis(f, 0, d);
  basis.append_row(t.unit);
  a->level_start_.push_back(0);
  a->level_of_.push_back(0);
  for (std::size_t j = 1; j < levels; ++j) {
    a->level_start_.push_back(basis.rows());
    auto reps = complement(a->filtration_[j], a->filtration_[j + 1]);
    for (std::size_t r = 0; r < reps.rank(); ++r) {
      basis.append_row(reps.reduced.row(r));
      a->level_of_.push_back(j);
    }
  }
  a->level_start_.push_back(basis.rows());
  if (basis.rows() != d) throw LogicFailure("adapted basis has the wrong size");

  a->to_original_ = basis.transpose();
  // Invert by row reduction of [basis^T | I].
  Matrix<F> aug(f, d, 2 * d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) aug(r, c) = a->to_original_(r, c);
    aug(r, d + r) = f.one();
  }
  auto e = rref(std::move(aug));
  if (e.rank() != d || (d > 0 && e.pivots.back() != d - 1)) throw LogicFailure("adapted basis is singular");
  a->to_working_ = e.reduced.block(0, d, d, d);

  a->products_.assign(d * d * d, f.zero());
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      auto p = a->to_working(detail::table_multiply(t, basis.row(i), basis.row(j)));
      const std::size_t need = a->level_of_[i] + a->level_of_[j];
      for (std::size_t k = 0; k < d; ++k) {
        if (f.is_zero(p[k])) continue;
        if (a->level_of_[k] < need) throw LogicFailure("product escapes the m-adic filtration");
        if (a->level_of_[k] > need) a->graded_ = false;
      }
      std::copy(p.begin(), p.end(), a->products_.begin() + (i * d + j) * d);
    }
  }
  a->operators_.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    Matrix<F> op(f, d, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) op(k, j) = a->structure_constant(i, j, k);
    a->operators_.push_back(std::move(op));
  }
  for (const auto& g : t.m_generators) a->m_generators_.push_back(a->to_working(g));
  return a;
}

template <ExactField F>
typename FiniteLocalAlgebra<F>::Vector FiniteLocalAlgebra<F>::multiply(std::span<const Element> u,
                                                                       std::span<const Element> v) const {
  Vector out(dim_, field_.zero());
  for (std::size_t i = 0; i < dim_; ++i) {
    if (field_.is_zero(u[i])) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (field_.is_zero(v[j])) continue;
      field_.add_mul(out, field_.mul(u[i], v[j]), basis_product(i, j));
    }
  }
  return out;
}

template <ExactField F>
Matrix<F> FiniteLocalAlgebra<F>::multiplication_operator(std::span<const Element> a) const {
  Matrix<F> op(field_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (field_.is_zero(a[i])) continue;
    for (std::size_t r = 0; r < dim_; ++r) field_.add_mul(op.row(r), a[i], operators_[i].row(r));
  }
  return op;
}

template <ExactField F>
std::string FiniteLocalAlgebra<F>::format_element(std::span<const Element> a) const {
  const auto orig = to_original(a);
  std::string out;
  for (std::size_t k = 0; k < dim_; ++k) {
    if (field_.is_zero(orig[k])) continue;
    std::string c = field_.format(orig[k]);
    const bool negative = c[0] == '-';
    if (negative) c.erase(0, 1);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const std::string& label = original_.labels.at(k);
    if (label == "1") {
      out += c;
    } else {
      out += (c == "1" ? "" : c + "*") + label;
    }
  }
  return out.empty() ? "0" : out;
}

// The associated graded algebra gr(R) = (+)_i m^i/m^{i+1}, described in the
// adapted basis: degree-i basis elements are the working basis elements of
// level i (coset representatives of m^i/m^{i+1}).
template <ExactField F>
class GradedAlgebra {
 public:
  using Element = typename F::Element;

  explicit GradedAlgebra(std::shared_ptr<const FiniteLocalAlgebra<F>> algebra)
      : algebra_(std::move(algebra)) {
    const auto& a = *algebra_;
    const std::size_t t = a.top_level();
    for (std::size_t i = 0; i <= t; ++i) dims_.push_back(a.level_dim(i));
    // degree_one_maps_[x][i]: multiplication by the x-th degree-one basis
    // element from degree i to degree i + 1.
    for (std::size_t x = 0; x < dims_.size() && dims_.size() > 1 && x < dims_[1]; ++x) {
      std::vector<Matrix<F>> maps;
      for (std::size_t i = 0; i <= t; ++i) maps.push_back(product_map(a.level_start(1) + x, i));
      degree_one_maps_.push_back(std::move(maps));
    }
  }

  const FiniteLocalAlgebra<F>& algebra() const { return *algebra_; }
  const F& field() const { return algebra_->field(); }
  std::size_t top_degree() const { return dims_.size() - 1; }
  const std::vector<std::size_t>& component_dims() const { return dims_; }
  std::size_t component_dim(std::size_t i) const { return i < dims_.size() ? dims_[i] : 0; }

  // Graded product of the local basis elements a (degree i) and b (degree j),
  // as coordinates in degree i + j (empty vector space when i + j > t).
  std::vector<Element> product(std::size_t i, std::size_t a, std::size_t j, std::size_t b) const {
    const auto& alg = *algebra_;
    std::vector<Element> out(component_dim(i + j), field().zero());
    if (i + j > top_degree()) return out;
    auto p = alg.basis_product(alg.level_start(i) + a, alg.level_start(j) + b);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = p[alg.level_start(i + j) + k];
    return out;
  }

  // Multiplication by the degree-one basis element x, from degree i to i + 1.
  const Matrix<F>& degree_one_map(std::size_t x, std::size_t i) const { return degree_one_maps_.at(x).at(i); }

  // Multiplication by basis element w (working index) on degree i, landing in
  // degree i + level(w).
  Matrix<F> product_map(std::size_t w, std::size_t i) const {
    const auto& alg = *algebra_;
    const std::size_t j = alg.level_of(w);
    Matrix<F> m(field(), component_dim(i + j), component_dim(i));
    if (i + j > top_degree()) return m;
    for (std::size_t b = 0; b < component_dim(i); ++b) {
      auto p = alg.basis_product(w, alg.level_start(i) + b);
      for (std::size_t k = 0; k < m.rows(); ++k) m(k, b) = p[alg.level_start(i + j) + k];
    }
    return m;
  }

  // Exhaustive associativity and commutativity over the graded basis, and
  // generation in degree one. Returns an empty string when all hold.
  std::string check_axioms() const;

 private:
  std::shared_ptr<const FiniteLocalAlgebra<F>> algebra_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<Matrix<F>>> degree_one_maps_;
};

template <ExactField F>
std::string GradedAlgebra<F>::check_axioms() const {
  const F& f = field();
  const std::size_t t = top_degree();
  auto mul = [&](std::size_t i, const std::vector<Element>& u, std::size_t j, const std::vector<Element>& v) {
    std::vector<Element> out(component_dim(i + j), f.zero());
    for (std::size_t a = 0; a < u.size(); ++a) {
      if (f.is_zero(u[a])) continue;
      for (std::size_t b = 0; b < v.size(); ++b) {
        if (f.is_zero(v[b])) continue;
        f.add_mul(out, f.mul(u[a], v[b]), product(i, a, j, b));
      }
    }
    return out;
  };
  auto unit_vec = [&](std::size_t i, std::size_t a) {
    std::vector<Element> v(component_dim(i), f.zero());
    v[a] = f.one();
    return v;
  };
  for (std::size_t i = 0; i <= t; ++i)
    for (std::size_t j = 0; j <= t; ++j)
      for (std::size_t a = 0; a < component_dim(i); ++a)
        for (std::size_t b = 0; b < component_dim(j); ++b) {
          if (product(i, a, j, b) != product(j, b, i, a)) return "gr(R) is not commutative";
          for (std::size_t k = 0; k <= t; ++k)
            for (std::size_t c = 0; c < component_dim(k); ++c) {
              auto left = mul(i + j, product(i, a, j, b), k, unit_vec(k, c));
              auto right = mul(i, unit_vec(i, a), j + k, product(j, b, k, c));
              if (left != right) return "gr(R) is not associative";
            }
        }
  // Degree i+1 must be spanned by degree-one multiples of degree i.
  for (std::size_t i = 1; i < t; ++i) {
    Matrix<F> rows(f, 0, component_dim(i + 1));
    for (std::size_t x = 0; x < component_dim(1); ++x) {
      const auto m = degree_one_map(x, i);
      for (std::size_t b = 0; b < m.cols(); ++b) rows.append_row(m.column_vector(b));
    }
    if (rank(rows) != component_dim(i + 1)) return "gr(R) is not generated in degree one";
  }
  return {};
}

template <ExactField F>
GradedAlgebra<F> associated_graded(std::shared_ptr<const FiniteLocalAlgebra<F>> algebra) {
  return GradedAlgebra<F>(std::move(algebra));
}

}  // namespace ldlab
