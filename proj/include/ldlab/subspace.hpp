#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ldlab/errors.hpp"
#include "ldlab/matrix.hpp"

namespace ldlab {

// A linear subspace of F^n, stored by its reduced row-echelon basis. The
// rref basis is canonical, so two Subspaces are equal iff their bases are.
template <ExactField F>
class Subspace {
 public:
  using Element = typename F::Element;

  static Subspace zero(const F& field, std::size_t ambient) {
    return Subspace(Echelon<F>{Matrix<F>(field, 0, ambient), {}});
  }
  static Subspace full(const F& field, std::size_t ambient) {
    return Subspace(Echelon<F>{Matrix<F>::identity(field, ambient), iota(ambient)});
  }
  // Span of the rows of m.
  static Subspace span(Matrix<F> rows) { return Subspace(rref(std::move(rows))); }
  static Subspace from_echelon(Echelon<F> e) { return Subspace(std::move(e)); }

  const F& field() const { return echelon_.reduced.field(); }
  std::size_t ambient_dim() const { return echelon_.reduced.cols(); }
  std::size_t dim() const { return echelon_.rank(); }
  bool is_zero() const { return dim() == 0; }
  const Matrix<F>& basis() const { return echelon_.reduced; }
  const std::vector<std::size_t>& pivots() const { return echelon_.pivots; }

  // v minus its projection along the pivot columns; zero iff v is inside.
  std::vector<Element> reduce(std::span<const Element> v) const {
    check_length(v.size());
    std::vector<Element> r(v.begin(), v.end());
    reduce_in_place(r);
    return r;
  }
  void reduce_in_place(std::span<Element> r) const {
    const F& f = field();
    for (std::size_t i = 0; i < dim(); ++i) {
      const auto c = r[echelon_.pivots[i]];
      if (!f.is_zero(c)) f.sub_mul(r, c, basis().row(i));
    }
  }

  bool contains(std::span<const Element> v) const {
    auto r = reduce(v);
    const F& f = field();
    for (const auto& x : r)
      if (!f.is_zero(x)) return false;
    return true;
  }
  bool contains(const Subspace& other) const {
    check_length(other.ambient_dim());
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis().row(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.echelon_.reduced == b.echelon_.reduced;
  }

 private:
  explicit Subspace(Echelon<F> e) : echelon_(std::move(e)) {}

  static std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
  }
  void check_length(std::size_t n) const {
    if (n != ambient_dim()) {
      throw InvalidInput("ambient dimension mismatch: " + std::to_string(n) + " vs " +
                         std::to_string(ambient_dim()));
    }
  }

  Echelon<F> echelon_;
};

namespace detail {
template <ExactField F>
void require_same_ambient(const Subspace<F>& a, const Subspace<F>& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw InvalidInput("ambient dimension mismatch: " + std::to_string(a.ambient_dim()) + " vs " +
                       std::to_string(b.ambient_dim()));
  }
}
}  // namespace detail

template <ExactField F>
Subspace<F> sum(const Subspace<F>& a, const Subspace<F>& b) {
  detail::require_same_ambient(a, b);
  Matrix<F> rows = a.basis();
  for (std::size_t i = 0; i < b.dim(); ++i) rows.append_row(b.basis().row(i));
  return Subspace<F>::span(std::move(rows));
}

// Zassenhaus: rref of [A A; B 0]; rows whose left half vanishes carry a
// basis of the intersection in their right half.
template <ExactField F>
Subspace<F> intersect(const Subspace<F>& a, const Subspace<F>& b) {
  detail::require_same_ambient(a, b);
  const F& field = a.field();
  const std::size_t n = a.ambient_dim();
  Matrix<F> z(field, a.dim() + b.dim(), 2 * n);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t c = 0; c < n; ++c) {
      z(i, c) = a.basis()(i, c);
      z(i, n + c) = a.basis()(i, c);
    }
  }
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t c = 0; c < n; ++c) z(a.dim() + i, c) = b.basis()(i, c);
  auto e = rref(std::move(z));
  Matrix<F> rows(field, 0, n);
  for (std::size_t i = 0; i < e.rank(); ++i) {
    if (e.pivots[i] >= n) rows.append_row(e.reduced.row(i).subspan(n));
  }
  return Subspace<F>::span(std::move(rows));
}

// dim(a / b); b must lie inside a.
template <ExactField F>
std::size_t quotient_dim(const Subspace<F>& a, const Subspace<F>& b) {
  detail::require_same_ambient(a, b);
  if (!a.contains(b)) throw InvalidInput("quotient of a space by a non-subspace");
  return a.dim() - b.dim();
}

// Canonical representatives of a basis of a / b: the rows of a reduced
// modulo b, then put in rref. They are reduced against b's pivots, so b's
// basis together with these rows is a basis of a with distinct pivots.
template <ExactField F>
Echelon<F> complement(const Subspace<F>& a, const Subspace<F>& b) {
  detail::require_same_ambient(a, b);
  Matrix<F> rows(a.field(), 0, a.ambient_dim());
  for (std::size_t i = 0; i < a.dim(); ++i) rows.append_row(b.reduce(a.basis().row(i)));
  auto e = rref(std::move(rows));
  // rref of b-reduced rows stays reduced against b: b's pivot columns are
  // zero in every row, and row operations keep them zero.
  if (e.rank() + b.dim() != a.dim()) throw InvalidInput("quotient of a space by a non-subspace");
  return e;
}

// A quotient space Z / B with B inside Z, both in the same ambient space.
template <ExactField F>
struct QuotientSpace {
  Subspace<F> cycles;
  Subspace<F> boundaries;
};

// Matrix of the map Z_src/B_src -> Z_dst/B_dst induced by m, in the bases of
// canonical complement representatives. Rows index the destination basis.
// Throws LogicFailure if m does not carry Z_src into Z_dst and B_src into
// B_dst.
template <ExactField F>
Matrix<F> induced_map_on_quotients(const Matrix<F>& m, const QuotientSpace<F>& src,
                                   const QuotientSpace<F>& dst) {
  const F& field = m.field();
  if (m.cols() != src.cycles.ambient_dim() || m.rows() != dst.cycles.ambient_dim()) {
    throw InvalidInput("induced map: matrix shape does not match the quotient spaces");
  }
  for (std::size_t i = 0; i < src.boundaries.dim(); ++i) {
    if (!dst.boundaries.contains(m.apply(src.boundaries.basis().row(i)))) {
      throw LogicFailure("induced map: a source boundary is not sent to a boundary");
    }
  }
  const auto src_reps = complement(src.cycles, src.boundaries);
  const auto dst_reps = complement(dst.cycles, dst.boundaries);
  Matrix<F> out(field, dst_reps.rank(), src_reps.rank());
  for (std::size_t j = 0; j < src_reps.rank(); ++j) {
    auto w = m.apply(src_reps.reduced.row(j));
    if (!dst.cycles.contains(w)) throw LogicFailure("induced map: a source cycle is not sent to a cycle");
    dst.boundaries.reduce_in_place(w);
    for (std::size_t i = 0; i < dst_reps.rank(); ++i) {
      const auto c = w[dst_reps.pivots[i]];
      out(i, j) = c;
      if (!field.is_zero(c)) field.sub_mul(w, c, dst_reps.reduced.row(i));
    }
    for (const auto& x : w)
      if (!field.is_zero(x)) throw LogicFailure("induced map: image left the cycle space");
  }
  return out;
}

// Canonical kernel {v : M v = 0} and column space of m.
template <ExactField F>
Subspace<F> kernel(const Matrix<F>& m) {
  return Subspace<F>::span(null_space(m).basis);
}

template <ExactField F>
Subspace<F> image(const Matrix<F>& m) {
  return Subspace<F>::span(m.transpose());
}

}  // namespace ldlab
