#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ldlab/algebra.hpp"
#include "ldlab/module.hpp"

namespace ldlab {

// Matrix with entries in R (each entry a coordinate vector in the working
// basis). Represents an R-linear map R^cols -> R^rows.
template <ExactField F>
class AlgebraMatrix {
 public:
  using Element = typename F::Element;

  AlgebraMatrix(F field, std::size_t entry_dim, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), d_(entry_dim), rows_(rows), cols_(cols), data_(rows * cols * entry_dim, field_.zero()) {}

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t entry_dim() const { return d_; }

  std::span<Element> entry(std::size_t i, std::size_t j) { return {data_.data() + (i * cols_ + j) * d_, d_}; }
  std::span<const Element> entry(std::size_t i, std::size_t j) const {
    return {data_.data() + (i * cols_ + j) * d_, d_};
  }
  bool entry_is_zero(std::size_t i, std::size_t j) const {
    for (const auto& x : entry(i, j))
      if (!field_.is_zero(x)) return false;
    return true;
  }
  // Column j as a vector of R^rows, coordinate g * d + a.
  std::vector<Element> column_vector(std::size_t j) const {
    std::vector<Element> v;
    v.reserve(rows_ * d_);
    for (std::size_t i = 0; i < rows_; ++i) {
      auto e = entry(i, j);
      v.insert(v.end(), e.begin(), e.end());
    }
    return v;
  }
  void set_column(std::size_t j, std::span<const Element> v) {
    for (std::size_t i = 0; i < rows_; ++i) std::copy(v.begin() + i * d_, v.begin() + (i + 1) * d_, entry(i, j).begin());
  }

  friend bool operator==(const AlgebraMatrix& a, const AlgebraMatrix& b) {
    return a.d_ == b.d_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  F field_;
  std::size_t d_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> data_;
};

// k-linear matrix of an algebra matrix, viewing R^c -> R^r as a map of
// dimension (c * dim R) -> (r * dim R). Block (i, j) is multiplication by
// entry (i, j).
template <ExactField F>
Matrix<F> expand(const FiniteLocalAlgebra<F>& algebra, const AlgebraMatrix<F>& m) {
  const std::size_t d = algebra.dim();
  if (m.entry_dim() != d) throw InvalidInput("algebra matrix entries do not belong to this algebra");
  const F& f = algebra.field();
  Matrix<F> out(f, m.rows() * d, m.cols() * d);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m.entry_is_zero(i, j)) continue;
      const auto op = algebra.multiplication_operator(m.entry(i, j));
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) out(i * d + r, j * d + c) = op(r, c);
    }
  }
  return out;
}

// Product of algebra matrices (entries multiplied in R).
template <ExactField F>
AlgebraMatrix<F> multiply(const FiniteLocalAlgebra<F>& algebra, const AlgebraMatrix<F>& a, const AlgebraMatrix<F>& b) {
  if (a.cols() != b.rows()) throw InvalidInput("algebra matrix product dimension mismatch");
  const F& f = algebra.field();
  AlgebraMatrix<F> out(f, algebra.dim(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.entry_is_zero(i, k)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b.entry_is_zero(k, j)) continue;
        f.add_mul(out.entry(i, j), f.one(), algebra.multiply(a.entry(i, k), b.entry(k, j)));
      }
    }
  return out;
}

// A finite coordinate space whose coordinates are grouped into pieces of
// equal internal degree. An ungraded space is a single piece of degree 0.
struct GradedCoordinates {
  std::vector<int> degree_of;
  std::vector<int> piece_degrees;  // increasing
  std::vector<std::vector<std::size_t>> piece_coords;
  std::vector<std::size_t> piece_of;
  std::vector<std::size_t> local_of;

  static GradedCoordinates from_degrees(std::vector<int> degrees);
  static GradedCoordinates ungraded(std::size_t dim) { return from_degrees(std::vector<int>(dim, 0)); }

  std::size_t dim() const { return degree_of.size(); }
  std::size_t piece_count() const { return piece_coords.size(); }
  std::optional<std::size_t> find_piece(int degree) const {
    auto it = std::lower_bound(piece_degrees.begin(), piece_degrees.end(), degree);
    if (it == piece_degrees.end() || *it != degree) return std::nullopt;
    return static_cast<std::size_t>(it - piece_degrees.begin());
  }
};

inline GradedCoordinates GradedCoordinates::from_degrees(std::vector<int> degrees) {
  GradedCoordinates g;
  g.degree_of = std::move(degrees);
  g.piece_degrees = g.degree_of;
  std::sort(g.piece_degrees.begin(), g.piece_degrees.end());
  g.piece_degrees.erase(std::unique(g.piece_degrees.begin(), g.piece_degrees.end()), g.piece_degrees.end());
  g.piece_coords.resize(g.piece_degrees.size());
  g.piece_of.resize(g.degree_of.size());
  g.local_of.resize(g.degree_of.size());
  for (std::size_t c = 0; c < g.degree_of.size(); ++c) {
    const std::size_t p = *g.find_piece(g.degree_of[c]);
    g.piece_of[c] = p;
    g.local_of[c] = g.piece_coords[p].size();
    g.piece_coords[p].push_back(c);
  }
  return g;
}

// The free module R^rank, or its quotient (R/m^n)^rank, with coordinate
// g * width + a for generator g and working basis element a < width.
// Degrees: generator degree plus level when graded, 0 otherwise.
template <ExactField F>
GradedCoordinates free_coordinates(const FiniteLocalAlgebra<F>& algebra, std::size_t rank, std::size_t width,
                                   const std::optional<std::vector<int>>& generator_degrees) {
  std::vector<int> deg(rank * width, 0);
  if (generator_degrees) {
    for (std::size_t g = 0; g < rank; ++g)
      for (std::size_t a = 0; a < width; ++a)
        deg[g * width + a] = (*generator_degrees)[g] + static_cast<int>(algebra.level_of(a));
  }
  return GradedCoordinates::from_degrees(std::move(deg));
}

// Writes the image of source coordinate `coord` into `out` (pre-zeroed,
// target dimension).
template <ExactField F>
using ColumnFunction = std::function<void(std::size_t coord, std::vector<typename F::Element>& out)>;

struct ResolveOptions {
  // Use internal degrees when both R and the module are graded.
  bool use_grading = true;
  // Largest dense block (rows * cols) any single elimination may build.
  std::size_t max_block_entries = 150'000'000;
};

namespace detail {

inline void check_block(std::size_t rows, std::size_t cols, const ResolveOptions& opts) {
  if (rows * cols > opts.max_block_entries) {
    throw ResourceLimit("linear system of size " + std::to_string(rows) + "x" + std::to_string(cols) +
                        " exceeds the configured limit");
  }
}

// Matrix of the map restricted to source piece `sp`, with rows the target
// coordinates of the same degree (graded) or all target coordinates.
// Throws LogicFailure if the map is not homogeneous.
template <ExactField F>
Matrix<F> restrict_map(const F& field, const GradedCoordinates& src, std::size_t sp, const GradedCoordinates& dst,
                       bool graded, const ColumnFunction<F>& column, const ResolveOptions& opts) {
  const auto& cols = src.piece_coords[sp];
  std::optional<std::size_t> tp;
  if (graded) {
    tp = dst.find_piece(src.piece_degrees[sp]);
  } else if (dst.piece_count() > 0) {
    tp = 0;
  }
  const std::size_t nrows = tp ? dst.piece_coords[*tp].size() : 0;
  check_block(nrows, cols.size(), opts);
  Matrix<F> m(field, nrows, cols.size());
  std::vector<typename F::Element> buf(dst.dim(), field.zero());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    std::fill(buf.begin(), buf.end(), field.zero());
    column(cols[j], buf);
    for (std::size_t r = 0; r < buf.size(); ++r) {
      if (field.is_zero(buf[r])) continue;
      if (!tp || dst.piece_of[r] != *tp) throw LogicFailure("map is not homogeneous");
      m(dst.local_of[r], j) = buf[r];
    }
  }
  return m;
}

// A basis of a subspace V inside one piece, with coordinate columns: every
// v in V equals sum_i v[coord_cols[i]] * rows[i].
template <ExactField F>
struct CoordinatedBasis {
  Matrix<F> rows;
  std::vector<std::size_t> coord_cols;
};

// Given bases of an R-submodule K piece by piece, select basis vectors that
// map to a basis of K / mK. `act(x, v)` multiplies a full-coordinate vector
// by the x-th degree-one basis element. Returns (full vector, degree) pairs
// ordered by degree, then basis position.
template <ExactField F>
std::vector<std::pair<std::vector<typename F::Element>, int>> select_minimal_generators(
    const F& field, const GradedCoordinates& space, const std::vector<CoordinatedBasis<F>>& pieces, bool graded,
    std::size_t degree_one_count,
    const std::function<std::vector<typename F::Element>(std::size_t, const std::vector<typename F::Element>&)>& act,
    const ResolveOptions& opts) {
  using Element = typename F::Element;
  auto to_full = [&](std::size_t piece, std::span<const Element> local) {
    std::vector<Element> v(space.dim(), field.zero());
    for (std::size_t l = 0; l < local.size(); ++l) v[space.piece_coords[piece][l]] = local[l];
    return v;
  };
  // multiples[q]: coordinates (in piece q's basis) of the products x * v.
  std::vector<Matrix<F>> multiples;
  for (const auto& b : pieces) multiples.emplace_back(field, 0, b.rows.rows());
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    if (pieces[p].rows.rows() == 0) continue;
    std::optional<std::size_t> q;
    if (graded) {
      q = space.find_piece(space.piece_degrees[p] + 1);
    } else {
      q = p;
    }
    if (!q || pieces[*q].rows.rows() == 0) continue;
    const auto& target = pieces[*q];
    check_block(pieces[p].rows.rows() * degree_one_count, target.rows.rows(), opts);
    std::vector<Element> coords(target.rows.rows());
    for (std::size_t r = 0; r < pieces[p].rows.rows(); ++r) {
      const auto v = to_full(p, pieces[p].rows.row(r));
      for (std::size_t x = 0; x < degree_one_count; ++x) {
        const auto y = act(x, v);
        bool nonzero = false;
        for (std::size_t k = 0; k < coords.size(); ++k) {
          coords[k] = y[space.piece_coords[*q][target.coord_cols[k]]];
          nonzero = nonzero || !field.is_zero(coords[k]);
        }
        if (nonzero) multiples[*q].append_row(coords);
      }
    }
  }
  std::vector<std::pair<std::vector<Element>, int>> gens;
  for (std::size_t q = 0; q < pieces.size(); ++q) {
    const std::size_t k = pieces[q].rows.rows();
    if (k == 0) continue;
    const auto e = rref(std::move(multiples[q]));
    std::vector<bool> covered(k, false);
    for (auto pc : e.pivots) covered[pc] = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (covered[i]) continue;
      gens.emplace_back(to_full(q, pieces[q].rows.row(i)), graded ? space.piece_degrees[q] : 0);
    }
  }
  return gens;
}

// Multiplication by working basis element w on a free-module vector.
template <ExactField F>
std::vector<typename F::Element> multiply_free(const FiniteLocalAlgebra<F>& algebra, std::size_t width, std::size_t w,
                                               const std::vector<typename F::Element>& v) {
  const F& f = algebra.field();
  std::vector<typename F::Element> out(v.size(), f.zero());
  const std::size_t rank = v.size() / width;
  for (std::size_t g = 0; g < rank; ++g) {
    std::span<typename F::Element> block(out.data() + g * width, width);
    for (std::size_t a = 0; a < width; ++a) {
      const auto& c = v[g * width + a];
      if (f.is_zero(c)) continue;
      f.add_mul(block, c, algebra.basis_product(w, a).first(width));
    }
  }
  return out;
}

// Image of coordinate (g, a) of (R/m^n)^b under an algebra matrix reduced
// mod m^n, written into out (coordinates of (R/m^n)^rows).
template <ExactField F>
ColumnFunction<F> truncated_column(const FiniteLocalAlgebra<F>& algebra, const AlgebraMatrix<F>& m, std::size_t width) {
  return [&algebra, &m, width](std::size_t coord, std::vector<typename F::Element>& out) {
    const F& f = algebra.field();
    const std::size_t g = coord / width;
    const std::size_t a = coord % width;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      auto e = m.entry(i, g);
      std::span<typename F::Element> block(out.data() + i * width, width);
      for (std::size_t c = 0; c < e.size(); ++c) {
        if (f.is_zero(e[c])) continue;
        f.add_mul(block, e[c], algebra.basis_product(c, a).first(width));
      }
    }
  };
}

}  // namespace detail

// Truncated minimal free resolution
//   0 <- M <- F_0 <- F_1 <- ... <- F_N,  F_i = R^{b_i}.
template <ExactField F>
struct MinimalResolution {
  std::shared_ptr<const FiniteLocalAlgebra<F>> algebra;
  RModule<F> module;
  std::size_t horizon = 0;
  bool graded = false;
  std::vector<std::size_t> betti;                   // b_0..b_N
  std::vector<std::vector<int>> generator_degrees;  // per F_i; zeros when ungraded
  Matrix<F> augmentation;                           // row g: image of e_g in M
  std::vector<AlgebraMatrix<F>> differentials;      // [i - 1] holds d_i : F_i -> F_{i-1}

  const AlgebraMatrix<F>& differential(std::size_t i) const {
    if (i == 0 || i > horizon) throw OutOfRange("differential index " + std::to_string(i) + " outside 1.." + std::to_string(horizon));
    return differentials[i - 1];
  }
  std::optional<std::vector<int>> degrees_or_none(std::size_t i) const {
    if (!graded) return std::nullopt;
    return generator_degrees.at(i);
  }
  // The k-linear map F_i -> F_{i-1} (or F_0 -> M for i = 0), column by column.
  ColumnFunction<F> stage_map(std::size_t i) const;
  GradedCoordinates source_coordinates(std::size_t i, std::size_t width) const {
    return free_coordinates(*algebra, betti.at(i), width, degrees_or_none(i));
  }
  GradedCoordinates target_coordinates(std::size_t i) const {
    if (i > 0) return source_coordinates(i - 1, algebra->dim());
    if (graded) return GradedCoordinates::from_degrees(*module.degrees());
    return GradedCoordinates::ungraded(module.dim());
  }
};

template <ExactField F>
ColumnFunction<F> MinimalResolution<F>::stage_map(std::size_t i) const {
  const std::size_t d = algebra->dim();
  if (i > 0) return detail::truncated_column(*algebra, differential(i), d);
  return [this, d](std::size_t coord, std::vector<typename F::Element>& out) {
    const F& f = algebra->field();
    const std::size_t g = coord / d;
    const std::size_t a = coord % d;
    const auto& act = module.action(a);
    for (std::size_t r = 0; r < module.dim(); ++r) {
      for (std::size_t c = 0; c < module.dim(); ++c) {
        const auto& m = act(r, c);
        const auto& v = augmentation(g, c);
        if (!f.is_zero(m) && !f.is_zero(v)) out[r] = f.add(out[r], f.mul(m, v));
      }
    }
  };
}

// Minimal generators of an R-submodule K of R^rank (given as a subspace of
// the expanded coordinates, closed under the action). Returns coset
// representatives of a basis of K / mK, chosen by pivot order.
template <ExactField F>
std::vector<std::vector<typename F::Element>> minimal_generators(const FiniteLocalAlgebra<F>& algebra, std::size_t rank,
                                                                 const Subspace<F>& submodule) {
  const std::size_t d = algebra.dim();
  if (submodule.ambient_dim() != rank * d) throw InvalidInput("submodule does not live in R^rank");
  const F& f = algebra.field();
  auto space = GradedCoordinates::ungraded(rank * d);
  std::vector<detail::CoordinatedBasis<F>> pieces{{submodule.basis(), submodule.pivots()}};
  const std::size_t e = algebra.embedding_dim();
  const std::size_t first = algebra.level_start(1);
  auto act = [&](std::size_t x, const std::vector<typename F::Element>& v) {
    return detail::multiply_free(algebra, d, first + x, v);
  };
  std::vector<std::vector<typename F::Element>> out;
  for (auto& [v, deg] : detail::select_minimal_generators<F>(f, space, pieces, false, e, act, ResolveOptions{}))
    out.push_back(std::move(v));
  return out;
}

// Minimal free resolution of M through F_horizon. The kernel at each stage
// is computed piece by piece; its minimal generators (Nakayama) become the
// next differential's columns. Minimality is checked, not assumed.
template <ExactField F>
MinimalResolution<F> resolve(const RModule<F>& module, std::size_t horizon, const ResolveOptions& opts = {}) {
  using Element = typename F::Element;
  const auto& algebra_ptr = module.algebra();
  const auto& algebra = *algebra_ptr;
  const F& f = algebra.field();
  const std::size_t d = algebra.dim();
  const std::size_t e = algebra.embedding_dim();
  const std::size_t first = algebra.level_start(1);

  MinimalResolution<F> res{algebra_ptr, module, horizon, false, {}, {}, Matrix<F>(f), {}};
  res.graded = opts.use_grading && algebra.is_graded() && module.is_graded();

  // Generators of M itself.
  {
    auto space = res.target_coordinates(0);
    std::vector<detail::CoordinatedBasis<F>> pieces;
    for (std::size_t p = 0; p < space.piece_count(); ++p) {
      const std::size_t n = space.piece_coords[p].size();
      std::vector<std::size_t> cols(n);
      for (std::size_t i = 0; i < n; ++i) cols[i] = i;
      pieces.push_back({Matrix<F>::identity(f, n), std::move(cols)});
    }
    auto act = [&](std::size_t x, const std::vector<Element>& v) { return module.action(first + x).apply(v); };
    auto gens = detail::select_minimal_generators<F>(f, space, pieces, res.graded, e, act, opts);
    res.augmentation = Matrix<F>(f, 0, module.dim());
    std::vector<int> degrees;
    for (auto& [v, deg] : gens) {
      res.augmentation.append_row(v);
      degrees.push_back(deg);
    }
    res.betti.push_back(gens.size());
    res.generator_degrees.push_back(std::move(degrees));
  }

  for (std::size_t i = 0; i < horizon; ++i) {
    const auto src = res.source_coordinates(i, d);
    const auto dst = res.target_coordinates(i);
    const auto column = res.stage_map(i);
    std::vector<detail::CoordinatedBasis<F>> kernels;
    for (std::size_t p = 0; p < src.piece_count(); ++p) {
      auto m = detail::restrict_map(f, src, p, dst, res.graded, column, opts);
      auto ns = null_space(m);
      kernels.push_back({std::move(ns.basis), std::move(ns.free_columns)});
    }
    auto act = [&](std::size_t x, const std::vector<Element>& v) {
      return detail::multiply_free(algebra, d, first + x, v);
    };
    auto gens = detail::select_minimal_generators<F>(f, src, kernels, res.graded, e, act, opts);
    AlgebraMatrix<F> next(f, d, res.betti[i], gens.size());
    std::vector<int> degrees;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const auto& v = gens[j].first;
      for (std::size_t g = 0; g < res.betti[i]; ++g) {
        if (!f.is_zero(v[g * d])) {
          throw LogicFailure("resolution is not minimal: a syzygy has a unit coordinate at stage " +
                             std::to_string(i + 1));
        }
      }
      next.set_column(j, v);
      degrees.push_back(gens[j].second);
    }
    res.betti.push_back(gens.size());
    res.generator_degrees.push_back(std::move(degrees));
    res.differentials.push_back(std::move(next));
  }
  return res;
}

// Kernel of d_index as a submodule of F_index = R^{b_index}; index 0 gives M.
template <ExactField F>
RModule<F> syzygy(const MinimalResolution<F>& res, std::size_t index) {
  if (index == 0) return res.module;
  if (index > res.horizon) {
    throw OutOfRange("syzygy " + std::to_string(index) + " beyond computed horizon " + std::to_string(res.horizon));
  }
  const auto& algebra = *res.algebra;
  const F& f = algebra.field();
  const std::size_t d = algebra.dim();
  const auto kernel_space = kernel(expand(algebra, res.differential(index)));
  const std::size_t k = kernel_space.dim();
  std::vector<Matrix<F>> actions;
  for (std::size_t w = 0; w < d; ++w) {
    Matrix<F> act(f, k, k);
    for (std::size_t c = 0; c < k; ++c) {
      const auto y = detail::multiply_free(algebra, d, w, kernel_space.basis().row_vector(c));
      for (std::size_t r = 0; r < k; ++r) act(r, c) = y[kernel_space.pivots()[r]];
    }
    actions.push_back(std::move(act));
  }
  std::optional<std::vector<int>> degrees;
  if (res.graded) {
    const auto coords = res.source_coordinates(index, d);
    degrees.emplace();
    for (std::size_t r = 0; r < k; ++r) degrees->push_back(coords.degree_of[kernel_space.pivots()[r]]);
  }
  return RModule<F>(res.algebra, k, std::move(actions), std::move(degrees),
                    typename RModule<F>::Embedding{res.betti[index], kernel_space.basis()});
}

// Outcome of the structural checks on a resolution.
struct ResolutionCheck {
  bool differentials_compose_to_zero = true;
  bool minimal = true;
  bool exact = true;       // zero homology at F_0..F_{N-1} relative to M
  bool augmentation_ok = true;
  std::vector<std::string> failures;

  bool ok() const { return differentials_compose_to_zero && minimal && exact && augmentation_ok; }
};

// Checks d_{i-1} d_i = 0 (and eps d_1 = 0), every entry in m, exactness of
// the expanded complex at F_0..F_{N-1}, and that F_0 / im d_1 has dim M.
template <ExactField F>
ResolutionCheck verify_resolution(const MinimalResolution<F>& res, const ResolveOptions& opts = {}) {
  ResolutionCheck check;
  const auto& algebra = *res.algebra;
  const F& f = algebra.field();
  const std::size_t d = algebra.dim();
  const std::size_t n = res.horizon;

  for (std::size_t i = 1; i <= n; ++i) {
    const auto& m = res.differential(i);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (!f.is_zero(m.entry(r, c)[0])) {
          check.minimal = false;
          check.failures.push_back("entry (" + std::to_string(r) + ", " + std::to_string(c) + ") of d_" +
                                   std::to_string(i) + " is outside m");
          r = m.rows();
          break;
        }
  }
  // Composition: apply the previous stage map to each column.
  for (std::size_t i = 1; i <= n; ++i) {
    const auto prev = res.stage_map(i - 1);
    const auto dst = res.target_coordinates(i - 1);
    const auto& m = res.differential(i);
    std::vector<typename F::Element> out(dst.dim(), f.zero());
    for (std::size_t c = 0; c < m.cols() && check.differentials_compose_to_zero; ++c) {
      std::fill(out.begin(), out.end(), f.zero());
      const auto col = m.column_vector(c);
      std::vector<typename F::Element> tmp(dst.dim(), f.zero());
      for (std::size_t coord = 0; coord < col.size(); ++coord) {
        if (f.is_zero(col[coord])) continue;
        std::fill(tmp.begin(), tmp.end(), f.zero());
        prev(coord, tmp);
        f.add_mul(out, col[coord], tmp);
      }
      for (const auto& x : out)
        if (!f.is_zero(x)) {
          check.differentials_compose_to_zero = false;
          check.failures.push_back("d_" + std::to_string(i - 1) + " d_" + std::to_string(i) + " != 0");
          break;
        }
    }
  }
  // Ranks of the expanded maps, piece by piece.
  std::vector<std::size_t> rank_of(n + 1, 0), nullity_of(n + 1, 0);
  for (std::size_t i = 0; i <= n; ++i) {
    const auto src = res.source_coordinates(i, d);
    const auto dst = res.target_coordinates(i);
    const auto column = res.stage_map(i);
    for (std::size_t p = 0; p < src.piece_count(); ++p) {
      std::size_t r = 0;
      try {
        r = rank(detail::restrict_map(f, src, p, dst, res.graded, column, opts));
      } catch (const LogicFailure&) {
        check.exact = false;
        check.failures.push_back("d_" + std::to_string(i) + " does not respect the internal grading");
        return check;
      }
      rank_of[i] += r;
      nullity_of[i] += src.piece_coords[p].size() - r;
    }
  }
  if (rank_of[0] != res.module.dim()) {
    check.augmentation_ok = false;
    check.failures.push_back("F_0 does not map onto M");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (nullity_of[i] != rank_of[i + 1]) {
      check.exact = false;
      check.failures.push_back("homology at F_" + std::to_string(i) + " has dimension " +
                               std::to_string(nullity_of[i] - rank_of[i + 1]));
    }
  }
  return check;
}

}  // namespace ldlab
