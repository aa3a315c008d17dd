#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ldlab/linear_part.hpp"
#include "ldlab/resolution.hpp"
#include "ldlab/subspace.hpp"

namespace ldlab {

// Tor_i(M, R/m^n) as the homology of F (x) R/m^n at F_i, stored piece by
// piece over the coordinates of (R/m^n)^{b_i}.
template <ExactField F>
struct TorSpace {
  std::size_t power = 0;
  std::size_t index = 0;
  std::size_t width = 0;  // dim R/m^n
  GradedCoordinates coordinates;
  std::vector<QuotientSpace<F>> pieces;
  std::size_t dim = 0;
};

namespace detail {

// Working-basis prefix spanning R/m^n (all of R once m^n = 0).
template <ExactField F>
std::size_t quotient_width(const FiniteLocalAlgebra<F>& algebra, std::size_t n) {
  if (n == 0) return 0;
  return algebra.level_start(std::min(n, algebra.nilpotency_index()));
}

}  // namespace detail

template <ExactField F>
TorSpace<F> tor(const MinimalResolution<F>& res, std::size_t n, std::size_t i, const ResolveOptions& opts = {}) {
  if (i + 1 > res.horizon) {
    throw OutOfRange("Tor_" + std::to_string(i) + " needs the resolution through F_" + std::to_string(i + 1) +
                     ", computed only through F_" + std::to_string(res.horizon));
  }
  const auto& alg = *res.algebra;
  const F& f = alg.field();
  TorSpace<F> t;
  t.power = n;
  t.index = i;
  t.width = detail::quotient_width(alg, n);
  t.coordinates = res.source_coordinates(i, t.width);
  const auto& here = t.coordinates;
  for (std::size_t p = 0; p < here.piece_count(); ++p) {
    const std::size_t dim = here.piece_coords[p].size();
    Subspace<F> z = Subspace<F>::full(f, dim);
    if (i > 0) {
      const auto below = res.source_coordinates(i - 1, t.width);
      z = kernel(detail::restrict_map(f, here, p, below, res.graded,
                                      detail::truncated_column(alg, res.differential(i), t.width), opts));
    }
    t.pieces.push_back({std::move(z), Subspace<F>::zero(f, dim)});
  }
  // Boundaries: image of each piece of F_{i+1} lands in the piece of equal degree.
  const auto above = res.source_coordinates(i + 1, t.width);
  const auto column = detail::truncated_column(alg, res.differential(i + 1), t.width);
  std::vector<Matrix<F>> images;
  for (std::size_t p = 0; p < here.piece_count(); ++p) images.emplace_back(f, 0, here.piece_coords[p].size());
  for (std::size_t q = 0; q < above.piece_count(); ++q) {
    std::optional<std::size_t> p;
    if (res.graded) {
      p = here.find_piece(above.piece_degrees[q]);
    } else if (here.piece_count() > 0) {
      p = 0;
    }
    const auto m = detail::restrict_map(f, above, q, here, res.graded, column, opts);
    if (!p) continue;  // restrict_map already rejected any nonzero column
    const auto img = image(m);
    for (std::size_t r = 0; r < img.dim(); ++r) images[*p].append_row(img.basis().row(r));
  }
  for (std::size_t p = 0; p < here.piece_count(); ++p) {
    t.pieces[p].boundaries = Subspace<F>::span(std::move(images[p]));
    t.dim += quotient_dim(t.pieces[p].cycles, t.pieces[p].boundaries);
  }
  return t;
}

// The map upsilon^n_i : Tor_i(M, R/m^{n+1}) -> Tor_i(M, R/m^n).
template <ExactField F>
struct UpsilonMap {
  std::size_t power = 0;
  std::size_t index = 0;
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  Matrix<F> matrix;  // target_dim x source_dim, block diagonal over degrees
  std::size_t rank = 0;
};

template <ExactField F>
UpsilonMap<F> upsilon(const MinimalResolution<F>& res, const TorSpace<F>& source, const TorSpace<F>& target) {
  const F& f = res.algebra->field();
  if (source.index != target.index || source.power != target.power + 1) {
    throw InvalidInput("upsilon needs Tor_i against R/m^{n+1} and R/m^n");
  }
  UpsilonMap<F> u{target.power, source.index, source.dim, target.dim, Matrix<F>(f, target.dim, source.dim), 0};
  if (u.source_dim == 0 || u.target_dim == 0) return u;
  const auto& sc = source.coordinates;
  const auto& tc = target.coordinates;
  // Offsets of each piece's homology basis inside the assembled matrix.
  std::vector<std::size_t> row_offset(tc.piece_count() + 1, 0), col_offset(sc.piece_count() + 1, 0);
  for (std::size_t p = 0; p < tc.piece_count(); ++p)
    row_offset[p + 1] = row_offset[p] + target.pieces[p].cycles.dim() - target.pieces[p].boundaries.dim();
  for (std::size_t p = 0; p < sc.piece_count(); ++p)
    col_offset[p + 1] = col_offset[p] + source.pieces[p].cycles.dim() - source.pieces[p].boundaries.dim();

  for (std::size_t p = 0; p < sc.piece_count(); ++p) {
    if (col_offset[p + 1] == col_offset[p]) continue;
    const auto q = res.graded ? tc.find_piece(sc.piece_degrees[p]) : std::optional<std::size_t>(0);
    if (!q || row_offset[*q + 1] == row_offset[*q]) continue;
    // Coordinate projection (g, a) -> (g, a) for a below the target width.
    Matrix<F> proj(f, tc.piece_coords[*q].size(), sc.piece_coords[p].size());
    for (std::size_t l = 0; l < sc.piece_coords[p].size(); ++l) {
      const std::size_t coord = sc.piece_coords[p][l];
      const std::size_t g = coord / source.width, a = coord % source.width;
      if (a >= target.width) continue;
      const std::size_t tcoord = g * target.width + a;
      if (tc.piece_of[tcoord] != *q) throw LogicFailure("upsilon: projection changes internal degree");
      proj(tc.local_of[tcoord], l) = f.one();
    }
    const auto block = induced_map_on_quotients(proj, source.pieces[p], target.pieces[*q]);
    for (std::size_t r = 0; r < block.rows(); ++r)
      for (std::size_t c = 0; c < block.cols(); ++c) u.matrix(row_offset[*q] + r, col_offset[p] + c) = block(r, c);
  }
  u.rank = ldlab::rank(u.matrix);
  return u;
}

template <ExactField F>
UpsilonMap<F> upsilon(const MinimalResolution<F>& res, std::size_t n, std::size_t i, const ResolveOptions& opts = {}) {
  const F& f = res.algebra->field();
  if (n == 0) {
    const auto src = tor(res, 1, i, opts);
    return UpsilonMap<F>{0, i, src.dim, 0, Matrix<F>(f, 0, src.dim), 0};
  }
  return upsilon(res, tor(res, n + 1, i, opts), tor(res, n, i, opts));
}

// upsilon^n_i for i = 0..N and n = 1..max(t, 1), t the top level of the
// m-adic filtration. Every other upsilon^n_i with i >= 1 vanishes: n = 0
// has target zero, and n > t has source Tor_i(M, R) = 0. (For R = k the
// single column n = 1 keeps upsilon^1_0, the identity of M / mM.)
template <ExactField F>
struct UpsilonLadder {
  std::size_t horizon = 0;
  std::size_t top_level = 0;
  std::size_t powers = 1;                          // columns n = 1..powers
  std::vector<std::vector<UpsilonMap<F>>> cells;   // cells[i][n - 1]
  std::vector<std::vector<std::size_t>> tor_dims;  // tor_dims[i][n] = dim Tor_i(M, R/m^n), n = 0..powers+1

  std::size_t rank(std::size_t i, std::size_t n) const {
    if (n == 0 || n > powers || i > horizon) return 0;
    return cells[i][n - 1].rank;
  }
  const UpsilonMap<F>& cell(std::size_t i, std::size_t n) const {
    if (n == 0 || n > powers || i > horizon) {
      throw OutOfRange("upsilon cell (" + std::to_string(i) + ", " + std::to_string(n) + ") is not stored");
    }
    return cells[i][n - 1];
  }
};

// Needs the resolution through F_{N+1}.
template <ExactField F>
UpsilonLadder<F> upsilon_ladder(const MinimalResolution<F>& res, std::size_t horizon, const ResolveOptions& opts = {}) {
  UpsilonLadder<F> l;
  l.horizon = horizon;
  l.top_level = res.algebra->top_level();
  l.powers = std::max<std::size_t>(l.top_level, 1);
  for (std::size_t i = 0; i <= horizon; ++i) {
    std::vector<TorSpace<F>> spaces;
    std::vector<std::size_t> dims;
    for (std::size_t n = 0; n <= l.powers + 1; ++n) {
      if (i > 0 && n > l.top_level) {
        // R/m^n = R is free, so Tor_i vanishes; exactness is verified separately.
        TorSpace<F> zero;
        zero.power = n;
        zero.index = i;
        zero.width = detail::quotient_width(*res.algebra, n);
        spaces.push_back(std::move(zero));
      } else {
        spaces.push_back(tor(res, n, i, opts));
      }
      dims.push_back(spaces.back().dim);
    }
    std::vector<UpsilonMap<F>> row;
    for (std::size_t n = 1; n <= l.powers; ++n) row.push_back(upsilon(res, spaces[n + 1], spaces[n]));
    l.cells.push_back(std::move(row));
    l.tor_dims.push_back(std::move(dims));
  }
  return l;
}

// Horizon-truncated criterion: value at i is the summed rank of
// upsilon^n_i over n; the defect bound is the least d with zeros at d+1..N.
template <ExactField F>
DefectProfile sega_defect(const UpsilonLadder<F>& ladder) {
  DefectProfile p;
  p.horizon = ladder.horizon;
  for (std::size_t i = 1; i <= ladder.horizon; ++i) {
    std::size_t s = 0;
    for (std::size_t n = 1; n <= ladder.powers; ++n) s += ladder.rank(i, n);
    p.values.push_back(s);
  }
  return p;
}

// "If x in F_i has d_i(x) in m^2 F_{i-1}, then x lies in m F_i", decided on
// the preimage of m^2 F_{i-1}. Elements of m^2 F_i always qualify and lie in
// m F_i, so it suffices to work modulo m^2 on both sides.
template <ExactField F>
bool remark_condition(const MinimalResolution<F>& res, std::size_t i, const ResolveOptions& opts = {}) {
  if (i > res.horizon) {
    throw OutOfRange("remark condition at " + std::to_string(i) + " beyond the computed horizon " +
                     std::to_string(res.horizon));
  }
  if (i == 0) return res.betti[0] == 0;  // F_{-1} = 0: every x qualifies
  const auto& alg = *res.algebra;
  const F& f = alg.field();
  const std::size_t w = detail::quotient_width(alg, 2);
  const auto src = res.source_coordinates(i, w);
  const auto dst = res.source_coordinates(i - 1, w);
  const auto column = detail::truncated_column(alg, res.differential(i), w);
  for (std::size_t p = 0; p < src.piece_count(); ++p) {
    const auto pre = kernel(detail::restrict_map(f, src, p, dst, res.graded, column, opts));
    for (std::size_t r = 0; r < pre.dim(); ++r) {
      const auto v = pre.basis().row(r);
      for (std::size_t l = 0; l < v.size(); ++l) {
        if (f.is_zero(v[l])) continue;
        if (src.piece_coords[p][l] % w == 0) return false;  // unit coordinate
      }
    }
  }
  return true;
}

struct ImplicationOutcome {
  std::size_t index = 0;
  bool antecedent = false;  // upsilon^1_i = 0
  bool consequent = false;  // upsilon^2_i = 0
  bool violated() const { return antecedent && !consequent; }
};

// For m^4 = 0: wherever upsilon^1_i vanishes, upsilon^2_i must vanish too.
template <ExactField F>
std::vector<ImplicationOutcome> theorem71_implication(const UpsilonLadder<F>& ladder) {
  if (ladder.top_level > 3) throw InvalidInput("the upsilon^1 => upsilon^2 implication needs m^4 = 0");
  std::vector<ImplicationOutcome> out;
  for (std::size_t i = 0; i <= ladder.horizon; ++i)
    out.push_back({i, ladder.rank(i, 1) == 0, ladder.rank(i, 2) == 0});
  return out;
}

}  // namespace ldlab
