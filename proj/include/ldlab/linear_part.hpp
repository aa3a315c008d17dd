#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ldlab/algebra.hpp"
#include "ldlab/resolution.hpp"
#include "ldlab/subspace.hpp"

namespace ldlab {

// The linear part lin(F) of a minimal complex F over R: lin_n = gr(R)^{b_n}
// with every generator in internal degree n, and differential given by the
// classes in m/m^2 of the entries of d_n.
//
// Coordinates of lin_{n,j} (internal degree j): g * dim gr_{j-n} + a for
// generator g and basis element a of gr_{j-n}.
template <ExactField F>
class GradedComplex {
 public:
  using Element = typename F::Element;

  GradedComplex(std::shared_ptr<const GradedAlgebra<F>> algebra, std::vector<std::size_t> ranks,
                std::vector<std::vector<Matrix<F>>> linear_coefficients)
      : algebra_(std::move(algebra)), ranks_(std::move(ranks)), coefficients_(std::move(linear_coefficients)) {}

  const GradedAlgebra<F>& algebra() const { return *algebra_; }
  const F& field() const { return algebra_->field(); }
  // Number of differentials d*_1..d*_K.
  std::size_t length() const { return coefficients_.size(); }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  std::size_t rank(std::size_t n) const { return n < ranks_.size() ? ranks_[n] : 0; }

  // Coefficient of the x-th degree-one basis element in the linear part of
  // each entry of d*_n, as a b_{n-1} x b_n matrix.
  const Matrix<F>& linear_coefficients(std::size_t n, std::size_t x) const {
    check_index(n);
    return coefficients_[n - 1].at(x);
  }

  // Internal degrees carried by lin_n: n .. n + t.
  int min_degree(std::size_t n) const { return static_cast<int>(n); }
  int max_degree(std::size_t n) const { return static_cast<int>(n + algebra_->top_degree()); }

  std::size_t component_dim(std::size_t n, int j) const {
    const int level = j - static_cast<int>(n);
    if (level < 0 || n >= ranks_.size()) return 0;
    return rank(n) * algebra_->component_dim(static_cast<std::size_t>(level));
  }

  // d*_n restricted to internal degree j: lin_{n,j} -> lin_{n-1,j}.
  Matrix<F> differential(std::size_t n, int j) const;

  // Multiplication by the x-th degree-one element: lin_{n,j} -> lin_{n,j+1}.
  Matrix<F> multiplication(std::size_t x, std::size_t n, int j) const;

 private:
  void check_index(std::size_t n) const {
    if (n == 0 || n > length()) {
      throw OutOfRange("linear part differential " + std::to_string(n) + " outside 1.." + std::to_string(length()));
    }
  }

  std::shared_ptr<const GradedAlgebra<F>> algebra_;
  std::vector<std::size_t> ranks_;
  std::vector<std::vector<Matrix<F>>> coefficients_;
};

template <ExactField F>
Matrix<F> GradedComplex<F>::differential(std::size_t n, int j) const {
  check_index(n);
  const F& f = field();
  const auto& gr = *algebra_;
  const int level = j - static_cast<int>(n);
  const std::size_t src_dim = level < 0 ? 0 : gr.component_dim(static_cast<std::size_t>(level));
  const std::size_t dst_dim = level < -1 ? 0 : gr.component_dim(static_cast<std::size_t>(level + 1));
  const std::size_t rows = rank(n - 1), cols = rank(n);
  Matrix<F> out(f, rows * dst_dim, cols * src_dim);
  if (src_dim == 0 || dst_dim == 0) return out;
  const auto& coeffs = coefficients_[n - 1];
  for (std::size_t x = 0; x < coeffs.size(); ++x) {
    const auto& mult = gr.degree_one_map(x, static_cast<std::size_t>(level));
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t g = 0; g < cols; ++g) {
        const auto& c = coeffs[x](r, g);
        if (f.is_zero(c)) continue;
        for (std::size_t a = 0; a < dst_dim; ++a)
          for (std::size_t b = 0; b < src_dim; ++b) {
            const auto& m = mult(a, b);
            if (f.is_zero(m)) continue;
            auto& e = out(r * dst_dim + a, g * src_dim + b);
            e = f.add(e, f.mul(c, m));
          }
      }
    }
  }
  return out;
}

template <ExactField F>
Matrix<F> GradedComplex<F>::multiplication(std::size_t x, std::size_t n, int j) const {
  const auto& gr = *algebra_;
  const int level = j - static_cast<int>(n);
  const std::size_t src_dim = level < 0 ? 0 : gr.component_dim(static_cast<std::size_t>(level));
  const std::size_t dst_dim = level < -1 ? 0 : gr.component_dim(static_cast<std::size_t>(level + 1));
  const std::size_t b = rank(n);
  Matrix<F> out(field(), b * dst_dim, b * src_dim);
  if (src_dim == 0 || dst_dim == 0) return out;
  const auto& mult = gr.degree_one_map(x, static_cast<std::size_t>(level));
  for (std::size_t g = 0; g < b; ++g)
    for (std::size_t a = 0; a < dst_dim; ++a)
      for (std::size_t c = 0; c < src_dim; ++c) out(g * dst_dim + a, g * src_dim + c) = mult(a, c);
  return out;
}

// Builds lin(F) from a minimal resolution. Throws InvalidInput when some
// differential entry is a unit (the linear part is then undefined).
template <ExactField F>
GradedComplex<F> linear_part(const MinimalResolution<F>& res) {
  const auto& alg = *res.algebra;
  const F& f = alg.field();
  const std::size_t e = alg.embedding_dim();
  const std::size_t first = alg.level_start(1);
  std::vector<std::vector<Matrix<F>>> coeffs;
  for (std::size_t n = 1; n <= res.horizon; ++n) {
    const auto& m = res.differential(n);
    std::vector<Matrix<F>> per_x(e, Matrix<F>(f, m.rows(), m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t g = 0; g < m.cols(); ++g) {
        const auto entry = m.entry(r, g);
        if (!f.is_zero(entry[0])) {
          throw InvalidInput("differential d_" + std::to_string(n) + " has an entry outside m; the complex is not minimal");
        }
        for (std::size_t x = 0; x < e; ++x) per_x[x](r, g) = entry[first + x];
      }
    coeffs.push_back(std::move(per_x));
  }
  return GradedComplex<F>(std::make_shared<const GradedAlgebra<F>>(res.algebra), res.betti, std::move(coeffs));
}

// H_n(lin) split by internal degree, with the cycle and boundary spaces.
template <ExactField F>
struct GradedHomology {
  std::size_t index = 0;
  std::vector<int> degrees;                 // internal degrees n .. n + t
  std::vector<QuotientSpace<F>> spaces;     // parallel to degrees
  std::vector<std::size_t> dims;            // dim Z - dim B per degree

  std::size_t total() const {
    std::size_t s = 0;
    for (auto d : dims) s += d;
    return s;
  }
  std::size_t dim_in_degree(int j) const {
    for (std::size_t k = 0; k < degrees.size(); ++k)
      if (degrees[k] == j) return dims[k];
    return 0;
  }
  const QuotientSpace<F>* space_in_degree(int j) const {
    for (std::size_t k = 0; k < degrees.size(); ++k)
      if (degrees[k] == j) return &spaces[k];
    return nullptr;
  }
};

// Needs d*_{n+1}, so n must be below c.length().
template <ExactField F>
GradedHomology<F> graded_homology(const GradedComplex<F>& c, std::size_t n) {
  if (n >= c.length()) {
    throw OutOfRange("homology at " + std::to_string(n) + " needs the linear part through index " +
                     std::to_string(n + 1) + ", built only through " + std::to_string(c.length()));
  }
  const F& f = c.field();
  GradedHomology<F> h;
  h.index = n;
  for (int j = c.min_degree(n); j <= c.max_degree(n); ++j) {
    const std::size_t dim = c.component_dim(n, j);
    auto z = n == 0 ? Subspace<F>::full(f, dim) : kernel(c.differential(n, j));
    auto b = image(c.differential(n + 1, j));
    h.degrees.push_back(j);
    h.dims.push_back(quotient_dim(z, b));
    h.spaces.push_back({std::move(z), std::move(b)});
  }
  return h;
}

// Shared shape of the two defect oracles: one value per homological index
// 1..N (homology dimension or summed upsilon rank).
struct DefectProfile {
  std::size_t horizon = 0;
  std::vector<std::size_t> values;  // values[i - 1] for i = 1..N

  std::vector<std::size_t> nonzero_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i] != 0) out.push_back(i + 1);
    return out;
  }
  // Largest i <= N with a nonzero value, if any.
  std::optional<std::size_t> last_nonzero() const {
    for (std::size_t i = values.size(); i > 0; --i)
      if (values[i - 1] != 0) return i;
    return std::nullopt;
  }
  // Least d with zero values at d+1..N.
  std::size_t defect_bound() const { return last_nonzero().value_or(0); }
  std::string classification() const {
    const auto d = last_nonzero();
    return d ? "defect >= " + std::to_string(*d) : "ld=0 up to horizon";
  }
  // Number of trailing zero indices after the last nonzero one (0 when no
  // index is nonzero).
  std::size_t tail_length() const {
    const auto d = last_nonzero();
    return d ? horizon - *d : 0;
  }
};

// A silence tail of at least `min_length` indices: some h_d != 0 (d >= 1)
// followed by zeros through the horizon.
inline bool silence_tail(const DefectProfile& p, std::size_t min_length = 2) {
  return p.last_nonzero().has_value() && p.tail_length() >= min_length;
}

template <ExactField F>
struct LinearityDefectReport {
  DefectProfile profile;
  std::vector<GradedHomology<F>> homology;  // H_0..H_N
  bool silence_tail = false;                // tail of length >= 2
};

// Homology of lin(F) for H_0..H_N, given the linear part through N + 1.
template <ExactField F>
LinearityDefectReport<F> linearity_defect_profile(const GradedComplex<F>& c, std::size_t horizon) {
  if (horizon < 1) throw InvalidInput("linearity defect profile needs a horizon of at least 1");
  LinearityDefectReport<F> r;
  r.profile.horizon = horizon;
  for (std::size_t n = 0; n <= horizon; ++n) {
    r.homology.push_back(graded_homology(c, n));
    if (n >= 1) r.profile.values.push_back(r.homology.back().total());
  }
  r.silence_tail = silence_tail(r.profile);
  return r;
}

// Resolves M through N + 1 and profiles H_1..H_N of its linear part.
template <ExactField F>
LinearityDefectReport<F> linearity_defect_profile(const RModule<F>& module, std::size_t horizon,
                                                  const ResolveOptions& opts = {}) {
  if (horizon < 1) throw InvalidInput("linearity defect profile needs a horizon of at least 1");
  return linearity_defect_profile(linear_part(resolve(module, horizon + 1, opts)), horizon);
}

// A cycle z in internal degree j with x * z outside B_n.
template <ExactField F>
struct AnnihilationCertificate {
  std::size_t index = 0;
  int degree = 0;
  std::size_t generator = 0;
  std::vector<typename F::Element> cycle;
};

// m* Z_n inside B_n, checked degree by degree for every degree-one x.
template <ExactField F>
std::optional<AnnihilationCertificate<F>> mstar_annihilation_check(const GradedComplex<F>& c,
                                                                   const GradedHomology<F>& h) {
  const std::size_t n = h.index;
  const std::size_t e = c.algebra().component_dim(1);
  for (std::size_t k = 0; k < h.degrees.size(); ++k) {
    const int j = h.degrees[k];
    const auto* target = h.space_in_degree(j + 1);
    // x * d*(w) = d*(x * w), so boundaries go to boundaries and a basis of
    // cycles modulo boundaries is enough.
    const auto reps = complement(h.spaces[k].cycles, h.spaces[k].boundaries);
    if (reps.rank() == 0) continue;
    for (std::size_t x = 0; x < e; ++x) {
      const auto mult = c.multiplication(x, n, j);
      for (std::size_t r = 0; r < reps.rank(); ++r) {
        const auto y = mult.apply(reps.reduced.row(r));
        bool zero = true;
        for (const auto& v : y) zero = zero && c.field().is_zero(v);
        if (zero) continue;
        if (target && target->boundaries.contains(y)) continue;
        return AnnihilationCertificate<F>{n, j, x, reps.reduced.row_vector(r)};
      }
    }
  }
  return std::nullopt;
}

namespace detail {

// span of x * v for v in s and every degree-one x, inside lin_{n,j+1}.
template <ExactField F>
Subspace<F> mstar_times(const GradedComplex<F>& c, std::size_t n, int j, const Subspace<F>& s) {
  const std::size_t e = c.algebra().component_dim(1);
  Matrix<F> rows(c.field(), 0, c.component_dim(n, j + 1));
  for (std::size_t x = 0; x < e; ++x) {
    const auto mult = c.multiplication(x, n, j);
    for (std::size_t r = 0; r < s.dim(); ++r) rows.append_row(mult.apply(s.basis().row(r)));
  }
  return Subspace<F>::span(std::move(rows));
}

}  // namespace detail

// m* Z_d == m* B_d in every internal degree (offered for d >= 1).
template <ExactField F>
bool proposition_equality_check(const GradedComplex<F>& c, const GradedHomology<F>& h) {
  if (h.index < 1) throw InvalidInput("the equality check is defined for d >= 1");
  const std::size_t n = h.index;
  // m* Z in degree j + 1 comes from Z in degree j; degree n itself receives
  // nothing since m* starts in degree one.
  for (std::size_t k = 0; k < h.degrees.size(); ++k) {
    const int j = h.degrees[k];
    if (c.component_dim(n, j + 1) == 0) continue;
    const auto mz = detail::mstar_times(c, n, j, h.spaces[k].cycles);
    const auto mb = detail::mstar_times(c, n, j, h.spaces[k].boundaries);
    if (!(mz == mb)) return false;
  }
  return true;
}

// d*_{n-1} d*_n = 0 in every internal degree, for n = 2..length.
template <ExactField F>
bool squares_to_zero(const GradedComplex<F>& c) {
  for (std::size_t n = 2; n <= c.length(); ++n)
    for (int j = c.min_degree(n); j <= c.max_degree(n); ++j) {
      const auto a = c.differential(n - 1, j);
      const auto b = c.differential(n, j);
      if (a.empty() || b.empty()) continue;
      if (!(a * b).is_zero()) return false;
    }
  return true;
}

// Euler characteristic of lin and of its homology agree in every internal
// degree j whose whole column n = max(0, j - t) .. j has computed homology.
template <ExactField F>
bool euler_characteristics_agree(const GradedComplex<F>& c, const std::vector<GradedHomology<F>>& homology) {
  const int t = static_cast<int>(c.algebra().top_degree());
  const int last = static_cast<int>(homology.size()) - 1;
  for (int j = 0; j <= last; ++j) {
    long long chain = 0, hom = 0;
    for (int n = std::max(0, j - t); n <= j; ++n) {
      const long long sign = n % 2 == 0 ? 1 : -1;
      chain += sign * static_cast<long long>(c.component_dim(static_cast<std::size_t>(n), j));
      hom += sign * static_cast<long long>(homology[n].dim_in_degree(j));
    }
    if (chain != hom) return false;
  }
  return true;
}

}  // namespace ldlab
