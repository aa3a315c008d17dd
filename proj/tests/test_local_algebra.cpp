#include <numeric>
#include <random>

#include "doctest.h"
#include "ldlab/module.hpp"
#include "ldlab/presentation.hpp"

using namespace ldlab;

namespace {

using PF = PrimeField;
using Alg = std::shared_ptr<const FiniteLocalAlgebra<PF>>;
const PF k101(101);

Alg ring(const std::string& ideal, const std::string& vars = "x") {
  return build_algebra(parse_presentation("vars " + vars + "\nideal " + ideal + "\n"), k101);
}

Matrix<PF> inverse(const Matrix<PF>& p) {
  const std::size_t n = p.rows();
  Matrix<PF> aug(p.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = p(i, j);
    aug(i, n + i) = 1;
  }
  const auto e = rref(aug);
  REQUIRE(e.rank() == n);
  REQUIRE(e.pivots.back() == n - 1);
  return e.reduced.block(0, n, n, n);
}

// The same algebra in the basis f_i = sum_j P(i, j) e_j.
StructureTable<PF> change_basis(const StructureTable<PF>& t, const Matrix<PF>& p) {
  const auto& f = t.field;
  const std::size_t d = t.dim;
  const auto q = inverse(p);  // e-coordinates -> f-coordinates: v_f = v_e * q
  auto to_f = [&](const std::vector<std::uint32_t>& ve) {
    std::vector<std::uint32_t> out(d, 0);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) out[k] = f.add(out[k], f.mul(ve[j], q(j, k)));
    return out;
  };
  StructureTable<PF> s{f, d, {}, to_f(t.unit), {}, std::vector<std::uint32_t>(d * d * d, 0)};
  for (const auto& g : t.m_generators) s.m_generators.push_back(to_f(g));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<std::uint32_t> prod(d, 0);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
          const auto c = f.mul(p(i, a), p(j, b));
          if (c == 0) continue;
          const auto ab = t.product(a, b);
          for (std::size_t k = 0; k < d; ++k) prod[k] = f.add(prod[k], f.mul(c, ab[k]));
        }
      const auto v = to_f(prod);
      std::copy(v.begin(), v.end(), s.products.begin() + (i * d + j) * d);
    }
  return s;
}

// Ranks of multiplication by the whole degree-one part, degree by degree.
std::vector<std::size_t> degree_one_ranks(const GradedAlgebra<PF>& g) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 <= g.top_degree(); ++i) {
    Matrix<PF> stacked(g.field(), 0, g.component_dim(i));
    for (std::size_t x = 0; x < g.component_dim(1); ++x) {
      const auto& m = g.degree_one_map(x, i);
      for (std::size_t r = 0; r < m.rows(); ++r) stacked.append_row(m.row(r));
    }
    out.push_back(rank(stacked));
  }
  return out;
}

}  // namespace

TEST_CASE("filtration examples") {
  auto x4 = ring("x^4");
  CHECK(x4->power_dims() == std::vector<std::size_t>{4, 3, 2, 1, 0});
  CHECK(x4->nilpotency_index() == 4);
  auto k3 = ring("x^2, x*y, y^2", "x y");
  CHECK(k3->power_dims() == std::vector<std::size_t>{3, 2, 0});
  CHECK(k3->top_level() == 1);
  auto field = ring("x");
  CHECK(field->dim() == 1);
  CHECK(field->power_dims() == std::vector<std::size_t>{1, 0});
  CHECK(field->nilpotency_index() == 1);
}

TEST_CASE("associated graded examples") {
  CHECK(GradedAlgebra<PF>(ring("x^3")).component_dims() == std::vector<std::size_t>{1, 1, 1});
  auto inhom = ring("y - x^2, x^3", "x y");
  CHECK(GradedAlgebra<PF>(inhom).component_dims() == std::vector<std::size_t>{1, 1, 1});
  CHECK(inhom->embedding_dim() == 1);
  CHECK(GradedAlgebra<PF>(ring("x")).component_dims() == std::vector<std::size_t>{1});

  // k[x,y]/(x^2 - y^3, xy): not graded, gr = k[x,y]/(x^2, xy, y^4).
  auto a = ring("x^2 - y^3, x*y", "x y");
  CHECK_FALSE(a->is_graded());
  GradedAlgebra<PF> g(a);
  CHECK(g.component_dims() == std::vector<std::size_t>{1, 2, 1, 1});
  CHECK(g.check_axioms().empty());
}

TEST_CASE("filtration invariants") {
  for (const auto& a : {ring("x^4"), ring("x^2 - y^3, x*y", "x y"), ring("x^2, y^2, z^2", "x y z"),
                        ring("x^3, y^3, x*y*z, z^2 - x*y", "x y z")}) {
    std::size_t total = 0;
    for (std::size_t j = 0; j <= a->top_level(); ++j) total += a->level_dim(j);
    CHECK(total == a->dim());
    const auto& filt = a->filtration();
    for (std::size_t i = 0; i < filt.size(); ++i)
      for (std::size_t j = 0; i + j < filt.size(); ++j) {
        Matrix<PF> prods(k101, 0, a->dim());
        for (std::size_t r = 0; r < filt[i].dim(); ++r)
          for (std::size_t s = 0; s < filt[j].dim(); ++s)
            prods.append_row(a->to_original(
                a->multiply(a->to_working(filt[i].basis().row(r)), a->to_working(filt[j].basis().row(s)))));
        CHECK(filt[i + j].contains(Subspace<PF>::span(prods)));
      }
    CHECK(GradedAlgebra<PF>(a).check_axioms().empty());
  }
}

TEST_CASE("gr does not depend on the basis of R") {
  std::mt19937 g(9);
  for (const auto& a : {ring("x^2 - y^3, x*y", "x y"), ring("x^3, y^2 - x*y", "x y"), ring("x^2, y^2, z^2", "x y z")}) {
    const auto& t = a->original_table();
    const GradedAlgebra<PF> gr(a);
    for (int trial = 0; trial < 3; ++trial) {
      Matrix<PF> p(k101, t.dim, t.dim);
      do {
        for (std::size_t i = 0; i < t.dim; ++i)
          for (std::size_t j = 0; j < t.dim; ++j) p(i, j) = g() % 101;
      } while (rank(p) != t.dim);
      auto b = FiniteLocalAlgebra<PF>::create(change_basis(t, p));
      const GradedAlgebra<PF> gb(b);
      CHECK(gb.component_dims() == gr.component_dims());
      CHECK(degree_one_ranks(gb) == degree_one_ranks(gr));
    }
  }
}

TEST_CASE("quotient modules") {
  auto x4 = ring("x^4");
  auto k = residue_field(x4);
  CHECK(k.dim() == 1);
  CHECK(quotient_module(x4, 2).dim() == 2);
  CHECK(quotient_module(x4, 0).dim() == 0);
  CHECK(quotient_module(x4, 4).dim() == 4);
  CHECK(quotient_module(x4, 7).dim() == 4);
  for (std::size_t n = 0; n <= 5; ++n) CHECK(quotient_module(x4, n).check_axioms().empty());
  CHECK(quotient_module(ring("x^2 - y^3, x*y", "x y"), 2).check_axioms().empty());
}
