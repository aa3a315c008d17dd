#include <random>

#include "doctest.h"
#include "ldlab/presentation.hpp"
#include "ldlab/resolution.hpp"

using namespace ldlab;

namespace {

using PF = PrimeField;
using Alg = std::shared_ptr<const FiniteLocalAlgebra<PF>>;
const PF k101(101);

Alg ring(const std::string& ideal, const std::string& vars = "x") {
  return build_algebra(parse_presentation("vars " + vars + "\nideal " + ideal + "\n"), k101);
}

AlgebraMatrix<PF> random_matrix(const FiniteLocalAlgebra<PF>& a, std::mt19937& g, std::size_t r, std::size_t c) {
  AlgebraMatrix<PF> m(a.field(), a.dim(), r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      for (auto& x : m.entry(i, j)) x = g() % 101;
  return m;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("expand examples") {
  auto x2 = ring("x^2");
  AlgebraMatrix<PF> one(k101, 2, 1, 1);
  const auto unit = x2->unit();
  std::copy(unit.begin(), unit.end(), one.entry(0, 0).begin());
  CHECK(expand(*x2, one) == Matrix<PF>::identity(k101, 2));

  AlgebraMatrix<PF> x(k101, 2, 1, 1);
  const auto& gx = x2->m_generators()[0];
  std::copy(gx.begin(), gx.end(), x.entry(0, 0).begin());
  const auto ex = expand(*x2, x);
  CHECK(rank(ex) == 1);
  CHECK((ex * ex).is_zero());

  CHECK(expand(*x2, AlgebraMatrix<PF>(k101, 2, 2, 3)).is_zero());
}

TEST_CASE("expand is functorial") {
  std::mt19937 g(4);
  for (const auto& a : {ring("x^3"), ring("x^2 - y^3, x*y", "x y")}) {
    for (int k = 0; k < 5; ++k) {
      const auto p = random_matrix(*a, g, 2, 3), q = random_matrix(*a, g, 3, 2);
      CHECK(expand(*a, multiply(*a, p, q)) == expand(*a, p) * expand(*a, q));
    }
  }
}

TEST_CASE("minimal generators") {
  auto x3 = ring("x^3");
  CHECK(minimal_generators(*x3, 1, x3->filtration()[1]).size() == 1);
  CHECK(minimal_generators(*x3, 1, Subspace<PF>::zero(k101, 3)).empty());
  auto k3 = ring("x^2, x*y, y^2", "x y");
  const auto gens = minimal_generators(*k3, 1, k3->filtration()[1]);
  REQUIRE(gens.size() == 2);
  CHECK(Subspace<PF>::span(Matrix<PF>(k101, 2, 3, {gens[0][0], gens[0][1], gens[0][2], gens[1][0], gens[1][1], gens[1][2]})) ==
        k3->filtration()[1]);
}

TEST_CASE("resolution examples") {
  SUBCASE("k[x]/(x^2)") {
    auto a = ring("x^2");
    auto res = resolve(residue_field(a), 5);
    CHECK(res.betti == std::vector<std::size_t>(6, 1));
    for (std::size_t i = 1; i <= 5; ++i) {
      const auto e = res.differential(i).entry(0, 0);
      CHECK(std::vector<std::uint32_t>(e.begin(), e.end()) == a->m_generators()[0]);
    }
    CHECK(verify_resolution(res).ok());
  }
  SUBCASE("k[x]/(x^3)") {
    auto a = ring("x^3");
    auto res = resolve(residue_field(a), 4);
    CHECK(res.betti == std::vector<std::size_t>(5, 1));
    for (std::size_t i = 1; i <= 4; ++i) CHECK(a->order(res.differential(i).entry(0, 0)) == (i % 2 ? 1u : 2u));
  }
  SUBCASE("k[x,y]/(x^2,xy,y^2)") {
    auto res = resolve(residue_field(ring("x^2, x*y, y^2", "x y")), 4);
    CHECK(res.betti == std::vector<std::size_t>{1, 2, 4, 8, 16});
  }
  SUBCASE("N = 0 and the field itself") {
    CHECK(resolve(residue_field(ring("x^3")), 0).betti == std::vector<std::size_t>{1});
    CHECK(resolve(residue_field(ring("x")), 3).betti == std::vector<std::size_t>{1, 0, 0, 0});
  }
}

TEST_CASE("Betti numbers of complete intersections") {
  // Poincare series 1/(1-t)^c for k over a complete intersection of
  // embedding dimension c.
  auto ci3 = resolve(residue_field(ring("x^2, y^2, z^2", "x y z")), 5);
  for (std::size_t i = 0; i <= 5; ++i) CHECK(ci3.betti[i] == binomial(i + 2, 2));
  auto inhom = ring("x^2 - y^3, x*y", "x y");
  CHECK_FALSE(inhom->is_graded());
  auto ci2 = resolve(residue_field(inhom), 6);
  CHECK_FALSE(ci2.graded);
  for (std::size_t i = 0; i <= 6; ++i) CHECK(ci2.betti[i] == i + 1);
  CHECK(verify_resolution(ci2).ok());
}

TEST_CASE("grading does not change Betti numbers") {
  for (const auto& a : {ring("x^2, x*y^2, y^3", "x y"), ring("x^2, y^2 - x*z, z^3, y*z", "x y z")}) {
    ResolveOptions ungraded;
    ungraded.use_grading = false;
    auto g = resolve(residue_field(a), 5);
    auto u = resolve(residue_field(a), 5, ungraded);
    CHECK(g.graded);
    CHECK_FALSE(u.graded);
    CHECK(g.betti == u.betti);
    CHECK(verify_resolution(g).ok());
    CHECK(verify_resolution(u, ungraded).ok());
    for (std::size_t i = 0; i <= 5; ++i) CHECK(g.betti[i] >= 1);
  }
}

TEST_CASE("resolutions of R/m^n and determinism") {
  auto a = ring("x^3, y^2 - x*y", "x y");
  for (std::size_t n = 1; n <= a->nilpotency_index(); ++n) {
    auto res = resolve(quotient_module(a, n), 4);
    CHECK(verify_resolution(res).ok());
    CHECK(res.betti[0] == 1);
    if (n == a->nilpotency_index()) CHECK(res.betti[1] == 0);
  }
  auto r1 = resolve(residue_field(a), 5), r2 = resolve(residue_field(a), 5);
  for (std::size_t i = 1; i <= 5; ++i) CHECK(r1.differential(i) == r2.differential(i));
}

TEST_CASE("syzygies") {
  auto x3 = ring("x^3");
  auto res = resolve(residue_field(x3), 3);
  CHECK(syzygy(res, 0).dim() == 1);
  auto s1 = syzygy(res, 1);
  CHECK(s1.dim() == 1);  // (x^2)
  CHECK(s1.check_axioms().empty());
  CHECK_THROWS_AS(syzygy(res, 4), OutOfRange);

  auto x2 = ring("x^2");
  auto s2 = syzygy(resolve(residue_field(x2), 3), 2);
  CHECK(s2.dim() == 1);  // (x)
  CHECK(s2.embedding()->rank == 1);
}

TEST_CASE("resource limit and corrupted resolutions") {
  auto a = ring("x^2, x*y, y^2", "x y");
  ResolveOptions tiny;
  tiny.max_block_entries = 50;
  CHECK_THROWS_AS(resolve(residue_field(a), 6, tiny), ResourceLimit);

  auto res = resolve(residue_field(a), 3);
  auto bad = res;
  auto e = bad.differentials[1].entry(0, 0);
  e[0] = 1;  // a unit entry
  const auto check = verify_resolution(bad);
  CHECK_FALSE(check.ok());
  CHECK_FALSE(check.minimal);
  CHECK_FALSE(check.failures.empty());
}
