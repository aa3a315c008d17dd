#include <random>
#include <set>

#include "doctest.h"
#include "ldlab/subspace.hpp"

using namespace ldlab;

namespace {

using PF = PrimeField;
using Vec = std::vector<std::uint32_t>;

Matrix<PF> mat(const PF& f, std::size_t r, std::size_t c, std::vector<long long> v) {
  std::vector<std::uint32_t> d;
  for (auto x : v) d.push_back(f.from_int(x));
  return Matrix<PF>(f, r, c, d);
}

// Every vector of F_p^n.
std::vector<Vec> all_vectors(std::uint32_t p, std::size_t n) {
  std::vector<Vec> out(1, Vec(n, 0));
  for (std::size_t k = 0;; ++k) {
    Vec v = out.back();
    std::size_t i = 0;
    while (i < n && ++v[i] == p) v[i++] = 0;
    if (i == n) break;
    out.push_back(v);
  }
  return out;
}

std::set<Vec> members(const Subspace<PF>& s, std::uint32_t p) {
  std::set<Vec> out;
  for (const auto& v : all_vectors(p, s.ambient_dim()))
    if (s.contains(v)) out.insert(v);
  return out;
}

Matrix<PF> random_matrix(const PF& f, std::mt19937& g, std::size_t r, std::size_t c) {
  Matrix<PF> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = g() % f.characteristic();
  return m;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  PF f(101);
  CHECK(f.mul(f.inv(7), 7) == 1);
  CHECK(f.from_int(-1) == 100);
  CHECK(f.lift(100) == -1);
  CHECK(f.from_rational(mpq_class(1, 2)) == 51);
  CHECK_THROWS_AS(f.from_rational(mpq_class(1, 101)), InvalidInput);
  CHECK_THROWS_AS(PF(100), InvalidInput);
  CHECK(FieldSpec::from_characteristic(0).kind == FieldSpec::Kind::kRational);
  CHECK_THROWS_AS(FieldSpec::from_characteristic(4), InvalidInput);
  // Barrett reduction against % for a large prime.
  PF big(2147483629u);
  std::mt19937_64 g(3);
  for (int k = 0; k < 1000; ++k) {
    const std::uint32_t a = g() % big.characteristic(), b = g() % big.characteristic();
    CHECK(big.mul(a, b) == static_cast<std::uint32_t>(static_cast<unsigned __int128>(a) * b % big.characteristic()));
  }
}

TEST_CASE("rref examples") {
  PF f5(5);
  auto z = rref(mat(f5, 2, 2, {0, 0, 0, 0}));
  CHECK(z.rank() == 0);
  CHECK(z.pivots.empty());
  auto id = rref(Matrix<PF>::identity(f5, 3));
  CHECK(id.reduced == Matrix<PF>::identity(f5, 3));
  CHECK(id.pivots == std::vector<std::size_t>{0, 1, 2});
  auto e = rref(mat(f5, 2, 2, {2, 4, 1, 2}));
  CHECK(e.reduced == mat(f5, 1, 2, {1, 2}));
  CHECK(e.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("kernel and image examples") {
  PF f7(7);
  CHECK(kernel(Matrix<PF>::identity(f7, 2)).dim() == 0);
  CHECK(kernel(Matrix<PF>(f7, 1, 2)).dim() == 2);
  auto k = kernel(mat(f7, 1, 2, {1, 3}));
  REQUIRE(k.dim() == 1);
  CHECK(k.basis().row_vector(0) == Vec{1, 2});  // canonical: leading 1, and 1 + 3 * 2 = 0 mod 7
  CHECK(image(Matrix<PF>::identity(f7, 3)) == Subspace<PF>::full(f7, 3));
  CHECK(image(Matrix<PF>(f7, 3, 2)).dim() == 0);
  auto outer = image(mat(f7, 2, 2, {1, 1, 2, 2}));
  CHECK(outer == Subspace<PF>::span(mat(f7, 1, 2, {1, 2})));
}

TEST_CASE("subspace operations") {
  PF f3(3);
  auto e12 = Subspace<PF>::span(mat(f3, 2, 3, {1, 0, 0, 0, 1, 0}));
  auto e23 = Subspace<PF>::span(mat(f3, 2, 3, {0, 1, 0, 0, 0, 1}));
  CHECK(intersect(e12, e23) == Subspace<PF>::span(mat(f3, 1, 3, {0, 1, 0})));
  CHECK(sum(e12, e23) == Subspace<PF>::full(f3, 3));
  CHECK(intersect(Subspace<PF>::full(f3, 3), e12) == e12);
  CHECK(sum(e12, Subspace<PF>::zero(f3, 3)) == e12);
  CHECK(quotient_dim(e12, Subspace<PF>::span(mat(f3, 1, 3, {1, 1, 0}))) == 1);
  CHECK_THROWS_AS(quotient_dim(e12, e23), InvalidInput);
  CHECK_THROWS_AS(sum(e12, Subspace<PF>::full(f3, 2)), InvalidInput);
}

TEST_CASE("kernel, image and intersection agree with enumeration over GF(2) and GF(3)") {
  std::mt19937 g(11);
  for (std::uint32_t p : {2u, 3u}) {
    PF f(p);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t r = 1 + g() % 3, c = 1 + g() % 3;
      const auto m = random_matrix(f, g, r, c);
      std::set<Vec> ker, img;
      for (const auto& v : all_vectors(p, c)) {
        const auto mv = m.apply(v);
        if (mv == Vec(r, 0)) ker.insert(v);
        img.insert(mv);
      }
      const auto k = kernel(m);
      const auto i = image(m);
      CHECK(members(k, p) == ker);
      CHECK(members(i, p) == img);
      CHECK(k.dim() + i.dim() == c);
      CHECK(rref(rref(m).reduced).reduced == rref(m).reduced);

      const auto a = image(random_matrix(f, g, c, 1 + g() % 3));
      const auto b = image(random_matrix(f, g, c, 1 + g() % 3));
      std::set<Vec> both;
      for (const auto& v : members(a, p))
        if (b.contains(v)) both.insert(v);
      CHECK(members(intersect(a, b), p) == both);
      CHECK(sum(a, b).dim() + intersect(a, b).dim() == a.dim() + b.dim());
    }
  }
}

TEST_CASE("canonical form does not depend on the spanning set") {
  PF f(101);
  std::mt19937 g(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto basis = random_matrix(f, g, 3, 7);
    const auto mix = random_matrix(f, g, 5, 3);
    CHECK(Subspace<PF>::span(basis) == Subspace<PF>::span(mix * basis));
  }
}

TEST_CASE("rational field rref") {
  RationalField q;
  Matrix<RationalField> m(q, 2, 2, {mpq_class(2), mpq_class(1, 3), mpq_class(4), mpq_class(2, 3)});
  auto e = rref(m);
  CHECK(e.rank() == 1);
  CHECK(e.reduced(0, 1) == mpq_class(1, 6));
}

TEST_CASE("induced map on quotients") {
  PF f2(2);
  SUBCASE("identity with no boundaries is the identity on cycles") {
    auto z = Subspace<PF>::span(mat(f2, 2, 3, {1, 0, 1, 0, 1, 0}));
    QuotientSpace<PF> q{z, Subspace<PF>::zero(f2, 3)};
    CHECK(induced_map_on_quotients(Matrix<PF>::identity(f2, 3), q, q) == Matrix<PF>::identity(f2, 2));
  }
  SUBCASE("a map into the boundaries induces zero") {
    QuotientSpace<PF> src{Subspace<PF>::full(f2, 2), Subspace<PF>::zero(f2, 2)};
    auto b = Subspace<PF>::span(mat(f2, 1, 2, {1, 1}));
    QuotientSpace<PF> dst{Subspace<PF>::full(f2, 2), b};
    CHECK(induced_map_on_quotients(mat(f2, 2, 2, {1, 0, 1, 0}), src, dst).is_zero());
  }
  SUBCASE("dim Z = 2, dim B = 1 against coset enumeration") {
    // Z = span{e1, e2}, B = span{e1 + e2} in GF(2)^3; m swaps e2 and e3 and
    // fixes e1 on Z' = span{e1, e3}, B' = span{e1 + e3}.
    auto z = Subspace<PF>::span(mat(f2, 2, 3, {1, 0, 0, 0, 1, 0}));
    auto b = Subspace<PF>::span(mat(f2, 1, 3, {1, 1, 0}));
    auto z2 = Subspace<PF>::span(mat(f2, 2, 3, {1, 0, 0, 0, 0, 1}));
    auto b2 = Subspace<PF>::span(mat(f2, 1, 3, {1, 0, 1}));
    auto m = mat(f2, 3, 3, {1, 0, 0, 0, 0, 1, 0, 1, 0});
    auto u = induced_map_on_quotients(m, {z, b}, {z2, b2});
    REQUIRE(u.rows() == 1);
    REQUIRE(u.cols() == 1);
    // Oracle: the nonzero coset of Z/B goes to a vector outside B' iff the
    // induced map is nonzero.
    bool nonzero = false;
    for (const auto& v : members(z, 2))
      if (!b.contains(v) && !b2.contains(m.apply(v))) nonzero = true;
    CHECK((u(0, 0) != 0) == nonzero);
    CHECK(nonzero);
  }
  SUBCASE("a map that does not respect cycles is a logic failure") {
    QuotientSpace<PF> src{Subspace<PF>::full(f2, 2), Subspace<PF>::zero(f2, 2)};
    QuotientSpace<PF> dst{Subspace<PF>::span(mat(f2, 1, 2, {1, 0})), Subspace<PF>::zero(f2, 2)};
    CHECK_THROWS_AS(induced_map_on_quotients(Matrix<PF>::identity(f2, 2), src, dst), LogicFailure);
  }
}
