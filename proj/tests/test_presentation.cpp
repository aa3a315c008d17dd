#include <random>

#include "doctest.h"
#include "ldlab/presentation.hpp"
#include "ldlab/structure_table.hpp"

using namespace ldlab;

namespace {

using PF = PrimeField;
const PF k101(101);

Polynomial<PF> poly(const PolyRing<PF>& ring, const std::string& text, const std::vector<std::string>& vars) {
  std::string src = "vars";
  for (const auto& v : vars) src += " " + v;
  const auto p = parse_presentation(src + "\nideal " + text + "\n");
  return ring.from_raw(p.generators.at(0));
}

std::vector<std::string> labels(const std::string& text) {
  return build_algebra(parse_presentation(text), k101)->labels();
}

}  // namespace

TEST_CASE("parse presentations") {
  auto p = parse_presentation("char 101\nvars x\nideal x^2\n");
  CHECK(p.field == FieldSpec::prime(101));
  CHECK(p.variables == std::vector<std::string>{"x"});
  CHECK(p.generators.size() == 1);

  auto q = parse_presentation("# comment\nchar 101\nvars x y\nideal x^2, x*y, y^2\n");
  CHECK(q.generators.size() == 3);
  CHECK(parse_presentation(q.to_text()).to_text() == q.to_text());

  auto r = parse_presentation("char 0\nvars x y\nideal y - 1/2*x^2, x^3\n");
  CHECK(r.field.kind == FieldSpec::Kind::kRational);
  CHECK(r.generators[0].terms.size() == 2);
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_presentation("vars x\nideal x^2 - y\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 13);
    CHECK(std::string(e.what()).find("y") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_presentation("char 12\nvars x\nideal x^2\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("vars x\nideal x^^2\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("vars x x\nideal x\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("ideal x\n"), ParseError);
}

TEST_CASE("Buchberger examples") {
  PolyRing<PF> ring(k101, 2);
  const std::vector<std::string> xy{"x", "y"};
  SUBCASE("coprime leading terms are already a basis") {
    auto gb = buchberger(ring, {poly(ring, "x^2", xy), poly(ring, "y^2", xy)}, 1000);
    CHECK(gb.size() == 2);
    CHECK(quotient_basis(ring, gb).size() == 4);
  }
  SUBCASE("inhomogeneous ideal") {
    auto gb = buchberger(ring, {poly(ring, "y - x^2", xy), poly(ring, "x^3", xy)}, 1000);
    auto basis = quotient_basis(ring, gb);
    REQUIRE(basis.size() == 3);
    CHECK(basis[0].degree() == 0);
    CHECK(basis[1] == Monomial::variable(2, 0));
    CHECK(basis[2] == Monomial::variable(2, 1));  // y, with y = x^2 in the quotient
  }
  SUBCASE("one variable") {
    PolyRing<PF> r1(k101, 1);
    auto gb = buchberger(r1, {poly(r1, "x", {"x"})}, 1000);
    CHECK(quotient_basis(r1, gb).size() == 1);
  }
  SUBCASE("pair limit") {
    CHECK_THROWS_AS(buchberger(ring, {poly(ring, "x^2 + y", xy), poly(ring, "x*y + 1", xy)}, 1), ResourceLimit);
  }
  SUBCASE("infinite quotient") {
    auto gb = buchberger(ring, {poly(ring, "x^2", xy)}, 1000);
    CHECK_THROWS_AS(quotient_basis(ring, gb), InvalidInput);
  }
}

TEST_CASE("normal forms respect products") {
  PolyRing<PF> ring(k101, 2);
  const std::vector<std::string> xy{"x", "y"};
  auto gb = buchberger(ring, {poly(ring, "x^2 - 3*x*y", xy), poly(ring, "y^3 + x*y^2", xy), poly(ring, "x^4", xy)}, 10000);
  std::mt19937 g(2);
  auto random_poly = [&] {
    std::vector<Term<PF>> terms;
    for (std::uint32_t a = 0; a < 4; ++a)
      for (std::uint32_t b = 0; a + b < 4; ++b)
        if (g() % 2) terms.push_back({Monomial(std::vector<std::uint32_t>{a, b}), static_cast<PrimeField::Element>(1 + g() % 100)});
    return ring.normalize(std::move(terms));
  };
  for (int k = 0; k < 30; ++k) {
    const auto f = random_poly(), h = random_poly();
    const auto lhs = ring.normal_form(ring.mul(f, h), gb);
    const auto rhs = ring.normal_form(ring.mul(ring.normal_form(f, gb), ring.normal_form(h, gb)), gb);
    CHECK(ring.sub(lhs, rhs).is_zero());
  }
}

TEST_CASE("build algebra examples") {
  CHECK(labels("vars x y\nideal x^2, x*y, y^2\n").size() == 3);
  CHECK(labels("vars x y\nideal x^2, y^2\n").size() == 4);

  auto a = build_algebra(parse_presentation("vars x\nideal x^2\n"), k101);
  CHECK(a->dim() == 2);
  const auto x = a->m_generators()[0];
  CHECK(a->multiply(x, x) == std::vector<std::uint32_t>(2, 0));

  auto b = build_algebra(parse_presentation("vars x y\nideal x^2, x*y, y^2\n"), k101);
  for (const auto& u : b->m_generators())
    for (const auto& v : b->m_generators()) CHECK(b->multiply(u, v) == std::vector<std::uint32_t>(3, 0));

  auto c = build_algebra(parse_presentation("vars x y\nideal y - x^2, x^3\n"), k101);
  CHECK(c->dim() == 3);
  CHECK(c->labels() == std::vector<std::string>{"1", "x", "y"});
  const auto xc = c->m_generators()[0], yc = c->m_generators()[1];
  CHECK(c->multiply(xc, xc) == yc);

  CHECK_THROWS_AS(build_algebra(parse_presentation("vars x y\nideal x - 1 - y, y^2\n"), k101), InvalidInput);
  CHECK_THROWS_AS(build_algebra(parse_presentation("vars x\nideal x - 1\n"), k101), InvalidInput);
  CHECK_THROWS_AS(build_algebra(parse_presentation("vars x\nideal 1\n"), k101), InvalidInput);
}

TEST_CASE("structure-constant tables") {
  auto x2 = build_algebra(parse_presentation("vars x\nideal x^2\n"), k101);
  const auto doc = table_to_json(x2->original_table());
  auto back = load_structure_constants(doc, k101);
  CHECK(back->original_table().products == x2->original_table().products);
  CHECK(table_field(parse_table_document(doc.dump())) == FieldSpec::prime(101));

  // k[x]/(x^4) written by hand: e_i e_j = e_{i+j}.
  nlohmann::json t;
  t["char"] = 101;
  t["dim"] = 4;
  t["unit"] = 0;
  t["m_generators"] = {1};
  nlohmann::json table = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 4; ++j) {
      std::vector<int> v(4, 0);
      if (i + j < 4) v[i + j] = 1;
      row.push_back(v);
    }
    table.push_back(row);
  }
  t["table"] = table;
  auto x4 = load_structure_constants(t, k101);
  CHECK(x4->nilpotency_index() == 4);

  auto broken = t;
  broken["table"][1][2] = {0, 0, 0, 0};
  broken["table"][2][1] = {0, 0, 0, 0};  // x * x^2 = 0 but (x * x) * x = x^3
  CHECK_THROWS_AS(load_structure_constants(broken, k101), InvalidInput);

  auto noncommutative = t;
  noncommutative["table"][1][2] = {0, 0, 0, 2};
  CHECK_THROWS_AS(load_structure_constants(noncommutative, k101), InvalidInput);

  auto not_local = t;
  not_local["table"][1][1] = {1, 0, 0, 0};
  CHECK_THROWS_AS(load_structure_constants(not_local, k101), InvalidInput);

  CHECK_THROWS_AS(parse_table_document("{\"char\": 101,"), InvalidInput);
  auto missing = t;
  missing.erase("table");
  CHECK_THROWS_AS(load_structure_constants(missing, k101), InvalidInput);
}
