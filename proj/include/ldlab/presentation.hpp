#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ldlab/algebra.hpp"
#include "ldlab/field.hpp"
#include "ldlab/polynomial.hpp"

namespace ldlab {

// k[x_1..x_n]/(f_1..f_s) as read from a presentation file.
struct RingPresentation {
  FieldSpec field;
  std::vector<std::string> variables;
  std::vector<RawPolynomial> generators;

  // Presentation-file text that parses back to this presentation.
  std::string to_text() const;
};

// File format, one directive per line ('#' starts a comment):
//   char <p>                    0 for the rationals; optional, default 101
//   vars <name> <name> ...
//   ideal <poly>, <poly>, ...   may be repeated; generators accumulate
// Polynomials are sums of terms joined by + and -, each term a product of
// integer (or a/b) coefficients and powers name^e joined by *.
// Throws ParseError with line and column.
RingPresentation parse_presentation(std::string_view text);

std::string format_raw(const RawPolynomial& p, const std::vector<std::string>& names);

// Multiplication table of k[x]/I on its standard monomials, before the
// switch to the adapted basis. Labels are the monomials; the m generators
// are the normal forms of the variables.
template <ExactField F>
StructureTable<F> presentation_table(const RingPresentation& p, const F& field, const BuchbergerOptions& opts = {}) {
  if (!(field.spec() == p.field)) throw InvalidInput("field does not match the presentation's characteristic");
  const std::size_t n = p.variables.size();
  PolyRing<F> ring(field, n, opts.order);
  std::vector<Polynomial<F>> gens;
  for (const auto& g : p.generators) gens.push_back(ring.from_raw(g));
  const auto gb = buchberger(ring, std::move(gens), opts.max_pairs);
  const auto basis = quotient_basis(ring, gb);
  if (basis.empty()) throw InvalidInput("the ideal contains 1; the quotient ring is zero");
  const std::size_t d = basis.size();
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < d; ++i) index.emplace(basis[i], i);

  auto coordinates = [&](const Polynomial<F>& poly) {
    std::vector<typename F::Element> v(d, field.zero());
    for (const auto& t : poly.terms) v[index.at(t.monomial)] = t.coeff;
    return v;
  };

  StructureTable<F> t{field, d, {}, {}, {}, std::vector<typename F::Element>(d * d * d, field.zero())};
  for (const auto& m : basis) t.labels.push_back(m.format(p.variables));
  t.unit = coordinates(ring.constant(field.one()));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      const auto v = coordinates(ring.normal_form(ring.monomial(basis[i] * basis[j]), gb));
      std::copy(v.begin(), v.end(), t.products.begin() + (i * d + j) * d);
      std::copy(v.begin(), v.end(), t.products.begin() + (j * d + i) * d);
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    const auto nf = ring.normal_form(ring.variable(x), gb);
    // Locality: the class of every variable must be nilpotent.
    auto power = nf;
    std::size_t steps = 0;
    while (!power.is_zero()) {
      if (++steps > d) {
        throw InvalidInput("variable " + p.variables[x] +
                           " is not nilpotent in the quotient; the ring is not local at the origin");
      }
      power = ring.normal_form(ring.mul(power, nf), gb);
    }
    t.m_generators.push_back(coordinates(nf));
  }
  return t;
}

// The finite local algebra k[x]/I with m = (x_1..x_n).
template <ExactField F>
std::shared_ptr<const FiniteLocalAlgebra<F>> build_algebra(const RingPresentation& p, const F& field,
                                                          const BuchbergerOptions& opts = {}) {
  return FiniteLocalAlgebra<F>::create(presentation_table(p, field, opts), /*validate=*/false);
}

}  // namespace ldlab
