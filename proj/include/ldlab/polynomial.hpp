#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ldlab/errors.hpp"
#include "ldlab/field.hpp"

namespace ldlab {

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t nvars, std::size_t i, std::uint32_t power = 1) {
    Monomial m(nvars);
    m.exps_[i] = power;
    return m;
  }

  std::size_t nvars() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (auto e : exps_) d += e;
    return d;
  }
  bool is_one() const { return degree() == 0; }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }
  bool coprime(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] != 0 && other.exps_[i] != 0) return false;
    return true;
  }
  // If exactly one variable occurs, its index; otherwise -1.
  int pure_power_variable() const {
    int var = -1;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] == 0) continue;
      if (var >= 0) return -1;
      var = static_cast<int>(i);
    }
    return var;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m(a.nvars());
    for (std::size_t i = 0; i < a.exps_.size(); ++i) m.exps_[i] = a.exps_[i] + b.exps_[i];
    return m;
  }
  // a / b; b must divide a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m(a.nvars());
    for (std::size_t i = 0; i < a.exps_.size(); ++i) m.exps_[i] = a.exps_[i] - b.exps_[i];
    return m;
  }
  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m(a.nvars());
    for (std::size_t i = 0; i < a.exps_.size(); ++i) m.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    return m;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  // Lexicographic on exponent vectors; only for use as a map key.
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps_ < b.exps_; }

  std::string format(const std::vector<std::string>& names) const;

 private:
  std::vector<std::uint32_t> exps_;
};

enum class MonomialOrder { kDegRevLex, kDegLex, kLex };

MonomialOrder parse_monomial_order(const std::string& name);
std::string to_string(MonomialOrder order);

// Three-way comparison of monomials under order (greater = leading).
std::strong_ordering compare(MonomialOrder order, const Monomial& a, const Monomial& b);

// Exact-rational polynomial as written in a presentation file, before a
// field is chosen.
struct RawPolynomial {
  std::vector<std::pair<Monomial, mpq_class>> terms;
};

template <ExactField F>
struct Term {
  Monomial monomial;
  typename F::Element coeff;
};

// Terms sorted strictly decreasing in the ring's order, no zero coefficients.
template <ExactField F>
struct Polynomial {
  std::vector<Term<F>> terms;

  bool is_zero() const { return terms.empty(); }
  const Term<F>& leading() const { return terms.front(); }
};

// Arithmetic context: coefficient field, variable count, monomial order.
template <ExactField F>
class PolyRing {
 public:
  using Element = typename F::Element;
  using Poly = Polynomial<F>;

  PolyRing(F field, std::size_t nvars, MonomialOrder order = MonomialOrder::kDegRevLex)
      : field_(std::move(field)), nvars_(nvars), order_(order) {}

  const F& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  MonomialOrder order() const { return order_; }

  std::strong_ordering cmp(const Monomial& a, const Monomial& b) const { return compare(order_, a, b); }

  Poly constant(const Element& c) const {
    Poly p;
    if (!field_.is_zero(c)) p.terms.push_back({Monomial(nvars_), c});
    return p;
  }
  Poly variable(std::size_t i) const { return {{{Monomial::variable(nvars_, i), field_.one()}}}; }
  Poly monomial(const Monomial& m) const { return {{{m, field_.one()}}}; }

  // Sorts and merges arbitrary terms.
  Poly normalize(std::vector<Term<F>> terms) const {
    std::sort(terms.begin(), terms.end(),
              [&](const Term<F>& a, const Term<F>& b) { return cmp(a.monomial, b.monomial) > 0; });
    Poly out;
    for (auto& t : terms) {
      if (!out.terms.empty() && out.terms.back().monomial == t.monomial) {
        out.terms.back().coeff = field_.add(out.terms.back().coeff, t.coeff);
        if (field_.is_zero(out.terms.back().coeff)) out.terms.pop_back();
      } else if (!field_.is_zero(t.coeff)) {
        out.terms.push_back(std::move(t));
      }
    }
    return out;
  }

  Poly from_raw(const RawPolynomial& raw) const {
    std::vector<Term<F>> terms;
    for (const auto& [m, c] : raw.terms) {
      if (m.nvars() != nvars_) throw InvalidInput("polynomial has the wrong number of variables");
      terms.push_back({m, field_.from_rational(c)});
    }
    return normalize(std::move(terms));
  }

  // a + c * mono * b, merged in one pass.
  Poly add_scaled(const Poly& a, const Element& c, const Monomial& mono, const Poly& b) const {
    Poly out;
    out.terms.reserve(a.terms.size() + b.terms.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
      if (j == b.terms.size()) {
        out.terms.push_back(a.terms[i++]);
        continue;
      }
      Monomial bm = b.terms[j].monomial * mono;
      if (i == a.terms.size()) {
        out.terms.push_back({std::move(bm), field_.mul(c, b.terms[j].coeff)});
        ++j;
        continue;
      }
      const auto ord = cmp(a.terms[i].monomial, bm);
      if (ord > 0) {
        out.terms.push_back(a.terms[i++]);
      } else if (ord < 0) {
        out.terms.push_back({std::move(bm), field_.mul(c, b.terms[j].coeff)});
        ++j;
      } else {
        auto s = field_.add(a.terms[i].coeff, field_.mul(c, b.terms[j].coeff));
        if (!field_.is_zero(s)) out.terms.push_back({std::move(bm), std::move(s)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  Poly add(const Poly& a, const Poly& b) const { return add_scaled(a, field_.one(), Monomial(nvars_), b); }
  Poly sub(const Poly& a, const Poly& b) const {
    return add_scaled(a, field_.neg(field_.one()), Monomial(nvars_), b);
  }
  Poly scale(const Poly& a, const Element& c) const {
    if (field_.is_zero(c)) return {};
    Poly out = a;
    for (auto& t : out.terms) t.coeff = field_.mul(t.coeff, c);
    return out;
  }
  Poly mul(const Poly& a, const Poly& b) const {
    Poly out;
    for (const auto& t : b.terms) out = add_scaled(out, t.coeff, t.monomial, a);
    return out;
  }
  Poly monic(const Poly& a) const {
    if (a.is_zero()) return a;
    return scale(a, field_.inv(a.leading().coeff));
  }

  // Full reduction of p modulo the list (every term, not only the lead).
  Poly normal_form(Poly p, const std::vector<Poly>& basis) const {
    Poly remainder;
    while (!p.is_zero()) {
      const Term<F>& lead = p.leading();
      const Poly* divisor = nullptr;
      for (const auto& g : basis) {
        if (g.leading().monomial.divides(lead.monomial)) {
          divisor = &g;
          break;
        }
      }
      if (divisor == nullptr) {
        remainder.terms.push_back(lead);
        p.terms.erase(p.terms.begin());
        continue;
      }
      const auto c = field_.neg(field_.div(lead.coeff, divisor->leading().coeff));
      const Monomial q = lead.monomial / divisor->leading().monomial;
      p = add_scaled(p, c, q, *divisor);
    }
    return remainder;
  }

  Poly s_polynomial(const Poly& f, const Poly& g) const {
    const Monomial l = lcm(f.leading().monomial, g.leading().monomial);
    const Poly a = scale(f, field_.inv(f.leading().coeff));
    const Poly b = scale(g, field_.inv(g.leading().coeff));
    Poly s = add_scaled({}, field_.one(), l / a.leading().monomial, a);
    return add_scaled(s, field_.neg(field_.one()), l / b.leading().monomial, b);
  }

  std::string format(const Poly& p, const std::vector<std::string>& names) const;

 private:
  F field_;
  std::size_t nvars_;
  MonomialOrder order_;
};

template <ExactField F>
std::string PolyRing<F>::format(const Poly& p, const std::vector<std::string>& names) const {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& t : p.terms) {
    std::string c = field_.format(t.coeff);
    const bool negative = !c.empty() && c[0] == '-';
    if (negative) c.erase(0, 1);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (t.monomial.is_one()) {
      out += c;
    } else {
      if (c != "1") out += c + "*";
      out += t.monomial.format(names);
    }
  }
  return out;
}

struct BuchbergerOptions {
  MonomialOrder order = MonomialOrder::kDegRevLex;
  std::size_t max_pairs = 200000;
};

// Reduced Groebner basis: monic, leading terms minimal and not dividing any
// term of another element, sorted by decreasing leading monomial. Uses the
// coprime-leading-terms criterion only. The zero ideal gives an empty basis,
// the unit ideal gives {1}.
template <ExactField F>
std::vector<Polynomial<F>> buchberger(const PolyRing<F>& ring, std::vector<Polynomial<F>> generators,
                                      std::size_t max_pairs) {
  using Poly = Polynomial<F>;
  std::vector<Poly> gb;
  for (auto& g : generators) {
    if (!g.is_zero()) gb.push_back(ring.monic(g));
  }
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Pair> pairs;
  for (std::size_t j = 0; j < gb.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.push_back({i, j, lcm(gb[i].leading().monomial, gb[j].leading().monomial)});

  std::size_t processed = 0;
  while (!pairs.empty()) {
    // Normal selection strategy: smallest lcm first, ties by creation order.
    auto best = pairs.begin();
    for (auto it = pairs.begin(); it != pairs.end(); ++it)
      if (ring.cmp(it->lcm, best->lcm) < 0) best = it;
    const Pair pair = *best;
    pairs.erase(best);
    if (++processed > max_pairs) {
      throw ResourceLimit("Buchberger pair limit of " + std::to_string(max_pairs) + " exceeded");
    }
    const Poly& f = gb[pair.i];
    const Poly& g = gb[pair.j];
    if (f.leading().monomial.coprime(g.leading().monomial)) continue;
    Poly r = ring.normal_form(ring.s_polynomial(f, g), gb);
    if (r.is_zero()) continue;
    r = ring.monic(r);
    const std::size_t k = gb.size();
    for (std::size_t i = 0; i < k; ++i) pairs.push_back({i, k, lcm(gb[i].leading().monomial, r.leading().monomial)});
    gb.push_back(std::move(r));
  }

  // Minimalize, then interreduce.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < gb.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < gb.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& mi = gb[i].leading().monomial;
      const auto& mj = gb[j].leading().monomial;
      if (mj.divides(mi) && (mj != mi || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(gb[i]);
  }
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    const Term<F> lead = minimal[i].leading();
    Poly tail;
    tail.terms.assign(minimal[i].terms.begin() + 1, minimal[i].terms.end());
    Poly r = ring.normal_form(std::move(tail), others);
    r.terms.insert(r.terms.begin(), lead);
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
    return ring.cmp(a.leading().monomial, b.leading().monomial) > 0;
  });
  return reduced;
}

// Standard monomials of a zero-dimensional ideal given by its Groebner
// basis, sorted by total degree and then decreasing in the order. Throws
// InvalidInput if some variable has no pure power among the leading terms
// (the quotient is then infinite-dimensional).
template <ExactField F>
std::vector<Monomial> quotient_basis(const PolyRing<F>& ring, const std::vector<Polynomial<F>>& gb) {
  const std::size_t n = ring.nvars();
  std::vector<std::uint32_t> bound(n, 0);  // 0 = no pure power seen
  std::vector<Monomial> leads;
  for (const auto& g : gb) {
    const Monomial& m = g.leading().monomial;
    leads.push_back(m);
    if (m.is_one()) return {};
    const int v = m.pure_power_variable();
    if (v >= 0 && (bound[v] == 0 || m[v] < bound[v])) bound[v] = m[v];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (bound[i] == 0) throw InvalidInput("quotient not Artinian: no power of variable " + std::to_string(i) + " lies in the initial ideal");
  }
  std::vector<Monomial> out;
  std::vector<Monomial> frontier{Monomial(n)};
  while (!frontier.empty()) {
    std::vector<Monomial> kept;
    for (auto& m : frontier) {
      bool standard = true;
      for (const auto& l : leads)
        if (l.divides(m)) standard = false;
      if (standard) kept.push_back(m);
    }
    std::sort(kept.begin(), kept.end(), [&](const Monomial& a, const Monomial& b) { return ring.cmp(a, b) > 0; });
    out.insert(out.end(), kept.begin(), kept.end());
    // Next degree: standard monomials are closed under division, so it is
    // enough to extend the standard ones of this degree.
    std::vector<Monomial> next;
    for (const auto& m : kept) {
      for (std::size_t i = 0; i < n; ++i) {
        Monomial up = m * Monomial::variable(n, i);
        if (std::find(next.begin(), next.end(), up) == next.end()) next.push_back(std::move(up));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace ldlab
