#include "ldlab/polynomial.hpp"

namespace ldlab {

std::string Monomial::format(const std::vector<std::string>& names) const {
  std::string out;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += i < names.size() ? names[i] : "x" + std::to_string(i);
    if (exps_[i] > 1) out += "^" + std::to_string(exps_[i]);
  }
  return out.empty() ? "1" : out;
}

MonomialOrder parse_monomial_order(const std::string& name) {
  if (name == "degrevlex" || name == "grevlex") return MonomialOrder::kDegRevLex;
  if (name == "deglex" || name == "glex") return MonomialOrder::kDegLex;
  if (name == "lex") return MonomialOrder::kLex;
  throw InvalidInput("unknown monomial order '" + name + "'");
}

std::string to_string(MonomialOrder order) {
  switch (order) {
    case MonomialOrder::kDegRevLex: return "degrevlex";
    case MonomialOrder::kDegLex: return "deglex";
    case MonomialOrder::kLex: return "lex";
  }
  return "?";
}

std::strong_ordering compare(MonomialOrder order, const Monomial& a, const Monomial& b) {
  const std::size_t n = a.nvars();
  if (order != MonomialOrder::kLex) {
    const auto da = a.degree(), db = b.degree();
    if (da != db) return da <=> db;
  }
  if (order == MonomialOrder::kDegRevLex) {
    // Larger when the last differing exponent is smaller.
    for (std::size_t k = n; k-- > 0;) {
      if (a[k] != b[k]) return b[k] <=> a[k];
    }
    return std::strong_ordering::equal;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k] != b[k]) return a[k] <=> b[k];
  }
  return std::strong_ordering::equal;
}

}  // namespace ldlab
