#include "ldlab/presentation.hpp"

#include <cctype>
#include <optional>

namespace ldlab {
namespace {

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no, std::size_t offset,
             const std::vector<std::string>* variables)
      : line_(line), line_no_(line_no), pos_(offset), variables_(variables) {}

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_no_, pos_ + 1); }

  void skip_space() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= line_.size();
  }
  char peek() {
    skip_space();
    return pos_ < line_.size() ? line_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  std::optional<std::string> identifier() {
    skip_space();
    if (pos_ >= line_.size()) return std::nullopt;
    const char c = line_[pos_];
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_') return std::nullopt;
    const std::size_t start = pos_;
    while (pos_ < line_.size() &&
           (std::isalnum(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '_'))
      ++pos_;
    return std::string(line_.substr(start, pos_ - start));
  }

  std::optional<mpz_class> integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    if (start == pos_) return std::nullopt;
    return mpz_class(std::string(line_.substr(start, pos_ - start)));
  }

  // factor := integer ('/' integer)? | name ('^' integer)?
  void factor(mpq_class& coeff, std::vector<std::uint32_t>& exps) {
    if (auto num = integer()) {
      mpq_class q(*num);
      if (accept('/')) {
        auto den = integer();
        if (!den) fail("expected a denominator after '/'");
        if (*den == 0) fail("zero denominator");
        q = mpq_class(*num, *den);
        q.canonicalize();
      }
      coeff *= q;
      return;
    }
    const std::size_t start = pos_;
    auto name = identifier();
    if (!name) fail("expected a coefficient or a variable");
    std::size_t var = variables_->size();
    for (std::size_t i = 0; i < variables_->size(); ++i)
      if ((*variables_)[i] == *name) var = i;
    if (var == variables_->size()) {
      pos_ = start;
      fail("unknown variable " + *name);
    }
    std::uint32_t e = 1;
    if (accept('^')) {
      auto ex = integer();
      if (!ex) fail("expected an exponent after '^'");
      if (!ex->fits_uint_p() || ex->get_ui() > 1000) fail("exponent too large");
      e = static_cast<std::uint32_t>(ex->get_ui());
    }
    exps[var] += e;
  }

  RawPolynomial polynomial() {
    RawPolynomial p;
    const std::size_t n = variables_->size();
    int sign = 1;
    if (accept('-')) {
      sign = -1;
    } else {
      accept('+');
    }
    while (true) {
      mpq_class coeff(sign);
      std::vector<std::uint32_t> exps(n, 0);
      factor(coeff, exps);
      while (accept('*')) factor(coeff, exps);
      p.terms.emplace_back(Monomial(std::move(exps)), coeff);
      if (accept('+')) {
        sign = 1;
      } else if (accept('-')) {
        sign = -1;
      } else {
        break;
      }
    }
    return p;
  }

  std::size_t pos() const { return pos_; }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_;
  const std::vector<std::string>* variables_;
};

}  // namespace

RingPresentation parse_presentation(std::string_view text) {
  RingPresentation p;
  p.field = FieldSpec::prime(101);
  bool have_char = false, have_vars = false, have_ideal = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    LineParser lp(line, line_no, 0, &p.variables);
    if (lp.at_end()) continue;
    const std::size_t keyword_col = lp.pos();
    auto keyword = lp.identifier();
    if (!keyword) lp.fail("expected 'char', 'vars' or 'ideal'");
    if (*keyword == "char") {
      if (have_char) lp.fail("duplicate 'char' line");
      if (have_ideal) lp.fail("'char' must come before 'ideal'");
      auto c = lp.integer();
      if (!c) lp.fail("expected a characteristic");
      if (!c->fits_slong_p()) lp.fail("characteristic out of range");
      try {
        p.field = FieldSpec::from_characteristic(c->get_si());
      } catch (const InvalidInput& e) {
        throw ParseError(e.what(), line_no, keyword_col + 1);
      }
      if (!lp.at_end()) lp.fail("unexpected text after the characteristic");
      have_char = true;
    } else if (*keyword == "vars") {
      if (have_vars) lp.fail("duplicate 'vars' line");
      while (!lp.at_end()) {
        auto name = lp.identifier();
        if (!name) lp.fail("expected a variable name");
        for (const auto& v : p.variables)
          if (v == *name) lp.fail("duplicate variable " + *name);
        p.variables.push_back(*name);
        lp.accept(',');
      }
      if (p.variables.empty()) lp.fail("'vars' needs at least one name");
      have_vars = true;
    } else if (*keyword == "ideal") {
      if (!have_vars) lp.fail("'ideal' before 'vars'");
      if (lp.at_end()) lp.fail("'ideal' needs at least one polynomial");
      while (true) {
        p.generators.push_back(lp.polynomial());
        if (lp.at_end()) break;
        if (!lp.accept(',')) lp.fail("expected ',' between polynomials");
      }
      have_ideal = true;
    } else {
      throw ParseError("unknown directive '" + *keyword + "'", line_no, keyword_col + 1);
    }
  }
  if (!have_vars) throw ParseError("missing 'vars' line", line_no, 1);
  return p;
}

std::string format_raw(const RawPolynomial& p, const std::vector<std::string>& names) {
  std::string out;
  for (const auto& [m, c] : p.terms) {
    if (sgn(c) == 0) continue;
    mpq_class a = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    if (m.is_one()) {
      out += a.get_str();
    } else {
      if (a != 1) out += a.get_str() + "*";
      out += m.format(names);
    }
  }
  return out.empty() ? "0" : out;
}

std::string RingPresentation::to_text() const {
  std::string out = "char " + std::to_string(field.characteristic) + "\nvars";
  for (const auto& v : variables) out += " " + v;
  out += "\n";
  if (!generators.empty()) {
    out += "ideal ";
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (i > 0) out += ", ";
      out += format_raw(generators[i], variables);
    }
    out += "\n";
  }
  return out;
}

}  // namespace ldlab
