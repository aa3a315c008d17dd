#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "json.hpp"
#include "ldlab/algebra.hpp"

namespace ldlab {

// Structure-constant file:
//   {"char": p, "dim": d, "basis": [labels], "unit": index,
//    "m_generators": [indices], "table": [[ [coeffs of e_i e_j] ]]}
// Coefficients are integers or "a/b" strings. "unit" and entries of
// "m_generators" may also be full coefficient vectors.

FieldSpec table_field(const nlohmann::json& doc);
mpq_class parse_coefficient(const nlohmann::json& value);
nlohmann::json parse_table_document(std::string_view text);

template <ExactField F>
nlohmann::json coefficient_to_json(const F& field, const typename F::Element& c) {
  if constexpr (std::is_same_v<F, PrimeField>) {
    return field.lift(c);
  } else {
    if (c.get_den() == 1 && c.get_num().fits_slong_p()) return c.get_num().get_si();
    return c.get_str();
  }
}

template <ExactField F>
StructureTable<F> table_from_json(const nlohmann::json& doc, const F& field) {
  using Element = typename F::Element;
  if (!(table_field(doc) == field.spec())) throw InvalidInput("table characteristic does not match the field");
  StructureTable<F> t{field, 0, {}, {}, {}, {}};
  try {
    t.dim = doc.at("dim").get<std::size_t>();
    const std::size_t d = t.dim;
    if (d == 0) throw InvalidInput("dim must be positive");
    if (doc.contains("basis")) {
      t.labels = doc.at("basis").get<std::vector<std::string>>();
      if (t.labels.size() != d) throw InvalidInput("basis label count differs from dim");
    } else {
      for (std::size_t i = 0; i < d; ++i) t.labels.push_back("e" + std::to_string(i));
    }
    auto vector_or_index = [&](const nlohmann::json& v, const char* what) {
      std::vector<Element> out(d, field.zero());
      if (v.is_number_integer()) {
        const auto i = v.get<long long>();
        if (i < 0 || static_cast<std::size_t>(i) >= d) throw InvalidInput(std::string(what) + " index out of range");
        out[i] = field.one();
      } else {
        if (!v.is_array() || v.size() != d) throw InvalidInput(std::string(what) + " must be an index or a length-dim vector");
        for (std::size_t k = 0; k < d; ++k) out[k] = field.from_rational(parse_coefficient(v[k]));
      }
      return out;
    };
    t.unit = vector_or_index(doc.at("unit"), "unit");
    for (const auto& g : doc.at("m_generators")) t.m_generators.push_back(vector_or_index(g, "m generator"));
    const auto& table = doc.at("table");
    if (!table.is_array() || table.size() != d) throw InvalidInput("table must have dim rows");
    t.products.assign(d * d * d, field.zero());
    for (std::size_t i = 0; i < d; ++i) {
      if (!table[i].is_array() || table[i].size() != d) throw InvalidInput("table row " + std::to_string(i) + " must have dim entries");
      for (std::size_t j = 0; j < d; ++j) {
        const auto& cell = table[i][j];
        if (!cell.is_array() || cell.size() != d) {
          throw InvalidInput("table entry (" + std::to_string(i) + ", " + std::to_string(j) + ") must be a length-dim vector");
        }
        for (std::size_t k = 0; k < d; ++k) t.products[(i * d + j) * d + k] = field.from_rational(parse_coefficient(cell[k]));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed structure table: ") + e.what());
  }
  return t;
}

template <ExactField F>
nlohmann::json table_to_json(const StructureTable<F>& t) {
  const F& f = t.field;
  const std::size_t d = t.dim;
  auto vector_json = [&](const std::vector<typename F::Element>& v) -> nlohmann::json {
    std::size_t ones = 0, pos = 0;
    bool other = false;
    for (std::size_t k = 0; k < d; ++k) {
      if (f.is_zero(v[k])) continue;
      if (f.is_one(v[k])) {
        ++ones;
        pos = k;
      } else {
        other = true;
      }
    }
    if (ones == 1 && !other) return pos;
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : v) a.push_back(coefficient_to_json(f, c));
    return a;
  };
  nlohmann::json doc;
  doc["char"] = f.characteristic();
  doc["dim"] = d;
  doc["basis"] = t.labels;
  doc["unit"] = vector_json(t.unit);
  doc["m_generators"] = nlohmann::json::array();
  for (const auto& g : t.m_generators) doc["m_generators"].push_back(vector_json(g));
  nlohmann::json table = nlohmann::json::array();
  for (std::size_t i = 0; i < d; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < d; ++j) {
      nlohmann::json cell = nlohmann::json::array();
      for (auto c : t.product(i, j)) cell.push_back(coefficient_to_json(f, c));
      row.push_back(std::move(cell));
    }
    table.push_back(std::move(row));
  }
  doc["table"] = std::move(table);
  return doc;
}

// Parses and validates (associativity, commutativity, unit, nilpotent m).
template <ExactField F>
std::shared_ptr<const FiniteLocalAlgebra<F>> load_structure_constants(const nlohmann::json& doc, const F& field) {
  return FiniteLocalAlgebra<F>::create(table_from_json(doc, field), /*validate=*/true);
}

}  // namespace ldlab
