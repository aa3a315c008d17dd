#include "ldlab/structure_table.hpp"

namespace ldlab {

FieldSpec table_field(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("char") || !doc.at("char").is_number_integer()) {
    throw InvalidInput("structure table needs an integer \"char\" field");
  }
  return FieldSpec::from_characteristic(doc.at("char").get<long long>());
}

mpq_class parse_coefficient(const nlohmann::json& value) {
  if (value.is_number_integer()) return mpq_class(mpz_class(std::to_string(value.get<long long>())));
  if (value.is_string()) {
    mpq_class q;
    if (q.set_str(value.get<std::string>(), 10) != 0) {
      throw InvalidInput("bad coefficient \"" + value.get<std::string>() + "\"");
    }
    if (q.get_den() == 0) throw InvalidInput("zero denominator in coefficient");
    q.canonicalize();
    return q;
  }
  throw InvalidInput("coefficients must be integers or \"a/b\" strings");
}

nlohmann::json parse_table_document(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("structure table is not valid JSON: ") + e.what());
  }
}

}  // namespace ldlab
