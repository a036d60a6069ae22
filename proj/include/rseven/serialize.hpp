#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rseven/even_algebra.hpp"

// Flat record shared by even functions, spectra and McCarthy coefficients:
//   {"r": 6, "s": 1, "entries": [{"divisor": 1, "numerator": 1, "denominator": 1}, ...]}
// CSV form: header "divisor,numerator,denominator", one row per divisor.

namespace rseven {

using json = nlohmann::json;

/// JSON number when the value fits in 64 bits, decimal string otherwise.
inline json json_integer(const Integer& z) {
  if (fits_i64(z)) return json(z.get_si());
  return json(z.get_str());
}

namespace detail {

inline Integer integer_field(const json& node, const std::string& where) {
  if (node.is_number_integer()) {
    return node.is_number_unsigned() ? to_integer(node.get<std::uint64_t>())
                                     : Integer(node.get<long>());
  }
  if (node.is_string()) {
    try {
      return parse_integer(node.get<std::string>());
    } catch (const DomainError& e) {
      throw DomainError(where + ": " + e.what());
    }
  }
  throw DomainError(where + ": expected an integer, got " + std::string(node.type_name()));
}

inline std::uint64_t positive_field(const json& node, const std::string& where) {
  Integer v = integer_field(node, where);
  if (sgn(v) <= 0) throw DomainError(where + ": must be positive, got " + v.get_str());
  if (!fits_u64(v)) throw CapacityError(where + ": value too large");
  return to_u64(v);
}

template <class Tag>
DivisorTable<Tag> assemble(std::uint64_t r_value, unsigned s,
                           const std::vector<std::pair<std::uint64_t, Rational>>& rows,
                           const std::vector<std::string>& where) {
  auto domain = even_domain(factor(to_integer(r_value)), s);
  std::vector<Rational> values(domain->size());
  std::vector<bool> seen(domain->size(), false);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto [d, q] = rows[i];
    if (r_value % d != 0) {
      throw DomainError(where[i] + ": " + std::to_string(d) + " does not divide r = " +
                        std::to_string(r_value));
    }
    const std::size_t k = domain->index_of(d);
    if (seen[k]) throw DomainError(where[i] + ": duplicate divisor " + std::to_string(d));
    seen[k] = true;
    values[k] = q;
  }
  for (std::size_t k = 0; k < seen.size(); ++k) {
    if (!seen[k]) {
      throw DomainError("missing entry for divisor " +
                        std::to_string(domain->divisors()[k].value()) + " of r = " +
                        std::to_string(r_value));
    }
  }
  return {domain, std::move(values)};
}

}  // namespace detail

template <class Tag>
json to_json(const DivisorTable<Tag>& table) {
  json entries = json::array();
  const auto& dom = *table.domain();
  for (std::size_t i = 0; i < dom.size(); ++i) {
    entries.push_back({{"divisor", dom.divisors()[i].value()},
                       {"numerator", json_integer(table[i].get_num())},
                       {"denominator", json_integer(table[i].get_den())}});
  }
  return {{"r", dom.r().value()}, {"s", dom.s()}, {"entries", std::move(entries)}};
}

template <class Tag>
DivisorTable<Tag> table_from_json(const json& doc) {
  if (!doc.is_object()) throw DomainError("top level: expected an object");
  for (const char* key : {"r", "s", "entries"}) {
    if (!doc.contains(key)) throw DomainError(std::string("missing field '") + key + "'");
  }
  const std::uint64_t r = detail::positive_field(doc["r"], "field 'r'");
  const std::uint64_t s = detail::positive_field(doc["s"], "field 's'");
  if (s > 64) throw CapacityError("field 's': exponent too large");
  const json& entries = doc["entries"];
  if (!entries.is_array()) throw DomainError("field 'entries': expected an array");
  std::vector<std::pair<std::uint64_t, Rational>> rows;
  std::vector<std::string> where;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string at = "entries[" + std::to_string(i) + "]";
    const json& e = entries[i];
    if (!e.is_object()) throw DomainError(at + ": expected an object");
    for (const char* key : {"divisor", "numerator", "denominator"}) {
      if (!e.contains(key)) throw DomainError(at + ": missing field '" + key + "'");
    }
    const std::uint64_t d = detail::positive_field(e["divisor"], at + ".divisor");
    const Integer num = detail::integer_field(e["numerator"], at + ".numerator");
    const Integer den = detail::integer_field(e["denominator"], at + ".denominator");
    if (sgn(den) <= 0) throw DomainError(at + ".denominator: must be positive");
    rows.emplace_back(d, make_rational(num, den));
    where.push_back(at);
  }
  return detail::assemble<Tag>(r, static_cast<unsigned>(s), rows, where);
}

template <class Tag>
DivisorTable<Tag> parse_table_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
  return table_from_json<Tag>(doc);
}

template <class Tag>
std::string to_csv(const DivisorTable<Tag>& table) {
  std::ostringstream out;
  out << "divisor,numerator,denominator\n";
  const auto& dom = *table.domain();
  for (std::size_t i = 0; i < dom.size(); ++i) {
    out << dom.divisors()[i].value() << ',' << table[i].get_num().get_str() << ','
        << table[i].get_den().get_str() << '\n';
  }
  return out.str();
}

/// CSV rows carry no (r, s); r is the largest divisor listed and s is given.
template <class Tag>
DivisorTable<Tag> parse_table_csv(std::string_view text, unsigned s) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::pair<std::uint64_t, Rational>> rows;
  std::vector<std::string> where;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line_no == 1 && line.rfind("divisor", 0) == 0) {
      if (line != "divisor,numerator,denominator") {
        throw DomainError("line 1: expected header divisor,numerator,denominator");
      }
      continue;
    }
    const std::string at = "line " + std::to_string(line_no);
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 3) {
      throw DomainError(at + ": expected 3 columns, got " + std::to_string(cells.size()));
    }
    Integer d, num, den;
    try {
      d = parse_integer(cells[0]);
      num = parse_integer(cells[1]);
      den = parse_integer(cells[2]);
    } catch (const DomainError& e) {
      throw DomainError(at + ": " + e.what());
    }
    if (sgn(d) <= 0) throw DomainError(at + ": divisor must be positive");
    if (sgn(den) <= 0) throw DomainError(at + ": denominator must be positive");
    if (!fits_u64(d)) throw CapacityError(at + ": divisor too large");
    rows.emplace_back(to_u64(d), make_rational(num, den));
    where.push_back(at);
  }
  if (rows.empty()) throw DomainError("CSV input has no rows");
  std::uint64_t r = 0;
  for (const auto& [d, q] : rows) r = std::max(r, d);
  return detail::assemble<Tag>(r, s, rows, where);
}

}  // namespace rseven
