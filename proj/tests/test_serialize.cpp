#include <gtest/gtest.h>

#include <random>

#include "rseven/sampling.hpp"
#include "rseven/serialize.hpp"

using namespace rseven;

TEST(Json, RoundTrip) {
  std::mt19937_64 rng(12);
  for (unsigned s = 1; s <= 3; ++s) {
    for (std::uint64_t r = 1; r <= 40; ++r) {
      const EvenFunction f = random_even_function(factor(r), s, rng);
      ASSERT_EQ(parse_table_json<FunctionTag>(to_json(f).dump()), f);
      ASSERT_EQ(parse_table_csv<FunctionTag>(to_csv(f), s), f);
    }
  }
}

TEST(Json, HugeValuesTravelAsStrings) {
  const Rational big(pow(Integer(10), 30) + 1, 7);
  const EvenFunction f = constant_function(factor(2), 1, big);
  const json doc = to_json(f);
  EXPECT_TRUE(doc["entries"][0]["numerator"].is_string());
  EXPECT_TRUE(doc["entries"][0]["denominator"].is_number_integer());
  EXPECT_EQ(table_from_json<FunctionTag>(doc), f);
}

TEST(Json, ParsesHandwrittenRecord) {
  const auto f = parse_table_json<FunctionTag>(R"({"r": 2, "s": 1, "entries": [
      {"divisor": 2, "numerator": 0, "denominator": 1},
      {"divisor": 1, "numerator": "2", "denominator": 4}]})");
  EXPECT_EQ(f.at_divisor(1), Rational(1, 2));
  EXPECT_EQ(f.at_divisor(2), 0);
}

TEST(Json, Diagnostics) {
  auto message = [](const std::string& text) {
    try {
      parse_table_json<FunctionTag>(text);
    } catch (const DomainError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("{").find("malformed"), std::string::npos);
  EXPECT_NE(message(R"({"r": 2, "s": 1})").find("entries"), std::string::npos);
  EXPECT_NE(message(R"({"r": 2, "s": 1, "entries": [{"divisor": 1, "numerator": 1,
      "denominator": 1}]})").find("missing entry for divisor 2"), std::string::npos);
  EXPECT_NE(message(R"({"r": 2, "s": 1, "entries": [
      {"divisor": 1, "numerator": 1, "denominator": 1},
      {"divisor": 3, "numerator": 1, "denominator": 1}]})").find("entries[1]"),
            std::string::npos);
  EXPECT_NE(message(R"({"r": 2, "s": 1, "entries": [
      {"divisor": 1, "numerator": 1, "denominator": 0},
      {"divisor": 2, "numerator": 1, "denominator": 1}]})").find("entries[0].denominator"),
            std::string::npos);
  EXPECT_NE(message(R"({"r": 2, "s": 1, "entries": [
      {"divisor": 1, "numerator": 1, "denominator": 1},
      {"divisor": 1, "numerator": 1, "denominator": 1}]})").find("duplicate"),
            std::string::npos);
  EXPECT_NE(message(R"({"r": 0, "s": 1, "entries": []})").find("field 'r'"), std::string::npos);
}

TEST(Csv, Diagnostics) {
  EXPECT_THROW(parse_table_csv<FunctionTag>("divisor,numerator,denominator\n", 1), DomainError);
  try {
    parse_table_csv<FunctionTag>("divisor,numerator,denominator\n1,1,1\n2,x,1\n", 1);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse_table_csv<FunctionTag>("1,1\n", 1), DomainError);
  EXPECT_THROW(parse_table_csv<FunctionTag>("1,1,1\n4,1,1\n", 1), DomainError);
  EXPECT_EQ(parse_table_csv<FunctionTag>("1,1,1\r\n2,-3,2\r\n", 2).at_divisor(2), Rational(-3, 2));
}
