#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "fuzzyset/errors.hpp"
#include "fuzzyset/json_io.hpp"

using namespace fuzzyset;

TEST(JsonIo, NumbersUseSeventeenDigits) {
  EXPECT_EQ(format_number(0.2), "0.20000000000000001");
  EXPECT_EQ(format_number(1.0), "1");
  Json j;
  j["mu"] = 0.3;
  EXPECT_EQ(dump_json(j, -1), "{\"mu\":0.29999999999999999}");
}

TEST(JsonIo, FuzzySetRoundtrip) {
  const FuzzySet set(AtomUniverse({"x1", "x2"}), {{SetExpr::empty(), 1.0},
                                                   {parse_expr("{x1,{x2}}"), 0.1234567890123456789},
                                                   {SetExpr::braced("x2", -3), 0.7}});
  const Json j = to_json(set);
  EXPECT_EQ(j["atoms"], Json::array({"x1", "x2"}));
  EXPECT_EQ(j["elements"][1]["expr"], "{x1,{x2}}");

  // Parse the serialized text, not the in-memory object, so the 17-digit output is exercised.
  const FuzzySet back = fuzzy_set_from_json(Json::parse(dump_json(j)));
  ASSERT_EQ(back.size(), set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    EXPECT_EQ(back.elements()[i].expr, set.elements()[i].expr);
    EXPECT_EQ(back.elements()[i].mu, set.elements()[i].mu);
  }
}

TEST(JsonIo, SequenceForm) {
  const BinarySequence a = parse_sequence("10|01");
  EXPECT_EQ(dump_json(to_json(a), -1), "{\"m_star\":-2,\"bits\":[1,0,1,0,1],\"truncated\":false}");
  EXPECT_EQ(sequence_from_json(to_json(a)), a);

  Json extra = to_json(encode(0.3));
  extra["value"] = 0.3;
  EXPECT_EQ(sequence_from_json(extra), encode(0.3));
  EXPECT_EQ(sequence_from_json(Json::parse(R"({"m_star":0,"bits":[1]})")), BinarySequence());
}

TEST(JsonIo, SchemaErrors) {
  EXPECT_THROW(fuzzy_set_from_json(Json::parse(R"({"atoms":["x"]})")), FormatError);
  EXPECT_THROW(fuzzy_set_from_json(Json::parse(R"({"atoms":"x","elements":[]})")), FormatError);
  EXPECT_THROW(fuzzy_set_from_json(Json::parse(R"({"atoms":["x"],"elements":[{"expr":"x"}]})")), FormatError);
  EXPECT_THROW(fuzzy_set_from_json(Json::parse(R"({"atoms":["x"],"elements":[{"expr":"y","mu":0.5}]})")),
               UniverseError);
  EXPECT_THROW(sequence_from_json(Json::parse(R"({"m_star":0,"bits":[1,2]})")), FormatError);
  EXPECT_THROW(sequence_from_json(Json::parse(R"({"m_star":-1,"bits":[0,1]})")), InvariantError);
  EXPECT_THROW(sequence_from_json(Json::parse(R"({"bits":[1]})")), FormatError);
}

TEST(JsonIo, LoadFile) {
  const FuzzySet set = load_fuzzy_set(std::filesystem::path(FUZZYSET_DATA_DIR) / "example2.json");
  EXPECT_EQ(set.size(), 3u);
  EXPECT_DOUBLE_EQ(scalar_cardinality(set), 1.0);

  EXPECT_THROW(load_fuzzy_set("/nonexistent/file.json"), FormatError);

  const auto tmp = std::filesystem::temp_directory_path() / "fuzzyset_bad.json";
  std::ofstream(tmp) << "{not json";
  EXPECT_THROW(load_fuzzy_set(tmp), FormatError);
  std::ofstream(tmp) << R"({"atoms":["x"],"elements":[{"expr":"x","mu":2}]})";
  EXPECT_THROW(load_fuzzy_set(tmp), FormatError);
  std::filesystem::remove(tmp);
}
