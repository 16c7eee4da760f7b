#include <gtest/gtest.h>

#include "bicolor/report.hpp"

using namespace bicolor;

TEST(Report, SectorSummaryShape) {
  const auto g = build_square_torus(2);
  const auto s = krylov_components(g, MoveSet::parse("B,C"), 100000);
  const auto j = to_json(s);
  EXPECT_EQ(j["component_count"], 16);
  EXPECT_EQ(j["components"].size(), 16u);
  EXPECT_TRUE(j["components"][0].contains("label"));
  EXPECT_EQ(j["components"][0]["representative"], 0);
  EXPECT_FALSE(j["components"][0].contains("members"));
  EXPECT_TRUE(to_json(s, true)["components"][0].contains("members"));
  // Serialization is deterministic.
  EXPECT_EQ(to_json(s).dump(), to_json(krylov_components(g, MoveSet::parse("B,C"), 100000)).dump());
}

TEST(Report, GeometryCarriesHash) {
  const auto g = build_hex_torus(2, 3);
  const auto j = to_json(g);
  EXPECT_EQ(j["hash"], hex_hash(geometry_hash(g)));
  EXPECT_EQ(j["hash"].get<std::string>().size(), 16u);
  EXPECT_EQ(j["edges"], 18);
}

TEST(Report, BigNumbersAsStrings) {
  EXPECT_EQ(to_string(BigRational(6, 4)), "3/2");
  EXPECT_EQ(to_string(BigInt(21)), "21");
  const auto c = to_json(count_intersecting_boundary(2));
  EXPECT_EQ(c["exact"], "21");
  EXPECT_EQ(c["consistent"], true);
}
