#include <gtest/gtest.h>

#include <random>
#include <set>

#include "bicolor/errors.hpp"
#include "bicolor/lattice.hpp"

using namespace bicolor;

namespace {

// Independent closedness test: every vertex has even red and even blue degree.
bool closed_by_hand(Packed code, const Geometry& g) {
  std::vector<int> red(g.num_vertices()), blue(g.num_vertices());
  for (int e = 0; e < g.num_edges(); ++e) {
    const int c = static_cast<int>(code % 3);
    code /= 3;
    for (int v : g.edge_vertices[e]) {
      red[v] += c == 1;
      blue[v] += c == 2;
    }
  }
  for (int v = 0; v < g.num_vertices(); ++v)
    if (red[v] % 2 || blue[v] % 2) return false;
  return true;
}

std::vector<Packed> brute_force_closed(const Geometry& g) {
  std::vector<Packed> out;
  for (Packed c = 0; c < pow3(g.num_edges()); ++c)
    if (closed_by_hand(c, g)) out.push_back(c);
  return out;
}

}  // namespace

TEST(Lattice, SquareCountsAndEdgeLayout) {
  const auto g = build_square_torus(3);
  EXPECT_EQ(g.num_edges(), 18);
  EXPECT_EQ(g.num_vertices(), 9);
  EXPECT_EQ(g.num_faces(), 9);
  EXPECT_EQ(g.face_pairs.size(), 18u);
  EXPECT_FALSE(g.degenerate_pairs);
  for (const auto& p : g.face_pairs) EXPECT_EQ(p.support.size(), 6u);
  // Edge 2(iL+j) runs right from (i,j), edge 2(iL+j)+1 runs down.
  EXPECT_EQ(g.edge_vertices[2 * 4], (std::array<int, 2>{4, 5}));
  EXPECT_EQ(g.edge_vertices[2 * 4 + 1], (std::array<int, 2>{4, 7}));
  for (const auto& ve : g.vertex_edges) EXPECT_EQ(ve.size(), 4u);
  for (const auto& fe : g.face_edges) EXPECT_EQ(fe.size(), 4u);
  EXPECT_EQ(g.cycle(Direction::x).size(), 3u);
  EXPECT_EQ(g.dual_cycle(Direction::y).size(), 3u);
}

TEST(Lattice, SquareL2KeepsCoincidingPairs) {
  const auto g = build_square_torus(2);
  EXPECT_EQ(g.face_pairs.size(), 8u);
  EXPECT_TRUE(g.degenerate_pairs);
}

TEST(Lattice, HexCounts) {
  const auto g = build_hex_torus(2, 3);
  EXPECT_EQ(g.num_edges(), 18);
  EXPECT_EQ(g.num_vertices(), 12);
  EXPECT_EQ(g.num_faces(), 6);
  for (const auto& ve : g.vertex_edges) EXPECT_EQ(ve.size(), 3u);
  for (const auto& fe : g.face_edges) EXPECT_EQ(fe.size(), 6u);
  for (const auto& ef : g.edge_faces) EXPECT_NE(ef[0], ef[1]);
}

TEST(Lattice, InvalidSizesRejected) {
  EXPECT_THROW(build_square_torus(1), std::invalid_argument);
  EXPECT_THROW(build_hex_torus(1, 2), std::invalid_argument);
}

TEST(Lattice, GeometryHashIsDeterministicAndDistinguishes) {
  EXPECT_EQ(geometry_hash(build_square_torus(3)), geometry_hash(build_square_torus(3)));
  EXPECT_NE(geometry_hash(build_square_torus(2)), geometry_hash(build_square_torus(3)));
  EXPECT_NE(geometry_hash(build_hex_torus(2, 3)), geometry_hash(build_hex_torus(3, 2)));
}

TEST(LatticeProperty, EncodeDecodeRoundTrip) {
  std::mt19937_64 rng(20240611);
  for (const auto& g : {build_square_torus(2), build_square_torus(4), build_hex_torus(3, 3)}) {
    std::uniform_int_distribution<Packed> code(0, pow3(g.num_edges()) - 1);
    for (int i = 0; i < 100000; ++i) {
      const Packed c = code(rng);
      const auto cfg = EdgeConfig::unpack(c, g.num_edges());
      ASSERT_EQ(cfg.packed(), c);
      ASSERT_EQ(color_at(c, 0), cfg[0]);
      ASSERT_EQ(EdgeConfig::unpack(cfg.packed(), g.num_edges()), cfg);
    }
  }
}

TEST(Lattice, DefectPatternOfSingleEdge) {
  const auto g = build_square_torus(3);
  EdgeConfig c(g.num_edges());
  c.set(0, Color::red);
  const auto d = defect_pattern(c, g);
  EXPECT_FALSE(d.is_closed());
  EXPECT_EQ(d.red[0], 1);
  EXPECT_EQ(d.red[1], 1);
  EXPECT_EQ(std::count(d.blue.begin(), d.blue.end(), 1), 0);
}

TEST(Lattice, ClosedEnumerationMatchesBruteForce) {
  for (const auto& g : {build_square_torus(2), build_hex_torus(2, 2)}) {
    const auto fast = enumerate_closed_loop_configs(g, 1'000'000);
    EXPECT_EQ(fast, brute_force_closed(g));
    EXPECT_TRUE(std::is_sorted(fast.begin(), fast.end()));
    EXPECT_EQ(fast.front(), 0u);
  }
  EXPECT_EQ(enumerate_closed_loop_configs(build_square_torus(2), 1000).size(), 129u);
  EXPECT_EQ(enumerate_closed_loop_configs(build_hex_torus(2, 2), 1000).size(), 69u);
}

TEST(Lattice, SectorEnumerationHonorsDefects) {
  const auto g = build_square_torus(3);
  EdgeConfig c(g.num_edges());
  c.set(3, Color::blue);
  const auto target = defect_pattern(c, g);
  const auto codes = enumerate_sector(g, target, 10'000'000);
  EXPECT_TRUE(std::binary_search(codes.begin(), codes.end(), c.packed()));
  for (std::size_t i = 0; i < codes.size(); i += 97) EXPECT_EQ(defect_pattern(codes[i], g), target);
}

TEST(Lattice, EnumerationBudgetThrows) {
  EXPECT_THROW(enumerate_closed_loop_configs(build_square_torus(3), 100), BudgetExceeded);
}

TEST(Lattice, SquareLabelsArePairParitiesOnDualCuts) {
  const auto g = build_square_torus(2);
  std::set<WindingLabel> seen;
  for (Packed c : enumerate_closed_loop_configs(g, 1000)) {
    const auto label = winding_label(c, g);
    seen.insert(label);
    for (auto d : {Direction::x, Direction::y}) {
      int r = 0, b = 0;
      for (int e : g.transversal_cut(d)) {
        r += color_at(c, e) == Color::red;
        b += color_at(c, e) == Color::blue;
      }
      std::string expect = std::string(r % 2 ? "r" : "") + (b % 2 ? "b" : "");
      EXPECT_EQ(label.along(d), expect);
    }
  }
  EXPECT_EQ(seen.size(), 16u);
}

TEST(Lattice, LabelsRejectDefects) {
  const auto g = build_square_torus(2);
  EdgeConfig c(g.num_edges());
  c.set(0, Color::red);
  EXPECT_THROW(winding_label(c, g), std::invalid_argument);
}

TEST(Lattice, CyclicWordReduction) {
  EXPECT_EQ(reduce_cyclic_word(""), "");
  EXPECT_EQ(reduce_cyclic_word("rr"), "");
  EXPECT_EQ(reduce_cyclic_word("rbbr"), "");
  EXPECT_EQ(reduce_cyclic_word("rb"), "br");
  EXPECT_EQ(reduce_cyclic_word("rbr"), "b");
  EXPECT_EQ(word_display(""), "∅");
}

TEST(Lattice, HexLabelsOnClosedSector) {
  const auto g = build_hex_torus(2, 2);
  std::set<WindingLabel> seen;
  for (Packed c : enumerate_closed_loop_configs(g, 1000)) seen.insert(winding_label(c, g));
  EXPECT_GE(seen.size(), 1u);
  EXPECT_TRUE(seen.count(WindingLabel{{"", ""}}));
}
