#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "bicolor/dynamics.hpp"
#include "bicolor/errors.hpp"

using namespace bicolor;

TEST(Dynamics, MoveSetParsing) {
  EXPECT_EQ(MoveSet::parse("B,C").to_string(), "B,C");
  EXPECT_TRUE(MoveSet::parse("B'").hex_plaquette);
  EXPECT_TRUE(MoveSet::parse("C").double_plaquette);
  EXPECT_THROW(MoveSet::parse("D"), std::invalid_argument);
  EXPECT_FALSE(MoveSet::parse("B'").fits(build_square_torus(2)));
  EXPECT_FALSE(MoveSet::parse("C").fits(build_hex_torus(2, 2)));
}

TEST(Dynamics, PlaquetteMoveFlipsEmptyFaceToRedLoop) {
  const auto g = build_square_torus(3);
  const Move m{MoveKind::plaquette, 4, 1};
  const auto out = apply_move(Packed{0}, g, m);
  ASSERT_TRUE(out);
  for (int e = 0; e < g.num_edges(); ++e) {
    const bool on_face = std::count(g.face_edges[4].begin(), g.face_edges[4].end(), e) > 0;
    EXPECT_EQ(color_at(*out, e), on_face ? Color::red : Color::empty);
  }
  // Blue-flip (a=2) of a red face is annihilated.
  EXPECT_FALSE(apply_move(*out, g, Move{MoveKind::plaquette, 4, 2}));
  EXPECT_EQ(apply_move(*out, g, m), Packed{0});
}

TEST(Dynamics, ComponentsPartitionTheClosedSector) {
  const auto g = build_square_torus(2);
  for (const char* set : {"B", "C", "B,C"}) {
    const auto s = krylov_components(g, MoveSet::parse(set), 100000);
    std::size_t total = 0;
    for (const auto& c : s.components) {
      total += c.size();
      EXPECT_EQ(c.labels.size(), 1u) << set;
      EXPECT_TRUE(std::is_sorted(c.members.begin(), c.members.end()));
    }
    EXPECT_EQ(total, s.configs.size()) << set;
    EXPECT_EQ(s.configs.size(), 129u);
  }
}

TEST(Dynamics, FragmentationAtL2) {
  const auto g = build_square_torus(2);
  const auto b = krylov_components(g, MoveSet::parse("B"), 100000);
  const auto bc = krylov_components(g, MoveSet::parse("B,C"), 100000);
  EXPECT_EQ(b.components.size(), 46u);
  EXPECT_EQ(b.frozen_count, 36u);
  EXPECT_EQ(bc.components.size(), 16u);
  EXPECT_EQ(bc.num_labels(), 16u);
  EXPECT_EQ(bc.frozen_count, 0u);
  const auto alt = alternating_columns(g).packed();
  EXPECT_TRUE(is_frozen(alt, g, MoveSet::parse("B")));
  EXPECT_FALSE(is_frozen(alt, g, MoveSet::parse("B,C")));
  EXPECT_EQ(b.component_of(alt).size(), 1u);
}

TEST(Dynamics, L3SectorsAreTheSixteenLabels) {
  const auto g = build_square_torus(3);
  const auto bc = krylov_components(g, MoveSet::parse("B,C"), 10'000'000);
  EXPECT_EQ(bc.configs.size(), 8589u);
  EXPECT_EQ(bc.components.size(), 16u);
  EXPECT_EQ(bc.num_labels(), 16u);
  for (const auto& c : bc.components) {
    const auto rep = sector_representative(*c.labels.begin(), g, 10'000'000);
    EXPECT_EQ(winding_label(rep, g), *c.labels.begin());
    EXPECT_TRUE(std::binary_search(c.members.begin(), c.members.end(), rep.packed()));
  }
}

TEST(Dynamics, HexTwoByTwoComponents) {
  const auto g = build_hex_torus(2, 2);
  const auto s = krylov_components(g, MoveSet::parse("B'"), 1'000'000);
  EXPECT_EQ(s.configs.size(), 69u);
  EXPECT_EQ(s.components.size(), 13u);
  // Six singletons are frozen; each has both colors on every face.
  std::size_t frozen = 0;
  for (const auto& c : s.components) {
    if (c.size() != 1) continue;
    ++frozen;
    EXPECT_TRUE(is_frozen(c.representative(), g, MoveSet::parse("B'")));
  }
  EXPECT_EQ(frozen, 6u);
  EXPECT_EQ(s.frozen_count, 6u);
}

TEST(Dynamics, ComponentsOverDefectSector) {
  const auto g = build_square_torus(2);
  EdgeConfig c(g.num_edges());
  c.set(0, Color::red);
  auto codes = enumerate_sector(g, defect_pattern(c, g), 100000);
  const auto s = krylov_components(g, MoveSet::parse("B,C"), codes);
  EXPECT_FALSE(s.labelled);
  std::size_t total = 0;
  for (const auto& comp : s.components) total += comp.size();
  EXPECT_EQ(total, codes.size());
}

TEST(Dynamics, PathsAndSwap) {
  const auto g = build_square_torus(3);
  const auto self = find_move_path(g, MoveSet::parse("B,C"), 0, 0, 1000);
  ASSERT_TRUE(self);
  EXPECT_TRUE(self->empty());
  const auto sw = swap_sequence_check(g, 10'000'000);
  EXPECT_TRUE(sw.reachable);
  EXPECT_TRUE(sw.replay_ok);
  EXPECT_GT(sw.path_length, 0u);
  EXPECT_EQ(winding_label(sw.start, g), winding_label(sw.target, g));
  EXPECT_THROW(find_move_path(g, MoveSet::parse("B,C"), sw.start.packed(), sw.target.packed(), 2), BudgetExceeded);
}

TEST(DynamicsProperty, MoveInvariantsHoldOnRandomSamples) {
  const auto g = build_square_torus(3);
  const auto closed = enumerate_closed_loop_configs(g, 10'000'000);
  for (const char* set : {"B", "C", "B,C"}) {
    const auto r = check_move_invariants(g, MoveSet::parse(set), closed, 100000, 20240611);
    EXPECT_EQ(r.samples, 100000u);
    EXPECT_GT(r.applied, 0u);
    EXPECT_EQ(r.violations(), 0u) << set;
  }
  const auto hex = build_hex_torus(3, 2);
  const auto hc = enumerate_closed_loop_configs(hex, 10'000'000);
  EXPECT_EQ(check_move_invariants(hex, MoveSet::parse("B'"), hc, 100000, 7).violations(), 0u);
}

TEST(DynamicsProperty, EveryMoveIsAnInvolutionWhereItActs) {
  const auto g = build_hex_torus(2, 2);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Packed> code(0, pow3(g.num_edges()) - 1);
  const auto moves = all_moves(g, MoveSet::parse("B'"));
  for (int i = 0; i < 20000; ++i) {
    const Packed c = code(rng);
    const auto& m = moves[rng() % moves.size()];
    if (const auto once = apply_move(c, g, m)) {
      EXPECT_EQ(apply_move(*once, g, m), c);
      EXPECT_EQ(defect_pattern(*once, g), defect_pattern(c, g));
    }
  }
}
