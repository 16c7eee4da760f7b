#include <gtest/gtest.h>

#include <cmath>

#include "bicolor/entanglement.hpp"

using namespace bicolor;

namespace {

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return 1.0;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST(Entanglement, ColumnRegionShape) {
  const auto g = build_square_torus(3);
  const auto p = column_region(g, 0, 1);
  EXPECT_EQ(p.region, (std::vector<int>{0, 3, 6}));
  EXPECT_EQ(p.cut.size(), 6u);
  EXPECT_EQ(p.boundaries.size(), 2u);
  EXPECT_EQ(p.edges_a.size() + p.edges_b.size(), 18u);
  for (int e : p.cut) EXPECT_TRUE(std::binary_search(p.edges_a.begin(), p.edges_a.end(), e));
}

TEST(Entanglement, CountingMatchesDenseOracle) {
  const auto g = build_square_torus(2);
  const auto full = Basis::full(8);
  const auto s = krylov_components(g, MoveSet::parse("B,C"), 100000);
  for (const auto& part : {column_region(g, 0, 1), vertex_region(g, {0}), vertex_region(g, {0, 3})}) {
    for (const auto& c : s.components) {
      const auto sp = schmidt_spectrum_by_counting(c.members, part);
      EXPECT_TRUE(sp.exact);
      EXPECT_TRUE(sp.sum_is_one);
      EXPECT_TRUE(sp.count_consistent);
      EXPECT_EQ(sp.total, c.size());
      EXPECT_LE(max_gap(sp.probabilities(), dense_schmidt_oracle(uniform_state(full, c.members), part)), 1e-10);
      EXPECT_NEAR(sp.entropy, entanglement_entropy(sp.probabilities()), 1e-12);
    }
  }
}

TEST(Entanglement, ExactRationalProbabilities) {
  const auto g = build_square_torus(2);
  const auto s = krylov_components(g, MoveSet::parse("B,C"), 100000);
  const auto sp = schmidt_spectrum_by_counting(s.components.front().members, column_region(g, 0, 1));
  BigRational sum = 0;
  std::uint64_t pairs = 0;
  for (const auto& e : sp.entries) {
    EXPECT_EQ(e.p, BigRational(e.n_a * e.n_b, sp.total));
    sum += e.p;
    pairs += e.n_a * e.n_b;
  }
  EXPECT_EQ(sum, BigRational(1));
  EXPECT_EQ(pairs, sp.total);
  EXPECT_LE(sp.entropy, std::log(21.0));
}

TEST(Entanglement, ProductStateHasZeroEntropy) {
  const auto g = build_square_torus(2);
  const auto sp = schmidt_spectrum_by_counting({0}, column_region(g, 0, 1));
  EXPECT_EQ(sp.rank, 1u);
  EXPECT_DOUBLE_EQ(sp.entropy, 0.0);
}

TEST(Entanglement, IntersectingStrings) {
  const auto two = intersecting_boundary_strings(2);
  EXPECT_EQ(two, (std::set<std::string>{"bb", "ee", "rr"}));
  EXPECT_EQ(intersecting_boundary_strings(4).size(), 21u);
}

TEST(Entanglement, RealizedStringsOnSquareFollowParity) {
  const auto g = build_square_torus(3);
  const auto part = column_region(g, 0, 1);
  const auto realized = realized_boundary_strings(g, part, 10'000'000);
  for (const auto& s : realized) {
    EXPECT_EQ(std::count(s.begin(), s.end(), 'r') % 2, 0);
    EXPECT_EQ(std::count(s.begin(), s.end(), 'b') % 2, 0);
  }
  EXPECT_LE(realized.size(), intersecting_boundary_strings(part.cut.size()).size());
}

TEST(Entanglement, HexDimerCutStrings) {
  const auto g = build_hex_torus(2, 2);
  const auto part = dimer_region(g, 0);
  EXPECT_EQ(part.cut.size(), 4u);
  EXPECT_EQ(realized_boundary_strings(g, part, 1'000'000).size(), 17u);
}

TEST(Entanglement, FitRecoversSyntheticParameters) {
  std::vector<std::pair<double, double>> pts;
  for (int l = 10; l <= 200; l += 10) pts.emplace_back(l, 1.3 * 2 * l - 0.7 * std::log(2.0 * l) - 0.2);
  const auto f = fit_area_law(pts);
  EXPECT_NEAR(f.alpha, 1.3, 1e-9);
  EXPECT_NEAR(f.beta, 0.7, 1e-9);
  EXPECT_NEAR(f.gamma, 0.2, 1e-9);
  EXPECT_LT(f.residual, 1e-9);
  EXPECT_THROW(fit_area_law({{1, 1}, {2, 2}, {3, 3}}), std::invalid_argument);
}
