#include <gtest/gtest.h>

#include <map>

#include "bicolor/operators.hpp"

using namespace bicolor;

namespace {

Mat3 mul(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Diagonal of h_v from first principles: A^(a) = prod Z^(a), Delta = all equal.
std::int64_t vertex_energy(const std::vector<int>& legs, int colors) {
  const int z[3][3] = {{1, -1, 0}, {1, 0, -1}, {0, 1, -1}};
  std::int64_t e = 0;
  for (int a = 0; a < colors; ++a) {
    std::int64_t p = 1;
    for (int c : legs) p *= z[a][c];
    e -= p;
  }
  return e + (std::all_of(legs.begin(), legs.end(), [&](int c) { return c == legs[0]; }) ? 1 : 0);
}

std::vector<int> legs_of(std::size_t index, std::size_t k) {
  std::vector<int> d(k);
  for (std::size_t t = 0; t < k; ++t, index /= 3) d[t] = static_cast<int>(index % 3);
  return d;
}

double lowest(const LocalOperator& op) { return local_spectrum(op.as_matrix()).front().value; }

}  // namespace

TEST(Operators, OnSiteAlgebra) {
  const auto& f = onsite_family();
  for (int a = 0; a < 3; ++a) {
    const auto x2 = mul(f.x[a], f.x[a]);
    const auto z2 = mul(f.z[a], f.z[a]);
    // X^(a) squares to the projector onto the two colors it exchanges, which is Z^(a) squared.
    EXPECT_EQ(x2, z2);
    // X and Z anticommute within the same family.
    const auto xz = mul(f.x[a], f.z[a]), zx = mul(f.z[a], f.x[a]);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_EQ(xz[i][j], -zx[i][j]);
  }
}

TEST(Operators, SquareVertexTermMatchesFirstPrinciples) {
  const auto g = build_square_torus(2);
  const auto op = vertex_term(g, 1);
  const auto M = op.as_matrix();
  ASSERT_TRUE(M.is_diagonal());
  const auto d = M.diagonal_entries();
  std::map<std::int64_t, int> classes;
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(d[i], vertex_energy(legs_of(i, 4), 3)) << i;
    ++classes[d[i]];
  }
  EXPECT_EQ(classes, (std::map<std::int64_t, int>{{-1, 21}, {0, 36}, {1, 24}}));
}

TEST(Operators, HexVertexTermMatchesFirstPrinciples) {
  const auto g = build_hex_torus(2, 2);
  const auto M = vertex_term(g, 3).as_matrix();
  const auto d = M.diagonal_entries();
  std::map<std::int64_t, int> classes;
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(d[i], vertex_energy(legs_of(i, 3), 2));
    ++classes[d[i]];
  }
  EXPECT_EQ(classes, (std::map<std::int64_t, int>{{-1, 7}, {0, 12}, {1, 6}, {2, 2}}));
}

TEST(Operators, FaceAndPairMinima) {
  const auto g = build_square_torus(3);
  EXPECT_NEAR(lowest(plaquette_term(g, 4)), -3.0, 1e-10);
  EXPECT_NEAR(lowest(double_plaquette_term(g, 0)), -3.0, 1e-10);
  EXPECT_TRUE(plaquette_term(g, 0).as_matrix().is_symmetric());
  const auto hex = build_hex_torus(2, 2);
  EXPECT_NEAR(lowest(plaquette_term(hex, 0)), -1.0, 1e-10);
}

TEST(Operators, PairFlipActions) {
  const auto g = build_square_torus(3);
  const auto& sup = g.face_pairs[0].support;
  const auto c1 = pair_flip(g, 0, 1);
  // C^(1) maps the all-empty support to all red.
  ASSERT_EQ(c1.columns[0].size(), 1u);
  std::uint32_t all_red = 0;
  for (std::size_t t = 0, p = 1; t < sup.size(); ++t, p *= 3) all_red += static_cast<std::uint32_t>(p);
  EXPECT_EQ(c1.columns[0][0].row, all_red);
  // C^(3) annihilates anything with an empty edge in the support.
  const auto c3 = pair_flip(g, 0, 3);
  for (std::size_t col = 0; col < c3.local_dim(); ++col) {
    const auto legs = legs_of(col, sup.size());
    if (std::count(legs.begin(), legs.end(), 0) > 0) {
      EXPECT_TRUE(c3.columns[col].empty());
    }
  }
}

TEST(Operators, EmbeddingAgreesWithRestriction) {
  const auto g = build_square_torus(2);
  const auto full = Basis::full(g.num_edges());
  const auto closed = Basis::of(g.num_edges(), enumerate_closed_loop_configs(g, 1000), "closed");
  const auto H = assemble_hamiltonian(Model::square_total, g, full);
  EXPECT_TRUE(H.is_symmetric());
  EXPECT_EQ(H.restrict_to(closed), assemble_hamiltonian(Model::square_total, g, closed));
  EXPECT_EQ(H, assemble_vertex_part(Model::square_total, g, full) + assemble_face_part(Model::square_total, g, full));
}

TEST(Operators, WilsonLoopOnEmptyMakesRedCycle) {
  const auto g = build_square_torus(2);
  const auto w = wilson_loop(g, Direction::x, 1, false);
  const auto W = embed(w, Basis::full(g.num_edges()));
  Packed expect = 0;
  for (int e : g.cycle(Direction::x)) expect += pow3(e);
  std::vector<Packed> image;
  W.for_each([&](std::size_t r, std::size_t c, std::int64_t v) {
    if (c == 0) {
      image.push_back(r);
      EXPECT_EQ(v, 1);
    }
  });
  EXPECT_EQ(image, std::vector<Packed>{expect});
}

TEST(Operators, FrustrationFreeBounds) {
  EXPECT_DOUBLE_EQ(frustration_free_bound(Model::square_total, build_square_torus(2)), -40.0);
  EXPECT_DOUBLE_EQ(frustration_free_bound(Model::square_inter, build_square_torus(2)), -16.0);
  EXPECT_DOUBLE_EQ(frustration_free_bound(Model::square_total, build_square_torus(3)), -90.0);
  EXPECT_DOUBLE_EQ(frustration_free_bound(Model::hex, build_hex_torus(2, 2)), -12.0);
}

TEST(Operators, ModelNames) {
  EXPECT_EQ(parse_model("square-totalH"), Model::square_total);
  EXPECT_EQ(parse_model("square-int"), Model::square_total);
  EXPECT_EQ(parse_model("square-inter"), Model::square_inter);
  EXPECT_EQ(parse_model("hex"), Model::hex);
  EXPECT_THROW(parse_model("triangle"), std::invalid_argument);
  EXPECT_FALSE(model_fits(Model::hex, build_square_torus(2)));
}

TEST(Operators, IdValidation) {
  const auto g = build_square_torus(2);
  EXPECT_THROW(vertex_term(g, 4), std::out_of_range);
  EXPECT_THROW(face_flip(g, 0, 4), std::invalid_argument);
}
