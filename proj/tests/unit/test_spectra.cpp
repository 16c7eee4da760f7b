#include <gtest/gtest.h>

#include <cstdlib>

#include "bicolor/kernels/kernels.hpp"
#include "bicolor/spectra.hpp"

using namespace bicolor;

namespace {

const SparseOperator& total_l2() {
  static const auto H = assemble_hamiltonian(Model::square_total, build_square_torus(2), Basis::full(8));
  return H;
}

}  // namespace

TEST(Spectra, SquareTotalGroundSpace) {
  const auto r = ground_space(total_l2(), 20);
  EXPECT_EQ(r.solver.substr(0, 5), "dense");
  EXPECT_NEAR(r.ground(), -40.0, 1e-9);
  EXPECT_EQ(r.ground_multiplicity(), 16);
  EXPECT_LE(r.max_residual(), 1e-9);
}

TEST(Spectra, SquareInterGroundEnergy) {
  const auto H = assemble_hamiltonian(Model::square_inter, build_square_torus(2), Basis::full(8));
  EXPECT_NEAR(ground_space(H, 50).ground(), -16.0, 1e-9);
}

TEST(Spectra, LanczosAgreesWithDense) {
  SolverOptions opt;
  opt.method = SolverOptions::Method::lanczos;
  const auto lz = ground_space(total_l2(), 20, opt);
  const auto dn = ground_space(total_l2(), 20);
  ASSERT_TRUE(lz.converged);
  ASSERT_GE(lz.values.size(), 17u);
  for (std::size_t i = 0; i < 17; ++i) EXPECT_NEAR(lz.values[i], dn.values[i], 1e-8) << i;
  EXPECT_EQ(lz.ground_multiplicity(), 16);
  EXPECT_LE(lz.max_residual(), 1e-9);
}

TEST(Spectra, LanczosIsIsaIndependent) {
  SolverOptions opt;
  opt.method = SolverOptions::Method::lanczos;
  kernels::set_isa(kernels::Isa::scalar);
  const auto a = ground_space(total_l2(), 4, opt);
  kernels::set_isa(kernels::Isa::avx2);
  const auto b = ground_space(total_l2(), 4, opt);
  ASSERT_EQ(a.values.size(), b.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-9);
}

// Ground states are the uniform superpositions over {B,C} components: each
// is an exact eigenstate at -40 and together they span the 16-dim ground space.
TEST(Spectra, GroundSpaceIsSpannedByUniformComponentStates) {
  const auto g = build_square_torus(2);
  const auto full = Basis::full(8);
  auto r = dense_spectrum(total_l2(), 16, true);
  ASSERT_EQ(r.ground_multiplicity(), 16);
  const auto s = krylov_components(g, MoveSet::parse("B,C"), 100000);
  for (const auto& c : s.components) {
    const auto psi = uniform_state(full, c.members);
    EXPECT_NEAR(expectation(total_l2(), psi), -40.0, 1e-10);
    EXPECT_LT(residual(total_l2(), psi), 1e-10);
    double weight = 0.0;
    for (int k = 0; k < 16; ++k) {
      double ov = 0.0;
      for (std::size_t i = 0; i < psi.amplitudes.size(); ++i) ov += psi.amplitudes[i] * r.vectors[k][i];
      weight += ov * ov;
    }
    EXPECT_NEAR(weight, 1.0, 1e-10);
  }
}

TEST(Spectra, SingleConfigurationState) {
  const auto full = Basis::full(8);
  const auto psi = uniform_state(full, {5});
  EXPECT_DOUBLE_EQ(psi.amplitudes[5], 1.0);
  EXPECT_DOUBLE_EQ(psi.norm(), 1.0);
}

TEST(Spectra, GroupingIsRelative) {
  const auto levels = group_relative({-40.0, -40.0 + 1e-12, -39.0, 1000.0, 1000.0 + 1e-7}, 1e-9);
  ASSERT_EQ(levels.size(), 3u);
  EXPECT_EQ(levels[0].multiplicity, 2);
  EXPECT_EQ(levels[2].multiplicity, 2);
}

TEST(Spectra, CommutatorMeasurements) {
  const auto checks = commutator_checks(build_square_torus(2));
  for (const auto& c : checks) {
    if (c.name == "[B_f^(1),B_f^(2)]") {
      EXPECT_GT(c.norm, 0);
    }
    // Same-color vertex and face operators commute.
    for (int a = 1; a <= 3; ++a) {
      const std::string s = std::to_string(a);
      if (c.name == "[A^(" + s + "),B^(" + s + ")]" || c.name == "[A^(" + s + "),C^(" + s + ")]") {
        EXPECT_EQ(c.norm, 0) << c.name;
      }
    }
  }
  const auto H = total_l2();
  EXPECT_EQ(commutator_norm(H, H), 0);
}

TEST(Spectra, WilsonAnticommutatorsHold) {
  std::size_t anti = 0;
  for (const auto& w : wilson_relations(build_square_torus(2))) {
    if (w.name.find("W~") != std::string::npos && w.name.ends_with("} = 0")) {
      ++anti;
      EXPECT_TRUE(w.holds) << w.name;
    }
  }
  EXPECT_EQ(anti, 6u);
}

TEST(Spectra, TowerScanHvIsInteger) {
  const auto t = tower_scan(Model::square_total, build_square_torus(2));
  EXPECT_EQ(t.dim, 6561u);
  EXPECT_TRUE(t.hv_integer);
  EXPECT_DOUBLE_EQ(t.hv_closed_value, -4.0);
}

TEST(Spectra, DefectStatesAreMeasured) {
  const auto g = build_square_torus(2);
  const auto f = defect_tower_state(Model::square_total, g, DefectSpec{0, 1, Color::red}, 0, -40.0, 100000);
  EXPECT_GT(f.sector_size, 0u);
  EXPECT_GT(f.component_size, 0u);
  EXPECT_TRUE(std::isfinite(f.residual));
  EXPECT_GE(f.offset, -1e-9);
  EXPECT_EQ(f.exact, f.residual < 1e-10);
}
