#pragma once
// Ground spaces, exact commutator checks, tower structure and defect states.

#include <cstdint>
#include <string>
#include <vector>

#include "bicolor/dynamics.hpp"
#include "bicolor/operators.hpp"
#include "bicolor/sparse.hpp"

namespace bicolor {

inline constexpr double kResidualTol = 1e-9;
inline constexpr double kDegeneracyTol = 1e-9;  // relative
inline constexpr double kUniformityTol = 1e-9;
inline constexpr std::size_t kDenseLimit = 10000;

struct SolverOptions {
  enum class Method { automatic, dense, lanczos };
  Method method = Method::automatic;
  int krylov_dim = 40;
  int max_restarts = 2000;
  double tol = 1e-10;
  std::uint64_t seed = 1;
  bool keep_vectors = false;
  /// Keep extracting eigenpairs past k until the ground level is closed off
  /// by a strictly larger eigenvalue.
  bool resolve_ground = true;
};

struct EigenReport {
  std::string basis;
  std::size_t dim = 0;
  std::vector<double> values;     // ascending
  std::vector<double> residuals;  // ||H v - lambda v|| per value
  std::vector<EigenLevel> levels;
  std::vector<std::vector<double>> vectors;  // when requested
  std::string solver;
  std::size_t iterations = 0;  // matvecs for Lanczos, blocks for dense
  bool converged = true;

  double ground() const { return values.front(); }
  int ground_multiplicity() const;
  double max_residual() const;
};

/// Lowest k eigenpairs. Dense per connected block below kDenseLimit,
/// restarted Lanczos with deflation above.
EigenReport ground_space(const SparseOperator& H, int k, const SolverOptions& opt = {});
EigenReport dense_spectrum(const SparseOperator& H, int k, bool keep_vectors);
EigenReport lanczos_lowest(const SparseOperator& H, int k, const SolverOptions& opt);

/// Groups ascending values at relative tolerance tol.
std::vector<EigenLevel> group_relative(const std::vector<double>& values, double tol);

struct StateVector {
  BasisPtr basis;
  std::vector<double> amplitudes;

  double norm() const;
};

/// Equal-amplitude normalized state over `members` (each must lie in basis).
StateVector uniform_state(const BasisPtr& basis, const std::vector<Packed>& members);
double expectation(const SparseOperator& H, const StateVector& psi);
/// ||(H - <H>) psi||.
double residual(const SparseOperator& H, const StateVector& psi);

/// Max absolute entry of AB - BA, exact.
std::int64_t commutator_norm(const SparseOperator& a, const SparseOperator& b);

struct CommutatorCheck {
  std::string name;
  std::int64_t norm = 0;
  bool expect_zero = true;
  bool ok() const { return expect_zero ? norm == 0 : norm > 0; }
};

/// All commutator identities of the square model at the given size:
/// [H_v,H_f], [A_v^a,B_f^b], [A_v^a,C^b] over all sites and colors (the max
/// is reported per (a,b)), and [B_f^1,B_f^2] on one face.
std::vector<CommutatorCheck> commutator_checks(const Geometry& g);

struct WilsonRelation {
  std::string name;
  bool holds = false;
  std::int64_t deviation = 0;  // max abs entry of lhs - rhs
};

std::vector<WilsonRelation> wilson_relations(const Geometry& g);

struct WilsonLeak {
  std::string op;
  std::size_t ground_state = 0;
  double leak = 0.0;        // ||(1 - P_GS) W |GS>||
  double image_norm = 0.0;  // ||W |GS>||
};

/// Leakage of every Wilson operator out of the ground space of H_int, for
/// ground states taken as uniform superpositions over the {B,C} components.
std::vector<WilsonLeak> wilson_leaks(const Geometry& g, std::size_t budget);

struct TowerScan {
  std::size_t dim = 0;
  double max_deviation = 0.0;  // between the sorted spectrum of H and sorted {E_v + E_f}
  bool multiset_equal = false;
  bool hv_integer = false;
  std::vector<std::int64_t> hv_levels;  // distinct H_v eigenvalues
  double hv_closed_value = 0.0;
  std::int64_t commutator = 0;  // ||[H_v, H_f]||
};

/// H_v is diagonal; within each of its eigenspaces H_f is diagonalized, and
/// the sums are compared with the spectrum of H.
TowerScan tower_scan(Model m, const Geometry& g);

struct DefectSpec {
  int v1 = 0;
  int v2 = 1;
  Color color = Color::red;
};

struct DefectFinding {
  DefectSpec defect;
  std::size_t sector_size = 0;
  std::size_t component = 0;
  std::size_t component_size = 0;
  double energy = 0.0;
  double offset = 0.0;  // energy - ground energy
  double residual = 0.0;
  bool exact = false;   // residual < 1e-10
  bool integer_offset = false;
};

MoveSet model_moves(Model m);
DefectPattern defect_pair_pattern(const Geometry& g, const DefectSpec& d);

/// Uniform superposition over one component of the defect sector under the
/// model's moves, with its energy and residual.
DefectFinding defect_tower_state(Model m, const Geometry& g, const DefectSpec& d, std::size_t component,
                                 double ground_energy, std::size_t budget);
/// Every adjacent vertex pair, both colors, every component.
std::vector<DefectFinding> defect_tower_scan(Model m, const Geometry& g, double ground_energy, std::size_t budget);

}  // namespace bicolor
