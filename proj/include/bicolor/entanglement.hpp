#pragma once
// Schmidt spectra of uniform superpositions by completion counting, a dense
// partial-trace oracle, boundary-string sets and area-law fits.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "bicolor/bignum.hpp"
#include "bicolor/lattice.hpp"
#include "bicolor/operators.hpp"
#include "bicolor/spectra.hpp"

namespace bicolor {

/// Region A is every edge with at least one endpoint in a vertex set R; the
/// cut edges (exactly one endpoint in R) belong to A and carry the boundary
/// string sigma.
struct Bipartition {
  std::vector<int> region;   // vertices of R, ascending
  std::vector<int> edges_a;  // ascending, includes the cut
  std::vector<int> edges_b;  // ascending
  std::vector<int> cut;      // ascending
  /// Cut edges grouped into boundary components (dual-connected through faces).
  std::vector<std::vector<int>> boundaries;
  std::string description;
};

Bipartition vertex_region(const Geometry& g, std::vector<int> vertices, std::string description = "");
/// Square torus: the vertices of columns [first, first + count).
Bipartition column_region(const Geometry& g, int first, int count);
/// Hexagonal torus: the two ends of edge 3c (one A-B dimer).
Bipartition dimer_region(const Geometry& g, int cell);
/// Hexagonal torus: the six vertices around face f.
Bipartition hexagon_region(const Geometry& g, int f);

/// Colors of the given edges as a string over {e, r, b}.
std::string restrict_string(Packed code, const std::vector<int>& edges);

struct SchmidtEntry {
  std::string sigma;
  std::uint64_t n_a = 0;
  std::uint64_t n_b = 0;
  BigRational p;       // exact when the block is complete bipartite
  double p_value = 0.0;
  bool exact = true;
};

struct SchmidtSpectrum {
  std::vector<SchmidtEntry> entries;  // ordered by sigma, then by block
  std::uint64_t total = 0;            // component size N
  double entropy = 0.0;               // natural log
  std::size_t rank = 0;
  std::size_t distinct_sigma = 0;
  bool exact = true;                  // every block complete bipartite
  bool sum_is_one = false;            // sum of exact p equals 1
  bool count_consistent = false;      // sum N_A N_B = N
  std::vector<std::set<std::string>> boundary_strings;  // per boundary component

  std::vector<double> probabilities() const;  // descending
};

/// Blocks of the (A-configuration, B-configuration) incidence of the state's
/// support, grouped by boundary string.
SchmidtSpectrum schmidt_spectrum_by_counting(const std::vector<Packed>& component, const Bipartition& part);

/// Squared singular values of the amplitude matrix of a state, descending
/// and above 1e-14.
std::vector<double> dense_schmidt_oracle(const StateVector& psi, const Bipartition& part);

double entanglement_entropy(const std::vector<double>& probabilities);
double entanglement_entropy(const SchmidtSpectrum& s);

/// Intersecting model: strings on the cut with even red and even blue count.
std::set<std::string> intersecting_boundary_strings(std::size_t cut_length);
/// Strings realized on the cut by some closed configuration of the geometry.
std::set<std::string> realized_boundary_strings(const Geometry& g, const Bipartition& part, std::size_t budget);
/// Admissible strings: the parity rule for the square model, realized
/// completions on the geometry for the hexagonal model.
std::set<std::string> admissible_boundary_strings(const Geometry& g, const Bipartition& part, std::size_t budget);

struct ScalingFit {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double residual = 0.0;  // root mean square
  std::size_t points = 0;
};

/// Least squares S = alpha (2l) - beta ln(2l) - gamma.
ScalingFit fit_area_law(const std::vector<std::pair<double, double>>& points);

}  // namespace bicolor
