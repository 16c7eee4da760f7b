#pragma once
// On-site qutrit matrices, the local vertex / face / double-face terms of the
// square and hexagonal loop Hamiltonians, Wilson loop operators, and their
// embedding into a configuration basis by index arithmetic.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bicolor/lattice.hpp"
#include "bicolor/sparse.hpp"

namespace bicolor {

using Mat3 = std::array<std::array<int, 3>, 3>;

/// X^(a), Z^(a) for a = 1, 2, 3 in the basis (empty, red, blue); index a-1.
struct OnSiteFamily {
  std::array<Mat3, 3> x;
  std::array<Mat3, 3> z;
};

const OnSiteFamily& onsite_family();

/// An operator acting on a few edges, stored column-wise over the 3^k local
/// states. Local index of digits (d_0..d_{k-1}) on support[0..k-1] is
/// sum d_t 3^t.
struct LocalOperator {
  struct Entry {
    std::uint32_t row;
    std::int64_t value;
  };
  std::vector<int> support;
  std::vector<std::vector<Entry>> columns;

  std::size_t local_dim() const { return columns.size(); }
  /// The operator as a matrix on its own 3^k space (edges relabelled 0..k-1).
  SparseOperator as_matrix() const;
};

LocalOperator product_operator(std::vector<int> support, const Mat3& m);
LocalOperator diagonal_operator(std::vector<int> support,
                                const std::function<std::int64_t(std::span<const Color>)>& value);
/// Weighted sum of local operators sharing one support.
LocalOperator combine(std::span<const LocalOperator> terms, std::span<const std::int64_t> weights);

/// Embeds a local operator into a basis. Images that fall outside an
/// explicit basis are dropped (the restriction P O P).
SparseOperator embed(const LocalOperator& op, const BasisPtr& basis);
SparseOperator embed_sum(std::span<const LocalOperator> ops, const BasisPtr& basis);

int distinct_colors(std::span<const Color> legs);

// Local terms. Vertex ids, face ids and pair indices are validated.
LocalOperator vertex_star(const Geometry& g, int v, int a);       // A_v^(a)
LocalOperator vertex_uniform_indicator(const Geometry& g, int v); // Delta_v
LocalOperator vertex_term(const Geometry& g, int v);              // h_v or h'_v
LocalOperator face_flip(const Geometry& g, int f, int a);         // B_f^(a)
LocalOperator face_color_count(const Geometry& g, int f);         // N_f
LocalOperator face_empty_indicator(const Geometry& g, int f);     // U0_f
LocalOperator plaquette_term(const Geometry& g, int f);           // h_f or h'_f
int find_face_pair(const Geometry& g, int f, int h);
LocalOperator pair_flip(const Geometry& g, int pair, int a);      // C^(a)
LocalOperator pair_color_count(const Geometry& g, int pair);      // N_<f,f'>
LocalOperator double_plaquette_term(const Geometry& g, int pair); // h_<f,f'>

enum class Model { square_inter, square_total, hex };

Model parse_model(const std::string& name);
std::string model_name(Model m);
bool model_fits(Model m, const Geometry& g);

std::vector<LocalOperator> vertex_terms(const Geometry& g);
/// Face terms plus, for square_total, the double-plaquette terms.
std::vector<LocalOperator> face_terms(Model m, const Geometry& g);

SparseOperator assemble_vertex_part(Model m, const Geometry& g, const BasisPtr& basis);  // H_v
SparseOperator assemble_face_part(Model m, const Geometry& g, const BasisPtr& basis);    // H_f
SparseOperator assemble_hamiltonian(Model m, const Geometry& g, const BasisPtr& basis);

/// Sum over terms of each term's smallest local eigenvalue.
double frustration_free_bound(Model m, const Geometry& g);

/// W_d^(a): product of X^(a) along the lattice cycle winding in d, or with
/// dual = true, product of Z^(a) along the dual cycle winding in d.
LocalOperator wilson_loop(const Geometry& g, Direction d, int a, bool dual);

struct EigenLevel {
  double value = 0.0;
  int multiplicity = 0;
};

/// Eigenvalues of a small operator, grouped at absolute tolerance tol.
std::vector<EigenLevel> local_spectrum(const SparseOperator& op, std::size_t dense_threshold = 4096,
                                       double tol = 1e-9);
std::vector<EigenLevel> group_levels(std::span<const double> sorted_values, double tol);

}  // namespace bicolor
