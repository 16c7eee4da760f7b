#pragma once
// Exact integer sparse operators over a configuration basis.

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bicolor/kernels/kernels.hpp"
#include "bicolor/lattice.hpp"

namespace bicolor {

/// Either the full 3^E space of a geometry or an explicit ascending list of
/// packed configurations (a defect sector, a Krylov component, ...).
class Basis {
 public:
  static std::shared_ptr<const Basis> full(int num_edges);
  static std::shared_ptr<const Basis> of(int num_edges, std::vector<Packed> codes, std::string name);

  int num_edges() const { return num_edges_; }
  bool is_full() const { return full_; }
  std::size_t size() const { return full_ ? static_cast<std::size_t>(pow3(num_edges_)) : codes_.size(); }
  Packed code(std::size_t i) const { return full_ ? static_cast<Packed>(i) : codes_[i]; }
  std::optional<std::size_t> index_of(Packed code) const;
  const std::string& name() const { return name_; }

  bool same_as(const Basis& other) const;

 private:
  Basis() = default;
  int num_edges_ = 0;
  bool full_ = true;
  std::vector<Packed> codes_;
  std::string name_;
};

using BasisPtr = std::shared_ptr<const Basis>;

struct Triplet {
  std::size_t row;
  std::size_t col;
  std::int64_t value;
};

/// CSR storage with exact int64 entries, sorted columns and no stored zeros.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(BasisPtr basis, std::vector<Triplet> entries);
  static SparseOperator zero(BasisPtr basis);
  static SparseOperator identity(BasisPtr basis);
  static SparseOperator diagonal(BasisPtr basis, std::span<const std::int64_t> diag);
  /// Adopts CSR arrays; columns in each row must be ascending and nonzero.
  static SparseOperator from_csr(BasisPtr basis, std::vector<std::size_t> row_ptr,
                                 std::vector<std::int32_t> cols, std::vector<std::int64_t> vals);

  const BasisPtr& basis() const { return basis_; }
  std::size_t dim() const { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
  std::size_t nnz() const { return vals_.size(); }

  std::int64_t at(std::size_t row, std::size_t col) const;
  std::vector<std::int64_t> diagonal_entries() const;
  bool is_diagonal() const;
  bool is_symmetric() const;
  std::int64_t max_abs() const;

  SparseOperator transpose() const;
  SparseOperator operator+(const SparseOperator& o) const;
  SparseOperator operator-(const SparseOperator& o) const;
  SparseOperator operator*(std::int64_t s) const;
  SparseOperator& operator+=(const SparseOperator& o);
  bool operator==(const SparseOperator& o) const;

  /// Exact product this * o.
  SparseOperator multiply(const SparseOperator& o) const;
  /// Restriction to a sub-basis: keeps entries whose row and column both lie
  /// in `sub` (P O P).
  SparseOperator restrict_to(BasisPtr sub) const;

  /// y = O x in double precision through the dispatched kernels.
  void apply(std::span<const double> x, std::span<double> y) const;
  kernels::CsrView view() const;

  Eigen::MatrixXd to_dense() const;

  /// Visit nonzeros row by row.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t r = 0; r + 1 < row_ptr_.size(); ++r) {
      for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) f(r, static_cast<std::size_t>(cols_[k]), vals_[k]);
    }
  }

  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const std::int32_t> cols() const { return cols_; }
  std::span<const std::int64_t> values() const { return vals_; }

 private:
  void ensure_double_values() const;

  BasisPtr basis_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::int32_t> cols_;
  std::vector<std::int64_t> vals_;
  mutable std::vector<double> dvals_;
};

/// Index sets of the connected components of the operator's nonzero
/// pattern (treated as undirected), each ascending, ordered by first index.
std::vector<std::vector<std::size_t>> connected_blocks(const SparseOperator& op);

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);
SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b);

struct CooHeader {
  std::string model;
  std::string geometry;
  std::uint64_t geometry_hash = 0;
};

/// Coordinate text format: a '#' header naming basis, model and geometry hash,
/// then one "row col value" line per nonzero in row-major order.
void write_coo(std::ostream& os, const SparseOperator& op, const CooHeader& header);

}  // namespace bicolor
