#include "bicolor/sparse.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace bicolor {

std::shared_ptr<const Basis> Basis::full(int num_edges) {
  if (num_edges > kMaxPackedEdges) throw std::length_error("too many edges for a full basis");
  auto b = std::shared_ptr<Basis>(new Basis());
  b->num_edges_ = num_edges;
  b->full_ = true;
  b->name_ = "full";
  return b;
}

std::shared_ptr<const Basis> Basis::of(int num_edges, std::vector<Packed> codes, std::string name) {
  if (!std::is_sorted(codes.begin(), codes.end()) ||
      std::adjacent_find(codes.begin(), codes.end()) != codes.end()) {
    throw std::invalid_argument("basis codes must be strictly ascending");
  }
  auto b = std::shared_ptr<Basis>(new Basis());
  b->num_edges_ = num_edges;
  b->full_ = false;
  b->codes_ = std::move(codes);
  b->name_ = std::move(name);
  return b;
}

std::optional<std::size_t> Basis::index_of(Packed code) const {
  if (full_) {
    if (code < pow3(num_edges_)) return static_cast<std::size_t>(code);
    return std::nullopt;
  }
  auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
  if (it == codes_.end() || *it != code) return std::nullopt;
  return static_cast<std::size_t>(it - codes_.begin());
}

bool Basis::same_as(const Basis& other) const {
  if (this == &other) return true;
  return num_edges_ == other.num_edges_ && full_ == other.full_ && codes_ == other.codes_;
}

SparseOperator::SparseOperator(BasisPtr basis, std::vector<Triplet> entries) : basis_(std::move(basis)) {
  const std::size_t n = basis_->size();
  if (n > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    throw std::length_error("basis too large for 32-bit column indices");
  }
  std::sort(entries.begin(), entries.end(),
            [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  row_ptr_.assign(n + 1, 0);
  for (std::size_t k = 0; k < entries.size();) {
    const auto& t = entries[k];
    if (t.row >= n || t.col >= n) throw std::out_of_range("triplet outside basis");
    std::int64_t v = 0;
    std::size_t j = k;
    for (; j < entries.size() && entries[j].row == t.row && entries[j].col == t.col; ++j) v += entries[j].value;
    if (v != 0) {
      cols_.push_back(static_cast<std::int32_t>(t.col));
      vals_.push_back(v);
      ++row_ptr_[t.row + 1];
    }
    k = j;
  }
  for (std::size_t r = 0; r < n; ++r) row_ptr_[r + 1] += row_ptr_[r];
}

SparseOperator SparseOperator::zero(BasisPtr basis) { return SparseOperator(std::move(basis), {}); }

SparseOperator SparseOperator::identity(BasisPtr basis) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < basis->size(); ++i) t.push_back({i, i, 1});
  return SparseOperator(std::move(basis), std::move(t));
}

SparseOperator SparseOperator::diagonal(BasisPtr basis, std::span<const std::int64_t> diag) {
  if (diag.size() != basis->size()) throw std::invalid_argument("diagonal length mismatch");
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] != 0) t.push_back({i, i, diag[i]});
  }
  return SparseOperator(std::move(basis), std::move(t));
}

SparseOperator SparseOperator::from_csr(BasisPtr basis, std::vector<std::size_t> row_ptr,
                                        std::vector<std::int32_t> cols, std::vector<std::int64_t> vals) {
  if (row_ptr.size() != basis->size() + 1 || row_ptr.back() != cols.size() || cols.size() != vals.size()) {
    throw std::invalid_argument("inconsistent CSR arrays");
  }
  SparseOperator op;
  op.basis_ = std::move(basis);
  op.row_ptr_ = std::move(row_ptr);
  op.cols_ = std::move(cols);
  op.vals_ = std::move(vals);
  return op;
}

std::int64_t SparseOperator::at(std::size_t row, std::size_t col) const {
  const auto b = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
  const auto e = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
  auto it = std::lower_bound(b, e, static_cast<std::int32_t>(col));
  if (it == e || *it != static_cast<std::int32_t>(col)) return 0;
  return vals_[static_cast<std::size_t>(it - cols_.begin())];
}

std::vector<std::int64_t> SparseOperator::diagonal_entries() const {
  std::vector<std::int64_t> d(dim(), 0);
  for (std::size_t r = 0; r < dim(); ++r) d[r] = at(r, r);
  return d;
}

bool SparseOperator::is_diagonal() const {
  for (std::size_t r = 0; r < dim(); ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      if (static_cast<std::size_t>(cols_[k]) != r) return false;
    }
  }
  return true;
}

bool SparseOperator::is_symmetric() const { return *this == transpose(); }

std::int64_t SparseOperator::max_abs() const {
  std::int64_t m = 0;
  for (auto v : vals_) m = std::max(m, v < 0 ? -v : v);
  return m;
}

SparseOperator SparseOperator::transpose() const {
  const std::size_t n = dim();
  std::vector<std::size_t> ptr(n + 1, 0);
  for (auto c : cols_) ++ptr[static_cast<std::size_t>(c) + 1];
  for (std::size_t r = 0; r < n; ++r) ptr[r + 1] += ptr[r];
  std::vector<std::int32_t> cols(nnz());
  std::vector<std::int64_t> vals(nnz());
  std::vector<std::size_t> fill(ptr.begin(), ptr.end() - 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const std::size_t slot = fill[static_cast<std::size_t>(cols_[k])]++;
      cols[slot] = static_cast<std::int32_t>(r);
      vals[slot] = vals_[k];
    }
  }
  return from_csr(basis_, std::move(ptr), std::move(cols), std::move(vals));
}

SparseOperator SparseOperator::operator+(const SparseOperator& o) const {
  SparseOperator out = *this;
  out += o;
  return out;
}

SparseOperator& SparseOperator::operator+=(const SparseOperator& o) {
  if (!basis_->same_as(*o.basis_)) throw std::invalid_argument("operator bases differ");
  std::vector<Triplet> t;
  t.reserve(nnz() + o.nnz());
  for_each([&](std::size_t r, std::size_t c, std::int64_t v) { t.push_back({r, c, v}); });
  o.for_each([&](std::size_t r, std::size_t c, std::int64_t v) { t.push_back({r, c, v}); });
  *this = SparseOperator(basis_, std::move(t));
  return *this;
}

SparseOperator SparseOperator::operator-(const SparseOperator& o) const { return *this + o * -1; }

SparseOperator SparseOperator::operator*(std::int64_t s) const {
  SparseOperator out = *this;
  if (s == 0) return zero(basis_);
  for (auto& v : out.vals_) v *= s;
  out.dvals_.clear();
  return out;
}

bool SparseOperator::operator==(const SparseOperator& o) const {
  return basis_->same_as(*o.basis_) && row_ptr_ == o.row_ptr_ && cols_ == o.cols_ && vals_ == o.vals_;
}

SparseOperator SparseOperator::multiply(const SparseOperator& o) const {
  if (!basis_->same_as(*o.basis_)) throw std::invalid_argument("operator bases differ");
  const std::size_t n = dim();
  std::vector<std::int64_t> acc(n, 0);
  std::vector<std::size_t> marker(n, std::numeric_limits<std::size_t>::max());
  std::vector<std::size_t> touched;
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < n; ++r) {
    touched.clear();
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const auto mid = static_cast<std::size_t>(cols_[k]);
      const std::int64_t a = vals_[k];
      for (std::size_t q = o.row_ptr_[mid]; q < o.row_ptr_[mid + 1]; ++q) {
        const auto c = static_cast<std::size_t>(o.cols_[q]);
        if (marker[c] != r) {
          marker[c] = r;
          acc[c] = 0;
          touched.push_back(c);
        }
        acc[c] += a * o.vals_[q];
      }
    }
    for (auto c : touched) {
      if (acc[c] != 0) t.push_back({r, c, acc[c]});
    }
  }
  return SparseOperator(basis_, std::move(t));
}

SparseOperator SparseOperator::restrict_to(BasisPtr sub) const {
  if (sub->num_edges() != basis_->num_edges()) throw std::invalid_argument("sub-basis edge count differs");
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < sub->size(); ++i) {
    const auto row = basis_->index_of(sub->code(i));
    if (!row) throw std::invalid_argument("sub-basis is not contained in the operator basis");
    for (std::size_t k = row_ptr_[*row]; k < row_ptr_[*row + 1]; ++k) {
      const auto col = sub->index_of(basis_->code(static_cast<std::size_t>(cols_[k])));
      if (col) t.push_back({i, *col, vals_[k]});
    }
  }
  return SparseOperator(std::move(sub), std::move(t));
}

void SparseOperator::ensure_double_values() const {
  if (dvals_.size() != vals_.size()) dvals_.assign(vals_.begin(), vals_.end());
}

kernels::CsrView SparseOperator::view() const {
  ensure_double_values();
  return {dim(), row_ptr_, cols_, dvals_};
}

void SparseOperator::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != dim() || y.size() != dim()) throw std::invalid_argument("vector length mismatch");
  kernels::csr_matvec(view(), x, y);
}

Eigen::MatrixXd SparseOperator::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
  for_each([&](std::size_t r, std::size_t c, std::int64_t v) {
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = static_cast<double>(v);
  });
  return m;
}

std::vector<std::vector<std::size_t>> connected_blocks(const SparseOperator& op) {
  const std::size_t n = op.dim();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  op.for_each([&](std::size_t r, std::size_t c, std::int64_t) {
    const auto a = find(r), b = find(c);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  });
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> slot(n, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < n; ++i) {
    const auto root = find(i);
    if (slot[root] == static_cast<std::size_t>(-1)) {
      slot[root] = blocks.size();
      blocks.emplace_back();
    }
    blocks[slot[root]].push_back(i);
  }
  return blocks;
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
  return a.multiply(b) - b.multiply(a);
}

SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b) {
  return a.multiply(b) + b.multiply(a);
}

void write_coo(std::ostream& os, const SparseOperator& op, const CooHeader& header) {
  os << "# basis " << op.basis()->name() << " dim " << op.dim() << '\n';
  os << "# model " << header.model << '\n';
  os << "# geometry " << header.geometry << " hash " << std::hex << header.geometry_hash << std::dec << '\n';
  os << "# nnz " << op.nnz() << '\n';
  op.for_each([&](std::size_t r, std::size_t c, std::int64_t v) { os << r << ' ' << c << ' ' << v << '\n'; });
}

}  // namespace bicolor
