#include "bicolor/operators.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace bicolor {

namespace {

Mat3 make(std::initializer_list<std::initializer_list<int>> rows) {
  Mat3 m{};
  int r = 0;
  for (auto row : rows) {
    int c = 0;
    for (int v : row) m[r][c++] = v;
    ++r;
  }
  return m;
}

void check_color_index(int a) {
  if (a < 1 || a > 3) throw std::invalid_argument("color index a must be 1, 2 or 3");
}

void check_id(int id, int count, const char* what) {
  if (id < 0 || id >= count) throw std::out_of_range(std::string("invalid ") + what + " id");
}

std::vector<Color> local_digits(std::size_t local, std::size_t k) {
  std::vector<Color> d(k);
  for (std::size_t t = 0; t < k; ++t) {
    d[t] = static_cast<Color>(local % 3);
    local /= 3;
  }
  return d;
}

std::size_t local_dim_for(std::size_t k) {
  if (k > 12) throw std::length_error("local operator support too large");
  return static_cast<std::size_t>(pow3(static_cast<int>(k)));
}

}  // namespace

const OnSiteFamily& onsite_family() {
  static const OnSiteFamily fam = [] {
    OnSiteFamily f;
    f.x[0] = make({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}});
    f.x[1] = make({{0, 0, 1}, {0, 0, 0}, {1, 0, 0}});
    f.x[2] = make({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}});
    f.z[0] = make({{1, 0, 0}, {0, -1, 0}, {0, 0, 0}});
    f.z[1] = make({{1, 0, 0}, {0, 0, 0}, {0, 0, -1}});
    f.z[2] = make({{0, 0, 0}, {0, 1, 0}, {0, 0, -1}});
    return f;
  }();
  return fam;
}

SparseOperator LocalOperator::as_matrix() const {
  auto basis = Basis::full(static_cast<int>(support.size()));
  std::vector<Triplet> t;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& e : columns[c]) t.push_back({e.row, c, e.value});
  }
  return SparseOperator(basis, std::move(t));
}

LocalOperator product_operator(std::vector<int> support, const Mat3& m) {
  LocalOperator op;
  const std::size_t k = support.size();
  op.support = std::move(support);
  op.columns.resize(local_dim_for(k));
  for (std::size_t col = 0; col < op.columns.size(); ++col) {
    const auto d = local_digits(col, k);
    std::vector<LocalOperator::Entry> cur{{0, 1}};
    std::uint32_t stride = 1;
    for (std::size_t t = 0; t < k; ++t, stride *= 3) {
      std::vector<LocalOperator::Entry> next;
      for (const auto& e : cur) {
        for (int r = 0; r < 3; ++r) {
          const int v = m[r][static_cast<int>(d[t])];
          if (v != 0) next.push_back({e.row + static_cast<std::uint32_t>(r) * stride, e.value * v});
        }
      }
      cur = std::move(next);
    }
    op.columns[col] = std::move(cur);
  }
  return op;
}

LocalOperator diagonal_operator(std::vector<int> support,
                                const std::function<std::int64_t(std::span<const Color>)>& value) {
  LocalOperator op;
  const std::size_t k = support.size();
  op.support = std::move(support);
  op.columns.resize(local_dim_for(k));
  for (std::size_t col = 0; col < op.columns.size(); ++col) {
    const auto d = local_digits(col, k);
    const std::int64_t v = value(d);
    if (v != 0) op.columns[col].push_back({static_cast<std::uint32_t>(col), v});
  }
  return op;
}

LocalOperator combine(std::span<const LocalOperator> terms, std::span<const std::int64_t> weights) {
  if (terms.empty() || terms.size() != weights.size()) throw std::invalid_argument("combine: bad arguments");
  LocalOperator out;
  out.support = terms[0].support;
  out.columns.resize(terms[0].columns.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].support != out.support) throw std::invalid_argument("combine: supports differ");
  }
  for (std::size_t col = 0; col < out.columns.size(); ++col) {
    std::map<std::uint32_t, std::int64_t> acc;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (const auto& e : terms[i].columns[col]) acc[e.row] += weights[i] * e.value;
    }
    for (const auto& [row, v] : acc) {
      if (v != 0) out.columns[col].push_back({row, v});
    }
  }
  return out;
}

SparseOperator embed_sum(std::span<const LocalOperator> ops, const BasisPtr& basis) {
  const std::size_t n = basis->size();
  const int ne = basis->num_edges();
  // Per operator: packed offset of every local state, so that the image of
  // code s under local entry (row <- col) is s - offset[col] + offset[row].
  struct Prepared {
    const LocalOperator* op;
    std::vector<Packed> offset;
    std::vector<Packed> weight;
  };
  std::vector<Prepared> prep;
  for (const auto& op : ops) {
    for (int e : op.support) {
      if (e < 0 || e >= ne) throw std::invalid_argument("local operator support outside geometry");
    }
    Prepared p{&op, std::vector<Packed>(op.local_dim(), 0), {}};
    for (int e : op.support) p.weight.push_back(pow3(e));
    for (std::size_t loc = 0; loc < op.local_dim(); ++loc) {
      std::size_t rest = loc;
      for (std::size_t t = 0; t < op.support.size(); ++t) {
        p.offset[loc] += static_cast<Packed>(rest % 3) * p.weight[t];
        rest /= 3;
      }
    }
    prep.push_back(std::move(p));
  }

  // Build column-wise (CSC of O, i.e. CSR of O^T), then transpose.
  std::vector<std::size_t> ptr(n + 1, 0);
  std::vector<std::int32_t> idx;
  std::vector<std::int64_t> val;
  std::vector<std::pair<std::size_t, std::int64_t>> buf;
  for (std::size_t j = 0; j < n; ++j) {
    const Packed s = basis->code(j);
    buf.clear();
    for (const auto& p : prep) {
      std::size_t loc = 0;
      std::size_t stride = 1;
      for (std::size_t t = 0; t < p.weight.size(); ++t, stride *= 3) {
        loc += static_cast<std::size_t>((s / p.weight[t]) % 3) * stride;
      }
      for (const auto& e : p.op->columns[loc]) {
        const Packed image = s - p.offset[loc] + p.offset[e.row];
        if (basis->is_full()) {
          buf.emplace_back(static_cast<std::size_t>(image), e.value);
        } else if (auto i = basis->index_of(image)) {
          buf.emplace_back(*i, e.value);
        }
      }
    }
    std::sort(buf.begin(), buf.end());
    for (std::size_t k = 0; k < buf.size();) {
      std::int64_t v = 0;
      std::size_t q = k;
      for (; q < buf.size() && buf[q].first == buf[k].first; ++q) v += buf[q].second;
      if (v != 0) {
        idx.push_back(static_cast<std::int32_t>(buf[k].first));
        val.push_back(v);
      }
      k = q;
    }
    ptr[j + 1] = idx.size();
  }
  return SparseOperator::from_csr(basis, std::move(ptr), std::move(idx), std::move(val)).transpose();
}

SparseOperator embed(const LocalOperator& op, const BasisPtr& basis) {
  return embed_sum(std::span<const LocalOperator>(&op, 1), basis);
}

int distinct_colors(std::span<const Color> legs) {
  bool seen[3] = {false, false, false};
  for (Color c : legs) seen[static_cast<int>(c)] = true;
  return seen[0] + seen[1] + seen[2];
}

LocalOperator vertex_star(const Geometry& g, int v, int a) {
  check_id(v, g.num_vertices(), "vertex");
  check_color_index(a);
  return product_operator(g.vertex_edges[v], onsite_family().z[a - 1]);
}

LocalOperator vertex_uniform_indicator(const Geometry& g, int v) {
  check_id(v, g.num_vertices(), "vertex");
  return diagonal_operator(g.vertex_edges[v], [](std::span<const Color> legs) -> std::int64_t {
    return distinct_colors(legs) == 1 ? 1 : 0;
  });
}

LocalOperator vertex_term(const Geometry& g, int v) {
  const int colors = g.kind == LatticeKind::square ? 3 : 2;
  std::vector<LocalOperator> parts;
  std::vector<std::int64_t> w;
  for (int a = 1; a <= colors; ++a) {
    parts.push_back(vertex_star(g, v, a));
    w.push_back(-1);
  }
  parts.push_back(vertex_uniform_indicator(g, v));
  w.push_back(1);
  return combine(parts, w);
}

LocalOperator face_flip(const Geometry& g, int f, int a) {
  check_id(f, g.num_faces(), "face");
  check_color_index(a);
  return product_operator(g.face_edges[f], onsite_family().x[a - 1]);
}

LocalOperator face_color_count(const Geometry& g, int f) {
  check_id(f, g.num_faces(), "face");
  return diagonal_operator(g.face_edges[f], [](std::span<const Color> legs) -> std::int64_t {
    return distinct_colors(legs);
  });
}

LocalOperator face_empty_indicator(const Geometry& g, int f) {
  check_id(f, g.num_faces(), "face");
  return diagonal_operator(g.face_edges[f], [](std::span<const Color> legs) -> std::int64_t {
    return std::all_of(legs.begin(), legs.end(), [](Color c) { return c == Color::empty; }) ? 1 : 0;
  });
}

LocalOperator plaquette_term(const Geometry& g, int f) {
  std::vector<LocalOperator> parts;
  std::vector<std::int64_t> w;
  if (g.kind == LatticeKind::square) {
    for (int a = 1; a <= 3; ++a) {
      parts.push_back(face_flip(g, f, a));
      w.push_back(-1);
    }
    parts.push_back(face_color_count(g, f));
    w.push_back(-1);
  } else {
    for (int a = 1; a <= 2; ++a) {
      parts.push_back(face_flip(g, f, a));
      w.push_back(-1);
    }
    parts.push_back(face_empty_indicator(g, f));
    w.push_back(1);
  }
  return combine(parts, w);
}

int find_face_pair(const Geometry& g, int f, int h) {
  check_id(f, g.num_faces(), "face");
  check_id(h, g.num_faces(), "face");
  for (std::size_t i = 0; i < g.face_pairs.size(); ++i) {
    const auto& p = g.face_pairs[i];
    if ((p.first == f && p.second == h) || (p.first == h && p.second == f)) return static_cast<int>(i);
  }
  throw std::invalid_argument("faces are not adjacent");
}

LocalOperator pair_flip(const Geometry& g, int pair, int a) {
  check_id(pair, static_cast<int>(g.face_pairs.size()), "face pair");
  check_color_index(a);
  return product_operator(g.face_pairs[pair].support, onsite_family().x[a - 1]);
}

LocalOperator pair_color_count(const Geometry& g, int pair) {
  check_id(pair, static_cast<int>(g.face_pairs.size()), "face pair");
  return diagonal_operator(g.face_pairs[pair].support, [](std::span<const Color> legs) -> std::int64_t {
    return distinct_colors(legs);
  });
}

LocalOperator double_plaquette_term(const Geometry& g, int pair) {
  std::vector<LocalOperator> parts;
  std::vector<std::int64_t> w;
  for (int a = 1; a <= 3; ++a) {
    parts.push_back(pair_flip(g, pair, a));
    w.push_back(-1);
  }
  parts.push_back(pair_color_count(g, pair));
  w.push_back(-1);
  return combine(parts, w);
}

Model parse_model(const std::string& name) {
  if (name == "square-inter" || name == "square-interH") return Model::square_inter;
  if (name == "square-total" || name == "square-totalH" || name == "square-int") return Model::square_total;
  if (name == "hex") return Model::hex;
  throw std::invalid_argument("unknown model '" + name + "'");
}

std::string model_name(Model m) {
  switch (m) {
    case Model::square_inter: return "square-inter";
    case Model::square_total: return "square-total";
    case Model::hex: return "hex";
  }
  return "?";
}

bool model_fits(Model m, const Geometry& g) {
  return (m == Model::hex) == (g.kind == LatticeKind::hex);
}

std::vector<LocalOperator> vertex_terms(const Geometry& g) {
  std::vector<LocalOperator> out;
  for (int v = 0; v < g.num_vertices(); ++v) out.push_back(vertex_term(g, v));
  return out;
}

std::vector<LocalOperator> face_terms(Model m, const Geometry& g) {
  if (!model_fits(m, g)) throw std::invalid_argument("model does not match geometry kind");
  std::vector<LocalOperator> out;
  for (int f = 0; f < g.num_faces(); ++f) out.push_back(plaquette_term(g, f));
  if (m == Model::square_total) {
    for (int p = 0; p < static_cast<int>(g.face_pairs.size()); ++p) out.push_back(double_plaquette_term(g, p));
  }
  return out;
}

SparseOperator assemble_vertex_part(Model m, const Geometry& g, const BasisPtr& basis) {
  if (!model_fits(m, g)) throw std::invalid_argument("model does not match geometry kind");
  if (basis->num_edges() != g.num_edges()) throw std::invalid_argument("basis does not match geometry");
  return embed_sum(vertex_terms(g), basis);
}

SparseOperator assemble_face_part(Model m, const Geometry& g, const BasisPtr& basis) {
  if (basis->num_edges() != g.num_edges()) throw std::invalid_argument("basis does not match geometry");
  return embed_sum(face_terms(m, g), basis);
}

SparseOperator assemble_hamiltonian(Model m, const Geometry& g, const BasisPtr& basis) {
  if (!model_fits(m, g)) throw std::invalid_argument("model does not match geometry kind");
  if (basis->num_edges() != g.num_edges()) throw std::invalid_argument("basis does not match geometry");
  auto terms = vertex_terms(g);
  auto faces = face_terms(m, g);
  terms.insert(terms.end(), faces.begin(), faces.end());
  return embed_sum(terms, basis);
}

double frustration_free_bound(Model m, const Geometry& g) {
  auto terms = vertex_terms(g);
  auto faces = face_terms(m, g);
  terms.insert(terms.end(), faces.begin(), faces.end());
  // Identical local matrices recur across the lattice; cache by content.
  std::map<std::pair<std::size_t, std::vector<std::int64_t>>, double> cache;
  double total = 0.0;
  for (const auto& t : terms) {
    const SparseOperator m_local = t.as_matrix();
    std::vector<std::int64_t> key;
    m_local.for_each([&](std::size_t r, std::size_t c, std::int64_t v) {
      key.push_back(static_cast<std::int64_t>(r));
      key.push_back(static_cast<std::int64_t>(c));
      key.push_back(v);
    });
    auto k = std::make_pair(m_local.dim(), std::move(key));
    auto it = cache.find(k);
    if (it == cache.end()) {
      const auto levels = local_spectrum(m_local, 1u << 20);
      it = cache.emplace(std::move(k), levels.front().value).first;
    }
    total += it->second;
  }
  return total;
}

LocalOperator wilson_loop(const Geometry& g, Direction d, int a, bool dual) {
  if (g.kind != LatticeKind::square) throw std::invalid_argument("Wilson loops are defined on the square torus");
  check_color_index(a);
  const auto& fam = onsite_family();
  return dual ? product_operator(g.dual_cycle(d), fam.z[a - 1]) : product_operator(g.cycle(d), fam.x[a - 1]);
}

std::vector<EigenLevel> group_levels(std::span<const double> sorted_values, double tol) {
  std::vector<EigenLevel> out;
  for (double v : sorted_values) {
    if (!out.empty() && std::abs(v - out.back().value) <= tol) {
      ++out.back().multiplicity;
    } else {
      out.push_back({v, 1});
    }
  }
  return out;
}

std::vector<EigenLevel> local_spectrum(const SparseOperator& op, std::size_t dense_threshold, double tol) {
  if (op.dim() > dense_threshold) throw std::length_error("operator dimension above dense threshold");
  std::vector<double> values;
  values.reserve(op.dim());
  for (const auto& block : connected_blocks(op)) {
    const auto m = static_cast<Eigen::Index>(block.size());
    Eigen::MatrixXd dense(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
      for (Eigen::Index c = 0; c < m; ++c) {
        dense(r, c) = static_cast<double>(op.at(block[static_cast<std::size_t>(r)], block[static_cast<std::size_t>(c)]));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < m; ++i) values.push_back(es.eigenvalues()(i));
  }
  std::sort(values.begin(), values.end());
  return group_levels(values, tol);
}

}  // namespace bicolor
