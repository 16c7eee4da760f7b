#include "bicolor/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace bicolor {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Digits of `edges` packed base 3 in the order given.
Packed project(Packed code, const std::vector<int>& edges) {
  Packed out = 0;
  for (auto it = edges.rbegin(); it != edges.rend(); ++it) out = out * 3 + static_cast<Packed>(color_at(code, *it));
  return out;
}

}  // namespace

Bipartition vertex_region(const Geometry& g, std::vector<int> vertices, std::string description) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (vertices.empty()) throw std::invalid_argument("empty region");
  std::vector<char> in(static_cast<std::size_t>(g.num_vertices()), 0);
  for (int v : vertices) {
    if (v < 0 || v >= g.num_vertices()) throw std::out_of_range("invalid vertex id");
    in[v] = 1;
  }
  Bipartition p;
  p.region = vertices;
  p.description = description.empty() ? "vertex region" : std::move(description);
  for (int e = 0; e < g.num_edges(); ++e) {
    const int k = in[g.edge_vertices[e][0]] + in[g.edge_vertices[e][1]];
    if (k > 0) p.edges_a.push_back(e);
    if (k == 0) p.edges_b.push_back(e);
    if (k == 1) p.cut.push_back(e);
  }
  // Boundary components: cut edges on a common face are connected.
  UnionFind uf(p.cut.size());
  for (std::size_t i = 0; i < p.cut.size(); ++i) {
    for (std::size_t j = i + 1; j < p.cut.size(); ++j) {
      const auto& fi = g.edge_faces[p.cut[i]];
      const auto& fj = g.edge_faces[p.cut[j]];
      if (fi[0] == fj[0] || fi[0] == fj[1] || fi[1] == fj[0] || fi[1] == fj[1]) uf.unite(i, j);
    }
  }
  std::map<std::size_t, std::vector<int>> groups;
  for (std::size_t i = 0; i < p.cut.size(); ++i) groups[uf.find(i)].push_back(p.cut[i]);
  for (auto& [root, edges] : groups) p.boundaries.push_back(std::move(edges));
  return p;
}

Bipartition column_region(const Geometry& g, int first, int count) {
  if (g.kind != LatticeKind::square) throw std::invalid_argument("column regions need a square geometry");
  if (count < 1 || count >= g.lx || first < 0 || first >= g.lx) throw std::invalid_argument("invalid column range");
  std::vector<int> verts;
  for (int i = 0; i < g.ly; ++i) {
    for (int k = 0; k < count; ++k) verts.push_back(i * g.lx + (first + k) % g.lx);
  }
  return vertex_region(g, std::move(verts),
                       "columns " + std::to_string(first) + ".." + std::to_string(first + count - 1));
}

Bipartition dimer_region(const Geometry& g, int cell) {
  if (g.kind != LatticeKind::hex) throw std::invalid_argument("dimer regions need a hexagonal geometry");
  if (cell < 0 || cell >= g.lx * g.ly) throw std::out_of_range("invalid cell");
  return vertex_region(g, {2 * cell, 2 * cell + 1}, "dimer " + std::to_string(cell));
}

Bipartition hexagon_region(const Geometry& g, int f) {
  if (g.kind != LatticeKind::hex) throw std::invalid_argument("hexagon regions need a hexagonal geometry");
  if (f < 0 || f >= g.num_faces()) throw std::out_of_range("invalid face id");
  std::vector<int> verts;
  for (int e : g.face_edges[f]) {
    verts.push_back(g.edge_vertices[e][0]);
    verts.push_back(g.edge_vertices[e][1]);
  }
  return vertex_region(g, std::move(verts), "hexagon " + std::to_string(f));
}

std::string restrict_string(Packed code, const std::vector<int>& edges) {
  std::string s;
  s.reserve(edges.size());
  for (int e : edges) s.push_back(color_char(color_at(code, e)));
  return s;
}

std::vector<double> SchmidtSpectrum::probabilities() const {
  std::vector<double> p;
  for (const auto& e : entries) p.push_back(e.p_value);
  std::sort(p.rbegin(), p.rend());
  return p;
}

SchmidtSpectrum schmidt_spectrum_by_counting(const std::vector<Packed>& component, const Bipartition& part) {
  if (component.empty()) throw std::invalid_argument("empty component");
  std::map<Packed, std::size_t> a_id, b_id;
  std::vector<std::pair<Packed, Packed>> links;
  links.reserve(component.size());
  for (Packed c : component) {
    const Packed ca = project(c, part.edges_a);
    const Packed cb = project(c, part.edges_b);
    a_id.emplace(ca, 0);
    b_id.emplace(cb, 0);
    links.emplace_back(ca, cb);
  }
  std::size_t next = 0;
  for (auto& [k, v] : a_id) v = next++;
  for (auto& [k, v] : b_id) v = next++;

  UnionFind uf(next);
  for (const auto& [ca, cb] : links) uf.unite(a_id.at(ca), b_id.at(cb));

  struct Block {
    std::vector<Packed> a_codes;
    std::vector<Packed> b_codes;
    std::vector<std::pair<Packed, Packed>> links;
  };
  std::map<std::size_t, Block> blocks;
  for (const auto& [ca, id] : a_id) blocks[uf.find(id)].a_codes.push_back(ca);
  for (const auto& [cb, id] : b_id) blocks[uf.find(id)].b_codes.push_back(cb);
  for (const auto& l : links) blocks[uf.find(a_id.at(l.first))].links.push_back(l);

  // Positions of the cut edges inside edges_a, for reading sigma off a code.
  std::vector<int> cut_pos;
  for (int e : part.cut) {
    cut_pos.push_back(static_cast<int>(std::lower_bound(part.edges_a.begin(), part.edges_a.end(), e) -
                                       part.edges_a.begin()));
  }
  auto sigma_of = [&](Packed ca) { return restrict_string(ca, cut_pos); };

  SchmidtSpectrum s;
  s.total = component.size();
  BigRational sum = 0;
  BigInt count = 0;
  std::set<std::string> sigmas;
  for (auto& [root, b] : blocks) {
    const std::uint64_t na = b.a_codes.size();
    const std::uint64_t nb = b.b_codes.size();
    const std::string sigma = sigma_of(b.a_codes.front());
    sigmas.insert(sigma);
    count += BigInt(na) * nb;
    if (b.links.size() == na * nb) {
      SchmidtEntry e{sigma, na, nb, BigRational(BigInt(na) * nb, BigInt(s.total)), 0.0, true};
      e.p_value = to_double(e.p);
      sum += e.p;
      s.entries.push_back(std::move(e));
      continue;
    }
    // Not a product block: singular values of its 0/1 incidence matrix.
    s.exact = false;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(na), static_cast<Eigen::Index>(nb));
    for (const auto& [ca, cb] : b.links) {
      const auto r = std::lower_bound(b.a_codes.begin(), b.a_codes.end(), ca) - b.a_codes.begin();
      const auto c = std::lower_bound(b.b_codes.begin(), b.b_codes.end(), cb) - b.b_codes.begin();
      m(r, c) = 1.0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
      const double sv = svd.singularValues()(i);
      const double p = sv * sv / static_cast<double>(s.total);
      if (p > 1e-14) s.entries.push_back({sigma, na, nb, BigRational(0), p, false});
    }
  }
  std::stable_sort(s.entries.begin(), s.entries.end(),
                   [](const SchmidtEntry& a, const SchmidtEntry& b) { return a.sigma < b.sigma; });
  s.rank = s.entries.size();
  s.distinct_sigma = sigmas.size();
  s.sum_is_one = s.exact && sum == 1;
  s.count_consistent = count == BigInt(s.total);
  s.entropy = entanglement_entropy(s);

  s.boundary_strings.resize(part.boundaries.size());
  for (Packed c : component) {
    for (std::size_t k = 0; k < part.boundaries.size(); ++k) {
      s.boundary_strings[k].insert(restrict_string(c, part.boundaries[k]));
    }
  }
  return s;
}

std::vector<double> dense_schmidt_oracle(const StateVector& psi, const Bipartition& part) {
  std::map<Packed, Eigen::Index> rows, cols;
  std::vector<std::tuple<Packed, Packed, double>> nz;
  for (std::size_t i = 0; i < psi.amplitudes.size(); ++i) {
    if (psi.amplitudes[i] == 0.0) continue;
    const Packed c = psi.basis->code(i);
    const Packed ca = project(c, part.edges_a);
    const Packed cb = project(c, part.edges_b);
    rows.emplace(ca, 0);
    cols.emplace(cb, 0);
    nz.emplace_back(ca, cb, psi.amplitudes[i]);
  }
  Eigen::Index k = 0;
  for (auto& [c, i] : rows) i = k++;
  k = 0;
  for (auto& [c, i] : cols) i = k++;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (const auto& [ca, cb, a] : nz) m(rows.at(ca), cols.at(cb)) += a;
  m /= m.norm();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double p = svd.singularValues()(i) * svd.singularValues()(i);
    if (p > 1e-14) out.push_back(p);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

double entanglement_entropy(const std::vector<double>& probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double entanglement_entropy(const SchmidtSpectrum& s) { return entanglement_entropy(s.probabilities()); }

std::set<std::string> intersecting_boundary_strings(std::size_t cut_length) {
  if (cut_length > 16) throw std::length_error("cut too long for string enumeration");
  std::set<std::string> out;
  const Packed total = pow3(static_cast<int>(cut_length));
  for (Packed c = 0; c < total; ++c) {
    std::string s;
    int red = 0, blue = 0;
    Packed x = c;
    for (std::size_t i = 0; i < cut_length; ++i, x /= 3) {
      const auto col = static_cast<Color>(x % 3);
      red += col == Color::red;
      blue += col == Color::blue;
      s.push_back(color_char(col));
    }
    if (red % 2 == 0 && blue % 2 == 0) out.insert(std::move(s));
  }
  return out;
}

std::set<std::string> realized_boundary_strings(const Geometry& g, const Bipartition& part, std::size_t budget) {
  std::set<std::string> out;
  for_each_sector_config(g, DefectPattern::closed(g.num_vertices()), budget,
                         [&](Packed c) { out.insert(restrict_string(c, part.cut)); });
  return out;
}

std::set<std::string> admissible_boundary_strings(const Geometry& g, const Bipartition& part, std::size_t budget) {
  if (g.kind == LatticeKind::square) return intersecting_boundary_strings(part.cut.size());
  return realized_boundary_strings(g, part, budget);
}

ScalingFit fit_area_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 4) throw std::invalid_argument("area-law fit needs at least 4 points");
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double two_l = 2.0 * points[static_cast<std::size_t>(i)].first;
    if (two_l <= 0.0) throw std::invalid_argument("l must be positive");
    a(i, 0) = two_l;
    a(i, 1) = -std::log(two_l);
    a(i, 2) = -1.0;
    y(i) = points[static_cast<std::size_t>(i)].second;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-12);
  if (qr.rank() < 3) throw std::invalid_argument("degenerate design matrix");
  const Eigen::VectorXd x = qr.solve(y);
  ScalingFit f;
  f.alpha = x(0);
  f.beta = x(1);
  f.gamma = x(2);
  f.points = points.size();
  f.residual = std::sqrt((a * x - y).squaredNorm() / static_cast<double>(n));
  return f;
}

}  // namespace bicolor
