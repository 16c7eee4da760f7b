#include "bicolor/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "bicolor/errors.hpp"
#include "bicolor/kernels/kernels.hpp"

namespace bicolor {

namespace {

constexpr std::size_t kMaxDenseBlock = 8000;

bool same_level(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

// Both operators on a common full basis over the union of their supports.
std::pair<SparseOperator, SparseOperator> on_union(const LocalOperator& a, const LocalOperator& b) {
  std::vector<int> uni = a.support;
  uni.insert(uni.end(), b.support.begin(), b.support.end());
  std::sort(uni.begin(), uni.end());
  uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
  auto relabel = [&](const LocalOperator& op) {
    LocalOperator r = op;
    for (auto& e : r.support) e = static_cast<int>(std::lower_bound(uni.begin(), uni.end(), e) - uni.begin());
    return r;
  };
  auto basis = Basis::full(static_cast<int>(uni.size()));
  return {embed(relabel(a), basis), embed(relabel(b), basis)};
}

std::int64_t local_commutator(const LocalOperator& a, const LocalOperator& b) {
  auto [ma, mb] = on_union(a, b);
  return commutator_norm(ma, mb);
}

void require_full_space(const Geometry& g, const char* what) {
  if (g.num_edges() > 12) {
    throw BudgetExceeded(std::string(what) + " needs the full space of " + g.dims_string(),
                         static_cast<double>(pow3(g.num_edges())));
  }
}

}  // namespace

int EigenReport::ground_multiplicity() const { return levels.empty() ? 0 : levels.front().multiplicity; }

double EigenReport::max_residual() const {
  return residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
}

std::vector<EigenLevel> group_relative(const std::vector<double>& values, double tol) {
  std::vector<EigenLevel> out;
  for (double v : values) {
    if (!out.empty() && same_level(v, out.back().value, tol)) {
      ++out.back().multiplicity;
    } else {
      out.push_back({v, 1});
    }
  }
  return out;
}

EigenReport dense_spectrum(const SparseOperator& H, int k, bool keep_vectors) {
  const std::size_t n = H.dim();
  if (n == 0) throw std::invalid_argument("empty operator");
  struct Pair {
    double value;
    std::size_t block;
    Eigen::Index column;
  };
  const auto blocks = connected_blocks(H);
  std::vector<Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>> solvers;
  std::vector<Eigen::MatrixXd> mats;
  std::vector<Pair> pairs;
  solvers.reserve(blocks.size());
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& block = blocks[bi];
    if (block.size() > kMaxDenseBlock) {
      throw BudgetExceeded("dense block too large", static_cast<double>(block.size()));
    }
    const auto m = static_cast<Eigen::Index>(block.size());
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
      const std::size_t row = block[static_cast<std::size_t>(r)];
      for (std::size_t q = H.row_ptr()[row]; q < H.row_ptr()[row + 1]; ++q) {
        const auto col = static_cast<std::size_t>(H.cols()[q]);
        const auto c = std::lower_bound(block.begin(), block.end(), col) - block.begin();
        dense(r, c) = static_cast<double>(H.values()[q]);
      }
    }
    solvers.emplace_back(dense);
    mats.push_back(std::move(dense));
    for (Eigen::Index i = 0; i < m; ++i) pairs.push_back({solvers.back().eigenvalues()(i), bi, i});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.value < b.value; });

  std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 1)), n);
  while (take < n && same_level(pairs[take].value, pairs[0].value, kDegeneracyTol) &&
         same_level(pairs[take - 1].value, pairs[0].value, kDegeneracyTol)) {
    ++take;
  }

  EigenReport rep;
  rep.basis = H.basis() ? H.basis()->name() : "";
  rep.dim = n;
  rep.solver = "dense-blocks";
  rep.iterations = blocks.size();
  for (std::size_t i = 0; i < take; ++i) {
    const auto& p = pairs[i];
    const Eigen::VectorXd v = solvers[p.block].eigenvectors().col(p.column);
    rep.values.push_back(p.value);
    rep.residuals.push_back((mats[p.block] * v - p.value * v).norm());
    if (keep_vectors) {
      std::vector<double> full(n, 0.0);
      const auto& block = blocks[p.block];
      for (std::size_t r = 0; r < block.size(); ++r) full[block[r]] = v(static_cast<Eigen::Index>(r));
      rep.vectors.push_back(std::move(full));
    }
  }
  rep.levels = group_relative(rep.values, kDegeneracyTol);
  return rep;
}

EigenReport ground_space(const SparseOperator& H, int k, const SolverOptions& opt) {
  const bool dense = opt.method == SolverOptions::Method::dense ||
                     (opt.method == SolverOptions::Method::automatic && H.dim() < kDenseLimit);
  if (dense) {
    auto rep = dense_spectrum(H, k, opt.keep_vectors);
    if (!opt.resolve_ground) {
      // dense_spectrum always closes the ground level; trim back to k.
      const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(k), rep.values.size());
      rep.values.resize(keep);
      rep.residuals.resize(keep);
      if (rep.vectors.size() > keep) rep.vectors.resize(keep);
      rep.levels = group_relative(rep.values, kDegeneracyTol);
    }
    return rep;
  }
  return lanczos_lowest(H, k, opt);
}

double StateVector::norm() const { return kernels::norm2(amplitudes); }

StateVector uniform_state(const BasisPtr& basis, const std::vector<Packed>& members) {
  if (members.empty()) throw std::invalid_argument("empty component");
  StateVector s{basis, std::vector<double>(basis->size(), 0.0)};
  const double amp = 1.0 / std::sqrt(static_cast<double>(members.size()));
  for (Packed c : members) {
    const auto i = basis->index_of(c);
    if (!i) throw std::invalid_argument("component member outside basis");
    s.amplitudes[*i] = amp;
  }
  return s;
}

double expectation(const SparseOperator& H, const StateVector& psi) {
  std::vector<double> y(H.dim());
  H.apply(psi.amplitudes, y);
  return kernels::dot(psi.amplitudes, y) / kernels::dot(psi.amplitudes, psi.amplitudes);
}

double residual(const SparseOperator& H, const StateVector& psi) {
  if (!H.basis()->same_as(*psi.basis)) throw std::invalid_argument("state and operator bases differ");
  std::vector<double> y(H.dim());
  H.apply(psi.amplitudes, y);
  const double e = kernels::dot(psi.amplitudes, y) / kernels::dot(psi.amplitudes, psi.amplitudes);
  kernels::axpy(-e, psi.amplitudes, y);
  return kernels::norm2(y);
}

std::int64_t commutator_norm(const SparseOperator& a, const SparseOperator& b) {
  if (!a.basis()->same_as(*b.basis())) throw std::invalid_argument("commutator of operators on different bases");
  return commutator(a, b).max_abs();
}

std::vector<CommutatorCheck> commutator_checks(const Geometry& g) {
  if (g.kind != LatticeKind::square) throw std::invalid_argument("commutator checks need a square geometry");
  std::vector<CommutatorCheck> out;
  if (g.num_edges() <= 12) {
    auto basis = Basis::full(g.num_edges());
    const auto hv = assemble_vertex_part(Model::square_total, g, basis);
    const auto hf = assemble_face_part(Model::square_total, g, basis);
    const auto hf_only = assemble_face_part(Model::square_inter, g, basis);
    out.push_back({"[H_v,H_f] (faces and pairs)", commutator_norm(hv, hf), true});
    out.push_back({"[H_v,H_f] (faces only)", commutator_norm(hv, hf_only), true});
  }
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      std::int64_t worst_b = 0, worst_c = 0;
      for (int v = 0; v < g.num_vertices(); ++v) {
        const auto av = vertex_star(g, v, a);
        for (int f = 0; f < g.num_faces(); ++f) worst_b = std::max(worst_b, local_commutator(av, face_flip(g, f, b)));
        for (int p = 0; p < static_cast<int>(g.face_pairs.size()); ++p) {
          worst_c = std::max(worst_c, local_commutator(av, pair_flip(g, p, b)));
        }
      }
      out.push_back({"[A^(" + std::to_string(a) + "),B^(" + std::to_string(b) + ")]", worst_b, true});
      out.push_back({"[A^(" + std::to_string(a) + "),C^(" + std::to_string(b) + ")]", worst_c, true});
    }
  }
  out.push_back({"[B_f^(1),B_f^(2)]", local_commutator(face_flip(g, 0, 1), face_flip(g, 0, 2)), false});
  return out;
}

std::vector<WilsonRelation> wilson_relations(const Geometry& g) {
  require_full_space(g, "Wilson relations");
  auto basis = Basis::full(g.num_edges());
  auto W = [&](Direction d, int a) { return embed(wilson_loop(g, d, a, false), basis); };
  auto Wt = [&](Direction d, int a) { return embed(wilson_loop(g, d, a, true), basis); };
  const char* dn[2] = {"x", "y"};
  std::vector<WilsonRelation> out;
  auto record = [&](std::string name, const SparseOperator& lhs, const SparseOperator& rhs) {
    const std::int64_t dev = (lhs - rhs).max_abs();
    out.push_back({std::move(name), dev == 0, dev});
  };
  for (Direction d : {Direction::x, Direction::y}) {
    const Direction t = other(d);
    const std::string sd = dn[static_cast<int>(d)], st = dn[static_cast<int>(t)];
    for (int a = 1; a <= 3; ++a) {
      record("{W_" + sd + "^(" + std::to_string(a) + "),W~_" + st + "^(" + std::to_string(a) + ")} = 0",
             anticommutator(W(d, a), Wt(t, a)), SparseOperator::zero(basis));
    }
  }
  for (Direction d : {Direction::x, Direction::y}) {
    const std::string sd = dn[static_cast<int>(d)];
    const int cyc[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
    for (const auto& c : cyc) {
      record("{W_" + sd + "^(" + std::to_string(c[0]) + "),W_" + sd + "^(" + std::to_string(c[1]) + ")} = W_" + sd +
                 "^(" + std::to_string(c[2]) + ")",
             anticommutator(W(d, c[0]), W(d, c[1])), W(d, c[2]));
    }
  }
  // {W~_d^(b), W_t^(a)} = sign * W_t^(a), t transverse to d.
  const struct {
    int b, a, sign;
  } mixed[] = {{2, 1, -1}, {3, 1, -1}, {1, 2, -1}, {3, 2, 1}, {1, 3, 1}, {2, 3, 1}};
  for (Direction d : {Direction::x, Direction::y}) {
    const Direction t = other(d);
    const std::string sd = dn[static_cast<int>(d)], st = dn[static_cast<int>(t)];
    for (const auto& r : mixed) {
      const auto wt = W(t, r.a);
      record("{W~_" + sd + "^(" + std::to_string(r.b) + "),W_" + st + "^(" + std::to_string(r.a) + ")} = " +
                 (r.sign < 0 ? "-" : "") + "W_" + st + "^(" + std::to_string(r.a) + ")",
             anticommutator(Wt(d, r.b), wt), wt * r.sign);
    }
  }
  return out;
}

std::vector<WilsonLeak> wilson_leaks(const Geometry& g, std::size_t budget) {
  require_full_space(g, "Wilson leakage");
  auto basis = Basis::full(g.num_edges());
  MoveSet set;
  set.plaquette = set.double_plaquette = true;
  const auto summary = krylov_components(g, set, budget);
  std::vector<StateVector> gs;
  for (const auto& c : summary.components) gs.push_back(uniform_state(basis, c.members));

  std::vector<WilsonLeak> out;
  const char* dn[2] = {"x", "y"};
  std::vector<double> y(basis->size());
  for (bool dual : {false, true}) {
    for (Direction d : {Direction::x, Direction::y}) {
      for (int a = 1; a <= 3; ++a) {
        const auto w = embed(wilson_loop(g, d, a, dual), basis);
        const std::string name =
            std::string(dual ? "W~_" : "W_") + dn[static_cast<int>(d)] + "^(" + std::to_string(a) + ")";
        for (std::size_t i = 0; i < gs.size(); ++i) {
          w.apply(gs[i].amplitudes, y);
          double total = kernels::dot(y, y);
          for (const auto& s : gs) {
            const double ov = kernels::dot(s.amplitudes, y);
            total -= ov * ov;
          }
          out.push_back({name, i, std::sqrt(std::max(0.0, total)), std::sqrt(kernels::dot(y, y))});
        }
      }
    }
  }
  return out;
}

TowerScan tower_scan(Model m, const Geometry& g) {
  require_full_space(g, "tower scan");
  auto basis = Basis::full(g.num_edges());
  const auto hv = assemble_vertex_part(m, g, basis);
  const auto hf = assemble_face_part(m, g, basis);
  const auto h = hv + hf;
  if (!hv.is_diagonal()) throw std::logic_error("vertex part is not diagonal");

  TowerScan t;
  t.dim = basis->size();
  t.commutator = commutator_norm(hv, hf);
  const auto diag = hv.diagonal_entries();
  t.hv_closed_value = static_cast<double>(diag[0]);
  std::map<std::int64_t, std::vector<Packed>> by_value;
  for (std::size_t i = 0; i < diag.size(); ++i) by_value[diag[i]].push_back(basis->code(i));
  t.hv_integer = true;  // H_v is an integer diagonal matrix

  std::vector<double> sums;
  for (const auto& [ev, codes] : by_value) {
    t.hv_levels.push_back(ev);
    auto sub = Basis::of(g.num_edges(), codes, "H_v=" + std::to_string(ev));
    const auto rep = dense_spectrum(hf.restrict_to(sub), static_cast<int>(codes.size()), false);
    for (double ef : rep.values) sums.push_back(static_cast<double>(ev) + ef);
  }
  std::sort(sums.begin(), sums.end());
  const auto full = dense_spectrum(h, static_cast<int>(t.dim), false);
  for (std::size_t i = 0; i < sums.size(); ++i) t.max_deviation = std::max(t.max_deviation, std::abs(sums[i] - full.values[i]));
  t.multiset_equal = t.max_deviation <= 1e-9;
  return t;
}

MoveSet model_moves(Model m) {
  MoveSet s;
  switch (m) {
    case Model::square_inter: s.plaquette = true; break;
    case Model::square_total: s.plaquette = s.double_plaquette = true; break;
    case Model::hex: s.hex_plaquette = true; break;
  }
  return s;
}

DefectPattern defect_pair_pattern(const Geometry& g, const DefectSpec& d) {
  if (d.v1 < 0 || d.v2 < 0 || d.v1 >= g.num_vertices() || d.v2 >= g.num_vertices() || d.v1 == d.v2) {
    throw std::invalid_argument("defect vertices must be two distinct valid vertices");
  }
  if (d.color == Color::empty) throw std::invalid_argument("defect color must be red or blue");
  auto p = DefectPattern::closed(g.num_vertices());
  auto& bits = d.color == Color::red ? p.red : p.blue;
  bits[d.v1] = bits[d.v2] = 1;
  return p;
}

namespace {

DefectFinding measure_component(const DefectSpec& d, const SparseOperator& H, const BasisPtr& basis,
                                const MoveGraphSummary& comps, std::size_t ci, double ground_energy) {
  DefectFinding f;
  f.defect = d;
  f.sector_size = basis->size();
  f.component = ci;
  f.component_size = comps.components[ci].size();
  const auto psi = uniform_state(basis, comps.components[ci].members);
  f.energy = expectation(H, psi);
  f.offset = f.energy - ground_energy;
  f.residual = residual(H, psi);
  f.exact = f.residual < 1e-10;
  f.integer_offset = std::abs(f.offset - std::round(f.offset)) < 1e-9;
  return f;
}

}  // namespace

DefectFinding defect_tower_state(Model m, const Geometry& g, const DefectSpec& d, std::size_t component,
                                 double ground_energy, std::size_t budget) {
  auto codes = enumerate_sector(g, defect_pair_pattern(g, d), budget);
  if (codes.empty()) throw std::invalid_argument("empty defect sector");
  auto basis = Basis::of(g.num_edges(), codes, "defect sector");
  const auto comps = krylov_components(g, model_moves(m), std::move(codes));
  if (component >= comps.components.size()) throw std::out_of_range("component index out of range");
  const auto H = assemble_hamiltonian(m, g, basis);
  return measure_component(d, H, basis, comps, component, ground_energy);
}

std::vector<DefectFinding> defect_tower_scan(Model m, const Geometry& g, double ground_energy, std::size_t budget) {
  std::set<std::pair<int, int>> pairs;
  for (const auto& ev : g.edge_vertices) pairs.insert({std::min(ev[0], ev[1]), std::max(ev[0], ev[1])});
  std::vector<DefectFinding> out;
  for (const auto& [u, v] : pairs) {
    for (Color c : {Color::red, Color::blue}) {
      const DefectSpec d{u, v, c};
      auto codes = enumerate_sector(g, defect_pair_pattern(g, d), budget);
      if (codes.empty()) continue;
      auto basis = Basis::of(g.num_edges(), codes, "defect sector");
      const auto comps = krylov_components(g, model_moves(m), std::move(codes));
      const auto H = assemble_hamiltonian(m, g, basis);
      for (std::size_t ci = 0; ci < comps.components.size(); ++ci) {
        out.push_back(measure_component(d, H, basis, comps, ci, ground_energy));
      }
    }
  }
  return out;
}

}  // namespace bicolor
