#include "bicolor/dynamics.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bicolor/errors.hpp"

namespace bicolor {

namespace {

// Image digit of X^(a) acting on digit d, or -1 when annihilated.
constexpr int kFlip[4][3] = {{-1, -1, -1}, {1, 0, -1}, {2, -1, 0}, {-1, 2, 1}};

std::size_t index_in(const std::vector<Packed>& configs, Packed code) {
  auto it = std::lower_bound(configs.begin(), configs.end(), code);
  if (it == configs.end() || *it != code) return configs.size();
  return static_cast<std::size_t>(it - configs.begin());
}

void check_move(const Geometry& g, const Move& m) {
  switch (m.kind) {
    case MoveKind::plaquette:
      if (g.kind != LatticeKind::square) throw std::invalid_argument("plaquette move needs a square geometry");
      if (m.site < 0 || m.site >= g.num_faces()) throw std::out_of_range("invalid face id");
      if (m.a < 1 || m.a > 3) throw std::invalid_argument("invalid color index");
      break;
    case MoveKind::double_plaquette:
      if (g.kind != LatticeKind::square) throw std::invalid_argument("double-plaquette move needs a square geometry");
      if (m.site < 0 || m.site >= static_cast<int>(g.face_pairs.size())) throw std::out_of_range("invalid face pair");
      if (m.a < 1 || m.a > 3) throw std::invalid_argument("invalid color index");
      break;
    case MoveKind::hex_plaquette:
      if (g.kind != LatticeKind::hex) throw std::invalid_argument("hex plaquette move needs a hexagonal geometry");
      if (m.site < 0 || m.site >= g.num_faces()) throw std::out_of_range("invalid face id");
      if (m.a < 1 || m.a > 2) throw std::invalid_argument("invalid color index");
      break;
  }
}

}  // namespace

std::string to_string(const Move& m) {
  const char* name = m.kind == MoveKind::plaquette ? "B" : m.kind == MoveKind::double_plaquette ? "C" : "B'";
  return std::string(name) + std::to_string(m.a) + "@" + std::to_string(m.site);
}

MoveSet MoveSet::parse(const std::string& text) {
  MoveSet s;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "B") {
      s.plaquette = true;
    } else if (tok == "C") {
      s.double_plaquette = true;
    } else if (tok == "B'" || tok == "Bp" || tok == "Bh") {
      s.hex_plaquette = true;
    } else {
      throw std::invalid_argument("unknown move family '" + tok + "'");
    }
  }
  if (!s.plaquette && !s.double_plaquette && !s.hex_plaquette) throw std::invalid_argument("empty move set");
  if (s.hex_plaquette && (s.plaquette || s.double_plaquette)) {
    throw std::invalid_argument("B' cannot be mixed with square moves");
  }
  return s;
}

std::string MoveSet::to_string() const {
  std::string out;
  auto add = [&](const char* t) {
    if (!out.empty()) out += ",";
    out += t;
  };
  if (plaquette) add("B");
  if (double_plaquette) add("C");
  if (hex_plaquette) add("B'");
  return out;
}

bool MoveSet::fits(const Geometry& g) const {
  return g.kind == LatticeKind::hex ? !plaquette && !double_plaquette : !hex_plaquette;
}

const std::vector<int>& move_support(const Geometry& g, const Move& m) {
  check_move(g, m);
  return m.kind == MoveKind::double_plaquette ? g.face_pairs[m.site].support : g.face_edges[m.site];
}

std::optional<Packed> apply_move(Packed code, const Geometry& g, const Move& m) {
  Packed out = code;
  for (int e : move_support(g, m)) {
    const Packed w = pow3(e);
    const int d = static_cast<int>((code / w) % 3);
    const int n = kFlip[m.a][d];
    if (n < 0) return std::nullopt;
    out = out - static_cast<Packed>(d) * w + static_cast<Packed>(n) * w;
  }
  return out;
}

std::optional<EdgeConfig> apply_move(const EdgeConfig& c, const Geometry& g, const Move& m) {
  if (static_cast<int>(c.size()) != g.num_edges()) throw std::invalid_argument("configuration does not match geometry");
  EdgeConfig out = c;
  for (int e : move_support(g, m)) {
    const int n = kFlip[m.a][static_cast<int>(c[e])];
    if (n < 0) return std::nullopt;
    out.set(e, static_cast<Color>(n));
  }
  return out;
}

std::vector<Move> all_moves(const Geometry& g, const MoveSet& set) {
  if (!set.fits(g)) throw std::invalid_argument("move set does not match geometry");
  std::vector<Move> out;
  if (set.plaquette) {
    for (int f = 0; f < g.num_faces(); ++f)
      for (int a = 1; a <= 3; ++a) out.push_back({MoveKind::plaquette, f, a});
  }
  if (set.double_plaquette) {
    for (int p = 0; p < static_cast<int>(g.face_pairs.size()); ++p)
      for (int a = 1; a <= 3; ++a) out.push_back({MoveKind::double_plaquette, p, a});
  }
  if (set.hex_plaquette) {
    for (int f = 0; f < g.num_faces(); ++f)
      for (int a = 1; a <= 2; ++a) out.push_back({MoveKind::hex_plaquette, f, a});
  }
  return out;
}

bool is_frozen(Packed code, const Geometry& g, const MoveSet& set) {
  for (const auto& m : all_moves(g, set)) {
    if (apply_move(code, g, m)) return false;
  }
  return true;
}

std::size_t MoveGraphSummary::num_labels() const {
  std::set<WindingLabel> all;
  for (const auto& c : components) all.insert(c.labels.begin(), c.labels.end());
  return all.size();
}

const Component& MoveGraphSummary::component_of(Packed code) const {
  const std::size_t i = index_in(configs, code);
  if (i == configs.size()) throw std::out_of_range("configuration not in the move-graph basis");
  return components[assignment[i]];
}

MoveGraphSummary krylov_components(const Geometry& g, const MoveSet& set, std::vector<Packed> configs) {
  if (!std::is_sorted(configs.begin(), configs.end()) ||
      std::adjacent_find(configs.begin(), configs.end()) != configs.end()) {
    throw std::invalid_argument("configurations must be strictly ascending");
  }
  const auto moves = all_moves(g, set);
  MoveGraphSummary s;
  s.dims = g.dims_string();
  s.move_set = set.to_string();
  s.labelled = configs.empty() || defect_pattern(configs.front(), g).is_closed();
  s.configs = std::move(configs);
  const std::size_t n = s.configs.size();
  constexpr std::uint32_t unseen = ~std::uint32_t{0};
  s.assignment.assign(n, unseen);

  std::deque<std::size_t> queue;
  for (std::size_t start = 0; start < n; ++start) {
    if (s.assignment[start] != unseen) continue;
    const auto id = static_cast<std::uint32_t>(s.components.size());
    Component comp;
    s.assignment[start] = id;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      comp.members.push_back(s.configs[i]);
      for (const auto& m : moves) {
        const auto image = apply_move(s.configs[i], g, m);
        if (!image) continue;
        const std::size_t j = index_in(s.configs, *image);
        if (j == n) throw std::logic_error("move left the configuration set");
        if (s.assignment[j] == unseen) {
          s.assignment[j] = id;
          queue.push_back(j);
        }
      }
    }
    std::sort(comp.members.begin(), comp.members.end());
    if (s.labelled) {
      for (Packed c : comp.members) comp.labels.insert(winding_label(c, g));
    }
    if (comp.members.size() == 1) ++s.frozen_count;
    s.components.push_back(std::move(comp));
  }
  return s;
}

MoveGraphSummary krylov_components(const Geometry& g, const MoveSet& set, std::size_t budget) {
  return krylov_components(g, set, enumerate_closed_loop_configs(g, budget));
}

EdgeConfig alternating_columns(const Geometry& g) {
  if (g.kind != LatticeKind::square) throw std::invalid_argument("alternating columns need a square geometry");
  EdgeConfig c(static_cast<std::size_t>(g.num_edges()));
  for (int i = 0; i < g.ly; ++i) {
    for (int j = 0; j < g.lx; ++j) c.set(2 * (i * g.lx + j) + 1, j % 2 == 0 ? Color::red : Color::blue);
  }
  return c;
}

EdgeConfig sector_representative(const WindingLabel& label, const Geometry& g, std::size_t budget) {
  if (g.kind == LatticeKind::square) {
    const int L = g.lx;
    EdgeConfig c(static_cast<std::size_t>(g.num_edges()));
    auto paint = [&](Direction d, int line, Color col) {
      for (int k = 0; k < L; ++k) {
        // x-winding loops run along row `line`, y-winding loops down column `line`.
        const int e = d == Direction::x ? 2 * (line * L + k) : 2 * (k * L + line) + 1;
        c.set(e, col);
      }
    };
    for (Direction d : {Direction::x, Direction::y}) {
      const auto& w = label.along(d);
      if (w != "" && w != "r" && w != "b" && w != "rb") throw std::invalid_argument("unrealizable label");
      if (w.find('r') != std::string::npos) paint(d, 0, Color::red);
      if (w.find('b') != std::string::npos) paint(d, 1 % L, Color::blue);
    }
    if (winding_label(c, g) != label) throw std::invalid_argument("unrealizable label " + label.to_string());
    return c;
  }
  std::optional<Packed> found;
  for_each_sector_config(g, DefectPattern::closed(g.num_vertices()), budget, [&](Packed code) {
    if (!found && winding_label(code, g) == label) found = code;
  });
  if (!found) throw std::invalid_argument("unrealizable label " + label.to_string());
  return EdgeConfig::unpack(*found, static_cast<std::size_t>(g.num_edges()));
}

std::optional<std::vector<Move>> find_move_path(const Geometry& g, const MoveSet& set, Packed from, Packed to,
                                               std::size_t budget) {
  const auto moves = all_moves(g, set);
  std::map<Packed, std::pair<Packed, std::size_t>> parent;  // child -> (parent, move index)
  parent.emplace(from, std::make_pair(from, moves.size()));
  std::deque<Packed> queue{from};
  while (!queue.empty() && !parent.contains(to)) {
    const Packed cur = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < moves.size(); ++k) {
      const auto image = apply_move(cur, g, moves[k]);
      if (!image || parent.contains(*image)) continue;
      parent.emplace(*image, std::make_pair(cur, k));
      if (parent.size() > budget) {
        throw BudgetExceeded("move-path search on " + g.dims_string() + " exceeds budget",
                             static_cast<double>(parent.size()));
      }
      queue.push_back(*image);
    }
  }
  if (!parent.contains(to)) return std::nullopt;
  std::vector<Move> path;
  for (Packed cur = to; cur != from;) {
    const auto& [prev, k] = parent.at(cur);
    path.push_back(moves[k]);
    cur = prev;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

SwapCheck swap_sequence_check(const Geometry& g, std::size_t budget) {
  if (g.kind != LatticeKind::square) throw std::invalid_argument("swap check needs a square geometry");
  const int L = g.lx;
  SwapCheck out;
  out.start = EdgeConfig(static_cast<std::size_t>(g.num_edges()));
  out.target = out.start;
  for (int i = 0; i < L; ++i) {
    const int col0 = 2 * (i * L + 0) + 1;
    const int col1 = 2 * (i * L + 1) + 1;
    out.start.set(col0, Color::red);
    out.start.set(col1, Color::blue);
    out.target.set(col0, Color::blue);
    out.target.set(col1, Color::red);
  }
  MoveSet set;
  set.plaquette = true;
  set.double_plaquette = true;
  const auto path = find_move_path(g, set, out.start.packed(), out.target.packed(), budget);
  out.reachable = path.has_value();
  if (path) {
    out.path_length = path->size();
    std::optional<EdgeConfig> cur = out.start;
    for (const auto& m : *path) {
      cur = apply_move(*cur, g, m);
      if (!cur) break;
    }
    out.replay_ok = cur && *cur == out.target;
  }
  return out;
}

MoveInvariantReport check_move_invariants(const Geometry& g, const MoveSet& set, const std::vector<Packed>& closed,
                                          std::size_t samples, std::uint64_t seed) {
  if (closed.empty()) throw std::invalid_argument("no closed configurations to sample");
  const auto moves = all_moves(g, set);
  std::mt19937_64 rng(seed);
  MoveInvariantReport r;
  const Packed space = pow3(g.num_edges());
  for (std::size_t s = 0; s < samples; ++s) {
    ++r.samples;
    const Packed c = closed[rng() % closed.size()];
    const Move& m = moves[rng() % moves.size()];
    if (auto image = apply_move(c, g, m)) {
      ++r.applied;
      if (!defect_pattern(*image, g).is_closed()) {
        ++r.closure_violations;
      } else if (winding_label(*image, g) != winding_label(c, g)) {
        ++r.label_violations;
      }
      auto back = apply_move(*image, g, m);
      if (!back || *back != c) ++r.involution_violations;
    }
    const Packed any = rng() % space;
    const Move& m2 = moves[rng() % moves.size()];
    if (auto image = apply_move(any, g, m2)) {
      if (defect_pattern(*image, g) != defect_pattern(any, g)) ++r.defect_violations;
      auto back = apply_move(*image, g, m2);
      if (!back || *back != any) ++r.involution_violations;
    }
  }
  return r;
}

}  // namespace bicolor
