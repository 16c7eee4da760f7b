#include "bicolor/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bicolor/errors.hpp"

namespace bicolor {

namespace {

const std::array<Packed, kMaxPackedEdges + 1>& pow3_table() {
  static const auto table = [] {
    std::array<Packed, kMaxPackedEdges + 1> t{};
    t[0] = 1;
    for (int k = 1; k <= kMaxPackedEdges; ++k) t[k] = t[k - 1] * 3;
    return t;
  }();
  return table;
}

std::vector<int> symmetric_difference(std::vector<int> a, std::vector<int> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void finish_geometry(Geometry& g, std::size_t generic_support) {
  const int nf = g.num_faces();
  g.edge_faces.assign(g.edge_vertices.size(), {-1, -1});
  for (int f = 0; f < nf; ++f) {
    for (int e : g.face_edges[f]) {
      auto& slot = g.edge_faces[e];
      if (slot[0] < 0) {
        slot[0] = f;
      } else if (slot[1] < 0) {
        slot[1] = f;
      } else {
        throw std::logic_error("edge bounds more than two faces");
      }
    }
  }
  g.degenerate_pairs = std::any_of(g.face_pairs.begin(), g.face_pairs.end(),
                                   [&](const FacePair& p) { return p.support.size() != generic_support; });
}

}  // namespace

char color_char(Color c) {
  switch (c) {
    case Color::empty: return 'e';
    case Color::red: return 'r';
    case Color::blue: return 'b';
  }
  return '?';
}

Packed pow3(int k) { return pow3_table().at(static_cast<std::size_t>(k)); }

std::string Geometry::dims_string() const {
  if (kind == LatticeKind::square) return "L=" + std::to_string(lx);
  return "Lx=" + std::to_string(lx) + ",Ly=" + std::to_string(ly);
}

Geometry build_square_torus(int L) {
  if (L < 2) throw std::invalid_argument("square torus needs L >= 2");
  Geometry g;
  g.kind = LatticeKind::square;
  g.lx = g.ly = L;
  auto vid = [L](int i, int j) { return ((i % L + L) % L) * L + ((j % L + L) % L); };
  auto h = [&](int i, int j) { return 2 * vid(i, j); };
  auto v = [&](int i, int j) { return 2 * vid(i, j) + 1; };

  const int n = L * L;
  g.edge_vertices.resize(2 * n);
  g.vertex_edges.resize(n);
  g.face_edges.resize(n);
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      g.edge_vertices[h(i, j)] = {vid(i, j), vid(i, j + 1)};
      g.edge_vertices[v(i, j)] = {vid(i, j), vid(i + 1, j)};
      g.vertex_edges[vid(i, j)] = {h(i, j), v(i, j), h(i, j - 1), v(i - 1, j)};
      g.face_edges[vid(i, j)] = {h(i, j), v(i, j + 1), h(i + 1, j), v(i, j)};
    }
  }
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      const int f = vid(i, j);
      for (Direction d : {Direction::x, Direction::y}) {
        const int nb = d == Direction::x ? vid(i, j + 1) : vid(i + 1, j);
        g.face_pairs.push_back({f, nb, d, symmetric_difference(g.face_edges[f], g.face_edges[nb])});
      }
    }
  }
  for (int k = 0; k < L; ++k) {
    g.cycles[0].push_back(h(0, k));
    g.cycles[1].push_back(v(k, 0));
    g.dual_cycles[0].push_back(v(0, k));
    g.dual_cycles[1].push_back(h(k, 0));
  }
  finish_geometry(g, 6);
  return g;
}

Geometry build_hex_torus(int lx, int ly) {
  if (lx < 2 || ly < 2) throw std::invalid_argument("hexagonal torus needs Lx, Ly >= 2");
  Geometry g;
  g.kind = LatticeKind::hex;
  g.lx = lx;
  g.ly = ly;
  auto cell = [=](int i, int j) { return ((i % ly + ly) % ly) * lx + ((j % lx + lx) % lx); };
  auto a = [&](int i, int j) { return 2 * cell(i, j); };
  auto b = [&](int i, int j) { return 2 * cell(i, j) + 1; };
  auto e = [&](int i, int j, int k) { return 3 * cell(i, j) + k; };

  const int n = lx * ly;
  g.edge_vertices.resize(3 * n);
  g.vertex_edges.resize(2 * n);
  g.face_edges.resize(n);
  for (int i = 0; i < ly; ++i) {
    for (int j = 0; j < lx; ++j) {
      g.edge_vertices[e(i, j, 0)] = {a(i, j), b(i, j)};
      g.edge_vertices[e(i, j, 1)] = {b(i, j), a(i, j + 1)};
      g.edge_vertices[e(i, j, 2)] = {b(i, j), a(i + 1, j)};
      g.vertex_edges[a(i, j)] = {e(i, j, 0), e(i, j - 1, 1), e(i - 1, j, 2)};
      g.vertex_edges[b(i, j)] = {e(i, j, 0), e(i, j, 1), e(i, j, 2)};
      g.face_edges[cell(i, j)] = {e(i, j, 1),     e(i, j + 1, 0), e(i, j + 1, 2),
                                  e(i + 1, j, 1), e(i + 1, j, 0), e(i, j, 2)};
    }
  }
  for (int i = 0; i < ly; ++i) {
    g.cycles[1].push_back(e(i, 0, 0));
    g.cycles[1].push_back(e(i, 0, 2));
    g.dual_cycles[1].push_back(e(i, 0, 1));
  }
  for (int j = 0; j < lx; ++j) {
    g.cycles[0].push_back(e(0, j, 0));
    g.cycles[0].push_back(e(0, j, 1));
    g.dual_cycles[0].push_back(e(0, j, 2));
  }
  // Face pairs through each shared edge, deduplicated.
  std::set<std::pair<int, int>> seen;
  std::vector<std::array<int, 2>> ef(3 * n, {-1, -1});
  for (int f = 0; f < n; ++f) {
    for (int ed : g.face_edges[f]) (ef[ed][0] < 0 ? ef[ed][0] : ef[ed][1]) = f;
  }
  for (int ed = 0; ed < 3 * n; ++ed) {
    const auto [f, h] = std::minmax(ef[ed][0], ef[ed][1]);
    if (f == h || !seen.insert({f, h}).second) continue;
    g.face_pairs.push_back({f, h, ed % 3 == 1 ? Direction::y : Direction::x,
                            symmetric_difference(g.face_edges[f], g.face_edges[h])});
  }
  finish_geometry(g, 10);
  return g;
}

std::string describe(const Geometry& g) {
  std::ostringstream os;
  os << "geometry " << (g.kind == LatticeKind::square ? "square" : "hex") << ' ' << g.dims_string()
     << " edges=" << g.num_edges() << " vertices=" << g.num_vertices() << " faces=" << g.num_faces()
     << '\n';
  for (int e = 0; e < g.num_edges(); ++e) {
    os << "edge " << e << ' ' << g.edge_vertices[e][0] << ' ' << g.edge_vertices[e][1] << " faces "
       << g.edge_faces[e][0] << ' ' << g.edge_faces[e][1] << '\n';
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    os << "vertex " << v;
    for (int e : g.vertex_edges[v]) os << ' ' << e;
    os << '\n';
  }
  for (int f = 0; f < g.num_faces(); ++f) {
    os << "face " << f;
    for (int e : g.face_edges[f]) os << ' ' << e;
    os << '\n';
  }
  for (const auto& p : g.face_pairs) {
    os << "pair " << p.first << ' ' << p.second << (p.dir == Direction::x ? " x" : " y") << " support";
    for (int e : p.support) os << ' ' << e;
    os << '\n';
  }
  for (int d = 0; d < 2; ++d) {
    os << "cycle " << (d == 0 ? 'x' : 'y');
    for (int e : g.cycles[d]) os << ' ' << e;
    os << "\ndual_cycle " << (d == 0 ? 'x' : 'y');
    for (int e : g.dual_cycles[d]) os << ' ' << e;
    os << '\n';
  }
  return os.str();
}

std::uint64_t geometry_hash(const Geometry& g) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : describe(g)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

Packed EdgeConfig::packed() const {
  if (colors_.size() > static_cast<std::size_t>(kMaxPackedEdges)) {
    throw std::length_error("configuration too long for 64-bit packing");
  }
  Packed code = 0;
  for (std::size_t e = colors_.size(); e-- > 0;) code = code * 3 + static_cast<Packed>(colors_[e]);
  return code;
}

EdgeConfig EdgeConfig::unpack(Packed code, std::size_t num_edges) {
  if (num_edges > static_cast<std::size_t>(kMaxPackedEdges)) {
    throw std::length_error("configuration too long for 64-bit packing");
  }
  std::vector<Color> colors(num_edges);
  for (std::size_t e = 0; e < num_edges; ++e) {
    colors[e] = static_cast<Color>(code % 3);
    code /= 3;
  }
  if (code != 0) throw std::out_of_range("packed code out of range for edge count");
  return EdgeConfig(std::move(colors));
}

DefectPattern DefectPattern::closed(int num_vertices) {
  return {std::vector<std::uint8_t>(num_vertices, 0), std::vector<std::uint8_t>(num_vertices, 0)};
}

bool DefectPattern::is_closed() const {
  return std::all_of(red.begin(), red.end(), [](auto x) { return x == 0; }) &&
         std::all_of(blue.begin(), blue.end(), [](auto x) { return x == 0; });
}

DefectPattern defect_pattern(const EdgeConfig& c, const Geometry& g) {
  if (c.size() != static_cast<std::size_t>(g.num_edges())) {
    throw std::invalid_argument("configuration size does not match geometry");
  }
  DefectPattern p = DefectPattern::closed(g.num_vertices());
  for (int e = 0; e < g.num_edges(); ++e) {
    const Color col = c[e];
    if (col == Color::empty) continue;
    auto& par = col == Color::red ? p.red : p.blue;
    par[g.edge_vertices[e][0]] ^= 1;
    par[g.edge_vertices[e][1]] ^= 1;
  }
  return p;
}

DefectPattern defect_pattern(Packed code, const Geometry& g) {
  return defect_pattern(EdgeConfig::unpack(code, g.num_edges()), g);
}

double estimated_sector_size(const Geometry& g) {
  return std::pow(3.0, g.num_edges()) / std::pow(4.0, g.num_vertices() - 1);
}

void for_each_sector_config(const Geometry& g, const DefectPattern& target, std::size_t budget,
                            const std::function<void(Packed)>& visit) {
  const int ne = g.num_edges();
  const int nv = g.num_vertices();
  if (ne > kMaxPackedEdges) throw std::length_error("too many edges for packed enumeration");
  if (static_cast<int>(target.red.size()) != nv || static_cast<int>(target.blue.size()) != nv) {
    throw std::invalid_argument("defect pattern size does not match geometry");
  }
  const double estimate = estimated_sector_size(g);
  if (estimate > static_cast<double>(budget)) {
    throw BudgetExceeded("sector enumeration on " + g.dims_string() + " exceeds budget", estimate);
  }
  // closing[e]: vertices whose lowest incident edge is e (checked when e is set).
  std::vector<std::vector<int>> closing(ne);
  for (int v = 0; v < nv; ++v) {
    const auto& inc = g.vertex_edges[v];
    closing[*std::min_element(inc.begin(), inc.end())].push_back(v);
  }
  std::vector<std::uint8_t> red(nv, 0), blue(nv, 0);
  std::size_t produced = 0;

  std::function<void(int, Packed)> assign = [&](int e, Packed prefix) {
    if (e < 0) {
      if (++produced > budget) {
        throw BudgetExceeded("sector enumeration on " + g.dims_string() + " exceeds budget",
                             std::max(estimate, static_cast<double>(produced)));
      }
      visit(prefix);
      return;
    }
    const auto [u, w] = g.edge_vertices[e];
    for (int c = 0; c < 3; ++c) {
      auto* par = c == 1 ? &red : c == 2 ? &blue : nullptr;
      if (par) {
        (*par)[u] ^= 1;
        (*par)[w] ^= 1;
      }
      bool ok = true;
      for (int v : closing[e]) {
        if (red[v] != target.red[v] || blue[v] != target.blue[v]) {
          ok = false;
          break;
        }
      }
      if (ok) assign(e - 1, prefix * 3 + static_cast<Packed>(c));
      if (par) {
        (*par)[u] ^= 1;
        (*par)[w] ^= 1;
      }
    }
  };
  assign(ne - 1, 0);
}

std::vector<Packed> enumerate_sector(const Geometry& g, const DefectPattern& target, std::size_t budget) {
  std::vector<Packed> out;
  for_each_sector_config(g, target, budget, [&](Packed c) { out.push_back(c); });
  return out;
}

std::vector<Packed> enumerate_closed_loop_configs(const Geometry& g, std::size_t budget) {
  return enumerate_sector(g, DefectPattern::closed(g.num_vertices()), budget);
}

std::string word_display(const std::string& w) { return w.empty() ? "∅" : w; }

std::string WindingLabel::to_string() const {
  return "(x:" + word_display(words[0]) + ", y:" + word_display(words[1]) + ")";
}

std::string reduce_cyclic_word(const std::string& word) {
  std::string s;
  for (char ch : word) {
    if (!s.empty() && s.back() == ch) {
      s.pop_back();
    } else {
      s.push_back(ch);
    }
  }
  while (s.size() >= 2 && s.front() == s.back()) s = s.substr(1, s.size() - 2);
  std::string best = s;
  for (std::size_t r = 1; r < s.size(); ++r) {
    std::string rot = s.substr(r) + s.substr(0, r);
    if (rot < best) best = rot;
  }
  return best;
}

WindingLabel winding_label(const EdgeConfig& c, const Geometry& g) {
  if (!defect_pattern(c, g).is_closed()) {
    throw std::invalid_argument("winding label requires a closed-loop configuration");
  }
  WindingLabel label;
  for (Direction d : {Direction::x, Direction::y}) {
    const auto& cut = g.transversal_cut(d);
    std::string word;
    if (g.kind == LatticeKind::square) {
      int red = 0, blue = 0;
      for (int e : cut) {
        red += c[e] == Color::red;
        blue += c[e] == Color::blue;
      }
      if (red % 2) word += 'r';
      if (blue % 2) word += 'b';
    } else {
      for (int e : cut) {
        if (c[e] != Color::empty) word += color_char(c[e]);
      }
      word = reduce_cyclic_word(word);
    }
    label.words[static_cast<int>(d)] = word;
  }
  return label;
}

WindingLabel winding_label(Packed code, const Geometry& g) {
  return winding_label(EdgeConfig::unpack(code, g.num_edges()), g);
}

}  // namespace bicolor
