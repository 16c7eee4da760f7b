#pragma once
// Torus geometries, edge-configuration encoding, vertex defect patterns,
// closed-loop enumeration and topological sector labels.
//
// Canonical edge order
//   square L x L: vertex (i, j) has index i*L + j (row i, column j). The
//     horizontal edge leaving (i, j) to the right is 2*(i*L + j), the
//     vertical edge leaving (i, j) downwards is 2*(i*L + j) + 1.
//   hexagonal (brick wall) Lx x Ly cells: cell (i, j) has index c = i*Lx + j
//     and owns vertices A = 2c, B = 2c + 1 and edges
//       3c + 0 : A(i,j) - B(i,j)
//       3c + 1 : B(i,j) - A(i,j+1)
//       3c + 2 : B(i,j) - A(i+1,j)
// A configuration is packed base 3 with edge 0 as the least significant digit.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bicolor {

using Packed = std::uint64_t;

enum class LatticeKind { square, hex };
enum class Color : std::uint8_t { empty = 0, red = 1, blue = 2 };
enum class Direction { x = 0, y = 1 };

constexpr Direction other(Direction d) { return d == Direction::x ? Direction::y : Direction::x; }
char color_char(Color c);  // 'e', 'r', 'b'

/// Two faces that share at least one edge, with the symmetric difference of
/// their boundaries (the support of the double-plaquette operators).
struct FacePair {
  int first = 0;
  int second = 0;
  Direction dir = Direction::x;
  std::vector<int> support;  // ascending edge ids
};

struct Geometry {
  LatticeKind kind = LatticeKind::square;
  int lx = 0;
  int ly = 0;
  std::vector<std::array<int, 2>> edge_vertices;
  std::vector<std::array<int, 2>> edge_faces;
  std::vector<std::vector<int>> vertex_edges;  // square: right, down, left, up
  std::vector<std::vector<int>> face_edges;    // walked around the face
  std::vector<FacePair> face_pairs;
  /// A non-contractible lattice cycle winding in each direction.
  std::array<std::vector<int>, 2> cycles;
  /// Edges crossed by a non-contractible dual cycle winding in each direction.
  std::array<std::vector<int>, 2> dual_cycles;
  /// True when some face-pair support is not the generic 6 edges (L = 2).
  bool degenerate_pairs = false;

  int num_edges() const { return static_cast<int>(edge_vertices.size()); }
  int num_vertices() const { return static_cast<int>(vertex_edges.size()); }
  int num_faces() const { return static_cast<int>(face_edges.size()); }

  const std::vector<int>& cycle(Direction d) const { return cycles[static_cast<int>(d)]; }
  const std::vector<int>& dual_cycle(Direction d) const { return dual_cycles[static_cast<int>(d)]; }
  /// The cut crossed an odd number of times by a loop winding in direction d.
  const std::vector<int>& transversal_cut(Direction d) const { return dual_cycle(other(d)); }

  std::string dims_string() const;
};

Geometry build_square_torus(int L);
Geometry build_hex_torus(int lx, int ly);

/// Deterministic text dump (edges with endpoints and faces, faces, cuts).
std::string describe(const Geometry& g);
/// FNV-1a hash of describe(g).
std::uint64_t geometry_hash(const Geometry& g);

/// 3^k for k <= 40.
Packed pow3(int k);
/// Largest edge count representable in a 64-bit packed configuration.
inline constexpr int kMaxPackedEdges = 40;

class EdgeConfig {
 public:
  EdgeConfig() = default;
  explicit EdgeConfig(std::size_t num_edges) : colors_(num_edges, Color::empty) {}
  explicit EdgeConfig(std::vector<Color> colors) : colors_(std::move(colors)) {}

  std::size_t size() const { return colors_.size(); }
  Color operator[](std::size_t e) const { return colors_[e]; }
  void set(std::size_t e, Color c) { colors_[e] = c; }
  std::span<const Color> colors() const { return colors_; }

  Packed packed() const;
  static EdgeConfig unpack(Packed code, std::size_t num_edges);

  bool operator==(const EdgeConfig&) const = default;

 private:
  std::vector<Color> colors_;
};

/// Digit of edge e in a packed configuration.
inline Color color_at(Packed code, int e) { return static_cast<Color>((code / pow3(e)) % 3); }

/// Per vertex parity of red and blue degree.
struct DefectPattern {
  std::vector<std::uint8_t> red;
  std::vector<std::uint8_t> blue;

  static DefectPattern closed(int num_vertices);
  bool is_closed() const;
  bool operator==(const DefectPattern&) const = default;
};

DefectPattern defect_pattern(const EdgeConfig& c, const Geometry& g);
DefectPattern defect_pattern(Packed code, const Geometry& g);

/// Rough size of a defect sector: 3^E / 4^(V-1). Used only for budgeting.
double estimated_sector_size(const Geometry& g);

/// Visits every configuration with the given defect pattern exactly once, in
/// ascending packed order. Edges are assigned from the most significant down
/// and each vertex parity is checked when its last incident edge is fixed.
/// Throws BudgetExceeded if more than `budget` configurations are produced.
void for_each_sector_config(const Geometry& g, const DefectPattern& target, std::size_t budget,
                            const std::function<void(Packed)>& visit);

std::vector<Packed> enumerate_sector(const Geometry& g, const DefectPattern& target,
                                     std::size_t budget);
/// All configurations with an all-zero defect pattern, ascending.
std::vector<Packed> enumerate_closed_loop_configs(const Geometry& g, std::size_t budget);

/// Topological sector label.
///   square: per direction, the colors whose loops winding that way appear an
///     odd number of times ("", "r", "b", "rb").
///   hex: per direction, the cyclic color word read along the transversal
///     cut with adjacent equal letters cancelled, rotated to its least form.
struct WindingLabel {
  std::array<std::string, 2> words;

  const std::string& along(Direction d) const { return words[static_cast<int>(d)]; }
  std::string to_string() const;  // "(x:r, y:∅)"
  auto operator<=>(const WindingLabel&) const = default;
};

std::string word_display(const std::string& w);  // "" -> "∅"

/// Throws std::invalid_argument for configurations with defects.
WindingLabel winding_label(Packed code, const Geometry& g);
WindingLabel winding_label(const EdgeConfig& c, const Geometry& g);

/// Cyclic reduction used for hexagonal labels.
std::string reduce_cyclic_word(const std::string& word);

}  // namespace bicolor
