#pragma once
// Configuration-space moves of the off-diagonal B, C and B' operators, the
// move graph over a sector and its connected (Krylov) components.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bicolor/lattice.hpp"

namespace bicolor {

enum class MoveKind { plaquette, double_plaquette, hex_plaquette };

struct Move {
  MoveKind kind = MoveKind::plaquette;
  int site = 0;  // face id or face-pair index
  int a = 1;

  bool operator==(const Move&) const = default;
};

std::string to_string(const Move& m);

/// Which operator families generate moves: {B}, {C}, {B, C} on the square
/// torus, {B'} on the hexagonal torus.
struct MoveSet {
  bool plaquette = false;
  bool double_plaquette = false;
  bool hex_plaquette = false;

  static MoveSet parse(const std::string& text);  // "B", "C", "B,C", "B'"
  std::string to_string() const;
  bool fits(const Geometry& g) const;
};

/// The edges a move acts on.
const std::vector<int>& move_support(const Geometry& g, const Move& m);

/// Image of a basis configuration under the move's X^(a) product, or nothing
/// if some support edge is annihilated.
std::optional<Packed> apply_move(Packed code, const Geometry& g, const Move& m);
std::optional<EdgeConfig> apply_move(const EdgeConfig& c, const Geometry& g, const Move& m);

/// Every move of the set on this geometry, in a fixed order.
std::vector<Move> all_moves(const Geometry& g, const MoveSet& set);

bool is_frozen(Packed code, const Geometry& g, const MoveSet& set);

struct Component {
  std::vector<Packed> members;  // ascending; members.front() is the representative
  std::set<WindingLabel> labels;

  std::size_t size() const { return members.size(); }
  Packed representative() const { return members.front(); }
};

struct MoveGraphSummary {
  std::string dims;
  std::string move_set;
  std::vector<Packed> configs;         // the basis, ascending
  std::vector<std::uint32_t> assignment;  // component index per config
  std::vector<Component> components;   // ordered by representative
  std::size_t frozen_count = 0;        // isolated vertices
  bool labelled = false;               // false for sectors with defects

  std::size_t num_labels() const;
  /// Component containing a configuration of the basis.
  const Component& component_of(Packed code) const;
};

/// Components of the move graph over all closed-loop configurations.
MoveGraphSummary krylov_components(const Geometry& g, const MoveSet& set, std::size_t budget);
/// Components over an explicit, ascending list of configurations sharing one
/// defect pattern (every move preserves it).
MoveGraphSummary krylov_components(const Geometry& g, const MoveSet& set, std::vector<Packed> configs);

/// A minimal closed configuration with the label: straight loops on the
/// square torus, the smallest matching configuration on the hexagonal one.
EdgeConfig sector_representative(const WindingLabel& label, const Geometry& g, std::size_t budget);

/// Shortest move sequence from one closed configuration to another, by BFS
/// in move order. Throws BudgetExceeded past `budget` visited states.
std::optional<std::vector<Move>> find_move_path(const Geometry& g, const MoveSet& set, Packed from, Packed to,
                                               std::size_t budget);

struct SwapCheck {
  EdgeConfig start;
  EdgeConfig target;
  bool reachable = false;
  std::size_t path_length = 0;
  bool replay_ok = false;  // path re-applied move by move ends on target
};

/// Exchange of two adjacent non-contractible loops: red column 0 and blue
/// column 1 against blue column 0 and red column 1, under {B, C}.
SwapCheck swap_sequence_check(const Geometry& g, std::size_t budget);

/// The alternating full-column configuration (red on even columns, blue on
/// odd ones) of the square torus.
EdgeConfig alternating_columns(const Geometry& g);

struct MoveInvariantReport {
  std::size_t samples = 0;
  std::size_t applied = 0;
  std::size_t closure_violations = 0;
  std::size_t label_violations = 0;
  std::size_t involution_violations = 0;
  std::size_t defect_violations = 0;  // on unconstrained random configurations

  std::size_t violations() const {
    return closure_violations + label_violations + involution_violations + defect_violations;
  }
};

/// Random (configuration, move) samples: closed configurations drawn from
/// `closed`, plus the same number of unconstrained configurations.
MoveInvariantReport check_move_invariants(const Geometry& g, const MoveSet& set, const std::vector<Packed>& closed,
                                          std::size_t samples, std::uint64_t seed);

}  // namespace bicolor
