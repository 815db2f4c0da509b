#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace khc {

/// A crossing as four edge ids in counterclockwise order. Slots 0 and 2 carry the under
/// strand, slots 1 and 3 the over strand; `under_in`/`over_in` say where each strand enters.
struct Crossing {
  std::array<int, 4> edges{};
  std::uint8_t under_in = 0;  // 0 or 2
  std::uint8_t over_in = 3;   // 1 or 3

  int sign() const { return over_in == (under_in + 3) % 4 ? +1 : -1; }
  bool is_incoming(int slot) const { return slot == under_in || slot == over_in; }
  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Position of one end of an edge.
struct Slot {
  int crossing = -1;
  int slot = -1;
  friend bool operator==(const Slot&, const Slot&) = default;
};

/// Components whose orientation is reversed relative to a diagram's base orientation.
struct OrientationAssignment {
  std::set<int> flips;

  static OrientationAssignment base() { return {}; }
  static OrientationAssignment from_mask(std::uint64_t mask);
  std::uint64_t mask() const;
  friend bool operator==(const OrientationAssignment&, const OrientationAssignment&) = default;
};

/// Oriented planar link diagram. Edges are numbered 0..E-1, each used by exactly two
/// crossing slots; crossing-free unknotted components are kept as a count of free loops.
/// Component ids number the edge orbits by smallest edge, then the free loops.
class LinkDiagram {
 public:
  LinkDiagram() = default;
  /// Validates edge usage and orientation consistency.
  explicit LinkDiagram(std::vector<Crossing> crossings, std::vector<bool> free_loop_reversed = {});

  static LinkDiagram unknot() { return LinkDiagram({}, {false}); }
  static LinkDiagram empty() { return LinkDiagram(); }

  /// KnotTheory-style PD: each tuple starts at the incoming under edge and runs
  /// counterclockwise. Labels are arbitrary integers; the over strand direction is
  /// inferred from the strand structure, falling back to consecutive labeling.
  static LinkDiagram from_pd(const std::vector<std::array<int, 4>>& pd, int free_loops = 0);
  /// PD tuples with 1-based edge labels, each starting at the incoming under edge.
  std::vector<std::array<int, 4>> to_pd() const;

  const std::vector<Crossing>& crossings() const { return crossings_; }
  const Crossing& crossing(int c) const { return crossings_.at(c); }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int edge_count() const { return static_cast<int>(edge_component_.size()); }
  int free_loops() const { return static_cast<int>(free_loop_reversed_.size()); }
  bool free_loop_reversed(int i) const { return free_loop_reversed_.at(i); }
  int component_count() const { return component_count_; }
  int component_of_edge(int e) const { return edge_component_.at(e); }
  int component_of_free_loop(int i) const { return component_count_ - free_loops() + i; }

  /// Where the edge leaves a crossing (tail) and enters one (head).
  Slot tail(int e) const { return tail_.at(e); }
  Slot head(int e) const { return head_.at(e); }
  /// The edge that continues `e` through the crossing at its head.
  int successor(int e) const;
  /// Edges of a component in traversal order starting from its smallest edge.
  std::vector<int> component_edges(int comp) const;
  /// Components of the under and over strand at a crossing.
  std::pair<int, int> crossing_components(int c) const;

  int writhe() const;
  int positive_crossings() const;
  int negative_crossings() const;
  bool is_negative() const { return positive_crossings() == 0; }

  LinkDiagram oriented(const OrientationAssignment& o) const;
  LinkDiagram reversed() const;
  LinkDiagram mirror() const;
  LinkDiagram with_unknot() const;
  /// Both diagrams side by side; edges of `other` are renumbered after ours.
  LinkDiagram disjoint_union(const LinkDiagram& other) const;

  /// Face on the left of each edge in its direction of travel, and on the right.
  struct Faces {
    int count = 0;
    std::vector<int> left, right;
  };
  Faces faces() const;
  /// Checkerboard color (0/1) of the face left of each edge; within each connected piece
  /// the face left of the smallest edge gets color 0.
  std::vector<std::uint8_t> left_face_colors() const;

  friend bool operator==(const LinkDiagram&, const LinkDiagram&) = default;

 private:
  void index();

  std::vector<Crossing> crossings_;
  std::vector<bool> free_loop_reversed_;
  std::vector<int> edge_component_;
  std::vector<Slot> tail_, head_;
  int component_count_ = 0;
};

int writhe(const LinkDiagram& d, const OrientationAssignment& o);
/// Half the signed count of crossings between `part` and the remaining components.
int linking_number(const LinkDiagram& d, const std::set<int>& part);

/// Skein resolutions. The 0-smoothing joins slots {0,1},{2,3}; the 1-smoothing {0,3},{1,2}.
enum class Resolution { oriented, unoriented };
int smoothing_of(const Crossing& c, Resolution which);
/// Removes crossing `c`, keeping the other crossings in order. The oriented smoothing keeps
/// the orientation; the unoriented one reverses the over strand's component when the two
/// strands belong to different components, otherwise the arc from the under strand's exit
/// back to the over strand's entry.
LinkDiagram resolve_crossing(const LinkDiagram& d, int c, Resolution which);
/// Edges reversed by the unoriented resolution at `c`.
std::vector<bool> unoriented_reversal(const LinkDiagram& d, int c);
/// Removes crossing `c` using smoothing `s` (0 or 1) and reverses the edges in `reverse`
/// (ids of `d`). Throws if the result is not consistently oriented.
LinkDiagram smooth_crossing(const LinkDiagram& d, int c, int s, const std::vector<bool>& reverse);

/// Builds a diagram from crossings whose edge ids are provisional: ids listed together in
/// `identify` are glued into one edge before renumbering. If `renumber` is given it receives
/// the final id of every provisional id (-1 for ids that touch no crossing).
LinkDiagram assemble(std::vector<Crossing> crossings, const std::vector<std::pair<int, int>>& identify,
                     std::vector<bool> free_loop_reversed = {}, std::vector<int>* renumber = nullptr);

std::string to_pd_string(const LinkDiagram& d);
LinkDiagram parse_pd(const std::string& text);

}  // namespace khc
