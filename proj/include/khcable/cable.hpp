#pragma once

#include <set>
#include <vector>

#include "khcable/braid.hpp"
#include "khcable/diagram.hpp"

namespace khc {

/// Parameters of K_{m,a,i}^f (or its flip).
struct CableSpec {
  int m = 0;
  int a = 0;
  int i = 0;
  int f = 0;
  bool flipped = false;

  void validate() const;
  int strands() const { return 2 * m + 1; }
  friend bool operator==(const CableSpec&, const CableSpec&) = default;
};

/// A satellite diagram built from a knot and a braid pattern.
struct Cable {
  LinkDiagram diagram;
  int strands = 1;
  /// Component containing the pattern strand that starts at braid position p (0-based).
  std::vector<int> strand_component;
  /// Index of the first pattern crossing; pattern crossings come last, in word order.
  int pattern_start = 0;
};

/// Replaces a one-component diagram by `pattern.strands` blackboard-parallel copies, adds
/// full twists (kinks for one strand) to reach framing `f`, and splices the pattern in.
Cable cable_insert_detailed(const LinkDiagram& knot, int f, const BraidWord& pattern);
LinkDiagram cable_insert(const LinkDiagram& knot, int f, const BraidWord& pattern);

/// K_{m,a,i}^f, or K_{m,a,i}^f' when `spec.flipped`.
Cable auxiliary_cable(const LinkDiagram& knot, const CableSpec& spec);
/// K_n^f: the f-framed (2n+1)-cable with the strands at odd braid positions reversed.
Cable parallel_cable(const LinkDiagram& knot, int n, int f);

/// Orientation reversing the components through the given braid positions.
OrientationAssignment reverse_strands(const Cable& cable, const std::set<int>& positions);

}  // namespace khc
