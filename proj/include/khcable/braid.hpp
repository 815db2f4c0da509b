#pragma once

#include <set>
#include <string>
#include <vector>

#include "khcable/diagram.hpp"

namespace khc {

/// Word in the braid group on `strands` strands. Letter +i is sigma_i, -i its inverse (1-based).
struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  void validate() const;
  int length() const { return static_cast<int>(letters.size()); }
  /// perm[p] is the bottom position reached by the strand starting at top position p.
  std::vector<int> permutation() const;
  /// Permutation cycles, each listed from its smallest starting position.
  std::vector<std::vector<int>> orbits() const;
  BraidWord operator*(const BraidWord& rhs) const;
  BraidWord power(int k) const;
  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

/// (sigma_1 ... sigma_2m)^a sigma_1 ... sigma_i on 2m+1 strands, or its flip
/// sigma_{2m+1-i} ... sigma_2m (sigma_1 ... sigma_2m)^a.
BraidWord d_braid(int m, int a, int i, bool flipped);
/// (sigma_1 ... sigma_{n-1})^n raised to `count`; negative counts use inverse letters.
BraidWord full_twists(int strands, int count);

/// Number of letters swapping a strand of `J` (0-based top positions) with one outside it.
/// `J` must be a union of permutation orbits.
int count_inter_crossings(const BraidWord& b, const std::set<int>& J);

/// Closure with strands running downward; crossing k comes from letter k.
struct Closure {
  LinkDiagram diagram;
  /// Component containing the strand that starts at each top position.
  std::vector<int> strand_component;
};
Closure braid_closure_detailed(const BraidWord& b);
LinkDiagram braid_closure(const BraidWord& b);

/// Appends crossings for `b` whose strands enter along `in[p]` (provisional edge ids);
/// fresh ids are drawn from `next_id`. Returns the outgoing id at each position.
std::vector<int> append_braid(const BraidWord& b, const std::vector<int>& in, int& next_id,
                              std::vector<Crossing>& out);

/// "3: 1 2 -1" format.
BraidWord parse_braid(const std::string& text);
std::string format_braid(const BraidWord& b);

}  // namespace khc
