#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "khcable/braid.hpp"
#include "khcable/diagram.hpp"

namespace khc::test {

inline BraidWord random_braid(std::mt19937& rng, int strands, int length) {
  BraidWord b{strands, {}};
  std::uniform_int_distribution<int> gen(1, std::max(1, strands - 1));
  std::bernoulli_distribution neg(0.5);
  for (int k = 0; k < length; ++k) b.letters.push_back(neg(rng) ? -gen(rng) : gen(rng));
  return b;
}

/// Same diagram with crossings permuted, edges relabeled and slot lists rotated by two.
inline LinkDiagram scrambled(const LinkDiagram& d, std::mt19937& rng) {
  std::vector<Crossing> xs = d.crossings();
  std::shuffle(xs.begin(), xs.end(), rng);
  std::vector<int> label(d.edge_count());
  std::iota(label.begin(), label.end(), 0);
  std::shuffle(label.begin(), label.end(), rng);
  std::bernoulli_distribution coin(0.5);
  for (Crossing& c : xs) {
    for (int& e : c.edges) e = label[e];
    if (coin(rng)) {
      std::rotate(c.edges.begin(), c.edges.begin() + 2, c.edges.end());
      c.under_in ^= 2;
      c.over_in ^= 2;
    }
  }
  std::vector<bool> loops;
  for (int b = 0; b < d.free_loops(); ++b) loops.push_back(d.free_loop_reversed(b));
  return assemble(xs, {}, loops);
}

/// Random closed braid diagram with random orientation, optional mirror, unknot and scrambling.
inline LinkDiagram random_diagram(std::mt19937& rng, int max_crossings) {
  std::uniform_int_distribution<int> strands(2, 4), len(1, max_crossings);
  LinkDiagram d = braid_closure(random_braid(rng, strands(rng), len(rng)));
  std::bernoulli_distribution coin(0.5), rare(0.15);
  OrientationAssignment o;
  for (int c = 0; c < d.component_count(); ++c)
    if (coin(rng)) o.flips.insert(c);
  d = d.oriented(o);
  if (coin(rng)) d = d.mirror();
  if (rare(rng)) d = d.with_unknot();
  return scrambled(d, rng);
}

inline std::vector<OrientationAssignment> all_orientations(const LinkDiagram& d) {
  std::vector<OrientationAssignment> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << d.component_count()); ++m)
    out.push_back(OrientationAssignment::from_mask(m));
  return out;
}

}  // namespace khc::test
