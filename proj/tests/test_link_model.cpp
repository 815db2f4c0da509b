#include "doctest.h"

#include "khcable/braid.hpp"
#include "khcable/cable.hpp"
#include "khcable/khovanov.hpp"
#include "support.hpp"

using namespace khc;

namespace {

/// Sum of crossing signs between `part` and the remaining components.
int signed_inter(const LinkDiagram& d, const std::set<int>& part) {
  int total = 0;
  for (int c = 0; c < d.crossing_count(); ++c) {
    auto [a, b] = d.crossing_components(c);
    if (part.count(a) != part.count(b)) total += d.crossing(c).sign();
  }
  return total;
}

BigradedDims tensor_unknot(const BigradedDims& d) {
  BigradedDims out;
  for (auto [k, v] : d) {
    out[{k.first, k.second + 1}] += v;
    out[{k.first, k.second - 1}] += v;
  }
  return out;
}

}  // namespace

TEST_CASE("braid closures") {
  LinkDiagram t = braid_closure(parse_braid("2: 1 1 1"));
  CHECK(t.component_count() == 1);
  CHECK(t.writhe() == 3);
  CHECK(t.crossing_count() == 3);
  CHECK(braid_closure(parse_braid("3: 1 2 1 2 1 2")).component_count() == 3);
  CHECK(braid_closure(parse_braid("2: -1 -1 -1")).is_negative());
  CHECK(format_braid(parse_braid("3: 1 -2 1")) == "3: 1 -2 1");
  CHECK_THROWS(parse_braid("2: 2"));
  CHECK_THROWS(parse_braid("2: 0"));
}

TEST_CASE("auxiliary braid words") {
  CHECK(d_braid(1, 2, 2, false) == parse_braid("3: 1 2 1 2 1 2"));
  CHECK(d_braid(1, 1, 2, true) == parse_braid("3: 1 2 1 2"));
  CHECK(d_braid(1, 0, 1, true) == parse_braid("3: 2"));
  CHECK(d_braid(0, 0, 0, false).strands == 1);
  for (int m = 0; m <= 3; ++m)
    for (int a = 0; a <= 2 * m; ++a)
      for (int i = 0; i <= 2 * m; ++i) {
        CHECK(d_braid(m, a, i, false).length() == 2 * m * a + i);
        CHECK(d_braid(m, a, i, true).length() == 2 * m * a + i);
      }
  CHECK_THROWS(d_braid(1, 3, 0, false));
  CHECK_THROWS(d_braid(1, 0, -1, false));
}

TEST_CASE("inter-component crossings equal twice the linking number on positive braids") {
  BraidWord full = d_braid(1, 2, 2, false);
  CHECK(count_inter_crossings(full, {0}) == 4);
  CHECK(count_inter_crossings(full, {0, 1, 2}) == 0);
  CHECK_THROWS(count_inter_crossings(d_braid(1, 1, 1, false), {1, 2}));
  std::mt19937 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    BraidWord b = test::random_braid(rng, 2 + trial % 4, 1 + trial % 9);
    for (int& l : b.letters) l = std::abs(l);
    Closure cl = braid_closure_detailed(b);
    for (const auto& orbit : b.orbits()) {
      std::set<int> J(orbit.begin(), orbit.end());
      std::set<int> comps;
      for (int p : J) comps.insert(cl.strand_component[p]);
      if (static_cast<int>(comps.size()) == cl.diagram.component_count()) continue;
      CHECK(count_inter_crossings(b, J) == signed_inter(cl.diagram, comps));
      CHECK(2 * linking_number(cl.diagram, comps) == signed_inter(cl.diagram, comps));
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("cable crossing counts and framing") {
  LinkDiagram trefoil = braid_closure(parse_braid("2: -1 -1 -1"));
  CHECK(auxiliary_cable(trefoil, {1, 0, 0, 0, false}).diagram.crossing_count() == 45);
  LinkDiagram kink = auxiliary_cable(LinkDiagram::unknot(), {0, 0, 0, 1, false}).diagram;
  CHECK(kink.crossing_count() == 1);
  CHECK(kink.writhe() == 1);
  std::vector<LinkDiagram> knots{LinkDiagram::unknot(), trefoil, braid_closure(parse_braid("2: 1 1 1"))};
  for (const LinkDiagram& k : knots)
    for (int m = 0; m <= 1; ++m)
      for (int f = -2; f <= 1; ++f)
        for (int a = 0; a <= 2 * m; ++a)
          for (int i = 0; i <= 2 * m; ++i)
            for (bool flip : {false, true}) {
              const int n = 2 * m + 1;
              Cable c = auxiliary_cable(k, {m, a, i, f, flip});
              const int per_twist = n == 1 ? 1 : n * (n - 1);
              CHECK(c.diagram.crossing_count() ==
                    n * n * k.crossing_count() + std::abs(f - k.writhe()) * per_twist + 2 * m * a + i);
              CHECK(c.diagram.component_count() ==
                    static_cast<int>(d_braid(m, a, i, flip).orbits().size()));
              CHECK(c.pattern_start == c.diagram.crossing_count() - (2 * m * a + i));
              if (m == 0) CHECK(c.diagram.writhe() == f);
            }
}

TEST_CASE("parallel cable components link pairwise by the framing") {
  LinkDiagram trefoil = braid_closure(parse_braid("2: -1 -1 -1"));
  for (int f : {-1, 0, 1}) {
    Cable c = parallel_cable(trefoil, 1, f);
    REQUIRE(c.diagram.component_count() == 3);
    // strands 0 and 2 run parallel, strand 1 against them
    CHECK(linking_number(c.diagram, {c.strand_component[0]}) == 0);
    CHECK(linking_number(c.diagram, {c.strand_component[1]}) == -2 * f);
  }
}

TEST_CASE("flipped family agrees with the reversal of the reversed knot's family") {
  Field F(3);
  LinkDiagram trefoil = braid_closure(parse_braid("2: -1 -1 -1"));
  for (int a = 0; a <= 2; ++a)
    for (int i = 0; i <= 2; ++i) {
      LinkDiagram direct = auxiliary_cable(LinkDiagram::unknot(), {1, a, i, 0, true}).diagram;
      LinkDiagram via = auxiliary_cable(LinkDiagram::unknot().reversed(), {1, a, i, 0, false}).diagram.reversed();
      CHECK(khovanov_homology(direct, F) == khovanov_homology(via, F));
    }
  LinkDiagram direct = auxiliary_cable(trefoil, {1, 1, 1, -3, true}).diagram;
  LinkDiagram via = auxiliary_cable(trefoil.reversed(), {1, 1, 1, -3, false}).diagram.reversed();
  CHECK(khovanov_homology(direct, F) == khovanov_homology(via, F));
}

TEST_CASE("Reidemeister moves and Markov stabilization preserve homology") {
  Field F(5);
  auto kh = [&](const char* b) { return khovanov_homology(braid_closure(parse_braid(b)), F); };
  CHECK(kh("2: 1") == khovanov_homology(LinkDiagram::unknot(), F));
  CHECK(kh("2: -1") == khovanov_homology(LinkDiagram::unknot(), F));
  CHECK(kh("2: 1 -1") == kh("2: "));
  CHECK(kh("3: 1 2 1") == kh("3: 2 1 2"));
  CHECK(kh("3: 1 1 1 2") == kh("2: 1 1 1"));
  CHECK(kh("3: 1 -2 1 -2") == kh("3: -2 1 -2 1"));
}

TEST_CASE("disjoint union, mirror and PD round trip") {
  Field F(3);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    LinkDiagram d = test::random_diagram(rng, 8);
    BigradedDims kh = khovanov_homology(d, F);
    CHECK(khovanov_homology(d.with_unknot(), F) == tensor_unknot(kh));
    BigradedDims mirrored;
    for (auto [k, v] : kh) mirrored[{-k.first, -k.second}] = v;
    CHECK(khovanov_homology(d.mirror(), F) == mirrored);
    LinkDiagram back = parse_pd(to_pd_string(d));
    CHECK(back.writhe() == d.writhe());
    CHECK(back.component_count() == d.component_count());
    CHECK(khovanov_homology(back, F) == kh);
    CHECK(d.mirror().writhe() == -d.writhe());
  }
}
