#include "doctest.h"

#include "khcable/braid.hpp"
#include "khcable/cobordism.hpp"
#include "khcable/khovanov.hpp"
#include "support.hpp"

using namespace khc;

namespace {

BandSpec merge_kink() {
  LinkDiagram d = braid_closure(parse_braid("2: 1"));
  BandSpec b{d, 0};
  if (b.side(0).component_count() != 2) b = BandSpec{d.mirror(), 0};
  return b;
}

}  // namespace

TEST_CASE("merge band on two unknots") {
  Field F(3);
  Frobenius lee(F, FrobeniusParams::lee());
  BandSpec b = merge_kink();
  REQUIRE(b.side(0).component_count() == 2);
  REQUIRE(b.side(1).component_count() == 1);
  CHECK(b.orientable());
  BandMapResult r = band_map(b, lee);
  CHECK(r.h_degree == 0);
  CHECK(r.q_degree == -1);
  CHECK(r.lee_pairs.size() == 1);
  CHECK(oriented_band_law(r));
}

TEST_CASE("nonorientable band on the unknot is zero") {
  Field F(5);
  for (auto params : {FrobeniusParams::lee(), FrobeniusParams::bar_natan()}) {
    Frobenius alg(F, params);
    BandSpec b{braid_closure(parse_braid("2: 1 1")), 0};
    CHECK(b.side(0).component_count() == 1);
    CHECK(b.side(1).component_count() == 1);
    CHECK_FALSE(b.orientable());
    CHECK(induced_total_rank(band_map(b, alg)) == 0);
  }
}

TEST_CASE("band laws on random bands") {
  std::mt19937 rng(7);
  int oriented = 0, nonoriented = 0;
  for (int trial = 0; trial < 70; ++trial) {
    LinkDiagram d = test::random_diagram(rng, 9);
    if (d.crossing_count() == 0) continue;
    int c = std::uniform_int_distribution<int>(0, d.crossing_count() - 1)(rng);
    Field F(trial % 2 ? 3 : 5);
    Frobenius alg(F, trial % 3 ? FrobeniusParams::lee() : FrobeniusParams::bar_natan());
    BandSpec b{d, c};
    CAPTURE(to_pd_string(d));
    CAPTURE(c);
    BandMapResult r = band_map(b, alg);
    if (b.orientable()) {
      ++oriented;
      CHECK(r.h_degree == 0);
      CHECK(r.q_degree == -1);
      CHECK(oriented_band_law(r));
    } else {
      ++nonoriented;
      CHECK(induced_total_rank(r) == 0);
    }
  }
  CHECK(oriented + nonoriented >= 50);
  CHECK(oriented >= 10);
  CHECK(nonoriented >= 10);
}

TEST_CASE("skein triangle of a kink and of the trefoil") {
  Field F(3);
  Frobenius lee(F, FrobeniusParams::lee());
  LinkDiagram kink = braid_closure(parse_braid("2: 1"));
  SkeinTriangle k = skein_triangle(kink, 0, lee);
  std::multiset<int> comps{k.link.component_count(), k.oriented.component_count(), k.unoriented.component_count()};
  CHECK(comps == std::multiset<int>{1, 1, 2});
  CHECK(exactness_check(k, lee).ok);

  LinkDiagram tre = braid_closure(parse_braid("2: 1 1 1"));
  SkeinTriangle t = skein_triangle(tre, 2, lee);
  CHECK(t.oriented.component_count() == 2);
  CHECK(t.unoriented.component_count() == 1);
  CHECK(khovanov_homology(t.oriented, F) == khovanov_homology(braid_closure(parse_braid("2: 1 1")), F));
  CHECK(khovanov_homology(t.unoriented, F) == khovanov_homology(LinkDiagram::unknot(), F));
  CHECK(t.band_law);
  ExactnessReport rep = exactness_check(t, lee);
  CHECK(rep.ok);
}

TEST_CASE("skein exactness at every crossing of random diagrams") {
  std::mt19937 rng(99);
  int triangles = 0;
  for (int trial = 0; trial < 40; ++trial) {
    LinkDiagram d = test::random_diagram(rng, 10);
    Field F(trial % 2 ? 3 : 5);
    Frobenius alg(F, trial % 3 ? FrobeniusParams::lee() : FrobeniusParams::bar_natan());
    for (int c = 0; c < d.crossing_count(); ++c) {
      CAPTURE(to_pd_string(d));
      CAPTURE(c);
      SkeinTriangle t = skein_triangle(d, c, alg);
      ExactnessReport rep = exactness_check(t, alg);
      for (const auto& v : rep.violations) MESSAGE(v);
      CHECK(rep.ok);
      CHECK(t.band_law);
      ++triangles;
    }
  }
  CHECK(triangles >= 100);
}
