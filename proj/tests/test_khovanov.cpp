#include "doctest.h"

#include "khcable/braid.hpp"
#include "khcable/khovanov.hpp"
#include "support.hpp"

using namespace khc;

namespace {

struct LeeData {
  int h;
  int level;
};

std::vector<LeeData> lee_data(BuiltComplex b) {
  Attachments att;
  att.incoming = b.lee;
  for (const SparseVec& z : b.lee) REQUIRE(b.complex.is_cycle(z));
  simplify(b.complex, &att);
  std::vector<LeeData> out;
  for (const SparseVec& z : att.incoming) {
    REQUIRE(!z.empty());
    auto level = filtration_level(b.complex, z);
    REQUIRE(level.has_value());
    out.push_back({b.complex.gen(z.begin()->first).h, *level});
  }
  return out;
}

}  // namespace

TEST_CASE("positive trefoil and Hopf link by both constructions") {
  Field F(3);
  Frobenius kh(F, FrobeniusParams::khovanov());
  LinkDiagram t = braid_closure(parse_braid("2: 1 1 1"));
  BigradedDims want{{{0, 1}, 1}, {{0, 3}, 1}, {{2, 5}, 1}, {{3, 9}, 1}};
  CHECK(homology_dims(cube_complex(t, kh).complex) == want);
  CHECK(homology_dims(scan_complex(t, kh).complex) == want);
  LinkDiagram hopf = braid_closure(parse_braid("2: 1 1"));
  CHECK(total_dim(homology_dims(cube_complex(hopf, kh).complex)) == 4);
  CHECK(total_dim(khovanov_homology(hopf, F)) == 4);
}

TEST_CASE("unknot and empty diagram") {
  Field F(3);
  Frobenius kh(F, FrobeniusParams::khovanov());
  BigradedDims u{{{0, 1}, 1}, {{0, -1}, 1}};
  CHECK(khovanov_homology(LinkDiagram::unknot(), F) == u);
  CHECK(homology_dims(cube_complex(LinkDiagram::unknot(), kh).complex) == u);
  CHECK(khovanov_homology(LinkDiagram::empty(), F) == BigradedDims{{{0, 0}, 1}});
  Frobenius lee(F, FrobeniusParams::lee());
  LeeClass x = lee_generator(LinkDiagram::unknot(), OrientationAssignment::base(), lee);
  CHECK(x.h == 0);
  CHECK(x.level == -1);
  CHECK(s_invariant(LinkDiagram::unknot(), lee) == 0);
}

TEST_CASE("trefoil s-invariants and mirror") {
  for (int p : {3, 5}) {
    Field F(p);
    for (auto params : {FrobeniusParams::lee(), FrobeniusParams::bar_natan()}) {
      Frobenius alg(F, params);
      LinkDiagram pos = braid_closure(parse_braid("2: 1 1 1"));
      CHECK(s_invariant(pos, alg) == 2);
      CHECK(s_invariant(pos.mirror(), alg) == -2);
      CHECK(s_invariant(braid_closure(parse_braid("2: -1 -1 -1")), alg) == -2);
    }
  }
}

TEST_CASE("scan agrees with the cube on random diagrams") {
  std::mt19937 rng(20261019);
  int checked = 0;
  for (int trial = 0; trial < 220; ++trial) {
    LinkDiagram d = test::random_diagram(rng, 10);
    if (d.crossing_count() > 10) continue;
    ++checked;
    Field F(trial % 4 == 0 ? 5 : 3);
    CAPTURE(to_pd_string(d));
    for (auto params : {FrobeniusParams::khovanov(), FrobeniusParams::lee(), FrobeniusParams::bar_natan()}) {
      CAPTURE(params.name());
      Frobenius alg(F, params);
      std::vector<OrientationAssignment> os;
      if (params.deformed()) os = test::all_orientations(d);
      BuiltComplex cube = cube_complex(d, alg, os);
      BuiltComplex scan = scan_complex(d, alg, os);
      scan.complex.validate();
      CHECK(homology_dims(cube.complex) == homology_dims(scan.complex));
      if (!params.deformed()) continue;
      CHECK(homology_dims(scan.complex) == khovanov_homology(d, F));
      GradedDims lee = homology_dims_by_h(scan.complex);
      CHECK(lee == homology_dims_by_h(cube.complex));
      CHECK(total_dim(lee) == (1LL << d.component_count()));
      auto lc = lee_data(cube);
      auto ls = lee_data(scan);
      for (std::size_t k = 0; k < os.size(); ++k) {
        CHECK(lc[k].h == ls[k].h);
        CHECK(lc[k].level == ls[k].level);
        int dw = writhe(d, os[0]) - writhe(d, os[k]);
        CHECK(2 * (ls[k].h - ls[0].h) == dw);
      }
      if (d.component_count() == 1) CHECK(ls[0].h == 0);
    }
  }
  CHECK(checked >= 200);
}
