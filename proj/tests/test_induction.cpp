#include "doctest.h"

#include "khcable/braid.hpp"
#include "khcable/cable.hpp"
#include "khcable/induction.hpp"
#include "khcable/khovanov.hpp"

using namespace khc;

namespace {

KnotInput unknot() { return {"unknot", LinkDiagram::unknot(), 0}; }
KnotInput trefoil() {
  LinkDiagram d = braid_closure(parse_braid("2: -1 -1 -1"));
  return {"trefoil", d, -3};
}

/// Twice the linking number of `part` with the rest, from crossing signs.
int twice_lk(const LinkDiagram& d, const std::set<int>& part) {
  int total = 0;
  for (int c = 0; c < d.crossing_count(); ++c) {
    auto [a, b] = d.crossing_components(c);
    if (part.count(a) != part.count(b)) total += d.crossing(c).sign();
  }
  return total;
}

}  // namespace

TEST_CASE("Ind enumeration") {
  auto u = enumerate_ind(0, 1);
  CHECK(u.size() == 10);
  CHECK(enumerate_ind(-3, 1).size() == 40);
  auto t = enumerate_ind(-3, 2);
  CHECK(std::is_sorted(t.begin(), t.end()));
  CHECK(t.front() == IndEntry{-3, 0, 0, 0});
  CHECK(t.back() == IndEntry{0, 2, 4, 4});
  CHECK(IndEntry{0, 1, 2, 2}.label() == "(0,1,2,2)");
  CHECK_THROWS(enumerate_ind(1, 0));
}

TEST_CASE("knot input validation") {
  CHECK_NOTHROW(trefoil().validate());
  CHECK_THROWS(KnotInput{"t", braid_closure(parse_braid("2: 1 1 1")), 3}.validate());
  CHECK_THROWS(KnotInput{"t", trefoil().diagram, -2}.validate());
  CHECK_THROWS(KnotInput{"h", braid_closure(parse_braid("2: -1 -1")), -2}.validate());
}

TEST_CASE("renormalization and statements") {
  CHECK(renormalized_lee_grading(0) == 0);
  CHECK(renormalized_lee_grading(1) == -4);
  CHECK(renormalize(BigradedDims{{{2, 1}, 1}}, 1, 2) == BigradedDims{{{-4, 1}, 1}});
  CHECK(renormalize(GradedDims{{0, 2}}, 1, 0) == GradedDims{{-4, 2}});
  CHECK(statement_a(BigradedDims{{{0, 1}, 1}, {{-2, 3}, 1}}));
  CHECK(!statement_a(BigradedDims{{{1, 1}, 1}}));
  CHECK(statement_b(BigradedDims{{{0, 1}, 1}, {{0, -1}, 1}}, GradedDims{{0, 2}}));
  CHECK(!statement_b(BigradedDims{{{0, 1}, 1}}, GradedDims{{0, 2}}));
}

TEST_CASE("orientation grading matches Lee generators of parallel cables") {
  CHECK(orientation_grading(1, 1, 1, 3) == 4);
  CHECK(orientation_grading(0, 2, 1, 4) == 0);
  CHECK_THROWS(orientation_grading(1, 1, 4, 0));
  Field F(3);
  Frobenius lee(F, FrobeniusParams::lee());
  for (const KnotInput& k : {unknot(), trefoil()})
    for (int f : {k.writhe - 1, k.writhe, k.writhe + 1}) {
      Cable c = auxiliary_cable(k.diagram, {1, 0, 0, f, false});
      std::vector<OrientationAssignment> os;
      for (int p = 0; p <= 3; ++p) {
        std::set<int> first;
        for (int s = 0; s < p; ++s) first.insert(s);
        os.push_back(reverse_strands(c, first));
      }
      std::vector<int> h;
      for (const auto& o : os) h.push_back(lee_generator(c.diagram, o, lee).h);
      for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q) CHECK(h[p] - h[q] == orientation_grading(f, 1, p, q));
    }
}

TEST_CASE("linking identity on the unknot at (1,1,2)") {
  const IndEntry e{0, 1, 1, 2};
  auto checks = linking_identities(LinkDiagram::unknot(), e);
  Cable L = auxiliary_cable(LinkDiagram::unknot(), {1, 1, 2, 0, false});
  Cable C = auxiliary_cable(LinkDiagram::unknot(), {1, 2, 2, 0, false});
  const auto orbits = d_braid(1, 1, 2, false).orbits().size();
  REQUIRE(checks.size() == (std::size_t{1} << orbits) - 1);
  for (const auto& chk : checks) {
    std::set<int> lc, cc;
    for (int p : chk.strands) {
      lc.insert(L.strand_component[p]);
      cc.insert(C.strand_component[p]);
    }
    CHECK(chk.lhs == twice_lk(L.diagram, lc) + chk.crossings_removed);
    CHECK(chk.rhs == twice_lk(C.diagram, cc));
    CHECK(chk.holds());
  }
}

TEST_CASE("linking identities hold for every entry with m <= 2") {
  for (const KnotInput& k : {unknot(), trefoil()})
    for (const IndEntry& e : enumerate_ind(k.writhe, 2))
      for (const auto& chk : linking_identities(k.diagram, e)) CHECK(chk.holds());
}

TEST_CASE("unoriented resolution of the top unknot cable") {
  HarnessOptions opt;
  LinkDiagram L = auxiliary_cable(LinkDiagram::unknot(), {1, 2, 2, 0, false}).diagram;
  const int c = L.crossing_count() - 1;
  LinkDiagram lu = resolve_crossing(L, c, Resolution::unoriented);
  Identification id = identify_unoriented_resolution(LinkDiagram::unknot(), 0, 1, lu, opt);
  CHECK(id.certified);
  CHECK(id.m == 0);
  CHECK(id.extra_unknot);
}

TEST_CASE("induction over the unknot") {
  HarnessOptions opt;
  opt.threads = 2;
  auto reports = run_induction(unknot(), 1, opt);
  REQUIRE(reports.size() == 10);
  for (const EntryReport& r : reports) {
    std::string why = r.entry.label();
    for (const auto& msg : r.failures) why += "; " + msg;
    INFO(why);
    CHECK(r.status == EntryReport::Status::verified);
    CHECK(r.statement_a);
    CHECK(r.statement_b);
    if (r.triangle) {
      CHECK(r.triangle->d_writhe >= 0);
      if (r.entry.a < 2 * r.entry.m) CHECK(r.triangle->d_writhe >= 1);
    }
  }
  // m = 0: both dims are 2
  CHECK(reports[0].lee_bar.at(0) == 2);
  long long kh0 = 0;
  for (auto [hq, v] : reports[0].kh_bar)
    if (hq.first == 0) kh0 += v;
  CHECK(kh0 == 2);
}

TEST_CASE("induction over the trefoil at m = 0") {
  HarnessOptions opt;
  opt.prime = 5;
  auto reports = run_induction(trefoil(), 0, opt);
  REQUIRE(reports.size() == 4);
  CHECK(reports[0].base_case);
  CHECK(reports[0].negative_base);
  for (const EntryReport& r : reports) {
    std::string why = r.entry.label();
    for (const auto& msg : r.failures) why += "; " + msg;
    INFO(why);
    CHECK(r.status == EntryReport::Status::verified);
  }
}

TEST_CASE("entries above the budget are skipped") {
  HarnessOptions opt;
  opt.budget_crossings = 20;
  EntryReport r = verify_entry(trefoil(), {0, 1, 0, 0}, opt);
  CHECK(r.status == EntryReport::Status::skipped);
  CHECK(r.crossings == 45);
}

TEST_CASE("main lemma and s of cables for the unknot") {
  HarnessOptions opt;
  MainLemmaReport ml = verify_main_lemma(unknot(), 0, opt);
  CHECK(ml.ok());
  CHECK(ml.injective());
  CHECK(ml.degree == 0);
  for (int n = 0; n <= 2; ++n) {
    SinvReport s = verify_theorem_sinv(unknot(), n, opt);
    CHECK(s.holds());
    CHECK(s.s_cable == -2 * n);
  }
  opt.budget_crossings = 10;
  CHECK(verify_theorem_sinv(trefoil(), 1, opt).skipped);
}
