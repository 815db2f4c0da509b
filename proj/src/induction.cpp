#include "khcable/induction.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

#include "khcable/braid.hpp"
#include "khcable/cable.hpp"
#include "khcable/cobordism.hpp"
#include "khcable/khovanov.hpp"

namespace khc {

namespace {

long long dim_at(const BigradedDims& d, int h) {
  long long n = 0;
  for (auto [k, v] : d)
    if (k.first == h) n += v;
  return n;
}

long long dim_at(const GradedDims& d, int h) {
  auto it = d.find(h);
  return it == d.end() ? 0 : it->second;
}

int square(int x) { return x * x; }

std::set<int> components_of(const Cable& c, const std::set<int>& strands) {
  std::set<int> out;
  for (int p : strands) out.insert(c.strand_component.at(p));
  return out;
}

int twice_lk(const LinkDiagram& d, const std::set<int>& part) {
  if (static_cast<int>(part.size()) == d.component_count()) return 0;
  return 2 * linking_number(d, part);
}

std::set<int> orbit_of(const BraidWord& b, int p) {
  std::vector<int> perm = b.permutation();
  std::set<int> out;
  for (int x = p; out.insert(x).second; x = perm[x]) {
  }
  return out;
}

}  // namespace

void KnotInput::validate() const {
  if (diagram.component_count() != 1) throw std::invalid_argument(name + ": not a knot diagram");
  if (!diagram.is_negative()) throw std::invalid_argument(name + ": diagram is not negative");
  if (diagram.writhe() != writhe)
    throw std::invalid_argument(name + ": declared writhe " + std::to_string(writhe) + " but diagram has " +
                                std::to_string(diagram.writhe()));
}

std::string IndEntry::label() const {
  return "(" + std::to_string(f) + "," + std::to_string(m) + "," + std::to_string(a) + "," + std::to_string(i) + ")";
}

std::vector<IndEntry> enumerate_ind(int w, int max_m) {
  if (w > 0) throw std::invalid_argument("writhe of a negative diagram is at most 0");
  std::vector<IndEntry> out;
  for (int f = w; f <= 0; ++f)
    for (int m = 0; m <= max_m; ++m)
      for (int a = 0; a <= 2 * m; ++a)
        for (int i = 0; i <= 2 * m; ++i) out.push_back({f, m, a, i});
  return out;
}

BigradedDims renormalize(const BigradedDims& dims, int m, int lee_h) {
  return shift(dims, renormalized_lee_grading(m) - lee_h, 0);
}

GradedDims renormalize(const GradedDims& dims, int m, int lee_h) {
  return shift(dims, renormalized_lee_grading(m) - lee_h);
}

int orientation_grading(int f, int m, int p, int q) {
  if (p < 0 || q < 0 || p > 2 * m + 1 || q > 2 * m + 1) throw std::invalid_argument("orientation index out of range");
  return f * (square(2 * m + 1 - 2 * q) - square(2 * m + 1 - 2 * p)) / 2;
}

bool statement_a(const BigradedDims& kh_bar) {
  for (auto [k, v] : kh_bar)
    if (k.first > 0 && v) return false;
  return true;
}

bool statement_b(const BigradedDims& kh_bar, const GradedDims& lee_bar) {
  return dim_at(kh_bar, 0) == dim_at(lee_bar, 0);
}

Identification identify_unoriented_resolution(const LinkDiagram& knot, int f, int m, const LinkDiagram& resolved,
                                              const HarnessOptions& opt) {
  Field F(opt.prime);
  const BigradedDims target = khovanov_homology(resolved, F);
  for (int mp = 0; mp < m; ++mp)
    for (int a = 0; a <= 2 * mp; ++a)
      for (int i = 0; i <= 2 * mp; ++i)
        for (bool flipped : {false, true})
          for (bool unknot : {false, true}) {
            LinkDiagram cand = auxiliary_cable(knot, CableSpec{mp, a, i, f, flipped}).diagram;
            if (unknot) cand = cand.with_unknot();
            if (cand.component_count() != resolved.component_count()) continue;
            if (cand.crossing_count() > opt.budget_crossings) continue;
            if (khovanov_homology(cand, F) == target) return {mp, a, i, flipped, unknot, true};
          }
  return {};
}

std::vector<LinkingCheck> linking_identities(const LinkDiagram& knot, const IndEntry& e) {
  const int n = 2 * e.m + 1;
  Cable L = auxiliary_cable(knot, CableSpec{e.m, e.a, e.i, e.f, false});
  Cable C = auxiliary_cable(knot, CableSpec{e.m, 2 * e.m, 2 * e.m, e.f, false});
  const BraidWord dl = d_braid(e.m, e.a, e.i, false);
  const BraidWord dc = d_braid(e.m, 2 * e.m, 2 * e.m, false);
  const std::vector<int> perm = dl.permutation();
  std::vector<LinkingCheck> out;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::set<int> J;
    for (int p = 0; p < n; ++p)
      if (mask >> p & 1) J.insert(p);
    bool closed = true;
    for (int p : J) closed = closed && J.count(perm[p]);
    if (!closed) continue;
    LinkingCheck chk;
    chk.strands = J;
    chk.crossings_removed = count_inter_crossings(dc, J) - count_inter_crossings(dl, J);
    chk.lhs = twice_lk(L.diagram, components_of(L, J)) + chk.crossings_removed;
    chk.rhs = twice_lk(C.diagram, components_of(C, J));
    const int size = static_cast<int>(J.size());
    chk.rhs_formula = orientation_grading(e.f + 1, e.m, n - size, n);
    chk.third_inequality = chk.rhs_formula <= (square(n) - square(n - 2 * size)) / 2;
    out.push_back(chk);
  }
  return out;
}

bool TriangleReport::ok() const {
  bool good = lu.certified && lo_matches && exact && band_law && inequality && d_writhe == d_lee &&
              d_lee == d_arith && d_writhe >= 0;
  return good;
}

EntryReport verify_entry(const KnotInput& k, const IndEntry& e, const HarnessOptions& opt) {
  EntryReport r;
  r.entry = e;
  auto fail = [&](const std::string& msg) { r.failures.push_back(e.label() + ": " + msg); };
  Cable L = auxiliary_cable(k.diagram, CableSpec{e.m, e.a, e.i, e.f, false});
  r.crossings = L.diagram.crossing_count();
  if (r.crossings > opt.budget_crossings) return r;
  Field F(opt.prime);
  Frobenius def(F, opt.deformation);
  const int renorm = renormalized_lee_grading(e.m);

  const BigradedDims kh = khovanov_homology(L.diagram, F);
  BuiltComplex lee_complex = scan_complex(L.diagram, def, {OrientationAssignment::base()});
  const int lee_h = lee_complex.complex.gen(lee_complex.lee[0].begin()->first).h;
  const GradedDims lee = homology_dims_by_h(lee_complex.complex);
  r.kh_bar = renormalize(kh, e.m, lee_h);
  r.lee_bar = renormalize(lee, e.m, lee_h);
  r.statement_a = statement_a(r.kh_bar);
  r.statement_b = statement_b(r.kh_bar, r.lee_bar);
  if (!r.statement_a) fail("statement A fails");
  if (!r.statement_b) fail("statement B fails");
  if (lee_h != 0) fail("Lee generator of the diagram orientation is not at h = 0");

  r.base_case = e.f == k.writhe && e.a == 0 && e.i == 0;
  if (r.base_case) {
    r.negative_base = L.diagram.is_negative();
    if (!r.negative_base) fail("base case diagram is not negative");
  } else if (e.i == 0) {
    IndEntry other = e.a >= 1 ? IndEntry{e.f, e.m, e.a - 1, 2 * e.m} : IndEntry{e.f - 1, e.m, 2 * e.m, 2 * e.m};
    LinkDiagram od = auxiliary_cable(k.diagram, CableSpec{other.m, other.a, other.i, other.f, false}).diagram;
    r.isotopy_certified =
        khovanov_homology(od, F) == kh && lee_homology_dims(od, def) == lee;
    if (!*r.isotopy_certified) fail("homology differs from the isotopic entry " + other.label());
  } else {
    TriangleReport t;
    const int c = L.pattern_start + d_braid(e.m, e.a, e.i, false).length() - 1;
    SkeinTriangle tri = skein_triangle(L.diagram, c, def);
    const int so = tri.oriented_smoothing, su = 1 - so;
    if (so != 0) fail("rightmost pattern crossing is not positive");
    ExactnessReport ex = exactness_check(tri, def);
    t.exact = ex.ok;
    t.exactness_violations = ex.violations;
    t.band_law = tri.band_law;
    LinkDiagram lo = auxiliary_cable(k.diagram, CableSpec{e.m, e.a, e.i - 1, e.f, false}).diagram;
    t.lo_matches = khovanov_homology(lo, F) == khovanov_homology(tri.oriented, F);
    t.lu = identify_unoriented_resolution(k.diagram, e.f, e.m, tri.unoriented, opt);
    const int mp = t.lu.m;
    t.merge = tri.merge;
    if (t.merge) {
      const int over = L.diagram.crossing_components(c).second;
      for (int p = 0; p < 2 * e.m + 1; ++p)
        if (L.strand_component[p] == over) t.j.insert(p);
    } else {
      t.j = orbit_of(d_braid(e.m, e.a, e.i - 1, false), e.i);
    }
    if (static_cast<int>(t.j.size()) > e.m) {
      std::set<int> rest;
      for (int p = 0; p < 2 * e.m + 1; ++p)
        if (!t.j.count(p)) rest.insert(p);
      t.j = std::move(rest);
    }
    const BraidWord dc = d_braid(e.m, 2 * e.m, 2 * e.m, false);
    const BraidWord dj = d_braid(e.m, e.a, t.merge ? e.i : e.i - 1, false);
    t.cr = count_inter_crossings(dc, t.j) - count_inter_crossings(dj, t.j);
    const int spread = (square(2 * e.m + 1) - square(2 * mp + 1)) / 2;
    t.d_writhe = tri.degree - renorm + renormalized_lee_grading(mp);
    if (t.merge) {
      t.d_lee = renormalized_lee_grading(mp) - (tri.lee_j_grading + renorm);
      t.d_arith = t.cr - e.f * spread;
    } else {
      t.d_lee = renormalized_lee_grading(mp) - (tri.lee_j_grading - tri.offset[so].h + renorm) - 1;
      t.d_arith = t.cr - 1 - e.f * spread;
      if (t.cr < 1) fail("no crossing removed in the split case");
    }
    if (!t.lu.certified) fail("unoriented resolution not identified");
    if (static_cast<int>(t.j.size()) != e.m - mp) fail("|J| differs from m - m'");
    if (t.d_writhe != t.d_lee || t.d_lee != t.d_arith)
      fail("degree mismatch: writhe " + std::to_string(t.d_writhe) + ", Lee " + std::to_string(t.d_lee) +
           ", arithmetic " + std::to_string(t.d_arith));
    if (t.d_writhe < 0) fail("d < 0");
    if (e.a < 2 * e.m && t.d_writhe < 1) fail("d = 0 although a < 2m");
    if (!t.exact) fail("exactness fails");
    if (!t.band_law) fail("band law fails in the triangle");
    if (!t.lo_matches) fail("oriented resolution differs from " + IndEntry{e.f, e.m, e.a, e.i - 1}.label());

    // gradings: L-normalized h = renormalized h - shift
    const int shift_h = renorm - lee_h;
    const int h0 = -shift_h;
    const long long dim_l = dim_at(r.kh_bar, 0);
    const long long dim_lo = dim_at(tri.kh_part[so], h0);
    const long long dim_lu = dim_at(tri.kh_part[su], h0);
    t.inequality = dim_l <= dim_lo + dim_lu;
    if (!t.inequality) fail("dim Kh^0(L) exceeds the sum over the resolutions");
    long long into = 0;
    for (auto [hq, rank] : tri.kh_connecting)
      if (hq.first == h0 - 1) into += rank;
    t.g_source_dim = static_cast<int>(dim_lu);
    t.g_rank = static_cast<int>(dim_lu - into);
    if (e.a == 2 * e.m) {
      t.equality_chain = dim_at(r.lee_bar, 0) == dim_l && dim_l == dim_lo + dim_lu && t.g_rank == t.g_source_dim;
      if (!t.equality_chain) fail("the equality chain for a = 2m fails");
    }
    r.triangle = t;
  }
  r.identities = linking_identities(k.diagram, e);
  for (const auto& chk : r.identities)
    if (!chk.holds()) fail("linking identity fails for a strand set");
  r.status = r.failures.empty() ? EntryReport::Status::verified : EntryReport::Status::failed;
  return r;
}

std::vector<EntryReport> run_induction(const KnotInput& k, int max_m, const HarnessOptions& opt) {
  return verify_entries(k, enumerate_ind(k.writhe, max_m), opt);
}

std::vector<EntryReport> verify_entries(const KnotInput& k, const std::vector<IndEntry>& entries,
                                        const HarnessOptions& opt) {
  k.validate();
  if (entries.empty()) return {};
  std::vector<EntryReport> out(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < entries.size(); j = next++) {
      try {
        out[j] = verify_entry(k, entries[j], opt);
      } catch (const std::exception& ex) {
        out[j].entry = entries[j];
        out[j].status = EntryReport::Status::failed;
        out[j].failures.push_back(entries[j].label() + ": " + ex.what());
      }
    }
  };
  unsigned n = opt.threads > 0 ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(entries.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

bool MainLemmaReport::ok() const {
  return !skipped && dims_m && dims_m1 && renormalize_ok && lu_is_cable_plus_unknot && degree == 0 && injective();
}

MainLemmaReport verify_main_lemma(const KnotInput& k, int m, const HarnessOptions& opt) {
  MainLemmaReport r;
  const int m1 = m + 1;
  Cable L = auxiliary_cable(k.diagram, CableSpec{m1, 2 * m1, 2 * m1, 0, false});
  Cable big = parallel_cable(k.diagram, m1, 1);
  Cable small = parallel_cable(k.diagram, m, 1);
  r.crossings = std::max(L.diagram.crossing_count(), big.diagram.crossing_count());
  if (r.crossings > opt.budget_crossings) {
    r.skipped = true;
    return r;
  }
  Field F(opt.prime);
  Frobenius def(F, opt.deformation);
  auto dims_agree = [&](const LinkDiagram& d) {
    return dim_at(khovanov_homology(d, F), 0) == dim_at(lee_homology_dims(d, def), 0);
  };
  r.dims_m = dims_agree(small.diagram);
  r.dims_m1 = dims_agree(big.diagram);
  const BigradedDims khl = khovanov_homology(L.diagram, F);
  r.renormalize_ok = collapse_q(khovanov_homology(big.diagram, F)) == collapse_q(renormalize(khl, m1, 0));

  const int c = L.pattern_start + d_braid(m1, 2 * m1, 2 * m1, false).length() - 1;
  SkeinTriangle tri = skein_triangle(L.diagram, c, def);
  const int su = 1 - tri.oriented_smoothing;
  Identification id = identify_unoriented_resolution(k.diagram, 0, m1, tri.unoriented, opt);
  r.lu_is_cable_plus_unknot = id.certified && id.extra_unknot && id.m == m && id.a == 2 * m && id.i == 2 * m;
  r.degree = tri.degree - renormalized_lee_grading(m1) + renormalized_lee_grading(id.m);
  const int h0 = -renormalized_lee_grading(m1);
  r.source_dim = static_cast<int>(dim_at(tri.kh_part[su], h0));
  long long into = 0;
  for (auto [hq, rank] : tri.kh_connecting)
    if (hq.first == h0 - 1) into += rank;
  r.rank = r.source_dim - static_cast<int>(into);
  return r;
}

SinvReport verify_theorem_sinv(const KnotInput& k, int n, const HarnessOptions& opt) {
  SinvReport r;
  r.n = n;
  Cable c = parallel_cable(k.diagram, n, 1);
  r.crossings = c.diagram.crossing_count();
  Field F(opt.prime);
  Frobenius def(F, opt.deformation);
  r.s_knot = s_invariant(k.diagram, def);
  if (r.crossings > opt.budget_crossings) {
    r.skipped = true;
    return r;
  }
  r.s_cable = s_invariant(c.diagram, def);
  return r;
}

}  // namespace khc
