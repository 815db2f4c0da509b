#include "khcable/cobordism.hpp"

#include <set>
#include <stdexcept>

#include "khcable/khovanov.hpp"

namespace khc {

namespace {

int quantum_shift(const LinkDiagram& d) { return d.positive_crossings() - 2 * d.negative_crossings(); }

Complex regraded(const Complex& c, int dh, int dq) {
  Complex out(c.field());
  for (int g = 0; g < c.size(); ++g) out.add_generator(c.gen(g).h + dh, c.gen(g).q + dq);
  for (int g = 0; g < c.size(); ++g)
    for (auto [t, v] : c.out(g)) out.add_entry(g, t, v);
  return out;
}

Complex graded_part(const Complex& c) {
  Complex out(c.field());
  for (int g = 0; g < c.size(); ++g) out.add_generator(c.gen(g).h, c.gen(g).q);
  for (int g = 0; g < c.size(); ++g)
    for (auto [t, v] : c.out(g))
      if (c.gen(t).q == c.gen(g).q) out.add_entry(g, t, v);
  return out;
}

/// Simplifies source and target of a map, transporting the map and extra cycles on each side.
void simplify_map(Complex& src, Complex& tgt, std::map<int, SparseVec>& f, std::vector<SparseVec>& src_cycles,
                  std::vector<SparseVec>& tgt_cycles) {
  Attachments a;
  a.incoming = std::move(src_cycles);
  a.columns = std::move(f);
  simplify(src, &a);
  src_cycles = std::move(a.incoming);
  Attachments b;
  b.incoming = std::move(tgt_cycles);
  const std::size_t own = b.incoming.size();
  std::vector<int> keys;
  for (auto& [g, img] : a.columns) {
    keys.push_back(g);
    b.incoming.push_back(std::move(img));
  }
  simplify(tgt, &b);
  f.clear();
  for (std::size_t k = 0; k < keys.size(); ++k)
    if (!b.incoming[own + k].empty()) f[keys[k]] = std::move(b.incoming[own + k]);
  b.incoming.resize(own);
  tgt_cycles = std::move(b.incoming);
}

std::vector<bool> with_loops(std::vector<bool> edges, const LinkDiagram& d) {
  edges.resize(d.edge_count() + d.free_loops(), false);
  return edges;
}

}  // namespace

SplitComplex split_complex(const LinkDiagram& d, int c, const Frobenius& alg, const std::vector<LeeRequest>& lee) {
  BuiltComplex b = scan_complex_requests(d, alg, lee, {c, SpecialCrossing::Mode::split, 0});
  const Field& F = alg.field();
  SplitComplex out{b.complex, {Complex(F), Complex(F)}, {}, {}, {}, b.lee};
  std::vector<int> idx(b.complex.size(), -1);
  for (int g = 0; g < b.complex.size(); ++g) {
    if (!b.complex.alive(g)) continue;
    idx[g] = out.part[b.tag[g]].add_generator(b.complex.gen(g).h, b.complex.gen(g).q);
  }
  const int nminus = d.negative_crossings();
  for (int g = 0; g < b.complex.size(); ++g) {
    if (!b.complex.alive(g)) continue;
    for (auto [t, v] : b.complex.out(g)) {
      if (b.tag[g] == b.tag[t]) {
        out.part[b.tag[g]].add_entry(idx[g], idx[t], v);
      } else if (b.tag[g] == 0) {
        int raw = b.complex.gen(g).h + nminus;
        out.saddle[idx[g]][idx[t]] = (raw % 2 == 0) ? v : F.neg(v);
      } else {
        throw std::logic_error("differential runs from the 1-smoothing to the 0-smoothing");
      }
    }
  }
  for (const SparseVec& z : b.lee) {
    SparseVec y;
    int side = -1;
    for (auto [g, v] : z) {
      if (side == -1) side = b.tag[g];
      if (side != b.tag[g]) throw std::logic_error("Lee cycle straddles the special crossing");
      y[idx[g]] = v;
    }
    out.lee.push_back(std::move(y));
    out.lee_side.push_back(side);
  }
  return out;
}

Offset smoothing_offset(const LinkDiagram& d, const LinkDiagram& smoothed, int s) {
  return {s + smoothed.negative_crossings() - d.negative_crossings(), s + quantum_shift(d) - quantum_shift(smoothed)};
}

bool BandSpec::orientable() const { return side(0).component_count() != side(1).component_count(); }

std::vector<bool> BandSpec::orientation(int s) const {
  auto [cu, co] = diagram.crossing_components(crossing);
  const bool own = cu != co && s == smoothing_of(diagram.crossing(crossing), Resolution::oriented);
  return with_loops(own ? std::vector<bool>(diagram.edge_count(), false) : unoriented_reversal(diagram, crossing),
                    diagram);
}

LinkDiagram BandSpec::side(int s) const {
  std::vector<bool> rev = orientation(s);
  rev.resize(diagram.edge_count());
  return smooth_crossing(diagram, crossing, s, rev);
}

BandMapResult band_map(const BandSpec& band, const Frobenius& alg) {
  const LinkDiagram& d = band.diagram;
  const bool orientable = band.orientable();
  std::vector<LeeRequest> req;
  if (orientable) {
    const std::vector<bool> base = band.orientation(0);
    const int through = d.crossing_components(band.crossing).first;
    std::vector<int> others;
    for (int comp = 0; comp < d.component_count(); ++comp)
      if (comp != through) others.push_back(comp);
    if (others.size() > 6) others.resize(6);
    for (int mask = 0; mask < (1 << others.size()); ++mask) {
      OrientationAssignment o;
      for (std::size_t k = 0; k < others.size(); ++k)
        if (mask >> k & 1) o.flips.insert(others[k]);
      std::vector<bool> flags = reversal_flags(d, o);
      for (std::size_t e = 0; e < flags.size(); ++e) flags[e] = flags[e] != base[e];
      req.push_back({flags, 0});
      req.push_back({flags, 1});
    }
  }
  SplitComplex sc = split_complex(d, band.crossing, alg, req);
  const Offset o0 = smoothing_offset(d, band.side(0), 0);
  const Offset o1 = smoothing_offset(d, band.side(1), 1);
  BandMapResult r{regraded(sc.part[0], -o0.h, -o0.q), regraded(sc.part[1], -o1.h, -o1.q), sc.saddle, 0, 0, {}};
  r.h_degree = 1 + o0.h - o1.h;
  r.q_degree = o0.q - o1.q;
  std::vector<SparseVec> src, tgt;
  for (std::size_t k = 0; k < sc.lee.size(); ++k) {
    if (sc.lee_side[k] != static_cast<int>(k % 2)) throw std::logic_error("band orientation does not fit its side");
    (k % 2 == 0 ? src : tgt).push_back(sc.lee[k]);
  }
  simplify_map(r.source, r.target, r.map, src, tgt);
  for (std::size_t k = 0; k < src.size(); ++k) r.lee_pairs.emplace_back(src[k], tgt[k]);
  return r;
}

bool oriented_band_law(const BandMapResult& b) {
  if (b.lee_pairs.empty()) return false;
  for (const auto& [x, y] : b.lee_pairs) {
    SparseVec image = apply_map(b.source.field(), b.map, x);
    if (!proportional_classes(b.target, image, y)) return false;
  }
  return true;
}

int induced_total_rank(const BandMapResult& b) {
  std::set<int> hs;
  for (int g : b.source.alive_generators()) hs.insert(b.source.gen(g).h);
  int total = 0;
  for (int h : hs) total += induced_rank(b.source, b.target, b.map, h, b.h_degree);
  return total;
}

SkeinTriangle skein_triangle(const LinkDiagram& d, int c, const Frobenius& alg) {
  SkeinTriangle t;
  t.link = d;
  t.crossing = c;
  t.oriented_smoothing = smoothing_of(d.crossing(c), Resolution::oriented);
  const int so = t.oriented_smoothing, su = 1 - so;
  t.oriented = resolve_crossing(d, c, Resolution::oriented);
  t.unoriented = resolve_crossing(d, c, Resolution::unoriented);
  t.reversal = unoriented_reversal(d, c);
  t.merge = t.oriented.component_count() < d.component_count();
  t.offset[so] = smoothing_offset(d, t.oriented, so);
  t.offset[su] = smoothing_offset(d, t.unoriented, su);
  t.degree = -t.offset[su].h;

  const std::vector<bool> rev = with_loops(t.reversal, d);
  SplitComplex sc = split_complex(d, c, alg, {{rev, so}, {rev, su}});

  // graded theory
  {
    Complex a = graded_part(sc.part[0]), b = graded_part(sc.part[1]);
    std::map<int, SparseVec> s;
    for (auto& [g, img] : sc.saddle)
      for (auto [y, v] : img)
        if (sc.part[1].gen(y).q == sc.part[0].gen(g).q) s[g][y] = v;
    std::vector<SparseVec> none_a, none_b;
    simplify_map(a, b, s, none_a, none_b);
    t.kh_part[0] = homology_dims(a);
    t.kh_part[1] = homology_dims(b);
    for (auto [hq, n] : t.kh_part[0]) {
      int r = induced_rank(a, b, s, hq.first, 1, hq.second);
      if (r) t.kh_connecting[hq] = r;
    }
    t.kh_whole = homology_dims(sc.whole);
  }
  // deformed theory
  {
    Complex a = sc.part[0], b = sc.part[1];
    std::map<int, SparseVec> s = sc.saddle;
    std::vector<SparseVec> ca, cb;
    std::vector<int> which_a, which_b;
    for (std::size_t k = 0; k < sc.lee.size(); ++k) {
      if (sc.lee_side[k] == 0) {
        ca.push_back(sc.lee[k]);
        which_a.push_back(static_cast<int>(k));
      } else {
        cb.push_back(sc.lee[k]);
        which_b.push_back(static_cast<int>(k));
      }
    }
    simplify_map(a, b, s, ca, cb);
    t.lee_part[0] = homology_dims_by_h(a);
    t.lee_part[1] = homology_dims_by_h(b);
    for (auto [h, n] : t.lee_part[0]) {
      int r = induced_rank(a, b, s, h, 1);
      if (r) t.lee_connecting[h] = r;
    }
    t.lee_whole = homology_dims_by_h(sc.whole);
    // request 0 is x^J on the oriented side (split case) or x_L^J (merge case)
    t.lee_j_grading = sc.whole.gen(sc.lee_whole[0].begin()->first).h;
    if (t.merge) {
      int rank = 0;
      for (auto [h, n] : t.lee_part[0]) rank += induced_rank(a, b, s, h, 1);
      Complex w = sc.whole;
      Attachments att;
      att.incoming = {sc.lee_whole[0], sc.lee_whole[1]};
      simplify(w, &att);
      t.band_law = rank == 0 && proportional_classes(w, att.incoming[0], att.incoming[1]);
    } else {
      if (which_a.size() != 1 || which_b.size() != 1) throw std::logic_error("split triangle lost a Lee cycle");
      SparseVec image = apply_map(alg.field(), s, ca[0]);
      t.band_law = proportional_classes(b, image, cb[0]);
    }
  }
  return t;
}

ExactnessReport exactness_check(const SkeinTriangle& t, const Frobenius& alg) {
  ExactnessReport rep;
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    rep.violations.push_back(msg);
  };
  std::set<std::pair<int, int>> keys;
  for (int s = 0; s < 2; ++s)
    for (auto& [k, v] : t.kh_part[s]) keys.insert(k);
  for (auto& [k, v] : t.kh_whole) keys.insert(k);
  auto at = [](const auto& m, const auto& k) -> long long {
    auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
  };
  for (auto [h, q] : keys) {
    long long expect = at(t.kh_part[1], std::pair{h, q}) - at(t.kh_connecting, std::pair{h - 1, q}) +
                       at(t.kh_part[0], std::pair{h, q}) - at(t.kh_connecting, std::pair{h, q});
    if (expect != at(t.kh_whole, std::pair{h, q}))
      fail("Kh exactness fails at (" + std::to_string(h) + "," + std::to_string(q) + ")");
  }
  std::set<int> hs;
  for (int s = 0; s < 2; ++s)
    for (auto& [k, v] : t.lee_part[s]) hs.insert(k);
  for (auto& [k, v] : t.lee_whole) hs.insert(k);
  for (int h : hs) {
    long long expect = at(t.lee_part[1], h) - at(t.lee_connecting, h - 1) + at(t.lee_part[0], h) - at(t.lee_connecting, h);
    if (expect != at(t.lee_whole, h)) fail("deformed exactness fails at h=" + std::to_string(h));
  }
  const int so = t.oriented_smoothing;
  const LinkDiagram* corner[2];
  corner[so] = &t.oriented;
  corner[1 - so] = &t.unoriented;
  for (int s = 0; s < 2; ++s) {
    BuiltComplex b = scan_complex(*corner[s], alg);
    if (shift(homology_dims(b.complex), t.offset[s].h, t.offset[s].q) != t.kh_part[s])
      fail("Kh of smoothing " + std::to_string(s) + " does not match its diagram");
    if (shift(homology_dims_by_h(b.complex), t.offset[s].h) != t.lee_part[s])
      fail("deformed homology of smoothing " + std::to_string(s) + " does not match its diagram");
  }
  return rep;
}

}  // namespace khc
