#include "khcable/khovanov.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace khc {

namespace {

int count_negative(const LinkDiagram& d) {
  int n = 0;
  for (const Crossing& c : d.crossings()) n += c.sign() < 0;
  return n;
}

/// Circles of the resolution `v`: circle id per edge (ordered by smallest edge), then free loops.
struct Resolved {
  std::vector<int> circle_of_edge;
  int circles = 0;
};

Resolved resolve(const LinkDiagram& d, std::uint32_t v) {
  const int E = d.edge_count();
  std::vector<int> parent(E);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int k = 0; k < d.crossing_count(); ++k) {
    const auto& e = d.crossing(k).edges;
    if (v >> k & 1) {
      parent[find(e[0])] = find(e[3]);
      parent[find(e[1])] = find(e[2]);
    } else {
      parent[find(e[0])] = find(e[1]);
      parent[find(e[2])] = find(e[3]);
    }
  }
  Resolved r;
  r.circle_of_edge.assign(E, -1);
  std::vector<int> id(E, -1);
  for (int e = 0; e < E; ++e) {
    int root = find(e);
    if (id[root] == -1) id[root] = r.circles++;
    r.circle_of_edge[e] = id[root];
  }
  r.circles += d.free_loops();
  return r;
}

std::array<bool, 4> incoming_after(const LinkDiagram& d, int c, const std::vector<bool>& rev) {
  const Crossing& x = d.crossing(c);
  std::array<bool, 4> in{};
  for (int s = 0; s < 4; ++s) in[s] = x.is_incoming(s) != rev[x.edges[s]];
  return in;
}

bool respects(const std::array<bool, 4>& in, int s) {
  return s == 0 ? (in[0] != in[1] && in[2] != in[3]) : (in[0] != in[3] && in[1] != in[2]);
}

/// Expands prod_j (X - r_j) over circles into label masks.
std::vector<std::pair<std::uint64_t, Scalar>> idempotent_product(const Field& F, const std::vector<Scalar>& roots) {
  std::vector<std::pair<std::uint64_t, Scalar>> terms{{0, 1}}, next;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    next.clear();
    for (auto [m, c] : terms) {
      next.emplace_back(m | (std::uint64_t{1} << j), c);
      Scalar v = F.mul(c, F.neg(roots[j]));
      if (v) next.emplace_back(m, v);
    }
    terms.swap(next);
  }
  return terms;
}

Complex shifted(const Complex& c, int dh, int dq, std::vector<int>* map) {
  Complex out(c.field());
  std::vector<int> idx(c.size(), -1);
  for (int g = 0; g < c.size(); ++g)
    if (c.alive(g)) idx[g] = out.add_generator(c.gen(g).h + dh, c.gen(g).q + dq);
  for (int g = 0; g < c.size(); ++g)
    if (c.alive(g))
      for (auto [t, v] : c.out(g)) out.add_entry(idx[g], idx[t], v);
  if (map) *map = std::move(idx);
  return out;
}

}  // namespace

std::vector<bool> reversal_flags(const LinkDiagram& d, const OrientationAssignment& o) {
  std::vector<bool> rev(d.edge_count() + d.free_loops());
  for (int e = 0; e < d.edge_count(); ++e) rev[e] = o.flips.count(d.component_of_edge(e)) > 0;
  for (int b = 0; b < d.free_loops(); ++b) rev[d.edge_count() + b] = o.flips.count(d.component_of_free_loop(b)) > 0;
  return rev;
}

BuiltComplex cube_complex(const LinkDiagram& d, const Frobenius& alg, const std::vector<OrientationAssignment>& lee) {
  const int n = d.crossing_count();
  if (n > kCubeLimit)
    throw std::length_error("cube of resolutions limited to " + std::to_string(kCubeLimit) +
                            " crossings; use the scanning construction");
  const Field& F = alg.field();
  const int E = d.edge_count();
  const int nminus = count_negative(d);
  const int nplus = n - nminus;
  const std::uint32_t vertices = 1u << n;
  std::vector<Resolved> res(vertices);
  std::vector<int> offset(vertices + 1, 0);
  for (std::uint32_t v = 0; v < vertices; ++v) {
    res[v] = resolve(d, v);
    if (res[v].circles > 30) throw std::length_error("resolution has too many circles");
    offset[v + 1] = offset[v] + (1 << res[v].circles);
  }
  BuiltComplex out{Complex(F), {}, {}, 0};
  Complex& c = out.complex;
  for (std::uint32_t v = 0; v < vertices; ++v) {
    const int h = __builtin_popcount(v);
    const int k = res[v].circles;
    for (int lab = 0; lab < (1 << k); ++lab) {
      const int xs = __builtin_popcount(lab);
      c.add_generator(h - nminus, (k - xs) - xs + h + nplus - 2 * nminus);
    }
  }
  out.tag.assign(c.size(), 0);
  for (std::uint32_t v = 0; v < vertices; ++v) {
    const Resolved& rv = res[v];
    for (int j = 0; j < n; ++j) {
      if (v >> j & 1) continue;
      const std::uint32_t w = v | (1u << j);
      const Resolved& rw = res[w];
      const Scalar sign = (__builtin_popcount(v & ((1u << j) - 1)) % 2) ? F.neg(1) : Scalar{1};
      const auto& e = d.crossing(j).edges;
      std::vector<int> src_inv, tgt_inv;  // involved circles
      for (int s = 0; s < 4; ++s) {
        int a = rv.circle_of_edge[e[s]], b = rw.circle_of_edge[e[s]];
        if (std::find(src_inv.begin(), src_inv.end(), a) == src_inv.end()) src_inv.push_back(a);
        if (std::find(tgt_inv.begin(), tgt_inv.end(), b) == tgt_inv.end()) tgt_inv.push_back(b);
      }
      std::sort(src_inv.begin(), src_inv.end());
      std::sort(tgt_inv.begin(), tgt_inv.end());
      // circles untouched by the crossing correspond through any of their edges
      std::vector<int> other_map(rv.circles, -1);
      for (int ed = 0; ed < E; ++ed) {
        int a = rv.circle_of_edge[ed];
        if (std::find(src_inv.begin(), src_inv.end(), a) == src_inv.end()) other_map[a] = rw.circle_of_edge[ed];
      }
      const int loops = d.free_loops();
      for (int b = 0; b < loops; ++b) other_map[rv.circles - loops + b] = rw.circles - loops + b;
      for (int lab = 0; lab < (1 << rv.circles); ++lab) {
        int rest = 0;
        for (int a = 0; a < rv.circles; ++a)
          if (other_map[a] >= 0 && (lab >> a & 1)) rest |= 1 << other_map[a];
        auto elem = [&](int circle) { return (lab >> circle & 1) ? alg.x() : alg.one(); };
        std::vector<MaskTerm> terms;
        if (src_inv.size() == 2) {
          AElem m = alg.mul(elem(src_inv[0]), elem(src_inv[1]));
          terms = alg.comultiply(m, 1);
        } else {
          terms = alg.comultiply(elem(src_inv[0]), static_cast<unsigned>(tgt_inv.size()));
        }
        for (const MaskTerm& t : terms) {
          int tl = rest;
          for (std::size_t b = 0; b < tgt_inv.size(); ++b)
            if (t.mask >> b & 1) tl |= 1 << tgt_inv[b];
          c.add_entry(offset[v] + lab, offset[w] + tl, F.mul(sign, t.coeff));
        }
      }
    }
  }
  if (!lee.empty()) {
    auto roots = alg.roots();
    if (!roots) throw std::invalid_argument("Lee generators need distinct roots");
    const auto colors = d.left_face_colors();
    for (const OrientationAssignment& o : lee) {
      const auto rev = reversal_flags(d, o);
      std::uint32_t v = 0;
      for (int j = 0; j < n; ++j) {
        auto in = incoming_after(d, j, rev);
        bool ok0 = respects(in, 0), ok1 = respects(in, 1);
        if (ok0 == ok1) throw std::invalid_argument("orientation is inconsistent at a crossing");
        if (ok1) v |= 1u << j;
      }
      const Resolved& rv = res[v];
      std::vector<int> color(rv.circles, -1);
      for (int ed = 0; ed < E; ++ed) {
        int col = colors[ed] ^ (rev[ed] ? 1 : 0);
        int& slot = color[rv.circle_of_edge[ed]];
        if (slot != -1 && slot != col) throw std::logic_error("face coloring is not constant on a Seifert circle");
        slot = col;
      }
      for (int b = 0; b < d.free_loops(); ++b)
        color[rv.circles - d.free_loops() + b] = (d.free_loop_reversed(b) != rev[E + b]) ? 1 : 0;
      std::vector<Scalar> r(rv.circles);
      for (int k = 0; k < rv.circles; ++k) r[k] = (*roots)[color[k]];
      SparseVec z;
      for (auto [m, coeff] : idempotent_product(F, r)) z[offset[v] + static_cast<int>(m)] = coeff;
      out.lee.push_back(std::move(z));
    }
  }
  return out;
}

Complex khovanov_complex(const LinkDiagram& d, const Frobenius& alg) { return cube_complex(d, alg).complex; }

BuiltComplex scan_complex_requests(const LinkDiagram& d, const Frobenius& alg, const std::vector<LeeRequest>& lee,
                                   SpecialCrossing special) {
  RawScan raw = scan_raw(d, alg, lee, special);
  const int nminus = count_negative(d);
  const int nplus = d.crossing_count() - nminus;
  std::vector<int> map;
  BuiltComplex out{shifted(raw.complex, -nminus, nplus - 2 * nminus, &map), {}, {}, raw.max_boundary};
  out.tag.assign(out.complex.size(), 0);
  for (int g = 0; g < raw.complex.size(); ++g)
    if (map[g] >= 0) out.tag[map[g]] = raw.tag[g];
  for (const SparseVec& z : raw.lee) {
    SparseVec y;
    for (auto [g, v] : z) y[map[g]] = v;
    out.lee.push_back(std::move(y));
  }
  return out;
}

BuiltComplex scan_complex(const LinkDiagram& d, const Frobenius& alg, const std::vector<OrientationAssignment>& lee,
                          SpecialCrossing special) {
  std::vector<LeeRequest> req;
  for (const auto& o : lee) req.push_back({reversal_flags(d, o), 0});
  return scan_complex_requests(d, alg, req, special);
}

BigradedDims khovanov_homology(const LinkDiagram& d, const Field& field) {
  Frobenius alg(field, FrobeniusParams::khovanov());
  return homology_dims(scan_complex(d, alg).complex);
}

GradedDims lee_homology_dims(const LinkDiagram& d, const Frobenius& alg) {
  return homology_dims_by_h(scan_complex(d, alg).complex);
}

LeeClass lee_generator(const LinkDiagram& d, const OrientationAssignment& o, const Frobenius& alg) {
  BuiltComplex b = scan_complex(d, alg, {o});
  Attachments att;
  att.incoming.push_back(b.lee[0]);
  simplify(b.complex, &att);
  LeeClass cls;
  cls.cycle = att.incoming[0];
  cls.orientation = o;
  if (cls.cycle.empty()) throw std::logic_error("Lee cycle vanished under simplification");
  cls.h = b.complex.gen(cls.cycle.begin()->first).h;
  cls.level = filtration_level(b.complex, cls.cycle);
  if (!cls.level) throw std::logic_error("Lee cycle is a boundary");
  return cls;
}

int s_invariant(const LinkDiagram& d, const Frobenius& alg) {
  return *lee_generator(d, OrientationAssignment::base(), alg).level + 1;
}

}  // namespace khc
