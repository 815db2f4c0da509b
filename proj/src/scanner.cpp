#include "khcable/scanner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace khc {

namespace {

using Mask = std::uint64_t;

struct MTerm {
  Mask mask;
  Scalar c;
};
/// Morphism between two crossingless matchings: dotted disks on the circles of P ∪ Q.
using Morph = std::vector<MTerm>;

void accumulate(const Field& F, std::map<Mask, Scalar>& acc, Mask m, Scalar c) {
  if (c == 0) return;
  auto [it, fresh] = acc.emplace(m, c);
  if (!fresh) {
    it->second = F.add(it->second, c);
    if (it->second == 0) acc.erase(it);
  }
}

Morph to_morph(const std::map<Mask, Scalar>& acc) {
  Morph m;
  m.reserve(acc.size());
  for (auto [k, v] : acc) m.push_back({k, v});
  return m;
}

/// a += s * b
void morph_axpy(const Field& F, Morph& a, const Morph& b, Scalar s) {
  if (s == 0 || b.empty()) return;
  Morph r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mask < b[j].mask)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].mask < a[i].mask) {
      r.push_back({b[j].mask, F.mul(s, b[j].c)});
      ++j;
    } else {
      Scalar v = F.add(a[i].c, F.mul(s, b[j].c));
      if (v) r.push_back({a[i].mask, v});
      ++i;
      ++j;
    }
  }
  a = std::move(r);
}

struct UF {
  std::vector<int> p;
  explicit UF(int n) : p(n) {
    for (int i = 0; i < n; ++i) p[i] = i;
  }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

struct CircleInfo {
  int n = 0;
  std::vector<int> of;   // circle of each boundary point
  std::vector<int> rep;  // smallest point on each circle
};

std::uint64_t key3(int a, int b, int c) {
  return (static_cast<std::uint64_t>(a) << 42) ^ (static_cast<std::uint64_t>(b) << 21) ^
         static_cast<std::uint64_t>(c);
}

class MatchingTable {
 public:
  int intern(const std::vector<std::uint8_t>& m) {
    std::string key(m.begin(), m.end());
    auto [it, fresh] = index_.emplace(std::move(key), static_cast<int>(all_.size()));
    if (fresh) all_.push_back(m);
    return it->second;
  }
  const std::vector<std::uint8_t>& at(int id) const { return all_[id]; }
  int points() const { return points_; }
  void set_points(int n) { points_ = n; }

  const CircleInfo& circles(int p, int q) {
    auto [it, fresh] = circles_.try_emplace(key3(p, q, 0));
    if (!fresh) return it->second;
    CircleInfo& info = it->second;
    const auto& P = all_[p];
    const auto& Q = all_[q];
    info.of.assign(points_, -1);
    for (int i = 0; i < points_; ++i) {
      if (info.of[i] != -1) continue;
      int j = i;
      do {
        info.of[j] = info.n;
        int jp = P[j];
        info.of[jp] = info.n;
        j = Q[jp];
      } while (j != i);
      info.rep.push_back(i);
      ++info.n;
    }
    return info;
  }

 private:
  int points_ = 0;
  std::vector<std::vector<std::uint8_t>> all_;
  std::unordered_map<std::string, int> index_;
  std::unordered_map<std::uint64_t, CircleInfo> circles_;
};

/// Connected components of a cobordism after reducing to the boundary circles.
struct Skeleton {
  int ncomp = 0;
  std::vector<int> dot_comp;               // component of each dottable disk
  std::vector<int> genus;
  std::vector<std::vector<int>> out;       // output circles per component
  std::vector<int> src_loop_comp, tgt_loop_comp;
};

/// Δ^{(k)} of each component element, tensored together onto the output circles.
void expand(const Frobenius& A, const Skeleton& sk, const std::vector<AElem>& elems, Scalar coeff,
            std::map<Mask, Scalar>& acc) {
  const Field& F = A.field();
  std::vector<std::pair<Mask, Scalar>> cur{{0, coeff}}, next;
  for (int c = 0; c < sk.ncomp; ++c) {
    const auto& circ = sk.out[c];
    std::vector<MaskTerm> terms = A.comultiply(elems[c], static_cast<unsigned>(circ.size()));
    if (terms.empty()) return;
    next.clear();
    for (auto [m, v] : cur)
      for (const MaskTerm& t : terms) {
        Mask mm = m;
        for (std::size_t b = 0; b < circ.size(); ++b)
          if (t.mask >> b & 1) mm |= Mask{1} << circ[b];
        next.emplace_back(mm, F.mul(v, t.coeff));
      }
    cur.swap(next);
  }
  for (auto [m, v] : cur) accumulate(F, acc, m, v);
}

std::vector<AElem> component_elements(const Frobenius& A, const Skeleton& sk, Mask dots) {
  std::vector<int> count(sk.ncomp, 0);
  for (Mask m = dots; m; m &= m - 1) ++count[sk.dot_comp[__builtin_ctzll(m)]];
  std::vector<AElem> el(sk.ncomp);
  for (int c = 0; c < sk.ncomp; ++c) {
    AElem a = A.pow_x(count[c]);
    for (int g = 0; g < sk.genus[c]; ++g) a = A.mul(a, A.handle());
    el[c] = a;
  }
  return el;
}

struct GluedMatching {
  int id = -1;
  std::vector<std::vector<int>> loops;  // nodes on each closed loop
};

int arc_index(int s, int slot) {
  if (s == 0) return slot <= 1 ? 0 : 1;
  return (slot == 0 || slot == 3) ? 0 : 1;
}

int arc_partner(int s, int slot) {
  static const int p0[4] = {1, 0, 3, 2};
  static const int p1[4] = {3, 2, 1, 0};
  return s == 0 ? p0[slot] : p1[slot];
}

struct TGen {
  int match;
  int h;
  int q;
  int tag;
};

class Engine {
 public:
  Engine(const LinkDiagram& d, const Frobenius& alg, const std::vector<LeeRequest>& lee)
      : d_(d), A_(alg), F_(alg.field()), colors_(d.left_face_colors()) {
    table_.set_points(0);
    int empty = table_.intern({});
    gens_.push_back({empty, 0, 0, 0});
    out_.emplace_back();
    in_.emplace_back();
    alive_.push_back(true);
    for (const LeeRequest& req : lee) {
      if (static_cast<int>(req.reversed.size()) != d.edge_count() + d.free_loops())
        throw std::invalid_argument("orientation request has wrong edge count");
      Track t;
      t.reversed = req.reversed;
      t.special_smoothing = req.special_smoothing;
      t.O = empty;
      t.vec[0] = Morph{{0, 1}};
      tracks_.push_back(std::move(t));
    }
    auto roots = A_.roots();
    if (!lee.empty() && !roots)
      throw std::invalid_argument("Lee generators need X^2 - hX - t with distinct roots in F_" +
                                  std::to_string(F_.prime()));
    if (roots) roots_ = *roots;
  }

  void add_crossing(int c, const std::vector<int>& smoothings, bool eliminate_after, bool keep_tags) {
    begin_step(c);
    MatchingTable nt;
    nt.set_points(static_cast<int>(new_node_.size()));
    glued_cache_.clear();
    // new generators
    const int G = static_cast<int>(gens_.size());
    std::vector<TGen> ng;
    std::vector<std::array<int, 2>> base(G, {-1, -1});
    std::vector<std::array<int, 2>> nloops(G, {0, 0});
    for (int x = 0; x < G; ++x) {
      if (!alive_[x]) continue;
      for (int s : smoothings) {
        const GluedMatching& gm = glued(gens_[x].match, s, nt);
        const int L = static_cast<int>(gm.loops.size());
        base[x][s] = static_cast<int>(ng.size());
        nloops[x][s] = L;
        for (int lam = 0; lam < (1 << L); ++lam) {
          int q = gens_[x].q + s;
          for (int b = 0; b < L; ++b) q += (lam >> b & 1) ? -1 : 1;
          ng.push_back({gm.id, gens_[x].h + s, q, keep_tags ? s : gens_[x].tag});
        }
      }
    }
    std::vector<std::unordered_map<int, Morph>> nout(ng.size());
    auto add = [&](int a, int b, const Morph& m) {
      if (m.empty()) return;
      auto [it, fresh] = nout[a].try_emplace(b, m);
      if (!fresh) morph_axpy(F_, it->second, m, 1);
      if (it->second.empty()) nout[a].erase(it);
    };
    const bool saddle = smoothings.size() == 2;
    for (int x = 0; x < G; ++x) {
      if (!alive_[x]) continue;
      for (int s : smoothings)
        for (auto& [y, f] : out_[x]) {
          const Skeleton& sk = glue_skeleton(gens_[x].match, gens_[y].match, s, s, nt);
          emit(sk, f, nloops[x][s], nloops[y][s], Scalar{1},
               [&](int ls, int lt, const Morph& m) { add(base[x][s] + ls, base[y][s] + lt, m); });
        }
      if (saddle) {
        const Skeleton& sk = glue_skeleton(gens_[x].match, gens_[x].match, 0, 1, nt);
        Scalar sign = (gens_[x].h % 2 == 0) ? Scalar{1} : F_.neg(1);
        emit(sk, Morph{{0, 1}}, nloops[x][0], nloops[x][1], sign,
             [&](int ls, int lt, const Morph& m) { add(base[x][0] + ls, base[x][1] + lt, m); });
      }
    }
    // Lee cycles
    for (Track& t : tracks_) {
      int so = oriented_smoothing(c, t, smoothings);
      const GluedMatching& go = glued(t.O, so, nt);
      std::vector<AElem> src;
      for (const auto& loop : go.loops) src.push_back(lee_label(loop.front(), t.reversed));
      std::unordered_map<int, Morph> nv;
      for (auto& [x, m] : t.vec) {
        const Skeleton& sk = glue_skeleton(t.O, gens_[x].match, so, so, nt);
        const int Lt = nloops[x][so];
        for (int lt = 0; lt < (1 << Lt); ++lt) {
          std::map<Mask, Scalar> acc;
          for (const MTerm& term : m) {
            auto el = component_elements(A_, sk, term.mask);
            for (std::size_t k = 0; k < src.size(); ++k) {
              int cc = sk.src_loop_comp[k];
              el[cc] = A_.mul(el[cc], src[k]);
            }
            apply_target_caps(sk, lt, el);
            expand(A_, sk, el, term.c, acc);
          }
          if (!acc.empty()) {
            Morph r = to_morph(acc);
            auto [it, fresh] = nv.try_emplace(base[x][so] + lt, r);
            if (!fresh) morph_axpy(F_, it->second, r, 1);
          }
        }
      }
      t.O = go.id;
      t.vec = std::move(nv);
    }
    // install
    table_ = std::move(nt);
    boundary_ = new_boundary_;
    gens_ = std::move(ng);
    out_ = std::move(nout);
    in_.assign(gens_.size(), {});
    for (int a = 0; a < static_cast<int>(gens_.size()); ++a)
      for (auto& [b, m] : out_[a]) in_[b].insert(a);
    alive_.assign(gens_.size(), true);
    compose_cache_.clear();
    glue_cache_.clear();
    max_boundary_ = std::max(max_boundary_, static_cast<int>(boundary_.size()));
    if (eliminate_after) eliminate();
  }

  void eliminate() {
    bool progress = true;
    while (progress) {
      progress = false;
      for (int b1 = 0; b1 < static_cast<int>(gens_.size()); ++b1) {
        if (!alive_[b1]) continue;
        int best = -1;
        std::size_t best_cost = 0;
        for (auto& [t, m] : out_[b1]) {
          if (gens_[t].match != gens_[b1].match || gens_[t].q != gens_[b1].q || gens_[t].tag != gens_[b1].tag)
            continue;
          std::size_t cost = (out_[b1].size() - 1) * (in_[t].size() - 1);
          if (best == -1 || cost < best_cost) {
            best = t;
            best_cost = cost;
          }
        }
        if (best == -1) continue;
        eliminate_pair(b1, best);
        progress = true;
      }
    }
  }

  RawScan finish() {
    RawScan r{Complex(F_), {}, {}, max_boundary_};
    if (!boundary_.empty()) throw std::logic_error("scan finished with open boundary");
    std::vector<int> idx(gens_.size(), -1);
    const int loops = d_.free_loops();
    // each free loop tensors in a copy of A
    for (int x = 0; x < static_cast<int>(gens_.size()); ++x) {
      if (!alive_[x]) continue;
      idx[x] = r.complex.size();
      for (int lam = 0; lam < (1 << loops); ++lam) {
        int q = gens_[x].q;
        for (int b = 0; b < loops; ++b) q += (lam >> b & 1) ? -1 : 1;
        r.complex.add_generator(gens_[x].h, q);
        r.tag.push_back(gens_[x].tag);
      }
    }
    for (int x = 0; x < static_cast<int>(gens_.size()); ++x) {
      if (!alive_[x]) continue;
      for (auto& [y, m] : out_[x]) {
        Scalar v = scalar_of(m);
        for (int lam = 0; lam < (1 << loops); ++lam) r.complex.add_entry(idx[x] + lam, idx[y] + lam, v);
      }
    }
    for (Track& t : tracks_) {
      // free loop labels: expand prod_b (X - root) over the loop factors
      std::vector<std::pair<int, Scalar>> loop_terms{{0, 1}};
      for (int b = 0; b < loops; ++b) {
        bool rev = d_.free_loop_reversed(b) != t.reversed[d_.edge_count() + b];
        Scalar root = roots_[rev ? 1 : 0];
        std::vector<std::pair<int, Scalar>> next;
        for (auto [lam, v] : loop_terms) {
          next.emplace_back(lam | (1 << b), v);
          next.emplace_back(lam, F_.mul(v, F_.neg(root)));
        }
        loop_terms.swap(next);
      }
      SparseVec z;
      for (auto& [x, m] : t.vec) {
        Scalar v = scalar_of(m);
        for (auto [lam, w] : loop_terms) {
          Scalar c = F_.mul(v, w);
          if (c) z[idx[x] + lam] = c;
        }
      }
      r.lee.push_back(std::move(z));
    }
    return r;
  }

  void set_special(int c) { special_c_ = c; }

 private:
  struct Track {
    std::vector<bool> reversed;
    int special_smoothing = 0;
    int O = 0;
    std::unordered_map<int, Morph> vec;
  };

  Scalar scalar_of(const Morph& m) const {
    if (m.empty()) return 0;
    if (m.size() != 1 || m[0].mask != 0) throw std::logic_error("closed morphism is not a scalar");
    return m[0].c;
  }

  void begin_step(int c) {
    const Crossing& x = d_.crossing(c);
    const int n = static_cast<int>(boundary_.size());
    node_edge_.assign(n + 4, -1);
    partner_.assign(n + 4, -1);
    std::unordered_map<int, int> pos;
    for (int i = 0; i < n; ++i) {
      pos[boundary_[i]] = i;
      node_edge_[i] = boundary_[i];
    }
    for (int j = 0; j < 4; ++j) {
      node_edge_[n + j] = x.edges[j];
      auto it = pos.find(x.edges[j]);
      if (it != pos.end()) {
        partner_[n + j] = it->second;
        partner_[it->second] = n + j;
      }
    }
    for (int j = 0; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        if (x.edges[j] == x.edges[k] && partner_[n + j] == -1) {
          partner_[n + j] = n + k;
          partner_[n + k] = n + j;
        }
    std::vector<std::pair<int, int>> fresh;  // (edge, node)
    for (int u = 0; u < n + 4; ++u)
      if (partner_[u] == -1) fresh.emplace_back(node_edge_[u], u);
    std::sort(fresh.begin(), fresh.end());
    new_boundary_.clear();
    new_node_.clear();
    new_pos_.assign(n + 4, -1);
    for (auto [e, u] : fresh) {
      new_pos_[u] = static_cast<int>(new_boundary_.size());
      new_boundary_.push_back(e);
      new_node_.push_back(u);
    }
    old_n_ = n;
    current_ = c;
  }

  int match_link(int node, int P, int s) const {
    if (node < old_n_) return table_.at(P)[node];
    return old_n_ + arc_partner(s, node - old_n_);
  }

  const GluedMatching& glued(int P, int s, MatchingTable& nt) {
    auto [it, fresh] = glued_cache_.try_emplace(P * 2 + s);
    if (!fresh) return it->second;
    GluedMatching& gm = it->second;
    const int N = old_n_ + 4;
    std::vector<bool> seen(N, false);
    std::vector<std::uint8_t> m(new_node_.size());
    for (std::size_t b = 0; b < new_node_.size(); ++b) {
      int u = new_node_[b];
      if (seen[u]) continue;
      int cur = u;
      while (true) {
        seen[cur] = true;
        int v = match_link(cur, P, s);
        seen[v] = true;
        if (new_pos_[v] >= 0) {
          m[b] = static_cast<std::uint8_t>(new_pos_[v]);
          m[new_pos_[v]] = static_cast<std::uint8_t>(b);
          break;
        }
        cur = partner_[v];
      }
    }
    for (int u = 0; u < N; ++u) {
      if (seen[u]) continue;
      std::vector<int> loop;
      int cur = u;
      do {
        seen[cur] = true;
        loop.push_back(cur);
        int v = match_link(cur, P, s);
        seen[v] = true;
        loop.push_back(v);
        cur = partner_[v];
      } while (cur != u);
      gm.loops.push_back(std::move(loop));
    }
    gm.id = nt.intern(m);
    return gm;
  }

  const Skeleton& glue_skeleton(int P, int Q, int s1, int s2, MatchingTable& nt) {
    std::uint64_t key = key3(P, Q, s1 * 2 + s2);
    auto [it, fresh] = glue_cache_.try_emplace(key);
    if (!fresh) return it->second;
    Skeleton& sk = it->second;
    const CircleInfo& pq = table_.circles(P, Q);
    const int npq = old_n_ > 0 ? pq.n : 0;
    const bool identity = s1 == s2;
    const int pieces = npq + (identity ? 2 : 1);
    auto piece = [&](int node) {
      if (node < old_n_) return pq.of[node];
      return identity ? npq + arc_index(s1, node - old_n_) : npq;
    };
    UF uf(pieces);
    std::vector<int> glue_nodes;
    for (int u = 0; u < old_n_ + 4; ++u) {
      int v = partner_[u];
      if (v == -1) continue;
      if (u < old_n_ || (u >= old_n_ && v >= old_n_ && u < v)) {
        uf.unite(piece(u), piece(v));
        glue_nodes.push_back(u);
      }
    }
    std::vector<int> comp_of_root(pieces, -1);
    std::vector<int> comp(pieces);
    for (int p = 0; p < pieces; ++p) {
      int r = uf.find(p);
      if (comp_of_root[r] == -1) comp_of_root[r] = sk.ncomp++;
      comp[p] = comp_of_root[r];
    }
    std::vector<int> chi(sk.ncomp, 0), b(sk.ncomp, 0);
    for (int p = 0; p < pieces; ++p) ++chi[comp[p]];
    for (int u : glue_nodes) --chi[comp[piece(u)]];
    sk.dot_comp.resize(npq);
    for (int k = 0; k < npq; ++k) sk.dot_comp[k] = comp[k];
    const GluedMatching& g1 = glued(P, s1, nt);
    const GluedMatching& g2 = glued(Q, s2, nt);
    for (const auto& loop : g1.loops) {
      sk.src_loop_comp.push_back(comp[piece(loop.front())]);
      ++b[sk.src_loop_comp.back()];
    }
    for (const auto& loop : g2.loops) {
      sk.tgt_loop_comp.push_back(comp[piece(loop.front())]);
      ++b[sk.tgt_loop_comp.back()];
    }
    sk.out.assign(sk.ncomp, {});
    if (!new_node_.empty()) {
      const CircleInfo& out = nt.circles(g1.id, g2.id);
      for (int k = 0; k < out.n; ++k) {
        int c = comp[piece(new_node_[out.rep[k]])];
        sk.out[c].push_back(k);
        ++b[c];
      }
    }
    sk.genus.resize(sk.ncomp);
    for (int c = 0; c < sk.ncomp; ++c) {
      int twice = 2 - b[c] - chi[c];
      if (twice < 0 || twice % 2) throw std::logic_error("glued cobordism has inconsistent topology");
      sk.genus[c] = twice / 2;
    }
    return sk;
  }

  void apply_target_caps(const Skeleton& sk, int lt, std::vector<AElem>& el) const {
    // projection onto the label-1 summand caps with (X - h); onto the X summand with 1
    const AElem plus{F_.neg(A_.h()), 1};
    for (std::size_t k = 0; k < sk.tgt_loop_comp.size(); ++k)
      if (!(lt >> k & 1)) el[sk.tgt_loop_comp[k]] = A_.mul(el[sk.tgt_loop_comp[k]], plus);
  }

  template <class Sink>
  void emit(const Skeleton& sk, const Morph& f, int Ls, int Lt, Scalar sign, Sink&& sink) {
    for (int ls = 0; ls < (1 << Ls); ++ls)
      for (int lt = 0; lt < (1 << Lt); ++lt) {
        std::map<Mask, Scalar> acc;
        for (const MTerm& term : f) {
          auto el = component_elements(A_, sk, term.mask);
          for (int k = 0; k < Ls; ++k)
            if (ls >> k & 1) el[sk.src_loop_comp[k]] = A_.mul(el[sk.src_loop_comp[k]], A_.x());
          apply_target_caps(sk, lt, el);
          expand(A_, sk, el, F_.mul(sign, term.c), acc);
        }
        if (!acc.empty()) sink(ls, lt, to_morph(acc));
      }
  }

  AElem lee_label(int node, const std::vector<bool>& reversed) const {
    int e = node_edge_[node];
    int color = colors_[e] ^ (reversed[e] ? 1 : 0);
    return {F_.neg(roots_[color]), 1};
  }

  int oriented_smoothing(int c, const Track& t, const std::vector<int>& allowed) const {
    const Crossing& x = d_.crossing(c);
    bool in[4];
    for (int s = 0; s < 4; ++s) in[s] = x.is_incoming(s) != t.reversed[x.edges[s]];
    auto ok = [&](int sm) {
      for (int s = 0; s < 4; ++s)
        if (in[s] == in[arc_partner(sm, s)]) return false;
      return true;
    };
    std::vector<int> good;
    for (int sm : allowed)
      if (ok(sm)) good.push_back(sm);
    if (good.size() == 1) return good[0];
    if (good.empty())
      throw std::invalid_argument("requested orientation does not fit the smoothing at crossing " +
                                  std::to_string(c));
    if (c == special_c_) return t.special_smoothing;
    if (ok(0) && ok(1) && allowed.size() == 2)
      throw std::invalid_argument("requested orientation is inconsistent at resolved crossing " +
                                  std::to_string(c));
    return good[0];
  }

  const Skeleton& compose_skeleton(int P, int R, int Q) {
    auto [it, fresh] = compose_cache_.try_emplace(key3(P, R, Q));
    if (!fresh) return it->second;
    Skeleton& sk = it->second;
    const CircleInfo& pr = table_.circles(P, R);
    const CircleInfo& rq = table_.circles(R, Q);
    const CircleInfo& pq = table_.circles(P, Q);
    const auto& Rm = table_.at(R);
    const int n = table_.points();
    UF uf(pr.n + rq.n);
    std::vector<int> arcs;
    for (int i = 0; i < n; ++i)
      if (i < Rm[i]) {
        uf.unite(pr.of[i], pr.n + rq.of[i]);
        arcs.push_back(i);
      }
    std::vector<int> comp_of_root(pr.n + rq.n, -1), comp(pr.n + rq.n);
    for (int v = 0; v < pr.n + rq.n; ++v) {
      int r = uf.find(v);
      if (comp_of_root[r] == -1) comp_of_root[r] = sk.ncomp++;
      comp[v] = comp_of_root[r];
    }
    std::vector<int> chi(sk.ncomp, 0), b(sk.ncomp, 0);
    for (int v = 0; v < pr.n + rq.n; ++v) ++chi[comp[v]];
    for (int i : arcs) --chi[comp[pr.of[i]]];
    sk.dot_comp.resize(pr.n + rq.n);
    for (int v = 0; v < pr.n + rq.n; ++v) sk.dot_comp[v] = comp[v];
    sk.out.assign(sk.ncomp, {});
    for (int k = 0; k < pq.n; ++k) {
      int c = comp[pr.of[pq.rep[k]]];
      sk.out[c].push_back(k);
      ++b[c];
    }
    sk.genus.resize(sk.ncomp);
    for (int c = 0; c < sk.ncomp; ++c) {
      int twice = 2 - b[c] - chi[c];
      if (twice < 0 || twice % 2) throw std::logic_error("composed cobordism has inconsistent topology");
      sk.genus[c] = twice / 2;
    }
    return sk;
  }

  /// Vertical composition: first `f` (P -> R), then `g` (R -> Q).
  Morph compose(int P, int R, int Q, const Morph& f, const Morph& g) {
    if (table_.points() == 0) {
      if (f.empty() || g.empty()) return {};
      return Morph{{0, F_.mul(scalar_of(f), scalar_of(g))}};
    }
    const Skeleton& sk = compose_skeleton(P, R, Q);
    const int shift = table_.circles(P, R).n;
    std::map<Mask, Scalar> acc;
    for (const MTerm& a : f)
      for (const MTerm& b : g) {
        Mask dots = a.mask | (b.mask << shift);
        expand(A_, sk, component_elements(A_, sk, dots), F_.mul(a.c, b.c), acc);
      }
    return to_morph(acc);
  }

  void eliminate_pair(int b1, int b2) {
    const Morph& iso = out_[b1].at(b2);
    const Scalar cinv = F_.inv(scalar_of(iso));
    const int R = gens_[b1].match;
    std::vector<std::pair<int, Morph>> gamma, delta;
    for (int x : in_[b2])
      if (x != b1) gamma.emplace_back(x, out_[x].at(b2));
    for (auto& [y, m] : out_[b1])
      if (y != b2) delta.emplace_back(y, m);
    const Scalar minus = F_.neg(cinv);
    for (auto& [x, g] : gamma)
      for (auto& [y, dl] : delta) {
        Morph m = compose(gens_[x].match, R, gens_[y].match, g, dl);
        if (m.empty()) continue;
        auto [it, fresh] = out_[x].try_emplace(y);
        morph_axpy(F_, it->second, m, minus);
        if (it->second.empty()) {
          out_[x].erase(it);
          in_[y].erase(x);
        } else {
          in_[y].insert(x);
        }
      }
    for (Track& t : tracks_) {
      auto it = t.vec.find(b2);
      if (it != t.vec.end()) {
        Morph mb = std::move(it->second);
        t.vec.erase(it);
        for (auto& [y, dl] : delta) {
          Morph m = compose(t.O, R, gens_[y].match, mb, dl);
          if (m.empty()) continue;
          auto [jt, fresh] = t.vec.try_emplace(y);
          morph_axpy(F_, jt->second, m, minus);
          if (jt->second.empty()) t.vec.erase(jt);
        }
      }
      t.vec.erase(b1);
    }
    for (int g : {b1, b2}) {
      for (auto& [t, m] : out_[g]) in_[t].erase(g);
      for (int s : in_[g]) out_[s].erase(g);
      out_[g].clear();
      in_[g].clear();
      alive_[g] = false;
    }
  }

  const LinkDiagram& d_;
  const Frobenius& A_;
  const Field& F_;
  std::vector<std::uint8_t> colors_;
  std::array<Scalar, 2> roots_{0, 0};

  MatchingTable table_;
  std::vector<int> boundary_;
  std::vector<TGen> gens_;
  std::vector<std::unordered_map<int, Morph>> out_;
  std::vector<std::unordered_set<int>> in_;
  std::vector<bool> alive_;
  std::vector<Track> tracks_;
  int max_boundary_ = 0;
  int special_c_ = -1;

  // per-step gluing data
  int current_ = -1;
  int old_n_ = 0;
  std::vector<int> node_edge_, partner_, new_pos_, new_node_, new_boundary_;
  std::unordered_map<int, GluedMatching> glued_cache_;
  std::unordered_map<std::uint64_t, Skeleton> glue_cache_;
  std::unordered_map<std::uint64_t, Skeleton> compose_cache_;
};

}  // namespace

std::vector<int> scan_order(const LinkDiagram& d, int last) {
  const int n = d.crossing_count();
  std::vector<int> order;
  std::vector<bool> used(n, false);
  std::multiset<int> boundary;  // edges with exactly one end placed
  std::vector<int> ends(d.edge_count(), 0);
  if (last >= 0) used[last] = true;
  const int total = n - (last >= 0 ? 1 : 0);
  for (int step = 0; step < total; ++step) {
    int best = -1, best_shared = -1, best_size = 0;
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      int shared = 0, added = 0;
      const Crossing& x = d.crossing(c);
      for (int s = 0; s < 4; ++s) {
        int e = x.edges[s];
        int here = 0;
        for (int t = 0; t < 4; ++t) here += x.edges[t] == e;
        if (ends[e] == 1 || here == 2) ++shared;
        else ++added;
      }
      int size = static_cast<int>(boundary.size()) + added - shared;
      if (shared > best_shared || (shared == best_shared && size < best_size)) {
        best = c;
        best_shared = shared;
        best_size = size;
      }
    }
    used[best] = true;
    order.push_back(best);
    for (int e : d.crossing(best).edges) {
      ++ends[e];
      if (ends[e] == 1) boundary.insert(e);
      else boundary.erase(e);
    }
  }
  if (last >= 0) order.push_back(last);
  return order;
}

RawScan scan_raw(const LinkDiagram& d, const Frobenius& alg, const std::vector<LeeRequest>& lee,
                 SpecialCrossing special) {
  using Mode = SpecialCrossing::Mode;
  const bool has_special = special.mode != Mode::none;
  if (has_special && (special.crossing < 0 || special.crossing >= d.crossing_count()))
    throw std::invalid_argument("special crossing out of range");
  Engine eng(d, alg, lee);
  if (special.mode == Mode::split) eng.set_special(special.crossing);
  std::vector<int> order = scan_order(d, has_special ? special.crossing : -1);
  for (std::size_t k = 0; k < order.size(); ++k) {
    int c = order[k];
    bool is_special = has_special && c == special.crossing;
    std::vector<int> sm{0, 1};
    if (is_special && special.mode == Mode::fixed) sm = {special.smoothing};
    bool split = is_special && special.mode == Mode::split;
    eng.add_crossing(c, sm, !split, split);
  }
  return eng.finish();
}

}  // namespace khc
