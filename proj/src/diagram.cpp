#include "khcable/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace khc {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

OrientationAssignment OrientationAssignment::from_mask(std::uint64_t mask) {
  OrientationAssignment o;
  for (int i = 0; i < 64; ++i)
    if (mask >> i & 1) o.flips.insert(i);
  return o;
}

std::uint64_t OrientationAssignment::mask() const {
  std::uint64_t m = 0;
  for (int c : flips) m |= std::uint64_t{1} << c;
  return m;
}

LinkDiagram::LinkDiagram(std::vector<Crossing> crossings, std::vector<bool> free_loop_reversed)
    : crossings_(std::move(crossings)), free_loop_reversed_(std::move(free_loop_reversed)) {
  index();
}

void LinkDiagram::index() {
  int max_edge = -1;
  for (const Crossing& c : crossings_) {
    if ((c.under_in != 0 && c.under_in != 2) || (c.over_in != 1 && c.over_in != 3))
      throw std::invalid_argument("crossing strand markers must be under_in in {0,2}, over_in in {1,3}");
    for (int e : c.edges) {
      if (e < 0) throw std::invalid_argument("negative edge id");
      max_edge = std::max(max_edge, e);
    }
  }
  const int E = max_edge + 1;
  tail_.assign(E, Slot{});
  head_.assign(E, Slot{});
  std::vector<int> uses(E, 0);
  for (int ci = 0; ci < crossing_count(); ++ci) {
    const Crossing& c = crossings_[ci];
    for (int s = 0; s < 4; ++s) {
      int e = c.edges[s];
      ++uses[e];
      Slot& end = c.is_incoming(s) ? head_[e] : tail_[e];
      if (end.crossing != -1)
        throw std::invalid_argument("edge " + std::to_string(e) + " is inconsistently oriented");
      end = {ci, s};
    }
  }
  for (int e = 0; e < E; ++e)
    if (uses[e] != 2)
      throw std::invalid_argument("edge " + std::to_string(e) + " used " + std::to_string(uses[e]) +
                                  " times; every edge needs exactly two crossing slots");

  edge_component_.assign(E, -1);
  int comp = 0;
  for (int e = 0; e < E; ++e) {
    if (edge_component_[e] != -1) continue;
    int cur = e;
    do {
      edge_component_[cur] = comp;
      cur = successor(cur);
    } while (cur != e);
    ++comp;
  }
  component_count_ = comp + free_loops();
}

int LinkDiagram::successor(int e) const {
  const Slot& h = head_.at(e);
  return crossings_[h.crossing].edges[(h.slot + 2) % 4];
}

std::vector<int> LinkDiagram::component_edges(int comp) const {
  std::vector<int> out;
  int start = -1;
  for (int e = 0; e < edge_count(); ++e)
    if (edge_component_[e] == comp) {
      start = e;
      break;
    }
  if (start == -1) return out;
  int cur = start;
  do {
    out.push_back(cur);
    cur = successor(cur);
  } while (cur != start);
  return out;
}

std::pair<int, int> LinkDiagram::crossing_components(int c) const {
  const Crossing& x = crossings_.at(c);
  return {edge_component_[x.edges[0]], edge_component_[x.edges[1]]};
}

int LinkDiagram::writhe() const { return positive_crossings() - negative_crossings(); }

int LinkDiagram::positive_crossings() const {
  return static_cast<int>(std::count_if(crossings_.begin(), crossings_.end(),
                                        [](const Crossing& c) { return c.sign() > 0; }));
}

int LinkDiagram::negative_crossings() const { return crossing_count() - positive_crossings(); }

LinkDiagram LinkDiagram::oriented(const OrientationAssignment& o) const {
  for (int f : o.flips)
    if (f < 0 || f >= component_count_)
      throw std::invalid_argument("orientation flips unknown component " + std::to_string(f));
  std::vector<Crossing> xs = crossings_;
  for (Crossing& c : xs) {
    if (o.flips.count(edge_component_[c.edges[0]])) c.under_in ^= 2;
    if (o.flips.count(edge_component_[c.edges[1]])) c.over_in ^= 2;
  }
  std::vector<bool> loops = free_loop_reversed_;
  for (int i = 0; i < free_loops(); ++i)
    if (o.flips.count(component_of_free_loop(i))) loops[i] = !loops[i];
  return LinkDiagram(std::move(xs), std::move(loops));
}

LinkDiagram LinkDiagram::reversed() const {
  OrientationAssignment all;
  for (int c = 0; c < component_count_; ++c) all.flips.insert(c);
  return oriented(all);
}

LinkDiagram LinkDiagram::mirror() const {
  std::vector<Crossing> xs;
  xs.reserve(crossings_.size());
  for (const Crossing& c : crossings_) {
    Crossing m;
    for (int j = 0; j < 4; ++j) m.edges[j] = c.edges[(j + 1) % 4];
    m.under_in = static_cast<std::uint8_t>((c.over_in + 3) % 4);
    m.over_in = static_cast<std::uint8_t>((c.under_in + 3) % 4);
    xs.push_back(m);
  }
  return LinkDiagram(std::move(xs), free_loop_reversed_);
}

LinkDiagram LinkDiagram::with_unknot() const {
  std::vector<bool> loops = free_loop_reversed_;
  loops.push_back(false);
  return LinkDiagram(crossings_, std::move(loops));
}

LinkDiagram LinkDiagram::disjoint_union(const LinkDiagram& other) const {
  std::vector<Crossing> xs = crossings_;
  const int shift = edge_count();
  for (Crossing c : other.crossings_) {
    for (int& e : c.edges) e += shift;
    xs.push_back(c);
  }
  std::vector<bool> loops = free_loop_reversed_;
  loops.insert(loops.end(), other.free_loop_reversed_.begin(), other.free_loop_reversed_.end());
  return LinkDiagram(std::move(xs), std::move(loops));
}

LinkDiagram::Faces LinkDiagram::faces() const {
  const int n = crossing_count();
  std::vector<int> face(4 * n, -1);
  Faces out;
  auto other_end = [&](int c, int s) -> Slot {
    int e = crossings_[c].edges[s];
    const Slot& a = head_[e];
    return (a.crossing == c && a.slot == s) ? tail_[e] : a;
  };
  for (int start = 0; start < 4 * n; ++start) {
    if (face[start] != -1) continue;
    int cur = start;
    do {
      face[cur] = out.count;
      // arriving at slot s keeps the face on the left; it continues out through slot s-1
      Slot nxt = other_end(cur / 4, (cur % 4 + 3) % 4);
      cur = nxt.crossing * 4 + nxt.slot;
    } while (cur != start);
    ++out.count;
  }
  out.left.resize(edge_count());
  out.right.resize(edge_count());
  for (int e = 0; e < edge_count(); ++e) {
    out.left[e] = face[head_[e].crossing * 4 + head_[e].slot];
    out.right[e] = face[tail_[e].crossing * 4 + tail_[e].slot];
  }
  return out;
}

std::vector<std::uint8_t> LinkDiagram::left_face_colors() const {
  Faces f = faces();
  std::vector<std::vector<int>> adj(f.count);
  for (int e = 0; e < edge_count(); ++e) {
    adj[f.left[e]].push_back(f.right[e]);
    adj[f.right[e]].push_back(f.left[e]);
  }
  std::vector<int> color(f.count, -1);
  for (int e = 0; e < edge_count(); ++e) {
    int root = f.left[e];
    if (color[root] != -1) continue;
    color[root] = 0;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        if (color[v] == -1) {
          color[v] = 1 - color[u];
          q.push(v);
        } else if (color[v] == color[u]) {
          throw std::logic_error("diagram faces are not two-colorable; PD code is not planar");
        }
      }
    }
  }
  std::vector<std::uint8_t> out(edge_count());
  for (int e = 0; e < edge_count(); ++e) out[e] = static_cast<std::uint8_t>(color[f.left[e]]);
  return out;
}

int writhe(const LinkDiagram& d, const OrientationAssignment& o) { return d.oriented(o).writhe(); }

int linking_number(const LinkDiagram& d, const std::set<int>& part) {
  if (part.empty() || static_cast<int>(part.size()) >= d.component_count())
    throw std::invalid_argument("linking number needs a proper nonempty set of components");
  for (int c : part)
    if (c < 0 || c >= d.component_count()) throw std::invalid_argument("unknown component in part");
  int total = 0;
  for (int c = 0; c < d.crossing_count(); ++c) {
    auto [u, o] = d.crossing_components(c);
    if (part.count(u) != part.count(o)) total += d.crossing(c).sign();
  }
  return total / 2;
}

int smoothing_of(const Crossing& c, Resolution which) {
  int oriented = c.sign() > 0 ? 0 : 1;
  return which == Resolution::oriented ? oriented : 1 - oriented;
}

LinkDiagram assemble(std::vector<Crossing> crossings, const std::vector<std::pair<int, int>>& identify,
                     std::vector<bool> free_loop_reversed, std::vector<int>* renumber_out) {
  int max_id = -1;
  for (const Crossing& c : crossings)
    for (int e : c.edges) max_id = std::max(max_id, e);
  for (auto [a, b] : identify) max_id = std::max({max_id, a, b});
  UnionFind uf(max_id + 1);
  for (auto [a, b] : identify) uf.unite(a, b);
  std::map<int, int> renumber;
  for (Crossing& c : crossings)
    for (int& e : c.edges) {
      int root = uf.find(e);
      auto it = renumber.find(root);
      if (it == renumber.end()) it = renumber.emplace(root, static_cast<int>(renumber.size())).first;
      e = it->second;
    }
  if (renumber_out) {
    renumber_out->assign(max_id + 1, -1);
    for (int id = 0; id <= max_id; ++id) {
      auto it = renumber.find(uf.find(id));
      if (it != renumber.end()) (*renumber_out)[id] = it->second;
    }
  }
  return LinkDiagram(std::move(crossings), std::move(free_loop_reversed));
}

LinkDiagram smooth_crossing(const LinkDiagram& d, int c, int s, const std::vector<bool>& reverse) {
  if (c < 0 || c >= d.crossing_count()) throw std::out_of_range("no such crossing");
  const int E = d.edge_count();
  auto is_head = [&](int ci, int slot) {
    int e = d.crossing(ci).edges[slot];
    bool h = d.head(e) == Slot{ci, slot};
    return reverse.empty() || !reverse[e] ? h : !h;
  };
  std::vector<Crossing> xs;
  for (int ci = 0; ci < d.crossing_count(); ++ci) {
    if (ci == c) continue;
    Crossing x = d.crossing(ci);
    x.under_in = is_head(ci, 0) ? 0 : 2;
    x.over_in = is_head(ci, 1) ? 1 : 3;
    xs.push_back(x);
  }
  const Crossing& at = d.crossing(c);
  std::array<std::pair<int, int>, 2> arcs =
      s == 0 ? std::array<std::pair<int, int>, 2>{{{0, 1}, {2, 3}}}
             : std::array<std::pair<int, int>, 2>{{{0, 3}, {1, 2}}};
  std::vector<std::pair<int, int>> identify;
  UnionFind uf(E);
  for (auto [a, b] : arcs) {
    if (is_head(c, a) == is_head(c, b))
      throw std::invalid_argument("smoothing joins two incoming or two outgoing ends; orientation needed");
    identify.emplace_back(at.edges[a], at.edges[b]);
    uf.unite(at.edges[a], at.edges[b]);
  }
  std::vector<bool> used(E, false);
  for (const Crossing& x : xs)
    for (int e : x.edges) used[uf.find(e)] = true;
  std::vector<bool> loops;
  for (int i = 0; i < d.free_loops(); ++i) loops.push_back(d.free_loop_reversed(i));
  std::set<int> closed;
  for (int e = 0; e < E; ++e)
    if (!used[uf.find(e)]) closed.insert(uf.find(e));
  for (std::size_t i = 0; i < closed.size(); ++i) loops.push_back(false);
  return assemble(std::move(xs), identify, std::move(loops));
}

std::vector<bool> unoriented_reversal(const LinkDiagram& d, int c) {
  const Crossing& x = d.crossing(c);
  std::vector<bool> reverse(d.edge_count(), false);
  auto [cu, co] = d.crossing_components(c);
  if (cu != co) {
    for (int e = 0; e < d.edge_count(); ++e)
      if (d.component_of_edge(e) == co) reverse[e] = true;
    return reverse;
  }
  int e = x.edges[(x.under_in + 2) % 4];
  const int stop = x.edges[x.over_in];
  while (true) {
    reverse[e] = true;
    if (e == stop && d.head(e) == Slot{c, x.over_in}) break;
    e = d.successor(e);
  }
  return reverse;
}

LinkDiagram resolve_crossing(const LinkDiagram& d, int c, Resolution which) {
  const int s = smoothing_of(d.crossing(c), which);
  if (which == Resolution::oriented) return smooth_crossing(d, c, s, std::vector<bool>(d.edge_count(), false));
  return smooth_crossing(d, c, s, unoriented_reversal(d, c));
}

LinkDiagram LinkDiagram::from_pd(const std::vector<std::array<int, 4>>& pd, int free_loops) {
  std::map<int, int> ids;
  for (const auto& x : pd)
    for (int label : x) ids.emplace(label, 0);
  int next = 0;
  for (auto& [label, id] : ids) id = next++;
  const int n = static_cast<int>(pd.size());
  // status per (crossing, slot): +1 incoming, -1 outgoing, 0 unknown
  std::vector<int> status(4 * n, 0);
  std::vector<std::vector<int>> occ(next);
  for (int c = 0; c < n; ++c)
    for (int s = 0; s < 4; ++s) occ[ids[pd[c][s]]].push_back(4 * c + s);
  for (int e = 0; e < next; ++e)
    if (occ[e].size() != 2)
      throw std::invalid_argument("PD label used " + std::to_string(occ[e].size()) + " times");
  std::queue<int> work;
  auto set = [&](int pos, int v) {
    if (status[pos] == v) return;
    if (status[pos] != 0) throw std::invalid_argument("PD code has no consistent orientation");
    status[pos] = v;
    work.push(pos);
  };
  auto drain = [&] {
    while (!work.empty()) {
      int pos = work.front();
      work.pop();
      int c = pos / 4, s = pos % 4;
      set(4 * c + (s + 2) % 4, -status[pos]);
      int e = ids[pd[c][s]];
      int other = occ[e][0] == pos ? occ[e][1] : occ[e][0];
      set(other, -status[pos]);
    }
  };
  for (int c = 0; c < n; ++c) set(4 * c, +1);
  drain();
  for (int c = 0; c < n; ++c) {
    if (status[4 * c + 1] != 0) continue;
    int j = pd[c][1], l = pd[c][3];
    bool over_from_l = (j == l + 1) || (l > j + 1);
    set(4 * c + (over_from_l ? 3 : 1), +1);
    drain();
  }
  std::vector<Crossing> xs(n);
  for (int c = 0; c < n; ++c) {
    for (int s = 0; s < 4; ++s) xs[c].edges[s] = ids[pd[c][s]];
    xs[c].under_in = 0;
    xs[c].over_in = status[4 * c + 1] > 0 ? 1 : 3;
  }
  return LinkDiagram(std::move(xs), std::vector<bool>(free_loops, false));
}

std::vector<std::array<int, 4>> LinkDiagram::to_pd() const {
  // number edges consecutively along each component so the labels also encode orientation
  std::vector<int> label(edge_count(), 0);
  int next = 1;
  for (int comp = 0; comp < component_count_ - free_loops(); ++comp)
    for (int e : component_edges(comp)) label[e] = next++;
  std::vector<std::array<int, 4>> out;
  for (const Crossing& c : crossings_) {
    std::array<int, 4> t{};
    for (int j = 0; j < 4; ++j) t[j] = label[c.edges[(c.under_in + j) % 4]];
    out.push_back(t);
  }
  return out;
}

std::string to_pd_string(const LinkDiagram& d) {
  std::ostringstream os;
  os << "PD[";
  auto pd = d.to_pd();
  for (std::size_t i = 0; i < pd.size(); ++i) {
    if (i) os << ", ";
    os << "X[" << pd[i][0] << "," << pd[i][1] << "," << pd[i][2] << "," << pd[i][3] << "]";
  }
  os << "]";
  for (int i = 0; i < d.free_loops(); ++i) os << " U";
  return os.str();
}

LinkDiagram parse_pd(const std::string& text) {
  static const std::regex crossing_re(R"(X\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\])");
  static const std::regex loop_re(R"(\bU\b)");
  std::vector<std::array<int, 4>> pd;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), crossing_re); it != std::sregex_iterator(); ++it)
    pd.push_back({std::stoi((*it)[1]), std::stoi((*it)[2]), std::stoi((*it)[3]), std::stoi((*it)[4])});
  int loops = static_cast<int>(std::distance(std::sregex_iterator(text.begin(), text.end(), loop_re),
                                             std::sregex_iterator()));
  if (pd.empty() && loops == 0 && text.find("PD") == std::string::npos)
    throw std::invalid_argument("no PD crossings found in '" + text + "'");
  return LinkDiagram::from_pd(pd, loops);
}

}  // namespace khc
