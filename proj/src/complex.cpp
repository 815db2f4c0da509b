#include "khcable/complex.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace khc {

int Complex::add_generator(int h, int q) {
  gens_.push_back({h, q});
  alive_.push_back(true);
  out_.emplace_back();
  in_.emplace_back();
  ++alive_count_;
  return size() - 1;
}

void Complex::add_entry(int src, int tgt, Scalar coeff) {
  if (coeff == 0) return;
  auto& o = out_.at(src);
  auto it = o.find(tgt);
  if (it == o.end()) {
    o.emplace(tgt, coeff);
    in_.at(tgt).emplace(src, coeff);
    return;
  }
  Scalar v = field_.add(it->second, coeff);
  if (v == 0) {
    o.erase(it);
    in_[tgt].erase(src);
  } else {
    it->second = v;
    in_[tgt][src] = v;
  }
}

std::vector<int> Complex::alive_generators() const {
  std::vector<int> out;
  for (int g = 0; g < size(); ++g)
    if (alive_[g]) out.push_back(g);
  return out;
}

SparseVec Complex::apply(const SparseVec& v) const {
  SparseVec r;
  for (auto [g, a] : v)
    for (auto [t, c] : out_.at(g)) {
      Scalar& slot = r[t];
      slot = field_.add(slot, field_.mul(a, c));
      if (slot == 0) r.erase(t);
    }
  return r;
}

void Complex::validate() const {
  for (int g = 0; g < size(); ++g) {
    if (!alive_[g]) continue;
    for (auto [t, c] : out_[g]) {
      if (!alive_[t]) throw std::logic_error("differential reaches an eliminated generator");
      if (gens_[t].h != gens_[g].h + 1) throw std::logic_error("differential does not raise h by one");
      if (gens_[t].q < gens_[g].q) throw std::logic_error("differential lowers the quantum grading");
    }
    SparseVec dd = apply(apply(SparseVec{{g, 1}}));
    if (!dd.empty())
      throw std::logic_error("d^2 != 0 at generator " + std::to_string(g) + " (h=" +
                             std::to_string(gens_[g].h) + ", q=" + std::to_string(gens_[g].q) + ")");
  }
}

Complex Complex::associated_graded() const {
  Complex r(field_);
  std::vector<int> map;
  Complex c = compacted(&map);
  for (const Generator& g : c.gens_) r.add_generator(g.h, g.q);
  for (int g = 0; g < c.size(); ++g)
    for (auto [t, v] : c.out_[g])
      if (c.gens_[t].q == c.gens_[g].q) r.add_entry(g, t, v);
  return r;
}

Complex Complex::compacted(std::vector<int>* old_to_new) const {
  Complex r(field_);
  std::vector<int> map(size(), -1);
  for (int g = 0; g < size(); ++g)
    if (alive_[g]) map[g] = r.add_generator(gens_[g].h, gens_[g].q);
  for (int g = 0; g < size(); ++g)
    if (alive_[g])
      for (auto [t, v] : out_[g]) r.add_entry(map[g], map[t], v);
  if (old_to_new) *old_to_new = std::move(map);
  return r;
}

void Complex::remove_pair(int b1, int b2) {
  for (int g : {b1, b2}) {
    if (!alive_[g]) continue;
    for (auto& [t, v] : out_[g]) in_[t].erase(g);
    for (auto& [s, v] : in_[g]) out_[s].erase(g);
    out_[g].clear();
    in_[g].clear();
    alive_[g] = false;
    --alive_count_;
  }
}

namespace {

void axpy(const Field& F, SparseVec& v, int idx, Scalar a) {
  if (a == 0) return;
  Scalar& slot = v[idx];
  slot = F.add(slot, a);
  if (slot == 0) v.erase(idx);
}

}  // namespace

int simplify(Complex& c, Attachments* att) {
  const Field& F = c.field();
  int eliminated = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int b1 = 0; b1 < c.size(); ++b1) {
      if (!c.alive(b1)) continue;
      int best = -1;
      std::size_t best_cost = 0;
      for (auto [t, v] : c.out(b1)) {
        if (c.gen(t).q != c.gen(b1).q) continue;
        std::size_t cost = (c.out(b1).size() - 1) * (c.in(t).size() - 1);
        if (best == -1 || cost < best_cost) {
          best = t;
          best_cost = cost;
        }
      }
      if (best == -1) continue;
      const int b2 = best;
      const Scalar cinv = F.inv(c.out(b1).at(b2));
      std::vector<std::pair<int, Scalar>> gamma, delta;
      for (auto [x, v] : c.in(b2))
        if (x != b1) gamma.emplace_back(x, v);
      for (auto [y, v] : c.out(b1))
        if (y != b2) delta.emplace_back(y, v);
      for (auto [x, g] : gamma) {
        Scalar gc = F.neg(F.mul(g, cinv));
        for (auto [y, dl] : delta) c.add_entry(x, y, F.mul(gc, dl));
      }
      if (att) {
        for (SparseVec& v : att->incoming) {
          auto it = v.find(b2);
          if (it != v.end()) {
            Scalar a = F.neg(F.mul(it->second, cinv));
            v.erase(it);
            for (auto [y, dl] : delta) axpy(F, v, y, F.mul(a, dl));
          }
          v.erase(b1);
        }
        for (SparseVec& n : att->outgoing) {
          auto it = n.find(b1);
          if (it != n.end()) {
            Scalar a = F.neg(F.mul(it->second, cinv));
            n.erase(it);
            for (auto [x, g] : gamma) axpy(F, n, x, F.mul(a, g));
          }
          n.erase(b2);
        }
        auto col = att->columns.find(b1);
        if (col != att->columns.end()) {
          SparseVec image = std::move(col->second);
          att->columns.erase(col);
          for (auto [x, g] : gamma) {
            SparseVec& cx = att->columns[x];
            Scalar a = F.neg(F.mul(g, cinv));
            for (auto [y, v] : image) axpy(F, cx, y, F.mul(a, v));
            if (cx.empty()) att->columns.erase(x);
          }
        }
        att->columns.erase(b2);
      }
      c.remove_pair(b1, b2);
      ++eliminated;
      progress = true;
    }
  }
  return eliminated;
}

int matrix_rank(const Field& F, std::vector<std::vector<Scalar>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  int rank = 0;
  for (std::size_t col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][col]) {
        piv = r;
        break;
      }
    if (piv == -1) continue;
    std::swap(rows[piv], rows[rank]);
    Scalar inv = F.inv(rows[rank][col]);
    for (auto& x : rows[rank]) x = F.mul(x, inv);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Scalar f = rows[r][col];
      for (std::size_t k = col; k < cols; ++k) rows[r][k] = F.sub(rows[r][k], F.mul(f, rows[rank][k]));
    }
    ++rank;
  }
  return rank;
}

int differential_rank(const Complex& c, int h, bool graded_only) {
  std::vector<int> src, tgt;
  for (int g : c.alive_generators()) {
    if (c.gen(g).h == h) src.push_back(g);
    if (c.gen(g).h == h + 1) tgt.push_back(g);
  }
  if (src.empty() || tgt.empty()) return 0;
  std::unordered_map<int, int> col;
  for (std::size_t k = 0; k < tgt.size(); ++k) col[tgt[k]] = static_cast<int>(k);
  std::vector<std::vector<Scalar>> rows;
  for (int s : src) {
    std::vector<Scalar> row(tgt.size(), 0);
    bool any = false;
    for (auto [t, v] : c.out(s)) {
      if (graded_only && c.gen(t).q != c.gen(s).q) continue;
      row[col.at(t)] = v;
      any = true;
    }
    if (any) rows.push_back(std::move(row));
  }
  return matrix_rank(c.field(), std::move(rows));
}

BigradedDims homology_dims(const Complex& c) {
  Complex g = c.associated_graded();
  simplify(g);
  BigradedDims out;
  for (int x : g.alive_generators()) {
    if (!g.out(x).empty()) throw std::logic_error("graded simplification left a nonzero differential");
    ++out[{g.gen(x).h, g.gen(x).q}];
  }
  return out;
}

GradedDims homology_dims_by_h(const Complex& c) {
  Complex s = c.compacted();
  simplify(s);
  std::map<int, long long> dim;
  for (int x : s.alive_generators()) ++dim[s.gen(x).h];
  GradedDims out;
  for (auto [h, n] : dim) {
    long long v = n - differential_rank(s, h, false) - differential_rank(s, h - 1, false);
    if (v < 0) throw std::logic_error("negative homology dimension; d^2 != 0");
    if (v) out[h] = v;
  }
  return out;
}

bool in_span_mod_boundaries(const Complex& c, const SparseVec& v, const std::vector<SparseVec>& extra) {
  if (v.empty()) return true;
  const int h = c.gen(v.begin()->first).h;
  std::vector<int> basis;
  for (int g : c.alive_generators())
    if (c.gen(g).h == h) basis.push_back(g);
  std::unordered_map<int, int> col;
  for (std::size_t k = 0; k < basis.size(); ++k) col[basis[k]] = static_cast<int>(k);
  auto dense = [&](const SparseVec& s) {
    std::vector<Scalar> row(basis.size(), 0);
    for (auto [g, a] : s) {
      auto it = col.find(g);
      if (it == col.end()) throw std::invalid_argument("vector is not homogeneous in h");
      row[it->second] = a;
    }
    return row;
  };
  std::vector<std::vector<Scalar>> rows;
  for (int g : c.alive_generators())
    if (c.gen(g).h == h - 1 && !c.out(g).empty()) rows.push_back(dense(c.apply(SparseVec{{g, 1}})));
  for (const SparseVec& e : extra) rows.push_back(dense(e));
  int base = matrix_rank(c.field(), rows);
  rows.push_back(dense(v));
  return matrix_rank(c.field(), std::move(rows)) == base;
}

std::optional<int> filtration_level(const Complex& c, const SparseVec& z) {
  if (!c.is_cycle(z)) throw std::invalid_argument("filtration level requested for a non-cycle");
  if (in_span_mod_boundaries(c, z, {})) return std::nullopt;
  const int h = c.gen(z.begin()->first).h;
  std::set<int, std::greater<>> levels;
  for (int g : c.alive_generators())
    if (c.gen(g).h == h) levels.insert(c.gen(g).q);
  for (int q : levels) {
    std::vector<SparseVec> extra;
    for (int g : c.alive_generators())
      if (c.gen(g).h == h && c.gen(g).q >= q) extra.push_back(SparseVec{{g, 1}});
    if (in_span_mod_boundaries(c, z, extra)) return q;
  }
  throw std::logic_error("cycle is not in the span of its own grading");
}

std::vector<std::vector<Scalar>> nullspace(const Field& F, std::vector<std::vector<Scalar>> a, int n) {
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < n && rank < static_cast<int>(a.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(a.size()); ++r)
      if (a[r][col]) {
        piv = r;
        break;
      }
    if (piv == -1) continue;
    std::swap(a[piv], a[rank]);
    Scalar inv = F.inv(a[rank][col]);
    for (auto& x : a[rank]) x = F.mul(x, inv);
    for (int r = 0; r < static_cast<int>(a.size()); ++r) {
      if (r == rank || a[r][col] == 0) continue;
      Scalar f = a[r][col];
      for (int k = col; k < n; ++k) a[r][k] = F.sub(a[r][k], F.mul(f, a[rank][k]));
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> x(n, 0);
    x[free] = 1;
    for (int r = 0; r < rank; ++r) x[pivot_col[r]] = F.neg(a[r][free]);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<SparseVec> cycle_basis(const Complex& c, int h, std::optional<int> q) {
  std::vector<int> src, tgt;
  for (int g : c.alive_generators()) {
    if (c.gen(g).h == h && (!q || c.gen(g).q == *q)) src.push_back(g);
    if (c.gen(g).h == h + 1) tgt.push_back(g);
  }
  std::unordered_map<int, int> row;
  for (std::size_t k = 0; k < tgt.size(); ++k) row[tgt[k]] = static_cast<int>(k);
  std::vector<std::vector<Scalar>> a(tgt.size(), std::vector<Scalar>(src.size(), 0));
  for (std::size_t j = 0; j < src.size(); ++j)
    for (auto [t, v] : c.out(src[j])) a[row.at(t)][j] = v;
  std::vector<SparseVec> out;
  for (const auto& x : nullspace(c.field(), std::move(a), static_cast<int>(src.size()))) {
    SparseVec z;
    for (std::size_t j = 0; j < src.size(); ++j)
      if (x[j]) z[src[j]] = x[j];
    out.push_back(std::move(z));
  }
  return out;
}

int rank_mod_boundaries(const Complex& c, int h, const std::vector<SparseVec>& vs) {
  std::vector<int> basis;
  for (int g : c.alive_generators())
    if (c.gen(g).h == h) basis.push_back(g);
  std::unordered_map<int, int> col;
  for (std::size_t k = 0; k < basis.size(); ++k) col[basis[k]] = static_cast<int>(k);
  auto dense = [&](const SparseVec& s) {
    std::vector<Scalar> row(basis.size(), 0);
    for (auto [g, a] : s) {
      auto it = col.find(g);
      if (it == col.end()) throw std::invalid_argument("vector is not in the requested grading");
      row[it->second] = a;
    }
    return row;
  };
  std::vector<std::vector<Scalar>> rows;
  for (int g : c.alive_generators())
    if (c.gen(g).h == h - 1 && !c.out(g).empty()) rows.push_back(dense(c.apply(SparseVec{{g, 1}})));
  const int base = matrix_rank(c.field(), rows);
  for (const SparseVec& v : vs) rows.push_back(dense(v));
  return matrix_rank(c.field(), std::move(rows)) - base;
}

SparseVec apply_map(const Field& F, const std::map<int, SparseVec>& f, const SparseVec& v) {
  SparseVec out;
  for (auto [g, a] : v) {
    auto it = f.find(g);
    if (it == f.end()) continue;
    for (auto [t, b] : it->second) axpy(F, out, t, F.mul(a, b));
  }
  return out;
}

int induced_rank(const Complex& src, const Complex& tgt, const std::map<int, SparseVec>& f, int h, int degree,
                 std::optional<int> q) {
  std::vector<SparseVec> images;
  for (const SparseVec& z : cycle_basis(src, h, q)) {
    SparseVec y = apply_map(src.field(), f, z);
    if (!y.empty()) images.push_back(std::move(y));
  }
  if (images.empty()) return 0;
  return rank_mod_boundaries(tgt, h + degree, images);
}

bool proportional_classes(const Complex& c, const SparseVec& u, const SparseVec& v) {
  if (u.empty() || v.empty()) return false;
  const int h = c.gen(u.begin()->first).h;
  if (c.gen(v.begin()->first).h != h) return false;
  return rank_mod_boundaries(c, h, {u}) == 1 && rank_mod_boundaries(c, h, {v}) == 1 &&
         rank_mod_boundaries(c, h, {u, v}) == 1;
}

long long total_dim(const BigradedDims& d) {
  long long s = 0;
  for (auto& [k, v] : d) s += v;
  return s;
}

long long total_dim(const GradedDims& d) {
  long long s = 0;
  for (auto& [k, v] : d) s += v;
  return s;
}

GradedDims collapse_q(const BigradedDims& d) {
  GradedDims out;
  for (auto& [k, v] : d) out[k.first] += v;
  return out;
}

BigradedDims shift(const BigradedDims& d, int dh, int dq) {
  BigradedDims out;
  for (auto& [k, v] : d) out[{k.first + dh, k.second + dq}] = v;
  return out;
}

GradedDims shift(const GradedDims& d, int dh) {
  GradedDims out;
  for (auto& [k, v] : d) out[k + dh] = v;
  return out;
}

}  // namespace khc
