#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "khcable/field.hpp"

namespace khc {

using Scalar = Field::Scalar;
/// Sparse vector: basis index to nonzero coefficient.
using SparseVec = std::map<int, Scalar>;
/// (homological, quantum) grading to dimension.
using BigradedDims = std::map<std::pair<int, int>, long long>;
/// Homological grading to dimension.
using GradedDims = std::map<int, long long>;

struct Generator {
  int h = 0;
  int q = 0;
};

/// Cochain complex over F_p with a quantum grading on each generator. The differential raises
/// h by one and never lowers q; in the graded (undeformed) case it preserves q.
class Complex {
 public:
  explicit Complex(const Field& field) : field_(field) {}

  const Field& field() const { return field_; }
  int add_generator(int h, int q);
  /// Adds `coeff` to the entry of d from `src` to `tgt`.
  void add_entry(int src, int tgt, Scalar coeff);

  int size() const { return static_cast<int>(gens_.size()); }
  const Generator& gen(int g) const { return gens_.at(g); }
  bool alive(int g) const { return alive_.at(g); }
  int alive_count() const { return alive_count_; }
  std::vector<int> alive_generators() const;
  const std::unordered_map<int, Scalar>& out(int g) const { return out_.at(g); }
  const std::unordered_map<int, Scalar>& in(int g) const { return in_.at(g); }

  /// d applied to a sparse chain.
  SparseVec apply(const SparseVec& v) const;
  bool is_cycle(const SparseVec& v) const { return apply(v).empty(); }
  /// Throws std::logic_error if d∘d != 0 or an entry lowers the quantum grading.
  void validate() const;
  /// Keeps only entries preserving the quantum grading (associated graded complex).
  Complex associated_graded() const;
  /// Compacted copy without eliminated generators; `old_to_new` receives the index map.
  Complex compacted(std::vector<int>* old_to_new = nullptr) const;

  void remove_pair(int b1, int b2);

 private:
  Field field_;
  std::vector<Generator> gens_;
  std::vector<bool> alive_;
  int alive_count_ = 0;
  std::vector<std::unordered_map<int, Scalar>> out_, in_;
};

/// Maps attached to a complex that are transported through simplification: chains mapping
/// into it (images of some other complex), functionals on it, and a map out of it given by
/// the image of each generator.
struct Attachments {
  std::vector<SparseVec> incoming;
  std::vector<SparseVec> outgoing;
  std::map<int, SparseVec> columns;
};

/// Gaussian elimination of every entry that preserves the quantum grading. Attached maps are
/// composed with the resulting homotopy equivalences. Returns the number of eliminated pairs.
int simplify(Complex& c, Attachments* att = nullptr);

/// Homology per (h, q) of the associated graded complex.
BigradedDims homology_dims(const Complex& c);
/// Homology per h of the full (filtered) complex.
GradedDims homology_dims_by_h(const Complex& c);

/// Largest q such that the class of cycle `z` has a representative in quantum gradings >= q;
/// nullopt if `z` is a boundary. Throws if `z` is not a cycle.
std::optional<int> filtration_level(const Complex& c, const SparseVec& z);

/// Exact linear algebra helpers on dense row sets.
int matrix_rank(const Field& field, std::vector<std::vector<Scalar>> rows);
/// Rank of d from grading h to h+1.
int differential_rank(const Complex& c, int h, bool graded_only);
/// Whether `v` lies in span(extra) + im(d into the grading of v).
bool in_span_mod_boundaries(const Complex& c, const SparseVec& v, const std::vector<SparseVec>& extra);

/// Solutions of A x = 0 for a dense m x n matrix.
std::vector<std::vector<Scalar>> nullspace(const Field& field, std::vector<std::vector<Scalar>> a, int n);
/// Basis of the cycles in grading h (and quantum grading q, if given).
std::vector<SparseVec> cycle_basis(const Complex& c, int h, std::optional<int> q = std::nullopt);
/// dim of span(vs) in homology: all vectors must lie in grading h.
int rank_mod_boundaries(const Complex& c, int h, const std::vector<SparseVec>& vs);
/// Rank of the map induced on homology by `f` (generator images in `tgt`, shifting h by
/// `degree`) from grading h of `src`, optionally restricted to quantum grading q.
int induced_rank(const Complex& src, const Complex& tgt, const std::map<int, SparseVec>& f, int h, int degree,
                 std::optional<int> q = std::nullopt);
/// Image of a chain under a map given by generator images.
SparseVec apply_map(const Field& field, const std::map<int, SparseVec>& f, const SparseVec& v);
/// Whether the classes of cycles u and v are nonzero and proportional.
bool proportional_classes(const Complex& c, const SparseVec& u, const SparseVec& v);

long long total_dim(const BigradedDims& d);
long long total_dim(const GradedDims& d);
GradedDims collapse_q(const BigradedDims& d);
/// Shifts every grading by (dh, dq).
BigradedDims shift(const BigradedDims& d, int dh, int dq);
GradedDims shift(const GradedDims& d, int dh);

}  // namespace khc
