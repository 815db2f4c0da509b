#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "khcable/complex.hpp"
#include "khcable/diagram.hpp"
#include "khcable/frobenius.hpp"

namespace khc {

/// A knot given by a negative diagram of writhe w.
struct KnotInput {
  std::string name;
  LinkDiagram diagram;
  int writhe = 0;

  /// Throws if the diagram is not a negative one-component diagram of the declared writhe.
  void validate() const;
};

struct IndEntry {
  int f = 0;
  int m = 0;
  int a = 0;
  int i = 0;
  auto operator<=>(const IndEntry&) const = default;
  std::string label() const;
};

/// All (f, m, a, i) with w <= f <= 0, 0 <= m <= max_m, 0 <= a, i <= 2m, in lexicographic order.
std::vector<IndEntry> enumerate_ind(int w, int max_m);

/// Homological grading of the braid-parallel Lee generator after renormalization.
inline int renormalized_lee_grading(int m) { return -2 * m * (m + 1); }
/// Shifts so that a Lee generator found at `lee_h` lands at renormalized_lee_grading(m).
BigradedDims renormalize(const BigradedDims& dims, int m, int lee_h);
GradedDims renormalize(const GradedDims& dims, int m, int lee_h);

/// gr_h(x_{o_p}) - gr_h(x_{o_q}) on an f-framed (2m+1)-cable.
int orientation_grading(int f, int m, int p, int q);

bool statement_a(const BigradedDims& kh_bar);
bool statement_b(const BigradedDims& kh_bar, const GradedDims& lee_bar);

struct HarnessOptions {
  int prime = 3;
  FrobeniusParams deformation = FrobeniusParams::lee();
  int budget_crossings = 60;
  int threads = 0;  // 0: hardware concurrency
};

/// Which member of the family (possibly flipped, possibly with a split unknot) a diagram is.
struct Identification {
  int m = 0;
  int a = 0;
  int i = 0;
  bool flipped = false;
  bool extra_unknot = false;
  bool certified = false;
};

/// Searches the family members with m' < m for one whose bigraded Khovanov homology equals
/// that of `resolved`; candidates are tried in order of (m', a', i', flipped, unknot).
Identification identify_unoriented_resolution(const LinkDiagram& knot, int f, int m, const LinkDiagram& resolved,
                                              const HarnessOptions& opt);

/// The linking identity 2lk(L^J, L - L^J) + #Cr = 2lk(C^J, C - C^J) for one strand set J.
struct LinkingCheck {
  std::set<int> strands;
  int crossings_removed = 0;  // #Cr
  int lhs = 0;
  int rhs = 0;
  int rhs_formula = 0;
  bool third_inequality = false;
  bool holds() const { return lhs == rhs && rhs == rhs_formula && third_inequality; }
};
std::vector<LinkingCheck> linking_identities(const LinkDiagram& knot, const IndEntry& e);

struct TriangleReport {
  Identification lu;
  bool lo_matches = false;
  bool merge = false;
  std::set<int> j;
  int cr = 0;
  int d_writhe = 0;
  int d_lee = 0;
  int d_arith = 0;
  bool exact = false;
  std::vector<std::string> exactness_violations;
  bool band_law = false;
  bool inequality = false;       // dim Kh^0(L) <= dim Kh^0(L_o) + dim Kh^d(L_u)
  bool equality_chain = false;   // when a = 2m
  int g_rank = 0;                // rank of G out of the L_u side at renormalized 0
  int g_source_dim = 0;
  bool ok() const;
};

struct EntryReport {
  IndEntry entry;
  enum class Status { verified, failed, skipped } status = Status::skipped;
  int crossings = 0;
  BigradedDims kh_bar;
  GradedDims lee_bar;
  bool statement_a = false;
  bool statement_b = false;
  bool base_case = false;
  bool negative_base = false;
  /// i = 0 entries: the isotopic family member has identical homology.
  std::optional<bool> isotopy_certified;
  std::optional<TriangleReport> triangle;
  std::vector<LinkingCheck> identities;
  std::vector<std::string> failures;
};

EntryReport verify_entry(const KnotInput& k, const IndEntry& e, const HarnessOptions& opt);
/// Verifies every entry with m <= max_m, in parallel; results in Ind order.
std::vector<EntryReport> run_induction(const KnotInput& k, int max_m, const HarnessOptions& opt);
/// Verifies the given entries in parallel; results in input order.
std::vector<EntryReport> verify_entries(const KnotInput& k, const std::vector<IndEntry>& entries,
                                        const HarnessOptions& opt);

struct MainLemmaReport {
  bool skipped = false;
  int crossings = 0;
  bool dims_m = false;          // dim Kh^0(K_m^1) = dim Kh_Lee^0(K_m^1)
  bool dims_m1 = false;         // same for K_{m+1}^1
  bool renormalize_ok = false;  // Kh(K_{m+1}^1) = renormalized Kh(K_{m+1,2m+2,2m+2}^0) by h
  bool lu_is_cable_plus_unknot = false;
  int degree = 0;
  int rank = 0;   // rank of phi on Kh^0
  int source_dim = 0;
  bool injective() const { return !skipped && rank == source_dim; }
  bool ok() const;
};
MainLemmaReport verify_main_lemma(const KnotInput& k, int m, const HarnessOptions& opt);

struct SinvReport {
  int n = 0;
  int crossings = 0;
  bool skipped = false;
  int s_knot = 0;
  int s_cable = 0;
  bool holds() const { return !skipped && s_cable == s_knot - 2 * n; }
};
SinvReport verify_theorem_sinv(const KnotInput& k, int n, const HarnessOptions& opt);

}  // namespace khc
