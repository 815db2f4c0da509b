#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "khcable/complex.hpp"
#include "khcable/diagram.hpp"
#include "khcable/frobenius.hpp"
#include "khcable/scanner.hpp"

namespace khc {

/// The complex of a diagram cut open at one crossing: the parts where the crossing takes
/// its 0- and 1-smoothing, in the diagram's gradings, and the unsigned saddle between them.
struct SplitComplex {
  Complex whole;
  Complex part[2];
  /// Chain map part[0] -> part[1] raising h by one and preserving the graded part of q.
  std::map<int, SparseVec> saddle;
  /// Lee cycles of the requests, each inside the part of its smoothing.
  std::vector<SparseVec> lee;
  std::vector<int> lee_side;
  std::vector<SparseVec> lee_whole;
};

SplitComplex split_complex(const LinkDiagram& d, int c, const Frobenius& alg, const std::vector<LeeRequest>& lee = {});

/// Grading offsets of a smoothing: diagram grading = own grading + offset.
struct Offset {
  int h = 0;
  int q = 0;
};
Offset smoothing_offset(const LinkDiagram& d, const LinkDiagram& smoothed, int s);

/// Saddle from the 0-smoothing to the 1-smoothing at `crossing`.
struct BandSpec {
  LinkDiagram diagram;
  int crossing = 0;

  bool orientable() const;
  /// Edge reversals orienting the smoothing `s` (edges, then free loops).
  std::vector<bool> orientation(int s) const;
  LinkDiagram side(int s) const;
};

struct BandMapResult {
  Complex source, target;  // simplified, in their own gradings
  std::map<int, SparseVec> map;
  int h_degree = 0;
  int q_degree = 0;
  /// Lee cycles of compatible orientations: source and target pairs.
  std::vector<std::pair<SparseVec, SparseVec>> lee_pairs;
};

/// Band map on the deformed theory `alg`. For orientable bands the Lee cycles of every
/// orientation compatible with the band are carried along.
BandMapResult band_map(const BandSpec& band, const Frobenius& alg);
/// The orientable law: each source Lee class maps to a nonzero multiple of the target class.
bool oriented_band_law(const BandMapResult& b);
/// Rank of the induced map on homology, summed over gradings.
int induced_total_rank(const BandMapResult& b);

/// Unoriented skein triangle at a crossing of L: L_o and L_u are the oriented and unoriented
/// resolutions; the unoriented one carries the orientation making its bands orientable.
struct SkeinTriangle {
  LinkDiagram link, oriented, unoriented;
  int crossing = 0;
  int oriented_smoothing = 0;
  std::vector<bool> reversal;  // edges of `link` reversed on the unoriented side
  Offset offset[2];
  BigradedDims kh_part[2], kh_whole;
  GradedDims lee_part[2], lee_whole;
  /// Rank of the connecting map out of part 0 at each (h, q) (graded) and h (deformed).
  std::map<std::pair<int, int>, int> kh_connecting;
  std::map<int, int> lee_connecting;
  /// L_u grading minus L grading on the unoriented side (diagram normalizations).
  int degree = 0;
  /// Whether L -> L_o is a merge (|L_o| < |L|).
  bool merge = false;
  /// Grading of x_L^J (merge) or x_{L_o}^J (split), in L's normalization; J is the set of
  /// components reversed by `reversal`.
  int lee_j_grading = 0;
  /// The band law inside the triangle (see oriented_band_law) holds for x_{L_u}.
  bool band_law = false;
};

SkeinTriangle skein_triangle(const LinkDiagram& d, int c, const Frobenius& deformed);

struct ExactnessReport {
  bool ok = true;
  std::vector<std::string> violations;
};
/// Dimension relations of both long exact sequences, and identification of the two
/// corners with independently computed homology of the resolved diagrams.
ExactnessReport exactness_check(const SkeinTriangle& t, const Frobenius& deformed);

}  // namespace khc
