#pragma once

#include <vector>

#include "khcable/complex.hpp"
#include "khcable/diagram.hpp"
#include "khcable/frobenius.hpp"

namespace khc {

/// How the scanner treats one distinguished crossing, which is always added last.
struct SpecialCrossing {
  enum class Mode { none, fixed, split };
  int crossing = -1;
  Mode mode = Mode::none;
  int smoothing = 0;  // used by Mode::fixed
};

/// Closed complex with raw gradings: h counts 1-smoothings, q is the label degree plus h.
struct RawScan {
  Complex complex;
  /// One cycle per requested orientation.
  std::vector<SparseVec> lee;
  /// Smoothing of the special crossing for each generator in split mode, else 0.
  std::vector<int> tag;
  int max_boundary = 0;
};

/// A Lee cycle given by reversal flags (edges, then free loops) relative to the base
/// orientation. Every crossing except the special one must be oriented consistently; where
/// the flags fit both smoothings of the special crossing, `special_smoothing` picks one.
struct LeeRequest {
  std::vector<bool> reversed;
  int special_smoothing = 0;
};

RawScan scan_raw(const LinkDiagram& d, const Frobenius& alg, const std::vector<LeeRequest>& lee = {},
                 SpecialCrossing special = {});

/// Crossing order used by the scanner: greedy by shared boundary, `last` (if any) at the end.
std::vector<int> scan_order(const LinkDiagram& d, int last = -1);

}  // namespace khc
