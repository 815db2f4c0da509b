#pragma once

#include <optional>
#include <vector>

#include "khcable/complex.hpp"
#include "khcable/diagram.hpp"
#include "khcable/frobenius.hpp"
#include "khcable/scanner.hpp"

namespace khc {

/// Largest crossing count accepted by the full cube of resolutions.
inline constexpr int kCubeLimit = 14;

/// A complex in normalized gradings (the base oriented resolution at h = 0), with one Lee
/// cycle per requested orientation and the special-crossing smoothing of each generator.
struct BuiltComplex {
  Complex complex;
  std::vector<SparseVec> lee;
  std::vector<int> tag;
  int max_boundary = 0;
};

/// Homology class of a Lee cycle. Classes are compared only up to a nonzero scalar.
struct LeeClass {
  SparseVec cycle;
  int h = 0;
  std::optional<int> level;
  OrientationAssignment orientation;
};

/// Edge reversal flags (edges, then free loops) realizing `o` on `d`.
std::vector<bool> reversal_flags(const LinkDiagram& d, const OrientationAssignment& o);

/// Full cube of resolutions. Throws std::length_error beyond kCubeLimit crossings.
BuiltComplex cube_complex(const LinkDiagram& d, const Frobenius& alg,
                          const std::vector<OrientationAssignment>& lee = {});
Complex khovanov_complex(const LinkDiagram& d, const Frobenius& alg);

/// Crossing-by-crossing construction with delooping and elimination of isomorphisms.
BuiltComplex scan_complex(const LinkDiagram& d, const Frobenius& alg,
                          const std::vector<OrientationAssignment>& lee = {}, SpecialCrossing special = {});
/// Same, with Lee cycles given as raw requests.
BuiltComplex scan_complex_requests(const LinkDiagram& d, const Frobenius& alg, const std::vector<LeeRequest>& lee,
                                   SpecialCrossing special = {});

/// Khovanov homology (bigraded, undeformed).
BigradedDims khovanov_homology(const LinkDiagram& d, const Field& field);
/// Homology of a deformed theory per homological grading.
GradedDims lee_homology_dims(const LinkDiagram& d, const Frobenius& alg);

LeeClass lee_generator(const LinkDiagram& d, const OrientationAssignment& o, const Frobenius& alg);
/// s(L) = gr_q(x_L) + 1 for the base orientation.
int s_invariant(const LinkDiagram& d, const Frobenius& alg);

}  // namespace khc
