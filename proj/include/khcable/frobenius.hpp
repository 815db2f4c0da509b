#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "khcable/field.hpp"

namespace khc {

/// Rank-two Frobenius algebra A = F[X]/(X^2 - hX - t) with counit eps(1)=0, eps(X)=1.
/// (h,t) = (0,0) is Khovanov, (0,1) Lee, (1,0) Bar-Natan.
struct FrobeniusParams {
  long long h = 0;
  long long t = 0;

  static FrobeniusParams khovanov() { return {0, 0}; }
  static FrobeniusParams lee() { return {0, 1}; }
  static FrobeniusParams bar_natan() { return {1, 0}; }

  bool deformed() const { return h != 0 || t != 0; }
  std::string name() const;
  static FrobeniusParams parse(const std::string& name);
  friend bool operator==(const FrobeniusParams&, const FrobeniusParams&) = default;
};

/// Element c1*1 + cx*X of A.
struct AElem {
  Field::Scalar c1 = 0;
  Field::Scalar cx = 0;
  friend bool operator==(const AElem&, const AElem&) = default;
};

/// One term of an element of A^{(x)k}: bit j of `mask` set means factor j is X.
struct MaskTerm {
  std::uint32_t mask;
  Field::Scalar coeff;
};

/// The algebra bound to a field: multiplication, counit and iterated comultiplication.
class Frobenius {
 public:
  Frobenius(const Field& field, const FrobeniusParams& params);

  const Field& field() const { return field_; }
  const FrobeniusParams& params() const { return params_; }
  Field::Scalar h() const { return h_; }
  Field::Scalar t() const { return t_; }

  AElem one() const { return {1, 0}; }
  AElem x() const { return {0, 1}; }
  AElem mul(AElem a, AElem b) const;
  AElem add(AElem a, AElem b) const;
  AElem scale(Field::Scalar s, AElem a) const;
  AElem pow_x(unsigned k) const;
  /// 2X - h, the handle operator m(Delta(1)).
  AElem handle() const;
  Field::Scalar counit(AElem a) const { return a.cx; }

  /// Delta^{(k)}(a) in A^{(x)k}; k == 0 gives eps(a) on the empty mask.
  std::vector<MaskTerm> comultiply(AElem a, unsigned k) const;

  /// Distinct roots r of X^2 - hX - t in the field, if any.
  std::optional<std::array<Field::Scalar, 2>> roots() const;

 private:
  const std::vector<MaskTerm>& delta_cached(unsigned which, unsigned k) const;

  Field field_;
  FrobeniusParams params_;
  Field::Scalar h_, t_;
  mutable std::mutex cache_mutex_;
  mutable std::deque<std::vector<MaskTerm>> delta_one_, delta_x_;
};

}  // namespace khc
