#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace khc {

/// Exact arithmetic in Z/p for a prime p chosen at runtime (p < 2^31).
class Field {
 public:
  using Scalar = std::uint32_t;

  explicit Field(Scalar p);

  Scalar prime() const { return p_; }

  Scalar add(Scalar a, Scalar b) const {
    Scalar s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + p_ - b; }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const {
    return static_cast<Scalar>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Scalar pow(Scalar a, std::uint64_t e) const;
  Scalar inv(Scalar a) const;

  Scalar from_int(long long v) const;
  /// Representative in (-p/2, p/2].
  long long to_signed(Scalar a) const;

  /// Square root if `a` is a square mod p.
  std::optional<Scalar> sqrt(Scalar a) const;

 private:
  Scalar p_;
};

bool is_prime(std::uint64_t n);

}  // namespace khc
