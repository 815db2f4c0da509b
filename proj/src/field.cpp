#include "khcable/field.hpp"

#include <stdexcept>

namespace khc {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field(Scalar p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw std::invalid_argument("field characteristic must be a prime below 2^31, got " +
                                std::to_string(p));
}

Field::Scalar Field::pow(Scalar a, std::uint64_t e) const {
  Scalar r = 1 % p_;
  Scalar b = a % p_;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Field::Scalar Field::inv(Scalar a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero in Z/p");
  return pow(a, p_ - 2);
}

Field::Scalar Field::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Scalar>(r);
}

long long Field::to_signed(Scalar a) const {
  return a > p_ / 2 ? static_cast<long long>(a) - p_ : static_cast<long long>(a);
}

std::optional<Field::Scalar> Field::sqrt(Scalar a) const {
  a %= p_;
  if (a == 0) return Scalar{0};
  if (p_ == 2) return a;
  if (pow(a, (p_ - 1) / 2) != 1) return std::nullopt;
  // Tonelli-Shanks
  Scalar q = p_ - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  Scalar z = 2;
  while (pow(z, (p_ - 1) / 2) != p_ - 1) ++z;
  Scalar m = s, c = pow(z, q), t = pow(a, q), r = pow(a, (q + 1) / 2);
  while (t != 1) {
    Scalar i = 0, tt = t;
    while (tt != 1) {
      tt = mul(tt, tt);
      ++i;
    }
    Scalar b = c;
    for (Scalar j = 0; j + 1 < m - i; ++j) b = mul(b, b);
    m = i;
    c = mul(b, b);
    t = mul(t, c);
    r = mul(r, b);
  }
  return r;
}

}  // namespace khc
