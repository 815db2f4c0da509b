#include "khcable/frobenius.hpp"

#include <map>
#include <stdexcept>

namespace khc {

std::string FrobeniusParams::name() const {
  if (*this == khovanov()) return "khovanov";
  if (*this == lee()) return "lee";
  if (*this == bar_natan()) return "bar-natan";
  return "h=" + std::to_string(h) + ",t=" + std::to_string(t);
}

FrobeniusParams FrobeniusParams::parse(const std::string& name) {
  if (name == "khovanov") return khovanov();
  if (name == "lee") return lee();
  if (name == "bar-natan" || name == "bar_natan" || name == "barnatan") return bar_natan();
  throw std::invalid_argument("unknown deformation '" + name + "'");
}

Frobenius::Frobenius(const Field& field, const FrobeniusParams& params)
    : field_(field), params_(params), h_(field.from_int(params.h)), t_(field.from_int(params.t)) {}

AElem Frobenius::mul(AElem a, AElem b) const {
  const Field& F = field_;
  Field::Scalar xx = F.mul(a.cx, b.cx);
  return {F.add(F.mul(a.c1, b.c1), F.mul(xx, t_)),
          F.add(F.add(F.mul(a.c1, b.cx), F.mul(a.cx, b.c1)), F.mul(xx, h_))};
}

AElem Frobenius::add(AElem a, AElem b) const {
  return {field_.add(a.c1, b.c1), field_.add(a.cx, b.cx)};
}

AElem Frobenius::scale(Field::Scalar s, AElem a) const {
  return {field_.mul(s, a.c1), field_.mul(s, a.cx)};
}

AElem Frobenius::pow_x(unsigned k) const {
  AElem r = one();
  for (unsigned i = 0; i < k; ++i) r = mul(r, x());
  return r;
}

AElem Frobenius::handle() const { return {field_.neg(h_), field_.from_int(2)}; }

const std::vector<MaskTerm>& Frobenius::delta_cached(unsigned which, unsigned k) const {
  std::lock_guard lock(cache_mutex_);
  auto& cache = which == 0 ? delta_one_ : delta_x_;
  while (cache.size() <= k) {
    unsigned n = static_cast<unsigned>(cache.size());
    std::vector<MaskTerm> next;
    if (n == 0) {
      next.push_back({0, which == 0 ? Field::Scalar{0} : Field::Scalar{1}});
    } else if (n == 1) {
      next.push_back({which, 1});
    } else {
      // split the last factor: 1 -> 1(x)X + X(x)1 - h 1(x)1, X -> X(x)X + t 1(x)1
      std::map<std::uint32_t, Field::Scalar> acc;
      auto put = [&](std::uint32_t m, Field::Scalar c) {
        if (c == 0) return;
        auto& slot = acc[m];
        slot = field_.add(slot, c);
      };
      const std::uint32_t last = 1u << (n - 2), fresh = 1u << (n - 1);
      for (const MaskTerm& term : cache[n - 1]) {
        std::uint32_t base = term.mask & ~last;
        if (term.mask & last) {
          put(base | last | fresh, term.coeff);
          put(base, field_.mul(term.coeff, t_));
        } else {
          put(base | fresh, term.coeff);
          put(base | last, term.coeff);
          put(base, field_.mul(term.coeff, field_.neg(h_)));
        }
      }
      for (auto& [m, c] : acc)
        if (c) next.push_back({m, c});
    }
    cache.push_back(std::move(next));
  }
  return cache[k];
}

std::vector<MaskTerm> Frobenius::comultiply(AElem a, unsigned k) const {
  if (k > 31) throw std::length_error("comultiplication into more than 31 tensor factors");
  if (k == 0) return a.cx ? std::vector<MaskTerm>{{0, a.cx}} : std::vector<MaskTerm>{};
  std::map<std::uint32_t, Field::Scalar> acc;
  if (a.c1)
    for (const MaskTerm& term : delta_cached(0, k))
      acc[term.mask] = field_.add(acc[term.mask], field_.mul(a.c1, term.coeff));
  if (a.cx)
    for (const MaskTerm& term : delta_cached(1, k))
      acc[term.mask] = field_.add(acc[term.mask], field_.mul(a.cx, term.coeff));
  std::vector<MaskTerm> out;
  for (auto& [m, c] : acc)
    if (c) out.push_back({m, c});
  return out;
}

std::optional<std::array<Field::Scalar, 2>> Frobenius::roots() const {
  const Field& F = field_;
  // roots of X^2 - hX - t; discriminant h^2 + 4t
  if (F.prime() == 2) {
    std::array<Field::Scalar, 2> r{};
    int found = 0;
    for (Field::Scalar v = 0; v < 2; ++v)
      if (F.sub(F.mul(v, v), F.add(F.mul(h_, v), t_)) == 0) r[found++] = v;
    if (found == 2) return r;
    return std::nullopt;
  }
  Field::Scalar disc = F.add(F.mul(h_, h_), F.mul(4 % F.prime(), t_));
  if (disc == 0) return std::nullopt;
  auto sq = F.sqrt(disc);
  if (!sq) return std::nullopt;
  Field::Scalar half = F.inv(2);
  return std::array<Field::Scalar, 2>{F.mul(F.add(h_, *sq), half), F.mul(F.sub(h_, *sq), half)};
}

}  // namespace khc
