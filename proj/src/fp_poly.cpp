#include "twistalex/fp_poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace twistalex {

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a % p;
  if (new_r == 0) throw std::domain_error("inverse_mod: zero has no inverse");
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

FpPoly::FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& x : c_) x %= p_;
  trim();
}

FpPoly FpPoly::constant(std::uint32_t p, std::uint32_t c) { return FpPoly(p, {c}); }

FpPoly FpPoly::monomial(std::uint32_t p, std::uint32_t c, std::size_t degree) {
  std::vector<std::uint32_t> v(degree + 1, 0);
  v[degree] = c;
  return FpPoly(p, std::move(v));
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly& FpPoly::operator+=(const FpPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    std::uint32_t s = c_[i] + o.c_[i];
    if (s >= p_) s -= p_;
    c_[i] = s;
  }
  trim();
  return *this;
}

FpPoly& FpPoly::operator-=(const FpPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    c_[i] = c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : c_[i] + p_ - o.c_[i];
  }
  trim();
  return *this;
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
  FpPoly r = *this;
  r += o;
  return r;
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
  FpPoly r = *this;
  r -= o;
  return r;
}

FpPoly FpPoly::operator-() const {
  FpPoly r(p_);
  r.c_.reserve(c_.size());
  for (auto x : c_) r.c_.push_back(x == 0 ? 0 : p_ - x);
  return r;
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
  if (c_.empty() || o.c_.empty()) return FpPoly(p_);
  // Accumulate in 64 bits and reduce lazily; p < 2^31 so a handful of
  // products fit before reduction is needed.
  std::vector<std::uint64_t> acc(c_.size() + o.c_.size() - 1, 0);
  const std::uint64_t p2 = static_cast<std::uint64_t>(p_) * p_;
  const std::uint64_t limit = ~std::uint64_t{0} - p2;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const std::uint64_t a = c_[i];
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      std::uint64_t& slot = acc[i + j];
      slot += a * o.c_[j];
      if (slot >= limit) slot %= p_;
    }
  }
  std::vector<std::uint32_t> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<std::uint32_t>(acc[i] % p_);
  return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::scaled(std::uint32_t s) const {
  s %= p_;
  if (s == 0) return FpPoly(p_);
  FpPoly r = *this;
  for (auto& x : r.c_) x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * s % p_);
  return r;
}

FpPoly FpPoly::shifted(std::size_t n) const {
  if (c_.empty() || n == 0) return *this;
  FpPoly r(p_);
  r.c_.assign(n, 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& d) const {
  if (d.is_zero()) throw std::domain_error("FpPoly::divmod: division by zero");
  if (degree() < d.degree()) return {FpPoly(p_), *this};
  std::vector<std::uint32_t> r = c_;
  std::vector<std::uint32_t> q(c_.size() - d.c_.size() + 1, 0);
  const std::uint32_t inv = inverse_mod(d.lead(), p_);
  const std::size_t dd = d.c_.size() - 1;
  for (std::size_t i = r.size(); i-- > dd;) {
    if (r[i] == 0) continue;
    const std::uint64_t f = static_cast<std::uint64_t>(r[i]) * inv % p_;
    q[i - dd] = static_cast<std::uint32_t>(f);
    const std::uint64_t neg = p_ - f;
    for (std::size_t j = 0; j <= dd; ++j) {
      if (d.c_[j] == 0) continue;
      r[i - dd + j] = static_cast<std::uint32_t>((r[i - dd + j] + neg * d.c_[j]) % p_);
    }
  }
  r.resize(dd);
  return {FpPoly(p_, std::move(q)), FpPoly(p_, std::move(r))};
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(inverse_mod(lead(), p_));
}

std::size_t FpPoly::low_order() const {
  std::size_t n = 0;
  while (n < c_.size() && c_[n] == 0) ++n;
  return c_.empty() ? 0 : n;
}

FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace twistalex
