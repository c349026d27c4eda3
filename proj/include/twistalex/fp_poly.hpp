#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace twistalex {

// Dense univariate polynomial over F_p, coefficients stored lowest degree first.
// This is the work-horse for the one-variable F_p routes (Smith-style
// diagonalization, determinants); the general sparse LaurentPoly is used
// everywhere else.
class FpPoly {
 public:
  FpPoly() = default;
  explicit FpPoly(std::uint32_t p) : p_(p) {}
  FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs);

  static FpPoly constant(std::uint32_t p, std::uint32_t c);
  static FpPoly monomial(std::uint32_t p, std::uint32_t c, std::size_t degree);

  std::uint32_t prime() const { return p_; }
  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  std::uint32_t lead() const { return c_.empty() ? 0 : c_.back(); }
  std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }

  FpPoly& operator+=(const FpPoly& o);
  FpPoly& operator-=(const FpPoly& o);
  FpPoly operator+(const FpPoly& o) const;
  FpPoly operator-(const FpPoly& o) const;
  FpPoly operator*(const FpPoly& o) const;
  FpPoly operator-() const;
  FpPoly scaled(std::uint32_t s) const;
  FpPoly shifted(std::size_t n) const;

  // this = q*d + r with deg r < deg d; d must be nonzero.
  std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const;
  FpPoly monic() const;
  // Number of leading zero coefficients (largest n with t^n | f); 0 for zero.
  std::size_t low_order() const;

  bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

 private:
  void trim();

  std::uint32_t p_ = 2;
  std::vector<std::uint32_t> c_;
};

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);
FpPoly gcd(FpPoly a, FpPoly b);

}  // namespace twistalex
