#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace twistalex {

using Integer = boost::multiprecision::cpp_int;
using Exponents = std::vector<std::int64_t>;

// Coefficient ring: the integers or a prime field F_p.
struct Ring {
  enum class Kind { Integers, PrimeField };
  Kind kind = Kind::Integers;
  std::uint32_t p = 0;

  static Ring integers() { return {Kind::Integers, 0}; }
  static Ring prime_field(std::uint32_t prime);

  bool is_field() const { return kind == Kind::PrimeField; }
  Integer reduce(const Integer& c) const;
  std::string name() const;

  bool operator==(const Ring&) const = default;
};

// Sparse Laurent polynomial in num_vars variables over a Ring. Zero
// coefficients are never stored; over F_p coefficients live in [1, p-1].
class LaurentPoly {
 public:
  using Terms = std::map<Exponents, Integer>;

  LaurentPoly() = default;
  LaurentPoly(Ring ring, int num_vars) : ring_(ring), nv_(num_vars) {}

  static LaurentPoly constant(Ring ring, int num_vars, const Integer& c);
  static LaurentPoly monomial(Ring ring, int num_vars, const Exponents& e, const Integer& c = 1);
  static LaurentPoly variable(Ring ring, int num_vars, int var, std::int64_t power = 1);

  const Ring& ring() const { return ring_; }
  int num_vars() const { return nv_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  Integer coeff(const Exponents& e) const;

  void add_term(const Exponents& e, const Integer& c);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly scaled(const Integer& s) const;
  LaurentPoly shifted(const Exponents& by) const;
  // t_i -> t_i^{-1} for every variable.
  LaurentPoly inverted() const;
  // Coefficientwise reduction into another ring (Z -> F_p).
  LaurentPoly reduced(Ring target) const;

  // Componentwise minimum / maximum exponent; empty polynomial gives zeros.
  Exponents min_exponents() const;
  Exponents max_exponents() const;
  // max - min exponent of a one-variable polynomial (0 for zero).
  std::int64_t degree_span() const;
  // Sum of coefficients, i.e. the value at t_1 = ... = t_m = 1.
  Integer value_at_one() const;
  bool is_unit() const;

  bool operator==(const LaurentPoly& o) const;

  // Text form "c0 + c1*t + c2*t^2", exponents ascending; variables are t
  // (one variable) or t1, t2, ... (several).
  std::string to_string() const;
  static LaurentPoly parse(std::string_view text, Ring ring, int num_vars);

 private:
  Ring ring_ = Ring::integers();
  int nv_ = 1;
  Terms terms_;
};

std::optional<LaurentPoly> divide_exact(const LaurentPoly& f, const LaurentPoly& g);

// Canonical representative of the unit class of a polynomial together with
// the unit that was applied: poly = scalar * t^shift * original.
struct NormalizedPoly {
  LaurentPoly poly;
  Integer scalar = 1;
  Exponents shift;
};

NormalizedPoly normalize_unit(const LaurentPoly& f);
inline LaurentPoly canonical(const LaurentPoly& f) { return normalize_unit(f).poly; }
// Canonical form of the pair {f(t), f(t^-1)}.
LaurentPoly mirror_canonical(const LaurentPoly& f);
bool equal_up_to_units(const LaurentPoly& a, const LaurentPoly& b);
bool equal_up_to_units_and_mirror(const LaurentPoly& a, const LaurentPoly& b);
// Total order on polynomials used for deterministic tie breaks.
bool poly_less(const LaurentPoly& a, const LaurentPoly& b);

LaurentPoly gcd_polys(const LaurentPoly& f, const LaurentPoly& g);

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, Ring ring, int num_vars);

  static PolyMatrix identity(std::size_t n, Ring ring, int num_vars);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Ring& ring() const { return ring_; }
  int num_vars() const { return nv_; }

  LaurentPoly& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const LaurentPoly& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  PolyMatrix operator*(const PolyMatrix& o) const;
  bool is_zero() const;
  PolyMatrix select(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  Ring ring_ = Ring::integers();
  int nv_ = 1;
  std::vector<LaurentPoly> data_;
};

LaurentPoly det(const PolyMatrix& m);
// gcd of all size x size minors in canonical form; size 0 gives 1.
LaurentPoly gcd_of_minors(const PolyMatrix& m, std::size_t size);

// Row-vector convention: B2 is a x b, B1 is b x c with B2 * B1 = 0. Returns
// the order of ker(. B1) / rowspace(B2) over F_p[t^{+-1}] in canonical form,
// or 0 when the quotient has positive rank.
LaurentPoly module_order_pid(const PolyMatrix& b2, const PolyMatrix& b1);

// Rank over the fraction field (one variable, F_p).
std::size_t rank_pid(const PolyMatrix& m);

}  // namespace twistalex
