#include "twistalex/laurent.hpp"

#include "twistalex/fp_poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace twistalex {

Ring Ring::prime_field(std::uint32_t prime) {
  if (prime < 2) throw std::invalid_argument("prime_field: p must be prime");
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= prime; ++d) {
    if (prime % d == 0) throw std::invalid_argument("prime_field: " + std::to_string(prime) + " is not prime");
  }
  return {Kind::PrimeField, prime};
}

Integer Ring::reduce(const Integer& c) const {
  if (kind == Kind::Integers) return c;
  Integer r = c % p;
  if (r < 0) r += p;
  return r;
}

std::string Ring::name() const { return kind == Kind::Integers ? "Z" : "F" + std::to_string(p); }

namespace {

std::uint32_t to_u32(const Integer& c) { return c.convert_to<std::uint32_t>(); }

Integer int_gcd(Integer a, Integer b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Integer r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

void require_compatible(const LaurentPoly& a, const LaurentPoly& b) {
  if (!(a.ring() == b.ring()) || a.num_vars() != b.num_vars()) {
    throw std::invalid_argument("LaurentPoly: mismatched ring or variable count");
  }
}

}  // namespace

LaurentPoly LaurentPoly::constant(Ring ring, int num_vars, const Integer& c) {
  LaurentPoly f(ring, num_vars);
  f.add_term(Exponents(num_vars, 0), c);
  return f;
}

LaurentPoly LaurentPoly::monomial(Ring ring, int num_vars, const Exponents& e, const Integer& c) {
  if (static_cast<int>(e.size()) != num_vars) throw std::invalid_argument("monomial: exponent length");
  LaurentPoly f(ring, num_vars);
  f.add_term(e, c);
  return f;
}

LaurentPoly LaurentPoly::variable(Ring ring, int num_vars, int var, std::int64_t power) {
  Exponents e(num_vars, 0);
  e.at(var) = power;
  return monomial(ring, num_vars, e, 1);
}

Integer LaurentPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Integer(0) : it->second;
}

void LaurentPoly::add_term(const Exponents& e, const Integer& c) {
  if (static_cast<int>(e.size()) != nv_) throw std::invalid_argument("add_term: exponent length");
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    Integer r = ring_.reduce(c);
    if (r != 0) terms_.emplace(e, std::move(r));
    return;
  }
  it->second = ring_.reduce(it->second + c);
  if (it->second == 0) terms_.erase(it);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  require_compatible(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  require_compatible(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r -= o;
  return r;
}

LaurentPoly LaurentPoly::operator-() const { return scaled(-1); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  require_compatible(*this, o);
  if (ring_.is_field() && nv_ == 1 && terms_.size() > 8 && o.terms_.size() > 8) {
    // Dense route for long one-variable products.
    const auto lo_a = terms_.begin()->first[0], lo_b = o.terms_.begin()->first[0];
    const auto hi_a = terms_.rbegin()->first[0], hi_b = o.terms_.rbegin()->first[0];
    std::vector<std::uint32_t> a(hi_a - lo_a + 1, 0), b(hi_b - lo_b + 1, 0);
    for (const auto& [e, c] : terms_) a[e[0] - lo_a] = to_u32(c);
    for (const auto& [e, c] : o.terms_) b[e[0] - lo_b] = to_u32(c);
    const FpPoly prod = FpPoly(ring_.p, std::move(a)) * FpPoly(ring_.p, std::move(b));
    LaurentPoly r(ring_, 1);
    for (std::size_t i = 0; i < prod.coeffs().size(); ++i) {
      if (prod.coeffs()[i] != 0) r.terms_.emplace(Exponents{lo_a + lo_b + static_cast<std::int64_t>(i)}, prod.coeffs()[i]);
    }
    return r;
  }
  Terms acc;
  Exponents e(nv_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (int i = 0; i < nv_; ++i) e[i] = ea[i] + eb[i];
      acc[e] += ca * cb;
    }
  }
  LaurentPoly r(ring_, nv_);
  for (auto& [ex, c] : acc) {
    Integer red = ring_.reduce(c);
    if (red != 0) r.terms_.emplace(ex, std::move(red));
  }
  return r;
}

LaurentPoly LaurentPoly::scaled(const Integer& s) const {
  LaurentPoly r(ring_, nv_);
  for (const auto& [e, c] : terms_) {
    Integer v = ring_.reduce(c * s);
    if (v != 0) r.terms_.emplace(e, std::move(v));
  }
  return r;
}

LaurentPoly LaurentPoly::shifted(const Exponents& by) const {
  LaurentPoly r(ring_, nv_);
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    for (int i = 0; i < nv_; ++i) ne[i] += by[i];
    r.terms_.emplace(std::move(ne), c);
  }
  return r;
}

LaurentPoly LaurentPoly::inverted() const {
  LaurentPoly r(ring_, nv_);
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    for (auto& x : ne) x = -x;
    r.terms_.emplace(std::move(ne), c);
  }
  return r;
}

LaurentPoly LaurentPoly::reduced(Ring target) const {
  LaurentPoly r(target, nv_);
  for (const auto& [e, c] : terms_) r.add_term(e, c);
  return r;
}

Exponents LaurentPoly::min_exponents() const {
  Exponents m(nv_, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < nv_; ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
    first = false;
  }
  return m;
}

Exponents LaurentPoly::max_exponents() const {
  Exponents m(nv_, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < nv_; ++i) m[i] = first ? e[i] : std::max(m[i], e[i]);
    first = false;
  }
  return m;
}

std::int64_t LaurentPoly::degree_span() const {
  if (terms_.empty()) return 0;
  if (nv_ != 1) throw std::logic_error("degree_span: one variable only");
  return terms_.rbegin()->first[0] - terms_.begin()->first[0];
}

Integer LaurentPoly::value_at_one() const {
  Integer s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return ring_.reduce(s);
}

bool LaurentPoly::is_unit() const {
  if (terms_.size() != 1) return false;
  const Integer& c = terms_.begin()->second;
  return ring_.is_field() || c == 1 || c == -1;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  return ring_ == o.ring_ && nv_ == o.nv_ && terms_ == o.terms_;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool neg = c < 0;
    const Integer mag = neg ? Integer(-c) : c;
    if (first) {
      os << (neg ? "-" : "") << mag;
    } else {
      os << (neg ? " - " : " + ") << mag;
    }
    first = false;
    for (int i = 0; i < nv_; ++i) {
      if (e[i] == 0) continue;
      os << "*t";
      if (nv_ > 1) os << (i + 1);
      if (e[i] != 1) os << '^' << e[i];
    }
  }
  return os.str();
}

LaurentPoly LaurentPoly::parse(std::string_view text, Ring ring, int num_vars) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  auto fail = [&](const std::string& why) -> LaurentPoly {
    throw std::invalid_argument("cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  LaurentPoly f(ring, num_vars);
  if (s.empty()) fail("empty");
  std::size_t pos = 0;
  auto read_int = [&]() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected digits at offset " + std::to_string(start));
    return s.substr(start, pos - start);
  };
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail("expected + or - at offset " + std::to_string(pos));
    }
    Integer c = 1;
    Exponents e(num_vars, 0);
    bool have_factor = false;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      c = Integer(read_int());
      have_factor = true;
    }
    while (pos < s.size() && (s[pos] == '*' || s[pos] == 't')) {
      if (s[pos] == '*') {
        if (!have_factor) fail("dangling *");
        ++pos;
      }
      if (pos >= s.size() || s[pos] != 't') fail("expected variable");
      ++pos;
      int var = 0;
      if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        var = std::stoi(read_int()) - 1;
      }
      if (var < 0 || var >= num_vars) fail("variable index out of range");
      std::int64_t power = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        int psign = 1;
        if (pos < s.size() && s[pos] == '-') {
          psign = -1;
          ++pos;
        }
        power = psign * std::stoll(read_int());
      }
      e[var] += power;
      have_factor = true;
    }
    if (!have_factor) fail("empty term");
    f.add_term(e, sign * c);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Exact division and gcd

namespace {

bool fp_univariate(const LaurentPoly& f) { return f.ring().is_field() && f.num_vars() == 1; }

// Dense F_p image of a one-variable polynomial shifted so its lowest term is t^0.
FpPoly to_fp(const LaurentPoly& f, std::int64_t* low = nullptr) {
  if (f.is_zero()) {
    if (low) *low = 0;
    return FpPoly(f.ring().p);
  }
  const std::int64_t lo = f.terms().begin()->first[0];
  const std::int64_t hi = f.terms().rbegin()->first[0];
  std::vector<std::uint32_t> v(hi - lo + 1, 0);
  for (const auto& [e, c] : f.terms()) v[e[0] - lo] = to_u32(c);
  if (low) *low = lo;
  return FpPoly(f.ring().p, std::move(v));
}

LaurentPoly from_fp(const FpPoly& g, Ring ring, std::int64_t low = 0) {
  LaurentPoly f(ring, 1);
  for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
    if (g.coeffs()[i] != 0) f.add_term({low + static_cast<std::int64_t>(i)}, g.coeffs()[i]);
  }
  return f;
}

Exponents negate(Exponents e) {
  for (auto& x : e) x = -x;
  return e;
}

// Division of genuine polynomials (no negative exponents) by lex leading terms.
std::optional<LaurentPoly> divide_polynomial(LaurentPoly f, const LaurentPoly& g) {
  const int nv = f.num_vars();
  const Ring ring = f.ring();
  LaurentPoly q(ring, nv);
  if (f.is_zero()) return q;
  const auto& [ge, gc] = *g.terms().rbegin();
  const Integer ginv = ring.is_field() ? Integer(inverse_mod(to_u32(gc), ring.p)) : Integer(0);
  while (!f.is_zero()) {
    const auto [fe, fc] = *f.terms().rbegin();
    Exponents d(nv);
    for (int i = 0; i < nv; ++i) {
      d[i] = fe[i] - ge[i];
      if (d[i] < 0) return std::nullopt;
    }
    Integer c;
    if (ring.is_field()) {
      c = ring.reduce(fc * ginv);
    } else {
      if (fc % gc != 0) return std::nullopt;
      c = fc / gc;
    }
    const LaurentPoly term = LaurentPoly::monomial(ring, nv, d, c);
    q += term;
    f -= term * g;
  }
  return q;
}

}  // namespace

std::optional<LaurentPoly> divide_exact(const LaurentPoly& f, const LaurentPoly& g) {
  require_compatible(f, g);
  if (g.is_zero()) throw std::domain_error("divide_exact: division by zero");
  if (f.is_zero()) return LaurentPoly(f.ring(), f.num_vars());
  if (fp_univariate(f)) {
    std::int64_t lf = 0, lg = 0;
    const FpPoly a = to_fp(f, &lf), b = to_fp(g, &lg);
    auto [q, r] = a.divmod(b);
    if (!r.is_zero()) return std::nullopt;
    return from_fp(q, f.ring(), lf - lg);
  }
  const Exponents fm = f.min_exponents(), gm = g.min_exponents();
  auto q = divide_polynomial(f.shifted(negate(fm)), g.shifted(negate(gm)));
  if (!q) return std::nullopt;
  Exponents back(f.num_vars());
  for (int i = 0; i < f.num_vars(); ++i) back[i] = fm[i] - gm[i];
  return q->shifted(back);
}

NormalizedPoly normalize_unit(const LaurentPoly& f) {
  NormalizedPoly out;
  out.shift = Exponents(f.num_vars(), 0);
  if (f.is_zero()) {
    out.poly = f;
    return out;
  }
  out.shift = negate(f.min_exponents());
  LaurentPoly g = f.shifted(out.shift);
  const Integer& low = g.terms().begin()->second;
  if (f.ring().is_field()) {
    out.scalar = inverse_mod(to_u32(low), f.ring().p);
  } else {
    out.scalar = low < 0 ? -1 : 1;
  }
  out.poly = out.scalar == 1 ? std::move(g) : g.scaled(out.scalar);
  return out;
}

bool poly_less(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.num_terms() != b.num_terms()) return a.num_terms() < b.num_terms();
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return false;
}

LaurentPoly mirror_canonical(const LaurentPoly& f) {
  LaurentPoly a = canonical(f);
  LaurentPoly b = canonical(f.inverted());
  return poly_less(b, a) ? b : a;
}

bool equal_up_to_units(const LaurentPoly& a, const LaurentPoly& b) { return canonical(a) == canonical(b); }

bool equal_up_to_units_and_mirror(const LaurentPoly& a, const LaurentPoly& b) {
  return mirror_canonical(a) == mirror_canonical(b);
}

namespace {

// A polynomial viewed as univariate in its last variable, with coefficients
// in the remaining variables.
using Dense = std::vector<LaurentPoly>;

void trim(Dense& d) {
  while (!d.empty() && d.back().is_zero()) d.pop_back();
}

Dense split_last(const LaurentPoly& f) {
  const int nv = f.num_vars();
  Dense out;
  for (const auto& [e, c] : f.terms()) {
    const auto deg = static_cast<std::size_t>(e.back());
    if (out.size() <= deg) out.resize(deg + 1, LaurentPoly(f.ring(), nv - 1));
    out[deg].add_term(Exponents(e.begin(), e.end() - 1), c);
  }
  return out;
}

LaurentPoly join_last(const Dense& d, Ring ring, int nv) {
  LaurentPoly f(ring, nv);
  for (std::size_t k = 0; k < d.size(); ++k) {
    for (const auto& [e, c] : d[k].terms()) {
      Exponents full = e;
      full.push_back(static_cast<std::int64_t>(k));
      f.add_term(full, c);
    }
  }
  return f;
}

LaurentPoly polynomial_gcd(const LaurentPoly& f, const LaurentPoly& g);

LaurentPoly content(const Dense& d) {
  LaurentPoly c;
  bool first = true;
  for (const auto& x : d) {
    if (x.is_zero()) continue;
    c = first ? x : polynomial_gcd(c, x);
    first = false;
    if (c.is_unit()) break;
  }
  return c;
}

Dense primitive_part(const Dense& d, const LaurentPoly& c) {
  Dense out;
  out.reserve(d.size());
  for (const auto& x : d) {
    auto q = divide_exact(x, c);
    if (!q) throw std::logic_error("primitive_part: content does not divide");
    out.push_back(std::move(*q));
  }
  return out;
}

Dense pseudo_remainder(Dense a, const Dense& b) {
  const LaurentPoly& lb = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    const LaurentPoly la = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& x : a) x = x * lb;
    for (std::size_t j = 0; j < b.size(); ++j) a[j + shift] -= la * b[j];
    trim(a);
  }
  return a;
}

// gcd of nonzero genuine polynomials by the recursive primitive PRS.
LaurentPoly polynomial_gcd(const LaurentPoly& f, const LaurentPoly& g) {
  const Ring ring = f.ring();
  const int nv = f.num_vars();
  if (nv == 0) {
    if (ring.is_field()) return LaurentPoly::constant(ring, 0, 1);
    return LaurentPoly::constant(ring, 0, int_gcd(f.coeff({}), g.coeff({})));
  }
  if (fp_univariate(f)) {
    std::int64_t lf = 0, lg = 0;
    FpPoly a = to_fp(f, &lf), b = to_fp(g, &lg);
    const std::int64_t low = std::min(lf, lg);
    return from_fp(gcd(a, b), ring, low);
  }
  Dense a = split_last(f), b = split_last(g);
  const LaurentPoly ca = content(a), cb = content(b);
  const LaurentPoly c = polynomial_gcd(ca, cb);
  a = primitive_part(a, ca);
  b = primitive_part(b, cb);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    if (b.size() == 1) {
      a = Dense{LaurentPoly::constant(ring, nv - 1, 1)};
      break;
    }
    Dense r = pseudo_remainder(a, b);
    a = std::move(b);
    if (r.empty()) {
      b.clear();
    } else {
      b = primitive_part(r, content(r));
    }
  }
  LaurentPoly out = join_last(a, ring, nv);
  // c lives in nv-1 variables; lift it.
  LaurentPoly lifted(ring, nv);
  for (const auto& [e, coef] : c.terms()) {
    Exponents full = e;
    full.push_back(0);
    lifted.add_term(full, coef);
  }
  return out * lifted;
}

}  // namespace

LaurentPoly gcd_polys(const LaurentPoly& f, const LaurentPoly& g) {
  require_compatible(f, g);
  if (f.is_zero()) return canonical(g);
  if (g.is_zero()) return canonical(f);
  if (fp_univariate(f)) {
    return canonical(from_fp(gcd(to_fp(f), to_fp(g)), f.ring()));
  }
  const LaurentPoly a = f.shifted(negate(f.min_exponents()));
  const LaurentPoly b = g.shifted(negate(g.min_exponents()));
  return canonical(polynomial_gcd(a, b));
}

// ---------------------------------------------------------------------------
// Matrices

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, Ring ring, int num_vars)
    : rows_(rows), cols_(cols), ring_(ring), nv_(num_vars), data_(rows * cols, LaurentPoly(ring, num_vars)) {}

PolyMatrix PolyMatrix::identity(std::size_t n, Ring ring, int num_vars) {
  PolyMatrix m(n, n, ring, num_vars);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::constant(ring, num_vars, 1);
  return m;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("PolyMatrix: dimension mismatch");
  PolyMatrix r(rows_, o.cols_, ring_, nv_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const LaurentPoly& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const LaurentPoly& b = o.at(k, j);
        if (!b.is_zero()) r.at(i, j) += a * b;
      }
    }
  }
  return r;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const LaurentPoly& x) { return x.is_zero(); });
}

PolyMatrix PolyMatrix::select(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const {
  PolyMatrix r(row_idx.size(), col_idx.size(), ring_, nv_);
  for (std::size_t i = 0; i < row_idx.size(); ++i) {
    for (std::size_t j = 0; j < col_idx.size(); ++j) r.at(i, j) = at(row_idx[i], col_idx[j]);
  }
  return r;
}

namespace {

using FpMatrix = std::vector<std::vector<FpPoly>>;

// Rows multiplied by monomials so every entry is a polynomial with some row
// entry having nonzero constant term. Returns the total shift applied.
FpMatrix to_fp_rows(const PolyMatrix& m, std::int64_t* total_shift = nullptr) {
  FpMatrix out(m.rows(), std::vector<FpPoly>(m.cols(), FpPoly(m.ring().p)));
  std::int64_t total = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    bool any = false;
    std::int64_t lo = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const LaurentPoly& x = m.at(i, j);
      if (x.is_zero()) continue;
      const std::int64_t l = x.terms().begin()->first[0];
      lo = any ? std::min(lo, l) : l;
      any = true;
    }
    total -= lo;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const LaurentPoly& x = m.at(i, j);
      if (x.is_zero()) continue;
      std::int64_t l = 0;
      FpPoly d = to_fp(x, &l);
      out[i][j] = d.shifted(static_cast<std::size_t>(l - lo));
    }
  }
  if (total_shift) *total_shift = total;
  return out;
}

struct Diagonalization {
  std::size_t rank = 0;
  FpPoly product;
};

// Unimodular row and column operations over F_p[t] down to diagonal form.
// The product of the diagonal equals the product of the invariant factors up
// to a unit; no divisibility chain is enforced.
Diagonalization diagonalize(FpMatrix a, std::uint32_t p) {
  Diagonalization out{0, FpPoly::constant(p, 1)};
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  auto find_pivot = [&](std::size_t s, std::size_t& pi, std::size_t& pj) {
    long best = -1;
    for (std::size_t i = s; i < rows; ++i) {
      for (std::size_t j = s; j < cols; ++j) {
        const long d = a[i][j].degree();
        if (d < 0) continue;
        if (best < 0 || d < best) {
          best = d;
          pi = i;
          pj = j;
          if (d == 0) return true;
        }
      }
    }
    return best >= 0;
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (auto& row : a) std::swap(row[x], row[y]);
  };
  for (std::size_t s = 0; s < std::min(rows, cols); ++s) {
    std::size_t pi = s, pj = s;
    if (!find_pivot(s, pi, pj)) break;
    std::swap(a[s], a[pi]);
    swap_cols(s, pj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = s + 1; i < rows; ++i) {
        if (a[i][s].is_zero()) continue;
        auto [q, r] = a[i][s].divmod(a[s][s]);
        if (!q.is_zero()) {
          for (std::size_t j = s; j < cols; ++j) {
            if (!a[s][j].is_zero()) a[i][j] -= q * a[s][j];
          }
        }
        if (!r.is_zero()) clean = false;
      }
      for (std::size_t j = s + 1; j < cols; ++j) {
        if (a[s][j].is_zero()) continue;
        auto [q, r] = a[s][j].divmod(a[s][s]);
        if (!q.is_zero()) {
          for (std::size_t i = s; i < rows; ++i) {
            if (!a[i][s].is_zero()) a[i][j] -= q * a[i][s];
          }
        }
        if (!r.is_zero()) clean = false;
      }
      if (clean) break;
      // A remainder of lower degree than the pivot survived; promote it.
      long best = a[s][s].degree();
      std::size_t bi = s, bj = s;
      for (std::size_t i = s + 1; i < rows; ++i) {
        if (!a[i][s].is_zero() && a[i][s].degree() < best) best = a[i][s].degree(), bi = i, bj = s;
      }
      for (std::size_t j = s + 1; j < cols; ++j) {
        if (!a[s][j].is_zero() && a[s][j].degree() < best) best = a[s][j].degree(), bi = s, bj = j;
      }
      std::swap(a[s], a[bi]);
      swap_cols(s, bj);
    }
    out.product = out.product * a[s][s];
    ++out.rank;
  }
  return out;
}

void require_pid(const PolyMatrix& m, const char* what) {
  if (!m.ring().is_field() || m.num_vars() != 1) {
    throw std::invalid_argument(std::string(what) + ": requires one variable over F_p");
  }
}

LaurentPoly det_fp(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  const std::uint32_t p = m.ring().p;
  std::int64_t shift = 0;
  FpMatrix a = to_fp_rows(m, &shift);
  bool negative = false;
  FpPoly prev = FpPoly::constant(p, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a[r][k].is_zero()) ++r;
      if (r == n) return LaurentPoly(m.ring(), 1);
      std::swap(a[k], a[r]);
      negative = !negative;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        FpPoly v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        auto [q, r] = v.divmod(prev);
        if (!r.is_zero()) throw std::logic_error("det: inexact Bareiss division");
        a[i][j] = std::move(q);
      }
      a[i][k] = FpPoly(p);
    }
    prev = a[k][k];
  }
  FpPoly d = a[n - 1][n - 1];
  if (negative) d = -d;
  // The rows were multiplied by t^(shift) in total.
  return from_fp(d, m.ring(), -shift);
}

// One-variable determinant over Z: images mod word-sized primes, combined by
// CRT until the modulus exceeds twice a bound on every coefficient.
LaurentPoly det_z(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  Integer bound = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& [e, c] : m.at(i, j).terms()) row += abs(c);
    }
    if (row == 0) return LaurentPoly(m.ring(), 1);
    bound *= row;
  }
  std::map<std::int64_t, Integer> value;  // symmetric residues modulo `modulus`
  Integer modulus = 1;
  std::uint32_t candidate = 2147483647u;
  while (modulus <= 2 * bound) {
    Ring fp;
    for (;; candidate -= 2) {
      try {
        fp = Ring::prime_field(candidate);
        break;
      } catch (const std::invalid_argument&) {
      }
    }
    const std::uint32_t p = candidate;
    candidate -= 2;
    PolyMatrix mp(n, n, fp, 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) mp.at(i, j) = m.at(i, j).reduced(fp);
    }
    const LaurentPoly d = det_fp(mp);
    std::map<std::int64_t, std::uint32_t> residues;
    for (const auto& [e, c] : d.terms()) residues[e[0]] = to_u32(c);
    for (const auto& kv : value) residues.emplace(kv.first, 0);
    // Garner step: x = v + modulus * ((r - v) / modulus mod p).
    const std::uint32_t inv = inverse_mod(Integer(modulus % p).convert_to<std::uint32_t>(), p);
    const Integer next_modulus = modulus * p;
    for (const auto& [e, r] : residues) {
      Integer v = value.count(e) ? value[e] : Integer(0);
      Integer diff = (Integer(r) - v) % p;
      if (diff < 0) diff += p;
      const Integer h = diff * inv % p;
      Integer x = v + modulus * h;
      if (x > next_modulus / 2) x -= next_modulus;
      if (x < -(next_modulus / 2)) x += next_modulus;
      value[e] = x;
    }
    modulus = next_modulus;
  }
  LaurentPoly out(m.ring(), 1);
  for (const auto& [e, c] : value) {
    if (c != 0) out.add_term({e}, c);
  }
  return out;
}

}  // namespace

LaurentPoly det(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return LaurentPoly::constant(m.ring(), m.num_vars(), 1);
  if (m.ring().is_field() && m.num_vars() == 1) return det_fp(m);
  if (m.num_vars() == 1) return det_z(m);

  const int nv = m.num_vars();
  std::vector<std::vector<LaurentPoly>> a(n, std::vector<LaurentPoly>(n));
  Exponents total(nv, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Exponents lo(nv, 0);
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      const LaurentPoly& x = m.at(i, j);
      if (x.is_zero()) continue;
      const Exponents mn = x.min_exponents();
      for (int v = 0; v < nv; ++v) lo[v] = any ? std::min(lo[v], mn[v]) : mn[v];
      any = true;
    }
    for (int v = 0; v < nv; ++v) total[v] += lo[v];
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j).shifted(negate(lo));
  }
  bool negative = false;
  LaurentPoly prev = LaurentPoly::constant(m.ring(), nv, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a[r][k].is_zero()) ++r;
      if (r == n) return LaurentPoly(m.ring(), nv);
      std::swap(a[k], a[r]);
      negative = !negative;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        LaurentPoly v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        auto q = divide_exact(v, prev);
        if (!q) throw std::logic_error("det: inexact Bareiss division");
        a[i][j] = std::move(*q);
      }
      a[i][k] = LaurentPoly(m.ring(), nv);
    }
    prev = a[k][k];
  }
  LaurentPoly d = a[n - 1][n - 1].shifted(total);
  return negative ? -d : d;
}

namespace {

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

LaurentPoly gcd_of_minors(const PolyMatrix& m, std::size_t size) {
  if (size == 0) return LaurentPoly::constant(m.ring(), m.num_vars(), 1);
  if (size > std::min(m.rows(), m.cols())) throw std::invalid_argument("gcd_of_minors: size too large");
  LaurentPoly g(m.ring(), m.num_vars());
  std::vector<std::size_t> rows(size), cols(size);
  std::iota(rows.begin(), rows.end(), 0);
  do {
    std::iota(cols.begin(), cols.end(), 0);
    do {
      const LaurentPoly minor = det(m.select(rows, cols));
      if (minor.is_zero()) continue;
      g = gcd_polys(g, minor);
      if (g.is_unit()) return g;
    } while (next_combination(cols, m.cols()));
  } while (next_combination(rows, m.rows()));
  return canonical(g);
}

std::size_t rank_pid(const PolyMatrix& m) {
  require_pid(m, "rank_pid");
  return diagonalize(to_fp_rows(m), m.ring().p).rank;
}

LaurentPoly module_order_pid(const PolyMatrix& b2, const PolyMatrix& b1) {
  require_pid(b1, "module_order_pid");
  if (!(b2.ring() == b1.ring()) || b2.num_vars() != 1) throw std::invalid_argument("module_order_pid: ring mismatch");
  if (b2.cols() != b1.rows()) throw std::invalid_argument("module_order_pid: B2 and B1 are not composable");
  if (b2.rows() > 0 && b1.cols() > 0 && !(b2 * b1).is_zero()) {
    throw std::logic_error("module_order_pid: B2 * B1 != 0");
  }
  const std::uint32_t p = b1.ring().p;
  const std::size_t rank1 = b1.rows() && b1.cols() ? diagonalize(to_fp_rows(b1), p).rank : 0;
  // ker(B1)/im(B2) is torsion exactly when rank B2 = b - rank B1; its torsion
  // then coincides with the torsion of coker(B2), whose order is the product
  // of the nonzero invariant factors of B2.
  Diagonalization d2 = b2.rows() && b2.cols() ? diagonalize(to_fp_rows(b2), p) : Diagonalization{0, FpPoly::constant(p, 1)};
  if (d2.rank + rank1 != b1.rows()) return LaurentPoly(b1.ring(), 1);
  return canonical(from_fp(d2.product, b1.ring()));
}

}  // namespace twistalex
