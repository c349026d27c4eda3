#include "twistalex/twisted.hpp"

#include <numeric>
#include <stdexcept>

namespace twistalex {

namespace {

void add_block(PolyMatrix& m, std::size_t row0, std::size_t col0, const Permutation& s, const Exponents& e,
               int sign) {
  for (int a = 0; a < s.degree(); ++a) m.at(row0 + s(a), col0 + a).add_term(e, sign);
}

void check_inputs(const GroupPresentation& p, const Rep& alpha, const PhiMap& phi) {
  p.validate();
  if (static_cast<int>(alpha.images.size()) != p.num_generators) {
    throw std::invalid_argument("build_complex: representation has the wrong number of images");
  }
  if (static_cast<int>(phi.images.size()) != p.num_generators) {
    throw std::invalid_argument("build_complex: abelianization has the wrong number of images");
  }
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    if (!evaluate(alpha, p.relators[r]).is_identity()) {
      throw std::invalid_argument("build_complex: representation violates relator " + std::to_string(r + 1));
    }
  }
}

}  // namespace

PolyMatrix represent_word(const FreeWord& w, const Rep& alpha, const PhiMap& phi, Ring ring) {
  PolyMatrix m(alpha.k, alpha.k, ring, phi.rank);
  add_block(m, 0, 0, evaluate(alpha, w), phi.apply(w), 1);
  return m;
}

TwistedComplex build_complex(const GroupPresentation& p, const Rep& alpha, const PhiMap& phi, Ring ring) {
  check_inputs(p, alpha, phi);
  if (p.deficiency() != 1) {
    throw std::invalid_argument("build_complex: presentation has deficiency " + std::to_string(p.deficiency()) +
                                ", expected 1");
  }
  const int k = alpha.k, g = p.num_generators, nv = phi.rank;
  TwistedComplex c;
  c.ring = ring;
  c.k = k;
  c.g = g;
  c.alpha = alpha;
  c.phi = phi;
  c.b2 = PolyMatrix(static_cast<std::size_t>(g - 1) * k, static_cast<std::size_t>(g) * k, ring, nv);
  c.b1 = PolyMatrix(static_cast<std::size_t>(g) * k, k, ring, nv);
  // Fox derivative walk: a letter x_j^{+1} after prefix u contributes +u,
  // a letter x_j^{-1} contributes -u x_j^{-1}.
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    Permutation prefix(k);
    Exponents e(nv, 0);
    for (const Letter& l : p.relators[i]) {
      const std::size_t row0 = i * k, col0 = static_cast<std::size_t>(l.gen) * k;
      if (l.exp > 0) {
        add_block(c.b2, row0, col0, prefix, e, 1);
        prefix = prefix * alpha.images[l.gen];
        for (int v = 0; v < nv; ++v) e[v] += phi.images[l.gen][v];
      } else {
        prefix = prefix * alpha.images[l.gen].inverse();
        for (int v = 0; v < nv; ++v) e[v] -= phi.images[l.gen][v];
        add_block(c.b2, row0, col0, prefix, e, -1);
      }
    }
  }
  for (int j = 0; j < g; ++j) {
    const std::size_t row0 = static_cast<std::size_t>(j) * k;
    add_block(c.b1, row0, 0, alpha.images[j], phi.images[j], 1);
    add_block(c.b1, row0, 0, Permutation(k), Exponents(nv, 0), -1);
  }
  return c;
}

namespace {

// Coinvariants of Z[t^+-1] tensor Z[orbit] are Z[t^+-1] / (t^d - 1), where d
// generates phi of the stabilizer: label each point by a potential along a
// spanning tree of the orbit and take the gcd of the cycle discrepancies.
LaurentPoly orbit_delta0(const TwistedComplex& c) {
  const int k = c.k;
  std::vector<std::int64_t> potential(k, 0);
  std::vector<bool> seen(k, false);
  LaurentPoly out = LaurentPoly::constant(c.ring, 1, 1);
  for (int start = 0; start < k; ++start) {
    if (seen[start]) continue;
    std::vector<int> orbit{start};
    seen[start] = true;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      const int a = orbit[i];
      for (int j = 0; j < c.g; ++j) {
        const int b = c.alpha.images[j](a);
        if (!seen[b]) {
          seen[b] = true;
          potential[b] = potential[a] + c.phi.images[j][0];
          orbit.push_back(b);
        }
      }
    }
    std::int64_t d = 0;
    for (int a : orbit) {
      for (int j = 0; j < c.g; ++j) d = std::gcd(d, potential[a] + c.phi.images[j][0] - potential[c.alpha.images[j](a)]);
    }
    if (d == 0) return LaurentPoly(c.ring, 1);
    out = out * (LaurentPoly::variable(c.ring, 1, 0, d) - LaurentPoly::constant(c.ring, 1, 1));
  }
  return canonical(out);
}

}  // namespace

LaurentPoly delta0(const TwistedComplex& c) {
  if (!c.ring.is_field() && c.b1.num_vars() == 1 && static_cast<int>(c.alpha.images.size()) == c.g) {
    return orbit_delta0(c);
  }
  if (c.ring.is_field() && c.b1.num_vars() == 1) {
    return module_order_pid(c.b1, PolyMatrix(static_cast<std::size_t>(c.k), 0, c.ring, 1));
  }
  if (c.b1.rows() < static_cast<std::size_t>(c.k)) return LaurentPoly(c.ring, c.b1.num_vars());
  return gcd_of_minors(c.b1, static_cast<std::size_t>(c.k));
}

LaurentPoly delta0(const GroupPresentation& p, const Rep& alpha, const PhiMap& phi, Ring ring) {
  return delta0(build_complex(p, alpha, phi, ring));
}

WadaPair wada_pair_at(const TwistedComplex& c, int column) {
  const std::size_t k = static_cast<std::size_t>(c.k);
  std::vector<std::size_t> rows(c.b2.rows()), cols, block;
  std::iota(rows.begin(), rows.end(), 0);
  for (std::size_t j = 0; j < c.b2.cols(); ++j) {
    if (j / k != static_cast<std::size_t>(column)) cols.push_back(j);
  }
  for (std::size_t a = 0; a < k; ++a) block.push_back(column * k + a);
  std::vector<std::size_t> all(k);
  std::iota(all.begin(), all.end(), 0);
  WadaPair w;
  w.column = column;
  w.numerator = det(c.b2.select(rows, cols));
  w.denominator = det(c.b1.select(block, all));
  return w;
}

std::optional<WadaPair> wada_pair(const TwistedComplex& c) {
  for (int j = 0; j < c.g; ++j) {
    const std::size_t k = static_cast<std::size_t>(c.k);
    std::vector<std::size_t> block, all(k);
    for (std::size_t a = 0; a < k; ++a) block.push_back(j * k + a);
    std::iota(all.begin(), all.end(), 0);
    if (det(c.b1.select(block, all)).is_zero()) continue;
    return wada_pair_at(c, j);
  }
  return std::nullopt;
}

TwistedResult twisted_alexander(const TwistedComplex& c) {
  TwistedResult res;
  const int nv = c.b1.num_vars();
  res.delta0 = delta0(c);
  if (c.ring.is_field() && nv == 1) {
    res.route = TwistedResult::Route::ModuleOrder;
    res.order = module_order_pid(c.b2, c.b1);
    return res;
  }
  res.route = TwistedResult::Route::WadaQuotient;
  res.wada = wada_pair(c);
  if (!res.wada) {
    if (nv == 1) throw std::runtime_error("twisted_alexander: every Wada denominator vanishes");
    res.note = "every Wada denominator vanishes";
    return res;
  }
  const LaurentPoly top = res.wada->numerator * res.delta0;
  auto q = divide_exact(top, res.wada->denominator);
  if (!q) {
    if (nv == 1) {
      throw std::runtime_error("twisted_alexander: Wada quotient times delta0 is not a polynomial");
    }
    res.note = "numerator * delta0 not divisible by denominator";
    return res;
  }
  res.order = canonical(*q);
  return res;
}

TwistedResult twisted_alexander(const GroupPresentation& p, const Rep& alpha, const PhiMap& phi, Ring ring) {
  return twisted_alexander(build_complex(p, alpha, phi, ring));
}

}  // namespace twistalex
