#include "twistalex/fpgroup.hpp"

#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace twistalex {

FreeWord free_reduce(const FreeWord& w) {
  FreeWord out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

FreeWord inverse(const FreeWord& w) {
  FreeWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

FreeWord concat(const FreeWord& a, const FreeWord& b) {
  FreeWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string to_string(const FreeWord& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << 'x' << (w[i].gen + 1);
    if (w[i].exp != 1) os << '^' << w[i].exp;
  }
  return os.str();
}

FreeWord parse_word(const std::string& text) {
  FreeWord w;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == 'x' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      ++i;
      int gen = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) gen = gen * 10 + (text[i++] - '0');
      int exp = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        int sign = 1;
        if (i < text.size() && text[i] == '-') sign = -1, ++i;
        int mag = 0;
        bool digits = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) mag = mag * 10 + (text[i++] - '0'), digits = true;
        if (!digits) throw std::invalid_argument("parse_word: bad exponent in '" + text + "'");
        exp = sign * mag;
      }
      if (gen < 1) throw std::invalid_argument("parse_word: generator index must be >= 1");
      for (int r = 0; r < std::abs(exp); ++r) w.push_back({gen - 1, exp > 0 ? 1 : -1});
    } else if (std::islower(static_cast<unsigned char>(c))) {
      w.push_back({c - 'a', 1});
      ++i;
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      w.push_back({c - 'A', -1});
      ++i;
    } else {
      throw std::invalid_argument("parse_word: unexpected character in '" + text + "'");
    }
  }
  return w;
}

void GroupRingElement::add(const FreeWord& w, long coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(w, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

GroupRingElement fox_derivative(const FreeWord& w, int gen) {
  GroupRingElement d;
  FreeWord prefix;
  for (const Letter& l : w) {
    if (l.gen == gen) {
      if (l.exp == 1) {
        d.add(free_reduce(prefix), 1);
      } else {
        FreeWord with = prefix;
        with.push_back(l);
        d.add(free_reduce(with), -1);
      }
    }
    prefix.push_back(l);
  }
  return d;
}

void GroupPresentation::validate() const {
  if (num_generators < 0) throw std::invalid_argument("presentation: negative generator count");
  for (const auto& r : relators) {
    for (const Letter& l : r) {
      if (l.gen < 0 || l.gen >= num_generators || (l.exp != 1 && l.exp != -1)) {
        throw std::invalid_argument("presentation: relator uses an invalid letter");
      }
    }
  }
  if (!component_of.empty()) {
    if (static_cast<int>(component_of.size()) != num_generators) {
      throw std::invalid_argument("presentation: component labels do not cover every generator");
    }
    for (int c : component_of) {
      if (c < 0 || c >= num_components) throw std::invalid_argument("presentation: component label out of range");
    }
  }
}

std::size_t abelianized_rank(const std::vector<FreeWord>& relators, int num_generators) {
  std::vector<std::vector<Integer>> m;
  for (const auto& r : relators) {
    std::vector<Integer> row(num_generators, 0);
    for (const Letter& l : r) row[l.gen] += l.exp;
    m.push_back(std::move(row));
  }
  // Fraction-free row echelon form; each row is kept primitive.
  std::size_t rank = 0;
  for (int col = 0; col < num_generators && rank < m.size(); ++col) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[rank], m[piv]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      if (m[i][col] == 0) continue;
      const Integer a = m[rank][col], b = m[i][col];
      Integer g = 0;
      for (int j = 0; j < num_generators; ++j) {
        m[i][j] = m[i][j] * a - m[rank][j] * b;
        g = boost::multiprecision::gcd(g, m[i][j]);
      }
      if (g > 1) {
        for (auto& x : m[i]) x /= g;
      }
    }
    ++rank;
  }
  return rank;
}

GroupPresentation drop_redundant_relation(const GroupPresentation& p) {
  p.validate();
  if (static_cast<int>(p.relators.size()) < p.num_generators) return p;
  const std::size_t full = abelianized_rank(p.relators, p.num_generators);
  for (std::size_t idx = p.relators.size(); idx-- > 0;) {
    std::vector<FreeWord> rest;
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      if (i != idx) rest.push_back(p.relators[i]);
    }
    if (abelianized_rank(rest, p.num_generators) == full) {
      GroupPresentation out = p;
      out.relators = std::move(rest);
      return out;
    }
  }
  throw std::invalid_argument("drop_redundant_relation: every relator is needed for the abelianization");
}

Exponents PhiMap::apply(const FreeWord& w) const {
  Exponents e(rank, 0);
  for (const Letter& l : w) {
    const Exponents& img = images.at(l.gen);
    for (int i = 0; i < rank; ++i) e[i] += l.exp * img[i];
  }
  return e;
}

PhiMap abelianization_map(const GroupPresentation& p) {
  p.validate();
  if (p.component_of.empty()) throw std::invalid_argument("abelianization_map: presentation has no component labels");
  PhiMap phi;
  phi.rank = p.num_components;
  for (int g = 0; g < p.num_generators; ++g) {
    Exponents e(phi.rank, 0);
    e[p.component_of[g]] = 1;
    phi.images.push_back(std::move(e));
  }
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    const Exponents e = phi.apply(p.relators[r]);
    for (auto x : e) {
      if (x != 0) {
        throw std::invalid_argument("abelianization_map: relator " + std::to_string(r + 1) + " (" +
                                    to_string(p.relators[r]) + ") has nonzero abelianized image");
      }
    }
  }
  return phi;
}

}  // namespace twistalex
