#pragma once

#include "twistalex/laurent.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace twistalex {

// One letter of a free word: generator index (0-based) and exponent +-1.
struct Letter {
  int gen = 0;
  int exp = 1;

  Letter inverse() const { return {gen, -exp}; }
  auto operator<=>(const Letter&) const = default;
};

using FreeWord = std::vector<Letter>;

FreeWord free_reduce(const FreeWord& w);
FreeWord inverse(const FreeWord& w);
FreeWord concat(const FreeWord& a, const FreeWord& b);
// "x1 x2^-1 x1" (1-based generator names); the empty word prints as "1".
std::string to_string(const FreeWord& w);
// Accepts the same format; also single letters a..z with A..Z as inverses.
FreeWord parse_word(const std::string& text);

// Finite formal sum of group elements with integer coefficients.
class GroupRingElement {
 public:
  void add(const FreeWord& w, long coeff);
  const std::map<FreeWord, long>& terms() const { return terms_; }
  bool operator==(const GroupRingElement&) const = default;

 private:
  std::map<FreeWord, long> terms_;
};

// d w / d x_gen by the Fox rules; w is freely reduced by the caller.
GroupRingElement fox_derivative(const FreeWord& w, int gen);

// Finitely presented group with meridian component labels. component_of
// may be empty for presentations that carry no link structure (covers).
struct GroupPresentation {
  int num_generators = 0;
  std::vector<FreeWord> relators;
  std::vector<int> component_of;  // generator -> component, 0-based
  int num_components = 1;
  // Every generator is a meridian of its component (braid / Wirtinger
  // presentations). Enables conjugacy-type pruning during enumeration.
  bool meridional = false;

  void validate() const;
  int deficiency() const { return num_generators - static_cast<int>(relators.size()); }
};

// Rank over Q of the relator exponent-sum matrix.
std::size_t abelianized_rank(const std::vector<FreeWord>& relators, int num_generators);

GroupPresentation drop_redundant_relation(const GroupPresentation& p);

// Homomorphism from the free group onto Z^rank, given on generators.
struct PhiMap {
  int rank = 1;
  std::vector<Exponents> images;

  Exponents apply(const FreeWord& w) const;
};

// Generator i -> e_{component_of(i)}; verifies every relator maps to zero.
PhiMap abelianization_map(const GroupPresentation& p);

}  // namespace twistalex
