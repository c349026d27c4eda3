#pragma once

#include "twistalex/fpgroup.hpp"
#include "twistalex/laurent.hpp"
#include "twistalex/perm.hpp"
#include "twistalex/twisted.hpp"

#include <cstdint>
#include <vector>

namespace twistalex {

// Regular cover attached to the kernel of alpha, presented by
// Reidemeister-Schreier rewriting.
struct CoverData {
  GroupPresentation base;
  Rep alpha;
  std::vector<Permutation> group;  // image group, sorted; identity first
  // coset_table[c][i]: index of group[c] * alpha(x_i).
  std::vector<std::vector<int>> coset_table;
  // Spanning tree: parent coset and generator for every non-root coset.
  std::vector<int> tree_parent;
  std::vector<int> tree_gen;
  std::vector<FreeWord> coset_rep;
  // Cover generator index of each (coset, generator) edge; -1 on tree edges.
  std::vector<std::vector<int>> edge_gen;
  GroupPresentation cover;
  PhiMap induced_phi;
  int b1 = 0;
  std::int64_t div = 0;  // gcd of induced_phi values (one base variable)
};

CoverData build_cover(const GroupPresentation& p, const Rep& alpha, std::size_t bound = 24);

// Untwisted order of the cover with coefficients through induced_phi.
LaurentPoly cover_alexander_pushforward(const CoverData& c, Ring ring);

struct RoundTripReport {
  LaurentPoly twisted;
  LaurentPoly cover;
  bool equal = false;
};

// Twisted polynomial of the regular representation of alpha's image against
// the pushforward from the cover.
RoundTripReport verify_cover_round_trip(const GroupPresentation& p, const Rep& alpha, Ring ring, std::size_t bound = 24);

}  // namespace twistalex
