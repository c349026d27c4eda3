#pragma once

#include "twistalex/fpgroup.hpp"
#include "twistalex/laurent.hpp"
#include "twistalex/perm.hpp"

#include <optional>
#include <string>

namespace twistalex {

// Chain complex C2 -> C1 -> C0 of the presentation 2-complex with
// coefficients twisted by alpha (x) phi, in the row-vector convention:
// b2 is (g-1)k x gk with block (i, j) the image of d r_i / d x_j, and b1 is
// gk x k with block j the image of x_j minus the identity.
struct TwistedComplex {
  PolyMatrix b2;
  PolyMatrix b1;
  Ring ring = Ring::integers();
  int k = 1;
  int g = 0;
  Rep alpha;
  PhiMap phi;
};

// The image t^phi(w) P(alpha(w)) of a group element, as a k x k matrix.
PolyMatrix represent_word(const FreeWord& w, const Rep& alpha, const PhiMap& phi, Ring ring);

TwistedComplex build_complex(const GroupPresentation& p, const Rep& alpha, const PhiMap& phi, Ring ring);

// Order of the coinvariants coker(b1). With one variable over Z this is the
// product over orbits O of alpha's image of t^d - 1, d generating phi of a
// point stabilizer; otherwise it is computed from b1 directly.
LaurentPoly delta0(const TwistedComplex& c);
LaurentPoly delta0(const GroupPresentation& p, const Rep& alpha, const PhiMap& phi, Ring ring);

struct WadaPair {
  LaurentPoly numerator;    // det of b2 without block column `column`
  LaurentPoly denominator;  // det of (image of x_column) - Id
  int column = 0;
};

// Smallest column with nonzero denominator; nullopt when every one vanishes.
std::optional<WadaPair> wada_pair(const TwistedComplex& c);
// The pair for a given column (denominator may be zero).
WadaPair wada_pair_at(const TwistedComplex& c, int column);

struct TwistedResult {
  enum class Route { ModuleOrder, WadaQuotient };
  Route route = Route::ModuleOrder;
  // Order of H_1 in canonical unit form. Unset only for multivariable
  // input where the Wada quotient does not divide exactly.
  std::optional<LaurentPoly> order;
  std::optional<WadaPair> wada;
  LaurentPoly delta0;
  std::string note;
};

// One variable over F_p: order of ker(b1)/im(b2) by diagonalization.
// One variable over Z: numerator * delta0 / denominator, exact division
// asserted. Several variables: the Wada pair, plus the order when the
// division is exact.
TwistedResult twisted_alexander(const TwistedComplex& c);
TwistedResult twisted_alexander(const GroupPresentation& p, const Rep& alpha, const PhiMap& phi, Ring ring);

}  // namespace twistalex
