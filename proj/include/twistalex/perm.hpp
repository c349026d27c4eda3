#pragma once

#include "twistalex/fpgroup.hpp"
#include "twistalex/laurent.hpp"

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace twistalex {

inline constexpr int kMaxDegree = 32;

// Bijection of {0..n-1}. Composition is right-to-left: (a * b)(i) = a(b(i)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int n);  // identity
  static Permutation from_images(const std::vector<int>& images);
  // Product of disjoint cycles, 0-based, e.g. "(0 1)(2 3 4)"; "()" is the identity.
  static Permutation parse_cycles(const std::string& text, int n);

  int degree() const { return n_; }
  int operator()(int i) const { return img_[i]; }
  std::vector<int> images() const;

  Permutation operator*(const Permutation& o) const;
  Permutation inverse() const;
  bool is_identity() const;
  // Sorted cycle lengths, fixed points included.
  std::vector<int> cycle_type() const;
  std::string cycles_string() const;

  bool operator==(const Permutation& o) const;
  bool operator<(const Permutation& o) const;  // lexicographic on image arrays

 private:
  std::uint8_t n_ = 0;
  std::array<std::uint8_t, kMaxDegree> img_{};
};

// Every permutation of degree k in lexicographic order.
std::vector<Permutation> all_permutations(int k);

// A homomorphism from the presented group to S_k, given on generators.
struct Rep {
  int k = 1;
  std::vector<Permutation> images;

  bool operator==(const Rep&) const = default;
  bool operator<(const Rep& o) const { return images < o.images; }
};

Rep trivial_rep(int num_generators, int k);
// alpha(w1 w2) = alpha(w1) * alpha(w2).
Permutation evaluate(const Rep& r, const FreeWord& w);
bool satisfies(const Rep& r, const GroupPresentation& p);
Rep conjugate(const Rep& r, const Permutation& s);  // s a s^-1 on every image
std::string to_string(const Rep& r);

struct EnumerateOptions {
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// All homomorphisms p -> S_k, each exactly once, sorted. Throws ResourceLimit
// when the deadline passes.
std::vector<Rep> enumerate_homs(const GroupPresentation& p, int k, const EnumerateOptions& opts = {});

// Lexicographically smallest simultaneous conjugate.
Rep canonical_form(const Rep& r);

struct RepClass {
  Rep representative;
  std::size_t orbit_size = 0;
  bool abelian = true;
  std::size_t centralizer_order = 0;
};

// Classes sorted by representative; orbit sizes count members of `reps`.
std::vector<RepClass> conjugacy_classes(const std::vector<Rep>& reps);

// Entry (s(i), i) is 1.
PolyMatrix permutation_matrix(const Permutation& s, Ring ring, int num_vars);

// Closure of the generated subgroup, sorted; the identity comes first.
std::vector<Permutation> generate_group(const std::vector<Permutation>& gens, int degree,
                                        std::size_t bound = 5040);

// Left-multiplication action of the image group on its own sorted element list.
Rep regular_rep_from_image(const Rep& r, std::size_t bound = 24);

}  // namespace twistalex
