#include "twistalex/covers.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace twistalex {

CoverData build_cover(const GroupPresentation& p, const Rep& alpha, std::size_t bound) {
  p.validate();
  if (!satisfies(alpha, p)) throw std::invalid_argument("build_cover: alpha is not a homomorphism");
  CoverData c;
  c.base = p;
  c.alpha = alpha;
  c.group = generate_group(alpha.images, alpha.k, bound);
  const int n = static_cast<int>(c.group.size());
  const int g = p.num_generators;
  auto index_of = [&](const Permutation& x) {
    return static_cast<int>(std::lower_bound(c.group.begin(), c.group.end(), x) - c.group.begin());
  };
  c.coset_table.assign(n, std::vector<int>(g));
  for (int a = 0; a < n; ++a) {
    for (int i = 0; i < g; ++i) c.coset_table[a][i] = index_of(c.group[a] * alpha.images[i]);
  }

  // Breadth-first Schreier tree from the identity, generators in order.
  c.tree_parent.assign(n, -1);
  c.tree_gen.assign(n, -1);
  c.coset_rep.assign(n, {});
  std::vector<bool> seen(n, false);
  std::vector<std::vector<bool>> tree_edge(n, std::vector<bool>(g, false));
  std::queue<int> q;
  seen[0] = true;
  q.push(0);
  while (!q.empty()) {
    const int a = q.front();
    q.pop();
    for (int i = 0; i < g; ++i) {
      const int b = c.coset_table[a][i];
      if (seen[b]) continue;
      seen[b] = true;
      tree_edge[a][i] = true;
      c.tree_parent[b] = a;
      c.tree_gen[b] = i;
      c.coset_rep[b] = c.coset_rep[a];
      c.coset_rep[b].push_back({i, 1});
      q.push(b);
    }
  }

  const PhiMap phi = abelianization_map(p);
  c.edge_gen.assign(n, std::vector<int>(g, -1));
  c.induced_phi.rank = phi.rank;
  int next = 0;
  for (int a = 0; a < n; ++a) {
    for (int i = 0; i < g; ++i) {
      if (tree_edge[a][i]) continue;
      c.edge_gen[a][i] = next++;
      // phi(rep(a) x_i rep(a x_i)^-1)
      const Exponents ea = phi.apply(c.coset_rep[a]);
      const Exponents eb = phi.apply(c.coset_rep[c.coset_table[a][i]]);
      Exponents e(phi.rank);
      for (int v = 0; v < phi.rank; ++v) e[v] = ea[v] + phi.images[i][v] - eb[v];
      c.induced_phi.images.push_back(std::move(e));
    }
  }

  c.cover.num_generators = next;
  c.cover.num_components = 1;
  c.cover.meridional = false;
  for (const FreeWord& r : p.relators) {
    for (int start = 0; start < n; ++start) {
      FreeWord w;
      int at = start;
      for (const Letter& l : r) {
        if (l.exp > 0) {
          if (c.edge_gen[at][l.gen] >= 0) w.push_back({c.edge_gen[at][l.gen], 1});
          at = c.coset_table[at][l.gen];
        } else {
          const int from = index_of(c.group[at] * alpha.images[l.gen].inverse());
          if (c.edge_gen[from][l.gen] >= 0) w.push_back({c.edge_gen[from][l.gen], -1});
          at = from;
        }
      }
      if (at != start) throw std::logic_error("build_cover: relator lift is not closed");
      c.cover.relators.push_back(free_reduce(w));
    }
  }
  c.b1 = next - static_cast<int>(abelianized_rank(c.cover.relators, next));
  std::int64_t d = 0;
  for (const auto& e : c.induced_phi.images) {
    for (auto x : e) d = std::gcd(d, x);
  }
  c.div = d;
  return c;
}

LaurentPoly cover_alexander_pushforward(const CoverData& c, Ring ring) {
  if (c.induced_phi.rank != 1) throw std::invalid_argument("cover_alexander_pushforward: needs one base variable");
  const TwistedResult r = twisted_alexander(c.cover, trivial_rep(c.cover.num_generators, 1), c.induced_phi, ring);
  return *r.order;
}

RoundTripReport verify_cover_round_trip(const GroupPresentation& p, const Rep& alpha, Ring ring, std::size_t bound) {
  RoundTripReport out;
  const Rep regular = regular_rep_from_image(alpha, bound);
  out.twisted = *twisted_alexander(p, regular, abelianization_map(p), ring).order;
  out.cover = cover_alexander_pushforward(build_cover(p, alpha, bound), ring);
  out.equal = out.twisted == out.cover;
  return out;
}

}  // namespace twistalex
