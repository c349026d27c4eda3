#include "twistalex/perm.hpp"

#include "twistalex/errors.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace twistalex {

Permutation::Permutation(int n) {
  if (n < 0 || n > kMaxDegree) throw std::invalid_argument("Permutation: degree out of range");
  n_ = static_cast<std::uint8_t>(n);
  for (int i = 0; i < n; ++i) img_[i] = static_cast<std::uint8_t>(i);
}

Permutation Permutation::from_images(const std::vector<int>& images) {
  Permutation p(static_cast<int>(images.size()));
  std::vector<bool> seen(images.size(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    const int v = images[i];
    if (v < 0 || v >= static_cast<int>(images.size()) || seen[v]) {
      throw std::invalid_argument("Permutation: image list is not a bijection");
    }
    seen[v] = true;
    p.img_[i] = static_cast<std::uint8_t>(v);
  }
  return p;
}

Permutation Permutation::parse_cycles(const std::string& text, int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::vector<bool> used(n, false);
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw std::invalid_argument("parse_cycles: expected '(' in " + text);
    const auto close = text.find(')', i);
    if (close == std::string::npos) throw std::invalid_argument("parse_cycles: unterminated cycle in " + text);
    std::string inner = text.substr(i + 1, close - i - 1);
    std::replace(inner.begin(), inner.end(), ',', ' ');
    std::istringstream is(inner);
    std::vector<int> cyc;
    int v;
    while (is >> v) {
      if (v < 0 || v >= n || used[v]) throw std::invalid_argument("parse_cycles: bad point in " + text);
      used[v] = true;
      cyc.push_back(v);
    }
    if (!is.eof()) throw std::invalid_argument("parse_cycles: malformed cycle in " + text);
    for (std::size_t c = 0; c < cyc.size(); ++c) img[cyc[c]] = cyc[(c + 1) % cyc.size()];
    i = close + 1;
  }
  return from_images(img);
}

std::vector<int> Permutation::images() const { return std::vector<int>(img_.begin(), img_.begin() + n_); }

Permutation Permutation::operator*(const Permutation& o) const {
  Permutation r;
  r.n_ = n_;
  for (int i = 0; i < n_; ++i) r.img_[i] = img_[o.img_[i]];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.n_ = n_;
  for (int i = 0; i < n_; ++i) r.img_[img_[i]] = static_cast<std::uint8_t>(i);
  return r;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < n_; ++i) {
    if (img_[i] != i) return false;
  }
  return true;
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<int> t;
  std::array<bool, kMaxDegree> seen{};
  for (int i = 0; i < n_; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = img_[j]) seen[j] = true, ++len;
    t.push_back(len);
  }
  std::sort(t.begin(), t.end());
  return t;
}

std::string Permutation::cycles_string() const {
  std::ostringstream os;
  std::array<bool, kMaxDegree> seen{};
  for (int i = 0; i < n_; ++i) {
    if (seen[i] || img_[i] == i) continue;
    os << '(';
    for (int j = i; !seen[j]; j = img_[j]) {
      if (j != i) os << ' ';
      os << j;
      seen[j] = true;
    }
    os << ')';
  }
  const std::string s = os.str();
  return s.empty() ? "()" : s;
}

bool Permutation::operator==(const Permutation& o) const {
  return n_ == o.n_ && std::equal(img_.begin(), img_.begin() + n_, o.img_.begin());
}

bool Permutation::operator<(const Permutation& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  return std::lexicographical_compare(img_.begin(), img_.begin() + n_, o.img_.begin(), o.img_.begin() + n_);
}

std::vector<Permutation> all_permutations(int k) {
  std::vector<int> img(k);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_images(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

Rep trivial_rep(int num_generators, int k) { return Rep{k, std::vector<Permutation>(num_generators, Permutation(k))}; }

Permutation evaluate(const Rep& r, const FreeWord& w) {
  Permutation acc(r.k);
  for (const Letter& l : w) acc = acc * (l.exp > 0 ? r.images.at(l.gen) : r.images.at(l.gen).inverse());
  return acc;
}

bool satisfies(const Rep& r, const GroupPresentation& p) {
  if (static_cast<int>(r.images.size()) != p.num_generators) return false;
  for (const auto& rel : p.relators) {
    if (!evaluate(r, rel).is_identity()) return false;
  }
  return true;
}

Rep conjugate(const Rep& r, const Permutation& s) {
  Rep out{r.k, {}};
  const Permutation si = s.inverse();
  for (const auto& a : r.images) out.images.push_back(s * a * si);
  return out;
}

std::string to_string(const Rep& r) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < r.images.size(); ++i) {
    if (i) os << ", ";
    os << r.images[i].cycles_string();
  }
  os << ']';
  return os.str();
}

namespace {

struct Step {
  int gen = 0;
  int relator = -1;  // >= 0: value derived from this relator
  std::size_t pos = 0;
  int same_as = -1;  // previously placed generator on the same component
  std::vector<int> checks;
};

// Generators that a single relator pins down once everything else is known.
std::vector<int> closure(const GroupPresentation& p, std::vector<bool> known, std::vector<Step>* derived_steps) {
  std::vector<int> added;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
      int unknown = -1, count = 0;
      std::size_t pos = 0;
      bool several = false;
      for (std::size_t i = 0; i < p.relators[r].size(); ++i) {
        const int g = p.relators[r][i].gen;
        if (known[g]) continue;
        if (unknown >= 0 && g != unknown) {
          several = true;
          break;
        }
        unknown = g;
        pos = i;
        ++count;
      }
      if (several || unknown < 0 || count != 1) continue;
      known[unknown] = true;
      added.push_back(unknown);
      if (derived_steps) {
        Step s;
        s.gen = unknown;
        s.relator = static_cast<int>(r);
        s.pos = pos;
        derived_steps->push_back(s);
      }
      changed = true;
    }
  }
  return added;
}

std::vector<Step> make_plan(const GroupPresentation& p) {
  const int g = p.num_generators;
  std::vector<int> coverage(g, 0);
  for (const auto& r : p.relators) {
    std::set<int> seen;
    for (const Letter& l : r) seen.insert(l.gen);
    for (int x : seen) ++coverage[x];
  }
  std::vector<bool> known(g, false);
  std::vector<Step> plan;
  int placed = 0;
  while (placed < g) {
    // Choose the generator whose assignment lets the most others be derived;
    // ties go to higher relator coverage, then lower index.
    int best = -1;
    std::size_t best_gain = 0;
    for (int c = 0; c < g; ++c) {
      if (known[c]) continue;
      std::vector<bool> trial = known;
      trial[c] = true;
      const std::size_t gain = closure(p, trial, nullptr).size();
      if (best < 0 || gain > best_gain || (gain == best_gain && coverage[c] > coverage[best])) {
        best = c;
        best_gain = gain;
      }
    }
    Step choose;
    choose.gen = best;
    plan.push_back(choose);
    known[best] = true;
    ++placed;
    std::vector<Step> derived;
    closure(p, known, &derived);
    for (auto& s : derived) {
      known[s.gen] = true;
      ++placed;
      plan.push_back(s);
    }
  }
  // Checks: each relator not used for a derivation is tested at the first
  // step after which all of its generators are known.
  std::set<int> used;
  for (const auto& s : plan) {
    if (s.relator >= 0) used.insert(s.relator);
  }
  std::vector<int> step_of(g, -1);
  for (std::size_t i = 0; i < plan.size(); ++i) step_of[plan[i].gen] = static_cast<int>(i);
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    if (used.count(static_cast<int>(r)) || p.relators[r].empty()) continue;
    int last = 0;
    for (const Letter& l : p.relators[r]) last = std::max(last, step_of[l.gen]);
    plan[last].checks.push_back(static_cast<int>(r));
  }
  if (p.meridional && !p.component_of.empty()) {
    std::map<int, int> first_on_component;
    for (auto& s : plan) {
      const int c = p.component_of[s.gen];
      if (auto it = first_on_component.find(c); it != first_on_component.end()) {
        s.same_as = it->second;
      } else {
        first_on_component[c] = s.gen;
      }
    }
  }
  return plan;
}

Permutation eval_range(const FreeWord& w, std::size_t from, std::size_t to, const std::vector<Permutation>& assign,
                       int k) {
  Permutation acc(k);
  for (std::size_t i = from; i < to; ++i) {
    const Letter& l = w[i];
    acc = acc * (l.exp > 0 ? assign[l.gen] : assign[l.gen].inverse());
  }
  return acc;
}

}  // namespace

std::vector<Rep> enumerate_homs(const GroupPresentation& p, int k, const EnumerateOptions& opts) {
  p.validate();
  if (k < 1 || k > kMaxDegree) throw std::invalid_argument("enumerate_homs: k out of range");
  const std::vector<Step> plan = make_plan(p);
  const std::vector<Permutation> perms = all_permutations(k);
  std::map<std::vector<int>, std::vector<Permutation>> by_type;
  for (const auto& s : perms) by_type[s.cycle_type()].push_back(s);

  std::vector<Permutation> assign(p.num_generators, Permutation(k));
  std::vector<Rep> out;
  std::size_t nodes = 0;

  std::function<void(std::size_t)> dfs = [&](std::size_t depth) {
    if (depth == plan.size()) {
      out.push_back(Rep{k, assign});
      return;
    }
    if (opts.deadline && (++nodes & 4095) == 0 && std::chrono::steady_clock::now() > *opts.deadline) {
      throw ResourceLimit("enumerate_homs: deadline exceeded");
    }
    const Step& s = plan[depth];
    auto check_and_recurse = [&] {
      for (int r : s.checks) {
        if (!eval_range(p.relators[r], 0, p.relators[r].size(), assign, k).is_identity()) return;
      }
      dfs(depth + 1);
    };
    if (s.relator >= 0) {
      const FreeWord& w = p.relators[s.relator];
      const Permutation u = eval_range(w, 0, s.pos, assign, k);
      const Permutation v = eval_range(w, s.pos + 1, w.size(), assign, k);
      const Permutation vu = v * u;
      assign[s.gen] = w[s.pos].exp > 0 ? vu.inverse() : vu;
      if (s.same_as >= 0 && assign[s.gen].cycle_type() != assign[s.same_as].cycle_type()) return;
      check_and_recurse();
      return;
    }
    const std::vector<Permutation>& candidates = s.same_as >= 0 ? by_type[assign[s.same_as].cycle_type()] : perms;
    for (const auto& c : candidates) {
      assign[s.gen] = c;
      check_and_recurse();
    }
  };
  dfs(0);
  std::sort(out.begin(), out.end());
  return out;
}

Rep canonical_form(const Rep& r) {
  static thread_local std::map<int, std::vector<Permutation>> cache;
  auto& conj = cache[r.k];
  if (conj.empty()) conj = all_permutations(r.k);
  Rep best = r;
  const std::size_t g = r.images.size();
  std::vector<Permutation> cur(g);
  for (const auto& s : conj) {
    const Permutation si = s.inverse();
    // Compare image by image, abandoning as soon as the candidate is larger.
    bool smaller = false;
    std::size_t i = 0;
    for (; i < g; ++i) {
      cur[i] = s * r.images[i] * si;
      if (cur[i] < best.images[i]) {
        smaller = true;
        ++i;
        break;
      }
      if (best.images[i] < cur[i]) break;
    }
    if (!smaller) continue;
    for (; i < g; ++i) cur[i] = s * r.images[i] * si;
    best.images = cur;
  }
  return best;
}

std::vector<RepClass> conjugacy_classes(const std::vector<Rep>& reps) {
  std::map<Rep, std::size_t> counts;
  for (const auto& r : reps) ++counts[canonical_form(r)];
  std::vector<RepClass> out;
  for (const auto& [rep, n] : counts) {
    RepClass c;
    c.representative = rep;
    c.orbit_size = n;
    for (std::size_t i = 0; i < rep.images.size() && c.abelian; ++i) {
      for (std::size_t j = i + 1; j < rep.images.size(); ++j) {
        if (!(rep.images[i] * rep.images[j] == rep.images[j] * rep.images[i])) {
          c.abelian = false;
          break;
        }
      }
    }
    for (const auto& s : all_permutations(rep.k)) {
      bool commutes = true;
      for (const auto& a : rep.images) {
        if (!(s * a == a * s)) {
          commutes = false;
          break;
        }
      }
      if (commutes) ++c.centralizer_order;
    }
    out.push_back(std::move(c));
  }
  return out;
}

PolyMatrix permutation_matrix(const Permutation& s, Ring ring, int num_vars) {
  const int k = s.degree();
  PolyMatrix m(k, k, ring, num_vars);
  for (int i = 0; i < k; ++i) m.at(s(i), i) = LaurentPoly::constant(ring, num_vars, 1);
  return m;
}

std::vector<Permutation> generate_group(const std::vector<Permutation>& gens, int degree, std::size_t bound) {
  std::set<Permutation> seen{Permutation(degree)};
  std::vector<Permutation> frontier{Permutation(degree)};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& a : frontier) {
      for (const auto& g : gens) {
        const Permutation b = a * g;
        if (seen.insert(b).second) {
          if (seen.size() > bound) {
            throw ResourceLimit("generate_group: group order exceeds bound " + std::to_string(bound));
          }
          next.push_back(b);
        }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

Rep regular_rep_from_image(const Rep& r, std::size_t bound) {
  const std::vector<Permutation> group = generate_group(r.images, r.k, std::min<std::size_t>(bound, kMaxDegree));
  const int n = static_cast<int>(group.size());
  auto index_of = [&](const Permutation& x) {
    return static_cast<int>(std::lower_bound(group.begin(), group.end(), x) - group.begin());
  };
  Rep out{n, {}};
  for (const auto& a : r.images) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = index_of(a * group[i]);
    out.images.push_back(Permutation::from_images(img));
  }
  return out;
}

}  // namespace twistalex
