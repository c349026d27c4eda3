#include "twistalex/knot_codec.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace twistalex {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int parse_int_token(const std::string& tok, const std::string& context) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty()) throw std::invalid_argument(context + ": malformed token '" + tok + "'");
  return v;
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

}  // namespace

BraidWord parse_braid(const std::string& text) {
  std::string body = text;
  std::optional<int> declared;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    declared = parse_int_token(trim(text.substr(0, colon)), "parse_braid");
    if (*declared < 1) throw std::invalid_argument("parse_braid: strand count must be positive");
    body = text.substr(colon + 1);
  }
  BraidWord b;
  std::istringstream is(body);
  std::string tok;
  int max_abs = 0;
  while (is >> tok) {
    const int l = parse_int_token(tok, "parse_braid");
    if (l == 0) throw std::invalid_argument("parse_braid: letter zero is not an Artin generator");
    max_abs = std::max(max_abs, std::abs(l));
    b.letters.push_back(l);
  }
  if (declared) {
    if (max_abs >= *declared) {
      throw std::invalid_argument("parse_braid: letter " + std::to_string(max_abs) + " needs more than " +
                                  std::to_string(*declared) + " strands");
    }
    b.strands = *declared;
  } else {
    b.strands = max_abs + 1;
  }
  return b;
}

std::string to_string(const BraidWord& b) {
  std::ostringstream os;
  os << b.strands << ':';
  for (int l : b.letters) os << ' ' << l;
  return os.str();
}

PDCode parse_pd(const std::string& raw) {
  PDCode pd;
  // Strip an optional "PD[...]" or "[...]" wrapper.
  std::string text = raw;
  const auto first = text.find_first_not_of(" \t\r\n");
  const auto last = text.find_last_not_of(" \t\r\n");
  if (first != std::string::npos) {
    text = text.substr(first, last - first + 1);
    if (text.rfind("PD", 0) == 0) text = text.substr(2);
    if (!text.empty() && text.front() == '[') {
      if (text.back() != ']') throw std::invalid_argument("parse_pd: unbalanced outer bracket");
      text = text.substr(1, text.size() - 2);
    }
  }
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ';' || text[i] == ',')) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != 'X' && text[i] != 'x') throw std::invalid_argument("parse_pd: expected X( at offset " + std::to_string(i));
    ++i;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size() || (text[i] != '(' && text[i] != '[')) throw std::invalid_argument("parse_pd: expected ( after X");
    const char close = text[i] == '(' ? ')' : ']';
    const auto end = text.find(close, i);
    if (end == std::string::npos) throw std::invalid_argument("parse_pd: unterminated crossing");
    std::string inner = text.substr(i + 1, end - i - 1);
    std::replace(inner.begin(), inner.end(), ',', ' ');
    std::istringstream is(inner);
    std::array<int, 4> x{};
    std::string tok;
    int n = 0;
    while (is >> tok) {
      if (n == 4) throw std::invalid_argument("parse_pd: crossing with more than four labels");
      x[n++] = parse_int_token(tok, "parse_pd");
      if (x[n - 1] <= 0) throw std::invalid_argument("parse_pd: edge labels must be positive");
    }
    if (n != 4) throw std::invalid_argument("parse_pd: crossing with fewer than four labels");
    pd.crossings.push_back(x);
    i = end + 1;
    skip();
  }
  return pd;
}

std::string to_string(const PDCode& pd) {
  std::ostringstream os;
  for (std::size_t c = 0; c < pd.crossings.size(); ++c) {
    const auto& x = pd.crossings[c];
    if (c) os << ';';
    os << "X(" << x[0] << ',' << x[1] << ',' << x[2] << ',' << x[3] << ')';
  }
  return os.str();
}

GroupPresentation braid_to_presentation(const BraidWord& b) {
  const int n = b.strands;
  if (n < 1) throw std::invalid_argument("braid_to_presentation: need at least one strand");
  for (int l : b.letters) {
    if (l == 0 || std::abs(l) >= n) throw std::invalid_argument("braid_to_presentation: letter out of range");
  }
  // img[i] = image of x_i under the composite automorphism; built as
  // f_{b1} o f_{b2} o ... by substituting the current images into each
  // elementary action.
  std::vector<FreeWord> img(n);
  for (int i = 0; i < n; ++i) img[i] = {{i, 1}};
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int l : b.letters) {
    const int j = std::abs(l) - 1;
    const FreeWord xj = img[j], xj1 = img[j + 1];
    if (l > 0) {
      // x_j -> x_j x_{j+1} x_j^-1, x_{j+1} -> x_j
      img[j] = free_reduce(concat(concat(xj, xj1), inverse(xj)));
      img[j + 1] = xj;
    } else {
      // x_j -> x_{j+1}, x_{j+1} -> x_{j+1}^-1 x_j x_{j+1}
      img[j] = xj1;
      img[j + 1] = free_reduce(concat(concat(inverse(xj1), xj), xj1));
    }
    std::swap(perm[j], perm[j + 1]);
  }
  GroupPresentation p;
  p.num_generators = n;
  p.meridional = true;
  for (int i = 0; i < n; ++i) {
    p.relators.push_back(free_reduce(concat({{i, 1}}, inverse(img[i]))));
  }
  // Components are the cycles of the underlying permutation.
  p.component_of.assign(n, -1);
  int comp = 0;
  for (int i = 0; i < n; ++i) {
    if (p.component_of[i] >= 0) continue;
    for (int j = i; p.component_of[j] < 0; j = perm[j]) p.component_of[j] = comp;
    ++comp;
  }
  p.num_components = comp;
  return drop_redundant_relation(p);
}

GroupPresentation pd_to_wirtinger(const PDCode& pd) {
  const std::size_t nc = pd.crossings.size();
  if (nc == 0) throw std::invalid_argument("pd_to_wirtinger: empty diagram");
  // Edge occurrences: label -> list of (crossing, slot).
  std::map<int, std::vector<std::pair<std::size_t, int>>> occ;
  for (std::size_t c = 0; c < nc; ++c) {
    for (int s = 0; s < 4; ++s) occ[pd.crossings[c][s]].push_back({c, s});
  }
  for (const auto& [label, where] : occ) {
    if (where.size() == 1) throw std::invalid_argument("pd_to_wirtinger: dangling edge " + std::to_string(label));
    if (where.size() != 2) {
      throw std::invalid_argument("pd_to_wirtinger: edge " + std::to_string(label) + " occurs " +
                                  std::to_string(where.size()) + " times");
    }
  }
  std::vector<int> labels;
  for (const auto& kv : occ) labels.push_back(kv.first);
  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = i;
  const std::size_t ne = labels.size();

  // Link components: under-strands continue a -> c, over-strands b <-> d.
  UnionFind comps(ne), arcs(ne);
  for (const auto& x : pd.crossings) {
    comps.unite(index[x[0]], index[x[2]]);
    comps.unite(index[x[1]], index[x[3]]);
    arcs.unite(index[x[1]], index[x[3]]);
  }
  std::map<std::size_t, std::vector<int>> comp_labels;
  for (std::size_t i = 0; i < ne; ++i) comp_labels[comps.find(i)].push_back(labels[i]);
  std::map<int, int> next_label;
  for (auto& [root, ls] : comp_labels) {
    std::sort(ls.begin(), ls.end());
    for (std::size_t i = 1; i < ls.size(); ++i) {
      if (ls[i] != ls[i - 1] + 1) throw std::invalid_argument("pd_to_wirtinger: edge labels of a component are not contiguous");
    }
    for (std::size_t i = 0; i < ls.size(); ++i) next_label[ls[i]] = ls[(i + 1) % ls.size()];
  }

  // Orientation of each over-strand. incoming[c][s]: 1 incoming, 0 outgoing,
  // -1 unknown. Under slots are fixed by convention; propagate along edges
  // (an edge enters one crossing and leaves the other) and across over pairs.
  std::vector<std::array<int, 4>> incoming(nc, {1, -1, 0, -1});
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [label, where] : occ) {
      const auto [c0, s0] = where[0];
      const auto [c1, s1] = where[1];
      if (incoming[c0][s0] >= 0 && incoming[c1][s1] < 0) incoming[c1][s1] = 1 - incoming[c0][s0], changed = true;
      if (incoming[c1][s1] >= 0 && incoming[c0][s0] < 0) incoming[c0][s0] = 1 - incoming[c1][s1], changed = true;
    }
    for (auto& in : incoming) {
      if (in[1] >= 0 && in[3] < 0) in[3] = 1 - in[1], changed = true;
      if (in[3] >= 0 && in[1] < 0) in[1] = 1 - in[3], changed = true;
    }
  }
  for (std::size_t c = 0; c < nc; ++c) {
    if (incoming[c][1] >= 0) continue;
    // Component made only of over-strands: fall back to label order.
    const auto& x = pd.crossings[c];
    const bool b_to_d = next_label[x[1]] == x[3];
    incoming[c][1] = b_to_d ? 1 : 0;
    incoming[c][3] = b_to_d ? 0 : 1;
  }

  // Generators: one per over-arc, numbered by smallest edge label.
  std::map<std::size_t, int> arc_gen;
  for (std::size_t i = 0; i < ne; ++i) arc_gen.emplace(arcs.find(i), 0);
  {
    int g = 0;
    for (auto& kv : arc_gen) kv.second = g++;
  }
  std::map<std::size_t, int> comp_id;
  for (const auto& kv : comp_labels) comp_id.emplace(kv.first, static_cast<int>(comp_id.size()));

  GroupPresentation p;
  p.num_generators = static_cast<int>(arc_gen.size());
  p.num_components = static_cast<int>(comp_id.size());
  p.meridional = true;
  p.component_of.assign(p.num_generators, 0);
  for (std::size_t i = 0; i < ne; ++i) p.component_of[arc_gen[arcs.find(i)]] = comp_id[comps.find(i)];
  auto gen_of = [&](int label) { return arc_gen[arcs.find(index[label])]; };

  for (std::size_t c = 0; c < nc; ++c) {
    const auto& x = pd.crossings[c];
    const int in = gen_of(x[0]), out = gen_of(x[2]), over = gen_of(x[1]);
    // Over-strand running d -> b makes a positive crossing.
    const bool positive = incoming[c][3] == 1;
    // positive: x_out = x_over^-1 x_in x_over; negative: x_out = x_over x_in x_over^-1.
    const int e = positive ? -1 : 1;
    FreeWord r = {{out, -1}, {over, e}, {in, 1}, {over, -e}};
    p.relators.push_back(free_reduce(r));
  }
  return drop_redundant_relation(p);
}

GroupPresentation KnotRecord::presentation() const {
  return type == EncodingType::Braid ? braid_to_presentation(parse_braid(code)) : pd_to_wirtinger(parse_pd(code));
}

std::vector<KnotRecord> parse_fixtures(const std::string& text) {
  std::vector<KnotRecord> out;
  std::set<std::string> names;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto bar = t.find('|', start);
      fields.push_back(trim(t.substr(start, bar == std::string::npos ? std::string::npos : bar - start)));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    const std::string where = "fixture line " + std::to_string(lineno);
    if (fields.size() < 3) throw std::invalid_argument(where + ": expected at least name | type | code");
    KnotRecord r;
    r.name = fields[0];
    if (r.name.empty()) throw std::invalid_argument(where + ": empty name");
    if (fields[1] == "braid") {
      r.type = EncodingType::Braid;
    } else if (fields[1] == "pd") {
      r.type = EncodingType::PD;
    } else {
      throw std::invalid_argument(where + ": unknown encoding '" + fields[1] + "'");
    }
    r.code = fields[2];
    if (fields.size() > 3 && !fields[3].empty()) r.genus = parse_int_token(fields[3], where);
    if (fields.size() > 4 && !fields[4].empty()) r.alexander_poly = fields[4];
    if (fields.size() > 5) r.notes = fields[5];
    if (!names.insert(r.name).second) throw std::invalid_argument(where + ": duplicate knot name " + r.name);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<KnotRecord> load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_fixtures(ss.str());
}

const KnotRecord* find_knot(const std::vector<KnotRecord>& records, const std::string& name) {
  for (const auto& r : records) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

}  // namespace twistalex
