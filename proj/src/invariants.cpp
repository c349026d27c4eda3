#include "twistalex/invariants.hpp"

#include "twistalex/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace twistalex {

namespace {

void check_deadline(const ComputeOptions& opts, const char* where) {
  if (opts.deadline && std::chrono::steady_clock::now() > *opts.deadline) {
    throw ResourceLimit(std::string(where) + ": deadline exceeded");
  }
}

bool is_one(const LaurentPoly& f) { return canonical(f) == LaurentPoly::constant(f.ring(), f.num_vars(), 1); }

std::string describe(const ClassResult& c) {
  std::ostringstream os;
  os << "class " << to_string(c.rep_class.representative) << ": "
     << (c.result.order ? c.result.order->to_string() : std::string("undefined"));
  return os.str();
}

}  // namespace

InvariantReport delta_k(const GroupPresentation& p, int k, Ring ring, const ComputeOptions& opts,
                        const std::string& name) {
  if (k < 1) throw std::invalid_argument("delta_k: k must be positive");
  if (k > opts.max_k) {
    throw ResourceLimit("delta_k: k = " + std::to_string(k) + " exceeds the configured maximum " +
                        std::to_string(opts.max_k));
  }
  const auto start = std::chrono::steady_clock::now();
  InvariantReport rep;
  rep.name = name;
  rep.k = k;
  rep.ring = ring;
  const PhiMap phi = abelianization_map(p);

  EnumerateOptions eo;
  eo.deadline = opts.deadline;
  const std::vector<Rep> homs = enumerate_homs(p, k, eo);
  rep.num_homs = homs.size();
  check_deadline(opts, "delta_k");
  const std::vector<RepClass> classes = conjugacy_classes(homs);

  rep.classes.resize(classes.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= classes.size()) return;
      try {
        check_deadline(opts, "delta_k");
        rep.classes[i].rep_class = classes[i];
        rep.classes[i].result = twisted_alexander(p, classes[i].representative, phi, ring);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(classes.size());
        return;
      }
    }
  };
  const unsigned nthreads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(classes.size())));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  LaurentPoly prod = LaurentPoly::constant(ring, phi.rank, 1);
  bool complete = true;
  for (const auto& c : rep.classes) {
    if (!c.result.order) {
      complete = false;
      break;
    }
    prod = prod * *c.result.order;
  }
  if (complete) {
    rep.product = canonical(prod);
    if (phi.rank == 1) rep.degree = rep.product->degree_span();
    if (!ring.is_field()) rep.monic = is_monic(*rep.product);
  }
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

bool is_monic(const LaurentPoly& f) {
  if (f.is_zero()) return false;
  auto unit = [](const Integer& c) { return c == 1 || c == -1; };
  const LaurentPoly g = canonical(f);
  return unit(g.terms().begin()->second) && unit(g.terms().rbegin()->second);
}

std::string to_string(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::TrivialUpToK: return "trivial-up-to-k";
    case Verdict::Kind::NontrivialAtK: return "nontrivial-at-k";
    case Verdict::Kind::FiberedConsistent: return "fibered-consistent";
    case Verdict::Kind::NotFibered: return "not-fibered";
    case Verdict::Kind::MutantsDistinguishedAtK: return "mutants-distinguished-at-k";
    case Verdict::Kind::MutantsEqualUpToK: return "mutants-equal-up-to-k";
    case Verdict::Kind::Withheld: return "withheld";
  }
  return "unknown";
}

Verdict monicness_verdict(const GroupPresentation& p, int k_max, const ComputeOptions& opts) {
  Verdict v;
  for (int k = 1; k <= k_max; ++k) {
    InvariantReport r;
    try {
      r = delta_k(p, k, Ring::integers(), opts);
    } catch (const ResourceLimit&) {
      throw;
    } catch (const std::runtime_error& e) {
      v.kind = Verdict::Kind::Withheld;
      v.k = k;
      v.witness = e.what();
      return v;
    }
    for (const auto& c : r.classes) {
      if (!c.result.order || !is_monic(*c.result.order)) {
        v.kind = Verdict::Kind::NotFibered;
        v.k = k;
        v.witness = describe(c);
        return v;
      }
    }
  }
  v.kind = Verdict::Kind::FiberedConsistent;
  v.k = k_max;
  v.witness = "every Delta^k over Z is monic for k <= " + std::to_string(k_max) +
              "; fiberedness follows only for genus one knots";
  return v;
}

Verdict triviality_search(const GroupPresentation& p, int k_max, const ComputeOptions& opts,
                          std::uint32_t fallback_p) {
  Verdict v;
  for (int k = 1; k <= k_max; ++k) {
    InvariantReport r;
    std::string suffix;
    try {
      r = delta_k(p, k, Ring::integers(), opts);
    } catch (const ResourceLimit&) {
      throw;
    } catch (const std::runtime_error&) {
      r = delta_k(p, k, Ring::prime_field(fallback_p), opts);
      suffix = " (mod " + std::to_string(fallback_p) + ")";
    }
    if (!r.product || !is_one(*r.product)) {
      v.kind = Verdict::Kind::NontrivialAtK;
      v.k = k;
      for (const auto& c : r.classes) {
        if (!c.result.order || !is_one(*c.result.order)) {
          v.witness = describe(c) + suffix;
          break;
        }
      }
      return v;
    }
  }
  v.kind = Verdict::Kind::TrivialUpToK;
  v.k = k_max;
  v.witness = "Delta^k = 1 for k <= " + std::to_string(k_max);
  return v;
}

DivisibilityReport divisibility_check(const GroupPresentation& p, const Rep& alpha, Ring ring,
                                      const ComputeOptions& opts) {
  DivisibilityReport out;
  const Rep regular = regular_rep_from_image(alpha, opts.max_group_order);
  out.group_order = regular.k;
  const TwistedResult tr = twisted_alexander(p, regular, abelianization_map(p), ring);
  if (!tr.order) throw std::runtime_error("divisibility_check: twisted polynomial unavailable");
  out.regular_poly = *tr.order;
  ComputeOptions o = opts;
  o.max_k = std::max(o.max_k, regular.k);
  const InvariantReport full = delta_k(p, regular.k, ring, o);
  if (!full.product) throw std::runtime_error("divisibility_check: Delta^k unavailable");
  out.full_product = *full.product;
  if (out.regular_poly.is_zero()) {
    out.divides = out.full_product.is_zero();
  } else {
    out.divides = divide_exact(out.full_product, out.regular_poly).has_value();
  }
  return out;
}

MutantComparison mutant_compare(const GroupPresentation& p1, const GroupPresentation& p2, int k, Ring ring,
                                bool allow_mirror, const ComputeOptions& opts, const std::string& name1,
                                const std::string& name2) {
  MutantComparison out;
  out.first = delta_k(p1, k, ring, opts, name1);
  out.second = delta_k(p2, k, ring, opts, name2);
  out.verdict.k = k;
  if (!out.first.product || !out.second.product) {
    out.verdict.kind = Verdict::Kind::Withheld;
    out.verdict.witness = "a product is unavailable";
    return out;
  }
  const LaurentPoly& a = *out.first.product;
  const LaurentPoly& b = *out.second.product;
  const bool same = allow_mirror ? equal_up_to_units_and_mirror(a, b) : equal_up_to_units(a, b);
  out.verdict.kind = same ? Verdict::Kind::MutantsEqualUpToK : Verdict::Kind::MutantsDistinguishedAtK;
  std::ostringstream os;
  os << "#R_" << k << " = " << out.first.classes.size() << " vs " << out.second.classes.size() << "; degree "
     << out.first.degree << " vs " << out.second.degree;
  out.verdict.witness = os.str();
  return out;
}

bool validate_fixture(const KnotRecord& record) {
  if (!record.alexander_poly) return true;
  const GroupPresentation p = record.presentation();
  const TwistedResult r = twisted_alexander(p, trivial_rep(p.num_generators, 1), abelianization_map(p),
                                            Ring::integers());
  const LaurentPoly expected = LaurentPoly::parse(*record.alexander_poly, Ring::integers(), 1);
  return r.order && equal_up_to_units_and_mirror(*r.order, expected);
}

std::string head_terms(const LaurentPoly& f, int count) {
  const LaurentPoly g = canonical(f);
  LaurentPoly h(g.ring(), g.num_vars());
  for (const auto& [e, c] : g.terms()) {
    if (e[0] < count) h.add_term(e, c);
  }
  return h.to_string();
}

std::string tail_terms(const LaurentPoly& f, int count) {
  const LaurentPoly g = canonical(f);
  LaurentPoly h(g.ring(), g.num_vars());
  int taken = 0;
  for (auto it = g.terms().rbegin(); it != g.terms().rend() && taken < count; ++it, ++taken) {
    h.add_term(it->first, it->second);
  }
  return h.to_string();
}

nlohmann::json to_json(const InvariantReport& r, const std::vector<Verdict>& verdicts) {
  nlohmann::json j;
  j["name"] = r.name;
  j["k"] = r.k;
  j["p"] = r.ring.is_field() ? r.ring.p : 0;
  j["ring"] = r.ring.name();
  j["num_homs"] = r.num_homs;
  j["classes"] = nlohmann::json::array();
  for (const auto& c : r.classes) {
    nlohmann::json cj;
    cj["rep"] = to_string(c.rep_class.representative);
    cj["orbit"] = c.rep_class.orbit_size;
    cj["abelian"] = c.rep_class.abelian;
    cj["poly"] = c.result.order ? nlohmann::json(c.result.order->to_string()) : nlohmann::json(nullptr);
    if (c.result.wada) {
      cj["wada"] = {{"numerator", c.result.wada->numerator.to_string()},
                    {"denominator", c.result.wada->denominator.to_string()},
                    {"column", c.result.wada->column + 1}};
    }
    j["classes"].push_back(cj);
  }
  j["product"] = r.product ? nlohmann::json(r.product->to_string()) : nlohmann::json(nullptr);
  j["degree"] = r.degree;
  j["monic"] = r.monic ? nlohmann::json(*r.monic) : nlohmann::json(nullptr);
  j["verdicts"] = nlohmann::json::array();
  for (const auto& v : verdicts) j["verdicts"].push_back({{"kind", to_string(v.kind)}, {"k", v.k}, {"witness", v.witness}});
  return j;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::vector<GoldenRow> parse_golden_csv(const std::string& text) {
  std::vector<GoldenRow> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    const auto f = split_csv(line);
    if (f.size() != 6) throw std::invalid_argument("golden table: malformed row '" + line + "'");
    try {
      rows.push_back({f[0], std::stoi(f[1]), std::stoul(f[2]), std::stoll(f[3]), f[4], f[5]});
    } catch (const std::logic_error&) {
      throw std::invalid_argument("golden table: malformed number in '" + line + "'");
    }
  }
  return rows;
}

std::vector<GoldenRow> load_golden_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open golden table " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_golden_csv(text.str());
}

bool golden_terms_match(const LaurentPoly& product, const GoldenRow& row, bool allow_mirror) {
  const Ring ring = product.ring();
  const LaurentPoly head = LaurentPoly::parse(row.head, ring, 1);
  const LaurentPoly tail = LaurentPoly::parse(row.tail, ring, 1);
  std::vector<LaurentPoly> candidates{canonical(product)};
  if (allow_mirror) candidates.push_back(canonical(product.inverted()));
  for (const auto& f : candidates) {
    if (LaurentPoly::parse(head_terms(f), ring, 1) == head && LaurentPoly::parse(tail_terms(f), ring, 1) == tail) {
      return true;
    }
  }
  return false;
}

std::vector<std::string> golden_mismatches(const InvariantReport& r, const GoldenRow& row) {
  std::vector<std::string> bad;
  if (r.classes.size() != row.num_classes) bad.push_back("num_classes");
  if (r.degree != row.degree) bad.push_back("degree");
  if (!r.product || !golden_terms_match(*r.product, row)) bad.push_back("terms");
  return bad;
}

std::string csv_header() { return "knot,k,num_classes,degree,head,tail"; }

std::string to_csv_row(const InvariantReport& r) {
  std::ostringstream os;
  os << r.name << ',' << r.k << ',' << r.classes.size() << ',' << r.degree << ',';
  if (r.product) {
    os << '"' << head_terms(*r.product) << "\",\"" << tail_terms(*r.product) << '"';
  } else {
    os << ",";
  }
  return os.str();
}

}  // namespace twistalex
