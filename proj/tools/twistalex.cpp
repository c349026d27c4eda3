// Command-line front end: invariant, compare, table, cover, divides.
#include "twistalex/covers.hpp"
#include "twistalex/errors.hpp"
#include "twistalex/invariants.hpp"
#include "twistalex/knot_codec.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace twistalex;

namespace {

enum Exit { kOk = 0, kFailure = 1, kUnknownInput = 2, kResource = 3, kFixtureGap = 4 };

class UnknownInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FixtureGap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string fixtures;
  std::string ring = "fp";
  unsigned p = 13;
  unsigned threads = 1;
  double timeout = 0;
  int max_k = 6;
  std::size_t max_group = 24;
  std::string format = "text";

  Ring make_ring() const {
    if (ring == "z") return Ring::integers();
    if (ring == "fp") return Ring::prime_field(p);
    throw UnknownInput("unknown ring '" + ring + "' (expected z or fp)");
  }
  ComputeOptions options() const {
    ComputeOptions o;
    o.threads = threads;
    o.max_k = max_k;
    o.max_group_order = max_group;
    if (timeout > 0) {
      o.deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(timeout));
    }
    return o;
  }
  std::string fixture_path() const {
    if (!fixtures.empty()) return fixtures;
    if (const char* env = std::getenv("TWISTALEX_FIXTURES")) return env;
    return TWISTALEX_DEFAULT_FIXTURES;
  }
  std::vector<KnotRecord> load() const {
    try {
      return load_fixtures(fixture_path());
    } catch (const std::runtime_error& e) {
      throw FixtureGap(e.what());
    }
  }
};

void add_common(CLI::App* app, Common& c, bool with_format = true) {
  app->add_option("--fixtures", c.fixtures, "Fixture file (default: $TWISTALEX_FIXTURES or the bundled table)");
  app->add_option("--ring", c.ring, "Coefficient ring: z or fp")->check(CLI::IsMember({"z", "fp"}));
  app->add_option("--p", c.p, "Prime for fp coefficients");
  app->add_option("--threads", c.threads, "Worker threads for per-class computations");
  app->add_option("--timeout", c.timeout, "Wall-clock limit in seconds (0 = none)");
  app->add_option("--max-k", c.max_k, "Largest accepted k");
  app->add_option("--max-group", c.max_group, "Largest accepted image group order for covers");
  if (with_format) app->add_option("--format", c.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
}

struct KnotSource {
  std::string knot, braid, pd;
};

std::pair<std::string, GroupPresentation> resolve(const KnotSource& s, const Common& c) {
  const int given = !s.knot.empty() + !s.braid.empty() + !s.pd.empty();
  if (given != 1) throw UnknownInput("give exactly one of --knot, --braid, --pd");
  try {
    if (!s.braid.empty()) return {"braid " + s.braid, braid_to_presentation(parse_braid(s.braid))};
    if (!s.pd.empty()) return {"pd", pd_to_wirtinger(parse_pd(s.pd))};
  } catch (const std::invalid_argument& e) {
    throw UnknownInput(e.what());
  }
  return {s.knot, [&] {
            const auto records = c.load();
            const KnotRecord* r = find_knot(records, s.knot);
            if (!r) throw UnknownInput("unknown knot '" + s.knot + "'");
            return r->presentation();
          }()};
}

std::pair<std::string, GroupPresentation> resolve_name(const std::string& name, const Common& c) {
  return resolve(KnotSource{name, "", ""}, c);
}

void print_text(std::ostream& os, const InvariantReport& r, const std::vector<Verdict>& verdicts) {
  os << "knot: " << r.name << '\n';
  os << "k: " << r.k << "  ring: " << r.ring.name() << "  homomorphisms: " << r.num_homs
     << "  classes: " << r.classes.size() << '\n';
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    const auto& c = r.classes[i];
    os << "class " << i + 1 << ": " << to_string(c.rep_class.representative) << "  orbit " << c.rep_class.orbit_size
       << (c.rep_class.abelian ? "  abelian" : "  non-abelian") << '\n';
    os << "  poly: " << (c.result.order ? c.result.order->to_string() : std::string("undefined")) << '\n';
    if (c.result.wada && !c.result.order) {
      os << "  wada: (" << c.result.wada->numerator.to_string() << ") / (" << c.result.wada->denominator.to_string()
         << ")  column " << c.result.wada->column + 1 << '\n';
    }
    if (!c.result.note.empty()) os << "  note: " << c.result.note << '\n';
  }
  os << "product: " << (r.product ? r.product->to_string() : std::string("undefined")) << '\n';
  os << "degree: " << r.degree << '\n';
  if (r.monic) os << "monic: " << (*r.monic ? "yes" : "no") << '\n';
  for (const auto& v : verdicts) os << "verdict: " << to_string(v.kind) << " (k=" << v.k << ") " << v.witness << '\n';
}

void emit(const InvariantReport& r, const std::vector<Verdict>& verdicts, const std::string& format) {
  if (format == "json") {
    std::cout << to_json(r, verdicts).dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << csv_header() << '\n' << to_csv_row(r) << '\n';
  } else {
    print_text(std::cout, r, verdicts);
  }
}

std::vector<GoldenRow> load_golden(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureGap("cannot open golden table " + path);
  try {
    return load_golden_csv(path);
  } catch (const std::invalid_argument& e) {
    throw UnknownInput(e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted Alexander invariants of links via representations into symmetric groups"};
  app.require_subcommand(1);

  Common c_inv, c_cmp, c_tab, c_cov, c_div;
  KnotSource src_inv, src_cov, src_div;
  int k_inv = 1, k_cmp = 1, k_cov = 2;
  bool check_monic = false, check_trivial = false;

  auto* inv = app.add_subcommand("invariant", "Compute Delta^k for one knot or link");
  add_common(inv, c_inv);
  inv->add_option("--knot", src_inv.knot, "Knot name in the fixture file");
  inv->add_option("--braid", src_inv.braid, "Braid word, e.g. \"1 1 1\" or \"3: 1 -2 1 -2\"");
  inv->add_option("--pd", src_inv.pd, "PD code, e.g. \"X(1,5,2,4);...\"");
  inv->add_option("--k", k_inv, "Degree of the symmetric group")->check(CLI::PositiveNumber);
  inv->add_flag("--check-monic", check_monic, "Add the monicness verdict for k' <= k (over Z)");
  inv->add_flag("--check-trivial", check_trivial, "Add the triviality verdict for k' <= k");

  std::string a_name, b_name;
  bool allow_mirror = true;
  auto* cmp = app.add_subcommand("compare", "Compare Delta^k of two knots");
  add_common(cmp, c_cmp);
  cmp->add_option("first", a_name)->required();
  cmp->add_option("second", b_name)->required();
  cmp->add_option("--k", k_cmp)->check(CLI::PositiveNumber);
  cmp->add_option("--allow-mirror", allow_mirror, "Fold t <-> t^-1 before comparing (default true)");

  std::vector<std::string> tab_knots;
  std::string golden;
  bool tab_check = false;
  auto* tab = app.add_subcommand("table", "Emit table rows (knot,k,num_classes,degree,head,tail)");
  add_common(tab, c_tab, false);
  tab->add_option("--knots", tab_knots, "name:k pairs; default is every row of the golden table");
  tab->add_option("--golden", golden, "Golden CSV")->default_val(std::string(TWISTALEX_DEFAULT_FIXTURES).substr(
      0, std::string(TWISTALEX_DEFAULT_FIXTURES).rfind('/')) + "/golden_table.csv");
  tab->add_flag("--check", tab_check, "Diff each row against the golden CSV");

  auto* cov = app.add_subcommand("cover", "Compare twisted and cover pushforward polynomials for every class");
  add_common(cov, c_cov);
  cov->add_option("--knot", src_cov.knot);
  cov->add_option("--braid", src_cov.braid);
  cov->add_option("--pd", src_cov.pd);
  cov->add_option("--k", k_cov)->check(CLI::PositiveNumber);

  std::vector<std::string> div_images;
  auto* dv = app.add_subcommand("divides", "Check that the regular-representation polynomial divides Delta^|G|");
  add_common(dv, c_div);
  dv->add_option("--knot", src_div.knot);
  dv->add_option("--braid", src_div.braid);
  dv->add_option("--pd", src_div.pd);
  dv->add_option("--images", div_images, "One cycle string per generator, e.g. \"(0 1)\" \"(0 2)\"")->required();
  int div_k = 0;
  dv->add_option("--degree", div_k, "Degree of the permutations")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (inv->parsed()) {
      auto [name, p] = resolve(src_inv, c_inv);
      const ComputeOptions opts = c_inv.options();
      const Ring ring = c_inv.make_ring();
      int stage = 0;
      try {
        const InvariantReport r = delta_k(p, k_inv, ring, opts, name);
        std::vector<Verdict> verdicts;
        ++stage;
        if (check_trivial) verdicts.push_back(triviality_search(p, k_inv, opts, c_inv.p));
        ++stage;
        if (check_monic) verdicts.push_back(monicness_verdict(p, k_inv, opts));
        emit(r, verdicts, c_inv.format);
      } catch (const ResourceLimit&) {
        // Partial report: what was requested and how far the run got.
        const char* stages[] = {"Delta^k", "triviality verdict", "monicness verdict"};
        std::cerr << "partial report: knot " << name << ", k " << k_inv << ", ring " << ring.name()
                  << ", stopped during " << stages[stage] << '\n';
        throw;
      }
      return kOk;
    }
    if (cmp->parsed()) {
      auto [n1, p1] = resolve_name(a_name, c_cmp);
      auto [n2, p2] = resolve_name(b_name, c_cmp);
      const MutantComparison m = mutant_compare(p1, p2, k_cmp, c_cmp.make_ring(), allow_mirror, c_cmp.options(), n1, n2);
      if (c_cmp.format == "json") {
        nlohmann::json j;
        j["first"] = to_json(m.first);
        j["second"] = to_json(m.second);
        j["verdict"] = {{"kind", to_string(m.verdict.kind)}, {"k", m.verdict.k}, {"witness", m.verdict.witness}};
        std::cout << j.dump(2) << '\n';
      } else {
        for (const auto* r : {&m.first, &m.second}) {
          std::cout << r->name << ": #R_" << r->k << " = " << r->classes.size() << ", degree " << r->degree << '\n';
          std::cout << "  " << (r->product ? r->product->to_string() : std::string("undefined")) << '\n';
        }
        std::cout << (m.verdict.kind == Verdict::Kind::MutantsDistinguishedAtK ? "DISTINGUISHED"
                      : m.verdict.kind == Verdict::Kind::MutantsEqualUpToK   ? "NOT DISTINGUISHED"
                                                                              : "UNDECIDED")
                  << '\n';
      }
      return kOk;
    }
    if (tab->parsed()) {
      const auto records = c_tab.load();
      std::vector<GoldenRow> gold;
      if (tab_check || tab_knots.empty()) gold = load_golden(golden);
      std::vector<std::pair<std::string, int>> wanted;
      if (tab_knots.empty()) {
        for (const auto& g : gold) wanted.push_back({g.knot, g.k});
      } else {
        for (const auto& s : tab_knots) {
          const auto colon = s.find(':');
          if (colon == std::string::npos) throw UnknownInput("--knots expects name:k, got '" + s + "'");
          wanted.push_back({s.substr(0, colon), std::stoi(s.substr(colon + 1))});
        }
      }
      std::vector<std::string> missing;
      for (const auto& [name, k] : wanted) {
        if (!find_knot(records, name)) missing.push_back(name);
      }
      if (!missing.empty()) {
        std::cerr << "fixture file lacks:";
        for (const auto& m : missing) std::cerr << ' ' << m;
        std::cerr << '\n';
        return kFixtureGap;
      }
      const Ring ring = c_tab.make_ring();
      const ComputeOptions opts = c_tab.options();
      std::cout << csv_header() << (tab_check ? ",check" : "") << '\n';
      int mismatches = 0;
      for (const auto& [name, k] : wanted) {
        const InvariantReport r = delta_k(find_knot(records, name)->presentation(), k, ring, opts, name);
        std::cout << to_csv_row(r);
        if (tab_check) {
          const GoldenRow* g = nullptr;
          for (const auto& row : gold) {
            if (row.knot == name && row.k == k) g = &row;
          }
          std::string status = "no-golden-row";
          if (g) {
            const std::vector<std::string> bad = golden_mismatches(r, *g);
            status = "match";
            if (!bad.empty()) {
              status = "MISMATCH:";
              for (const auto& b : bad) status += " " + b;
              ++mismatches;
            }
          }
          std::cout << ',' << status;
        }
        std::cout << '\n';
      }
      return mismatches ? kFailure : kOk;
    }
    if (cov->parsed()) {
      auto [name, p] = resolve(src_cov, c_cov);
      const Ring ring = c_cov.make_ring();
      const auto classes = conjugacy_classes(enumerate_homs(p, k_cov));
      bool all_equal = true;
      std::cout << "knot: " << name << "  k: " << k_cov << "  ring: " << ring.name() << '\n';
      for (std::size_t i = 0; i < classes.size(); ++i) {
        const Rep& a = classes[i].representative;
        const CoverData cd = build_cover(p, a, c_cov.max_group);
        const RoundTripReport rt = verify_cover_round_trip(p, a, ring, c_cov.max_group);
        all_equal = all_equal && rt.equal;
        std::cout << "class " << i + 1 << ": " << to_string(a) << "  |G| = " << cd.group.size() << "  b1 = " << cd.b1
                  << "  div = " << cd.div << '\n';
        std::cout << "  twisted: " << rt.twisted.to_string() << '\n';
        std::cout << "  cover:   " << rt.cover.to_string() << '\n';
        std::cout << "  " << (rt.equal ? "equal" : "DIFFERENT") << '\n';
      }
      return all_equal ? kOk : kFailure;
    }
    if (dv->parsed()) {
      auto [name, p] = resolve(src_div, c_div);
      Rep a{div_k, {}};
      for (const auto& s : div_images) a.images.push_back(Permutation::parse_cycles(s, div_k));
      if (!satisfies(a, p)) throw UnknownInput("the given images do not define a homomorphism");
      const DivisibilityReport d = divisibility_check(p, a, c_div.make_ring(), c_div.options());
      std::cout << "knot: " << name << "  |G| = " << d.group_order << '\n';
      std::cout << "regular: " << d.regular_poly.to_string() << '\n';
      std::cout << "Delta^" << d.group_order << " degree: " << d.full_product.degree_span() << '\n';
      std::cout << (d.divides ? "DIVIDES" : "DOES NOT DIVIDE") << '\n';
      return d.divides ? kOk : kFailure;
    }
  } catch (const UnknownInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUnknownInput;
  } catch (const FixtureGap& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFixtureGap;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUnknownInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
