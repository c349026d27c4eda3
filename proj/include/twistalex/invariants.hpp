#pragma once

#include "twistalex/fpgroup.hpp"
#include "twistalex/knot_codec.hpp"
#include "twistalex/laurent.hpp"
#include "twistalex/perm.hpp"
#include "twistalex/twisted.hpp"

#include <chrono>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace twistalex {

struct ComputeOptions {
  unsigned threads = 1;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  int max_k = 6;
  std::size_t max_group_order = 24;
};

struct ClassResult {
  RepClass rep_class;
  TwistedResult result;
};

struct InvariantReport {
  std::string name;
  int k = 1;
  Ring ring = Ring::integers();
  std::size_t num_homs = 0;
  std::vector<ClassResult> classes;  // sorted by canonical representative
  // Product of the per-class orders; unset if some order is unavailable.
  std::optional<LaurentPoly> product;
  std::int64_t degree = 0;
  std::optional<bool> monic;  // over Z only
  double elapsed_seconds = 0;
};

InvariantReport delta_k(const GroupPresentation& p, int k, Ring ring, const ComputeOptions& opts = {},
                        const std::string& name = "");

// Both extreme coefficients are +-1; zero is not monic.
bool is_monic(const LaurentPoly& f);

struct Verdict {
  enum class Kind {
    TrivialUpToK,
    NontrivialAtK,
    FiberedConsistent,
    NotFibered,
    MutantsDistinguishedAtK,
    MutantsEqualUpToK,
    Withheld,
  };
  Kind kind = Kind::Withheld;
  int k = 0;
  std::string witness;  // class and polynomial that decided the verdict
};

std::string to_string(Verdict::Kind kind);

// Delta^k over Z for k = 1..k_max; any non-monic or zero product means not fibered.
Verdict monicness_verdict(const GroupPresentation& p, int k_max, const ComputeOptions& opts = {});

// Smallest k with Delta^k != 1, else trivial up to k_max. Uses Z; falls back
// to F_fallback_p when the Z route fails.
Verdict triviality_search(const GroupPresentation& p, int k_max, const ComputeOptions& opts = {},
                          std::uint32_t fallback_p = 13);

struct DivisibilityReport {
  int group_order = 0;
  LaurentPoly regular_poly;  // twisted polynomial of the regular representation
  LaurentPoly full_product;  // Delta^{|G|}
  bool divides = false;
};

DivisibilityReport divisibility_check(const GroupPresentation& p, const Rep& alpha, Ring ring,
                                      const ComputeOptions& opts = {});

struct MutantComparison {
  InvariantReport first;
  InvariantReport second;
  Verdict verdict;
};

MutantComparison mutant_compare(const GroupPresentation& p1, const GroupPresentation& p2, int k, Ring ring,
                                bool allow_mirror = true, const ComputeOptions& opts = {},
                                const std::string& name1 = "", const std::string& name2 = "");

// Delta^1 over Z agrees with the recorded classical polynomial up to units and t <-> t^-1.
bool validate_fixture(const KnotRecord& record);

// Head: coefficients of t^0..t^5 of the canonical product; tail: the top two terms.
std::string head_terms(const LaurentPoly& f, int count = 6);
std::string tail_terms(const LaurentPoly& f, int count = 2);

// One row of a reference table: "knot,k,num_classes,degree,head,tail" with
// head and tail in the text form of head_terms / tail_terms.
struct GoldenRow {
  std::string knot;
  int k = 0;
  std::size_t num_classes = 0;
  std::int64_t degree = 0;
  std::string head, tail;
};

// Skips the header line, blank lines and '#' comments.
std::vector<GoldenRow> parse_golden_csv(const std::string& text);
std::vector<GoldenRow> load_golden_csv(const std::string& path);
// Head and tail of the product (or of its mirror, if allowed) equal the row's text.
bool golden_terms_match(const LaurentPoly& product, const GoldenRow& row, bool allow_mirror = true);
// Names of the mismatching fields: num_classes, degree, terms. Empty on a match.
std::vector<std::string> golden_mismatches(const InvariantReport& r, const GoldenRow& row);

nlohmann::json to_json(const InvariantReport& r, const std::vector<Verdict>& verdicts = {});
std::string csv_header();
std::string to_csv_row(const InvariantReport& r);

}  // namespace twistalex
