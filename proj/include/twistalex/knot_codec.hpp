#pragma once

#include "twistalex/fpgroup.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace twistalex {

// Artin braid word: letter i stands for sigma_i, -i for its inverse.
struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  bool operator==(const BraidWord&) const = default;
};

// Planar diagram code in the KnotTheory convention: each crossing lists the
// four edge labels counterclockwise starting from the incoming under-edge.
struct PDCode {
  std::vector<std::array<int, 4>> crossings;
};

// "[n:] l1 l2 ..." with signed nonzero letters.
BraidWord parse_braid(const std::string& text);
std::string to_string(const BraidWord& b);

// "X(a,b,c,d);X(...)" -- square brackets and whitespace are accepted too.
PDCode parse_pd(const std::string& text);
std::string to_string(const PDCode& pd);

// Closure-complement presentation from the Artin action, one redundant
// relator dropped.
GroupPresentation braid_to_presentation(const BraidWord& b);

// Wirtinger presentation: one generator per over-arc, one conjugation
// relator per crossing, one redundant relator dropped.
GroupPresentation pd_to_wirtinger(const PDCode& pd);

enum class EncodingType { Braid, PD };

struct KnotRecord {
  std::string name;
  EncodingType type = EncodingType::Braid;
  std::string code;
  std::optional<int> genus;
  std::optional<std::string> alexander_poly;  // text form over Z
  std::string notes;

  GroupPresentation presentation() const;
};

// Line format: "name | braid|pd | code | genus? | alexander_poly? [| notes]".
// '#' starts a comment line.
std::vector<KnotRecord> parse_fixtures(const std::string& text);
std::vector<KnotRecord> load_fixtures(const std::string& path);
const KnotRecord* find_knot(const std::vector<KnotRecord>& records, const std::string& name);

}  // namespace twistalex
