#pragma once

// Single-field edits of a certificate text and the check each must trip.

#include "fullmod/construction.hpp"

#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace fullmod::testing {

struct Mutation {
  std::string name;
  std::function<std::string(const std::string&)> apply;
  std::vector<std::string> labels;  ///< verification must fail at one of these
};

/// Replaces line `index` (0-based, after the header) of `section`.
inline std::string replace_line(const std::string& text, const std::string& section, size_t index,
                                const std::string& line) {
  std::istringstream in(text);
  std::string cur, out, l;
  size_t pos = 0;
  bool replaced = false;
  while (std::getline(in, l)) {
    if (!l.empty() && l[0] == '[') {
      cur = l;
      pos = 0;
      out += l + "\n";
      continue;
    }
    if (cur == "[" + section + "]" && pos++ == index) {
      replaced = true;
      if (line != "<drop>") out += line + "\n";
      continue;
    }
    out += l + "\n";
  }
  if (!replaced) throw std::runtime_error("mutation target missing: " + section);
  return out;
}

inline std::string edit(const std::string& section, size_t index, const std::string& line, const std::string& text) {
  return replace_line(text, section, index, line);
}

/// Mutations of the direct-mode certificate over x^3 - 2 with eta = theta - 1,
/// primes (2, 3), coset orders (4, 3).
inline std::vector<Mutation> standard_mutations() {
  auto at = [](std::string section, size_t i, std::string line) {
    return [=](const std::string& t) { return edit(section, i, line, t); };
  };
  return {
      {"l_2 := 6", at("coset-orders", 1, "6"), {"(c)"}},
      {"l_1 := 5", at("coset-orders", 0, "5"), {"coset-orders"}},
      {"l_1 := 1", at("coset-orders", 0, "1"), {"(c)"}},
      {"prime 3 -> 5", at("primes", 1, "5"), {"coset-orders"}},
      {"prime 2 -> 4", at("primes", 0, "4"), {"primes"}},
      {"prime 2 -> 1", at("primes", 0, "1"), {"primes", "(a)"}},
      {"duplicate prime", at("primes", 1, "2"), {"primes"}},
      {"dropped prime", at("primes", 1, "<drop>"), {"structure"}},
      {"module 6 -> 5", at("module", 1, "1,0,0;0,1,0;0,0,5"), {"module", "membership"}},
      {"module denominator", at("module", 0, "den=2"), {"module"}},
      {"coefficient ring entry", at("coeff-ring", 1, "1,0,0;0,3,0;0,0,6"), {"coeff-ring"}},
      {"a_{1} := 5", at("exponents", 1, "S={1}: 5"), {"exponents"}},
      {"a_{1,2} := 13", at("exponents", 3, "S={1,2}: 13"), {"exponents"}},
      {"a_{} := 0", at("exponents", 0, "S={}: 0"), {"exponents"}},
      {"epsilon := theta", at("epsilon", 0, "0,1,0"), {"eps-unit"}},
      {"epsilon := eta^2", at("epsilon", 0, "1,-2,1"), {"epsilon-derivation"}},
      {"eta := eta^2", at("eta", 0, "1,-2,1"), {"epsilon-derivation"}},
      {"mode := faithful", at("mode", 0, "faithful"), {"faithful-sequence", "epsilon-derivation"}},
      {"unit line", at("units", 1, "S={1}: -7,-2,7"), {"units"}},
      {"field := x^3 - 3", at("field", 0, "-3,0,0,1"), {"eps-unit"}},
  };
}

struct MutationOutcome {
  bool rejected = false;
  bool correct_label = false;
  std::string failed_labels;
};

inline MutationOutcome run_mutation(const Mutation& m, const std::string& text) {
  MutationOutcome out;
  std::string mutated = m.apply(text);
  Verdict v;
  try {
    v = verify_certificate(parse_certificate(mutated));
  } catch (const std::exception&) {
    v.checks.push_back({"structure", false, "unparsable"});
  }
  out.rejected = !v.passed();
  for (const auto& c : v.checks)
    if (!c.passed) out.failed_labels += (out.failed_labels.empty() ? "" : " ") + c.label;
  for (const auto& l : m.labels) out.correct_label = out.correct_label || v.failed(l);
  return out;
}

}  // namespace fullmod::testing
