#pragma once

#include "sympconf/configspec.hpp"
#include "sympconf/enumerate.hpp"
#include "sympconf/nearness.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sympconf {

struct Violation {
  std::size_t component = 0;
  std::string reason;
};

struct AdmissibilityReport {
  bool pass = true;
  std::vector<Violation> failures;     // reflection would leave Omega(D)
  std::vector<Violation> diagnostics;  // necessary conditions for blowing down to CP^2
};

// r, s, t are 0-based and distinct.
AdmissibilityReport checkReflectionAdmissible(const Assignment& a, std::size_t r, std::size_t s, std::size_t t);
// a >= b_i + b_j (a >= 2) and 2a >= any five b's (a >= 3).
std::vector<std::string> blowdownNecessaryViolations(const ClassVector& v);

enum class CremonaCase { Case1, Case2, Case3, NotApplicable };
const char* cremonaCaseName(CremonaCase c);

struct CaseResult {
  CremonaCase kase = CremonaCase::NotApplicable;
  std::vector<std::string> assumptions;  // geometric hypotheses, not verified
};

CaseResult classifyCase(const NearnessForest& forest, std::size_t r, std::size_t s, std::size_t t);

struct TransformReport {
  Assignment input;
  TwoClass gamma;
  CremonaCase kase = CremonaCase::NotApplicable;
  std::vector<std::string> assumptions;
  std::vector<Violation> diagnostics;
  Assignment reflected;  // before relabeling
  Assignment output;     // after normalizeOrder (equals reflected when ordering fails in unsafe mode)
  Permutation relabel;
  std::optional<CombinatorialType> type;
  std::optional<BlowdownReport> blowdown, blowdownPrimed;
  bool virtualExpression = false;  // false for unsafe reflections outside the three cases
  bool definitionPreserved = false;
  std::vector<std::string> notes;
};

TransformReport applyCremona(const Assignment& a, const ConfigSpec& spec, std::size_t r, std::size_t s, std::size_t t,
                             bool unsafe = false);

// Appends `extra` fresh classes with zero entries in every component.
struct Extension {
  Assignment assignment;
  ConfigSpec spec;
  std::vector<std::string> assumptions;
};
Extension extendAmbient(const Assignment& a, const ConfigSpec& spec, std::size_t extra = 1);

}  // namespace sympconf
