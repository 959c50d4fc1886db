#pragma once

#include "sympconf/configspec.hpp"
#include "sympconf/enumerate.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace sympconf {

struct ScenarioTransform {
  std::array<std::size_t, 3> gamma{};  // 0-based r, s, t
  Assignment expected;                  // reflected vectors as printed, before relabeling
};

struct Scenario {
  std::string name;
  std::string description;
  ConfigSpec spec;
  std::vector<Assignment> assignments;
  std::optional<ScenarioTransform> transform;
};

const std::vector<std::string>& scenarioNames();
// Throws UnknownScenario.
Scenario builtinScenario(const std::string& name);

// Degenerate conic check at one rational sample (a, c, f), f != 0.
bool conicIdentityHolds(const Rational& a, const Rational& c, const Rational& f, std::string* why = nullptr);

struct ConicIdentityReport {
  std::size_t samples = 0;
  std::size_t failures = 0;
  bool pass() const { return failures == 0 && samples > 0; }
};
ConicIdentityReport verifyDegenerateConicIdentity(std::size_t samples = 100, unsigned seed = 1);

}  // namespace sympconf
