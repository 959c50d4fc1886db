#pragma once

#include "sympconf/bounds.hpp"
#include "sympconf/configspec.hpp"
#include "sympconf/cremona.hpp"
#include "sympconf/eliminate.hpp"
#include "sympconf/enumerate.hpp"
#include "sympconf/nearness.hpp"
#include "sympconf/scenarios.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace sympconf {

using Json = nlohmann::ordered_json;

// "2H-E1-E2-E3", "E8-E1", "-E1+E2", "3E4". Labels are 1-based.
ClassVector parseClass(std::string_view text, std::size_t N);
// "10,1,1" or "1/2,3".
RationalVector parseRationalList(std::string_view text);
std::vector<std::size_t> parseIndexList(std::string_view text);  // 1-based in, 0-based out

Json integerJson(const Integer& z);
Integer integerFromJson(const Json& j);
Json rationalsJson(const RationalVector& v);
RationalVector rationalsFromJson(const Json& j);

Json classJson(const ClassVector& v);  // [a, b_1, ..., b_N]
ClassVector classFromJson(const Json& j, std::size_t N);  // array or class string

ConfigSpec configFromJson(const Json& j);  // throws InvalidConfig / Parse
Json configJson(const ConfigSpec& spec);
ConfigSpec loadConfig(const std::string& path);
Json readJsonFile(const std::string& path);

Json assignmentJson(const Assignment& a);
Assignment assignmentFromJson(const Json& j, std::size_t N);

Json capsJson(const CapVector& caps);
Json forestJson(const NearnessForest& f);
Json typeJson(const CombinatorialType& t);
Json blowdownJson(const BlowdownReport& r);
Json transformJson(const TransformReport& r);
Json verdictJson(const Verdict& v);
Json deltaReportJson(const DeltaReport& r, bool includeAll = false);
Json robustJson(const RobustnessResult& r);
Json isoJson(const IsoResult& r);

// Golden scenario files: classes stored as printed strings.
Json scenarioJson(const Scenario& s);
Scenario scenarioFromJson(const Json& j);
std::string scenarioDataDir();

}  // namespace sympconf
