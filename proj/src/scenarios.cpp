#include "sympconf/scenarios.hpp"

#include "sympconf/error.hpp"
#include "sympconf/json_io.hpp"

#include <map>
#include <random>

namespace sympconf {

namespace {

Assignment classes(std::size_t N, const std::vector<std::string>& xs) {
  Assignment a;
  for (const auto& s : xs) a.vectors.push_back(parseClass(s, N));
  return a;
}

const std::vector<std::string> kFano = {"H-E1-E2-E3", "H-E1-E4-E5", "H-E1-E6-E7", "H-E2-E4-E6",
                                        "H-E3-E5-E6", "H-E2-E5-E7", "H-E3-E4-E7"};
const std::vector<std::string> kD2 = {"H-E1-E2-E5", "H-E1-E3-E6", "H-E1-E4-E7", "2H-E2-E3-E4-E5-E6-E7",
                                      "E2-E5",      "E3-E6",      "E4-E7"};

}  // namespace

const std::vector<std::string>& scenarioNames() {
  static const std::vector<std::string> names = {"fano7",  "fanoExtended8", "d2conic7",       "d2Extended8",
                                                 "def110", "nineNeg3N12",   "sevenNeg2Config"};
  return names;
}

Scenario builtinScenario(const std::string& name) {
  Scenario s;
  s.name = name;
  if (name == "fano7") {
    s.description = "seven lines with seven triple points, blown up at the triple points";
    s.spec = ConfigSpec::disjoint(7, 7, -2);
    s.assignments.push_back(classes(7, kFano));
  } else if (name == "fanoExtended8") {
    s.description = "fano7 with one extra generic point, reflected in H-E6-E7-E8";
    s.spec = ConfigSpec::disjoint(8, 7, -2);
    s.assignments.push_back(classes(8, kFano));
    s.transform = ScenarioTransform{{5, 6, 7},
                                    classes(8, {"2H-E1-E2-E3-E6-E7-E8", "2H-E1-E4-E5-E6-E7-E8", "E8-E1", "H-E2-E4-E6",
                                                "H-E3-E5-E6", "H-E2-E5-E7", "H-E3-E4-E7"})};
  } else if (name == "d2conic7") {
    s.description = "three concurrent lines and a conic tangent to each, blown up to seven (-2)-spheres";
    s.spec = ConfigSpec::disjoint(7, 7, -2);
    s.assignments.push_back(classes(7, kD2));
  } else if (name == "d2Extended8") {
    s.description = "d2conic7 with one extra generic point, reflected in H-E2-E3-E8";
    s.spec = ConfigSpec::disjoint(8, 7, -2);
    s.assignments.push_back(classes(8, kD2));
    s.transform = ScenarioTransform{
        {1, 2, 7},
        classes(8, {"H-E1-E2-E5", "H-E1-E3-E6", "2H-E1-E2-E3-E4-E7-E8", "2H-E2-E3-E4-E5-E6-E7", "H-E3-E5-E8",
                    "H-E2-E6-E8", "E4-E7"})};
  } else if (name == "def110") {
    s.description = "two conics and four lines: the common transformed type";
    s.spec = ConfigSpec::disjoint(8, 7, -2);
    s.assignments.push_back(classes(8, {"2H-E1-E2-E3-E4-E7-E8", "2H-E1-E2-E5-E6-E7-E8", "H-E3-E5-E7", "H-E4-E6-E7",
                                        "H-E3-E6-E8", "H-E4-E5-E8", "E1-E2"}));
  } else if (name == "nineNeg3N12") {
    // Letters i, j, k, r, s, t, u, v, w, x, y, z become E1..E12.
    s.description = "nine disjoint (-3)-spheres in CP2#12, an area-robust expression";
    s.spec = ConfigSpec::disjoint(12, 9, -3);
    s.assignments.push_back(classes(12, {"H-E1-E4-E5-E6", "H-E1-E7-E8-E9", "H-E1-E10-E11-E12", "H-E2-E4-E7-E10",
                                         "H-E2-E5-E8-E11", "H-E2-E6-E9-E12", "H-E3-E4-E8-E12", "H-E3-E5-E9-E10",
                                         "H-E3-E6-E7-E11"}));
  } else if (name == "sevenNeg2Config") {
    s.description = "seven disjoint (-2)-spheres in CP2#7 (configuration only)";
    s.spec = ConfigSpec::disjoint(7, 7, -2);
  } else {
    throw Error(ErrorKind::UnknownScenario, name);
  }
  return s;
}

namespace {

// Bivariate polynomials in x, y keyed by exponent pair.
using Poly = std::map<std::pair<int, int>, Rational>;

Poly mul(const Poly& p, const Poly& q) {
  Poly r;
  for (const auto& [e1, c1] : p)
    for (const auto& [e2, c2] : q) r[{e1.first + e2.first, e1.second + e2.second}] += c1 * c2;
  for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

}  // namespace

bool conicIdentityHolds(const Rational& a, const Rational& c, const Rational& f, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (f == 0) return fail("f must be nonzero");
  Rational A = a * a, B = 2 * a * c, C = c * c, D = 2 * a * f, E = 2 * c * f, F = f * f;
  if (E * E - 4 * C * F != 0) return fail("E^2-4CF");
  if (D * D - 4 * A * F != 0) return fail("D^2-4AF");
  if (2 * D * E - 4 * B * F != 0) return fail("2DE-4BF");
  // The tangency discriminant in the slope w vanishes identically.
  Poly w1{{{0, 0}, D}, {{1, 0}, E}};
  Poly w2{{{0, 0}, A}, {{1, 0}, B}, {{2, 0}, C}};
  Poly disc = mul(w1, w1);
  for (const auto& [e, coef] : w2) disc[e] -= 4 * F * coef;
  for (const auto& [e, coef] : disc)
    if (coef != 0) return fail("slope discriminant is not identically zero");
  Poly lin{{{1, 0}, a}, {{0, 1}, c}, {{0, 0}, f}};
  Poly sq = mul(lin, lin);
  Poly conic;
  for (auto [e, coef] : std::vector<std::pair<std::pair<int, int>, Rational>>{
           {{2, 0}, A}, {{1, 1}, B}, {{0, 2}, C}, {{1, 0}, D}, {{0, 1}, E}, {{0, 0}, F}})
    if (coef != 0) conic[e] = coef;
  if (sq != conic) return fail("quadratic is not the square of ax+cy+f");
  return true;
}

ConicIdentityReport verifyDegenerateConicIdentity(std::size_t samples, unsigned seed) {
  ConicIdentityReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 12);
  auto draw = [&]() -> Rational {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
  };
  const std::vector<std::array<long, 3>> fixed = {{1, 1, 1}, {0, 1, 1}, {2, -3, 5}};
  for (const auto& t : fixed) {
    ++rep.samples;
    if (!conicIdentityHolds(t[0], t[1], t[2])) ++rep.failures;
  }
  while (rep.samples < samples + fixed.size()) {
    Rational a = draw(), c = draw(), f = draw();
    if (f == 0) continue;
    ++rep.samples;
    if (!conicIdentityHolds(a, c, f)) ++rep.failures;
  }
  return rep;
}

}  // namespace sympconf
