#include "doctest.h"

#include "sympconf/cremona.hpp"
#include "sympconf/error.hpp"
#include "sympconf/json_io.hpp"
#include "sympconf/scenarios.hpp"

using namespace sympconf;

namespace {

Assignment make(std::size_t N, const std::vector<std::string>& xs) {
  Assignment a;
  for (const auto& s : xs) a.vectors.push_back(parseClass(s, N));
  return a;
}

// Coefficient formulas for H - E_r - E_s - E_t written out by hand.
ClassVector handReflect(const ClassVector& v, std::size_t r, std::size_t s, std::size_t t) {
  auto b = v.b();
  Integer br = v.b(r), bs = v.b(s), bt = v.b(t);
  b[r] = v.a() - bs - bt;
  b[s] = v.a() - br - bt;
  b[t] = v.a() - br - bs;
  return ClassVector(2 * v.a() - br - bs - bt, b);
}

}  // namespace

TEST_CASE("reflection admissibility") {
  auto fe = builtinScenario("fanoExtended8");
  auto ok = checkReflectionAdmissible(fe.assignments[0], 5, 6, 7);
  CHECK(ok.pass);
  CHECK(ok.failures.empty());

  auto bad = make(8, {"E1-E6", "H-E2-E3-E4"});
  auto r = checkReflectionAdmissible(bad, 5, 6, 7);
  CHECK_FALSE(r.pass);
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].component == 0);
  // reflecting anyway gives degree -1 with three entries -1, which is not admissible
  auto w = reflect(TwoClass::heee(5, 6, 7), bad.vectors[0]);
  CHECK(w.a() == -1);
  CHECK_FALSE(isAdmissible(w));

  auto line3 = make(4, {"H-E1-E2-E3"});
  CHECK_FALSE(checkReflectionAdmissible(line3, 0, 1, 2).pass);
  CHECK(checkReflectionAdmissible(line3, 0, 1, 3).pass);

  CHECK_THROWS_AS(checkReflectionAdmissible(line3, 0, 0, 1), Error);
  CHECK_THROWS_AS(checkReflectionAdmissible(line3, 0, 1, 9), Error);
}

TEST_CASE("necessary conditions for blowing down") {
  auto A = parseClass("5H-3E1-3E2-E3-E4-E5-E6-E7-E8-E9-E10-E11", 11);
  CHECK(isAdmissible(A));
  CHECK(square(A) == -2);
  CHECK(virtualGenus(A) == 0);
  auto va = blowdownNecessaryViolations(A);
  REQUIRE(va.size() == 1);
  CHECK(va[0].find("two multiplicities") != std::string::npos);

  auto B = reflect(TwoClass::heee(2, 3, 4), A);
  CHECK(B == parseClass("7H-3E1-3E2-3E3-3E4-3E5-E6-E7-E8-E9-E10-E11", 11));
  auto vb = blowdownNecessaryViolations(B);
  REQUIRE(vb.size() == 1);
  CHECK(vb[0].find("five") != std::string::npos);

  auto rep = checkReflectionAdmissible(Assignment{{A}}, 2, 3, 4);
  CHECK(rep.pass);
  CHECK(rep.diagnostics.size() == 1);
  CHECK(blowdownNecessaryViolations(parseClass("2H-E1-E2", 2)).empty());
}

TEST_CASE("case classification") {
  auto fe = builtinScenario("fanoExtended8").assignments[0];
  auto c1 = classifyCase(buildForest(fe), 5, 6, 7);
  CHECK(c1.kase == CremonaCase::Case1);
  CHECK(c1.assumptions.size() == 1);

  auto d2 = builtinScenario("d2Extended8").assignments[0];
  auto f = buildForest(d2);
  CHECK(classifyCase(f, 1, 2, 7).kase == CremonaCase::Case1);
  CHECK(classifyCase(f, 1, 4, 7).kase == CremonaCase::NotApplicable);
  CHECK(classifyCase(f, 0, 1, 4).kase == CremonaCase::Case2);
  // the given order matters
  CHECK(classifyCase(f, 0, 4, 1).kase == CremonaCase::NotApplicable);

  auto chain = buildForest(make(4, {"E1-E2", "E2-E3"}));
  CHECK(classifyCase(chain, 0, 1, 2).kase == CremonaCase::Case3);
  auto sat = buildForest(make(4, {"E1-E2-E3", "E2-E3"}));
  CHECK(sat.nodes[2].satellite);
  CHECK(classifyCase(sat, 0, 1, 2).kase == CremonaCase::NotApplicable);
}

TEST_CASE("Cremona transform on the extended Fano expression") {
  auto sc = builtinScenario("fanoExtended8");
  auto rep = applyCremona(sc.assignments[0], sc.spec, 5, 6, 7);
  CHECK(rep.kase == CremonaCase::Case1);
  CHECK(rep.virtualExpression);
  CHECK(rep.reflected == sc.transform->expected);
  for (std::size_t k = 0; k < 7; ++k) CHECK(rep.reflected.vectors[k] == handReflect(sc.assignments[0].vectors[k], 5, 6, 7));
  CHECK(rep.reflected.vectors[2].str() == "-E1+E8");
  CHECK(rep.definitionPreserved);
  CHECK(satisfiesDefinition(sc.spec, rep.output));
  for (const auto& v : rep.output.vectors) CHECK(isPositive(v));
  REQUIRE(rep.type);
  REQUIRE(rep.blowdown);
  CHECK(rep.blowdown->pass);

  auto def = buildCombinatorialType(builtinScenario("def110").assignments[0]);
  auto iso = typesIsomorphic(*rep.type, def);
  CHECK(iso.status == IsoStatus::Isomorphic);
}

TEST_CASE("Cremona transform on the extended conic expression") {
  auto sc = builtinScenario("d2Extended8");
  auto rep = applyCremona(sc.assignments[0], sc.spec, 1, 2, 7);
  CHECK(rep.reflected == sc.transform->expected);
  CHECK(rep.reflected.vectors[4].str() == "H-E3-E5-E8");
  CHECK(rep.definitionPreserved);
  for (std::size_t i = 0; i < rep.relabel.size(); ++i) CHECK(rep.relabel[i] == i);

  auto fano = applyCremona(builtinScenario("fanoExtended8").assignments[0], sc.spec, 5, 6, 7);
  auto def = buildCombinatorialType(builtinScenario("def110").assignments[0]);
  CHECK(typesIsomorphic(*rep.type, def).status == IsoStatus::Isomorphic);
  CHECK(typesIsomorphic(*rep.type, *fano.type).status == IsoStatus::Isomorphic);
}

TEST_CASE("preconditions and the unsafe flag") {
  auto sc = builtinScenario("d2Extended8");
  CHECK_THROWS_AS(applyCremona(sc.assignments[0], sc.spec, 1, 4, 7), Error);
  auto u = applyCremona(sc.assignments[0], sc.spec, 1, 4, 7, true);
  CHECK_FALSE(u.virtualExpression);
  CHECK(u.kase == CremonaCase::NotApplicable);

  auto bad = make(8, {"E1-E6", "H-E2-E3-E4"});
  ConfigSpec spec = ConfigSpec::disjoint(8, 2, -2);
  CHECK_THROWS_AS(applyCremona(bad, spec, 5, 6, 7), Error);
  auto uu = applyCremona(bad, spec, 5, 6, 7, true);
  CHECK_FALSE(uu.virtualExpression);
  CHECK_FALSE(uu.notes.empty());
}

TEST_CASE("transform invariants on every scenario") {
  for (const auto& name : scenarioNames()) {
    auto sc = builtinScenario(name);
    for (const auto& a : sc.assignments) {
      const std::size_t N = a.ambient();
      for (std::size_t r = 0; r < N; ++r)
        for (std::size_t s = r + 1; s < N; ++s)
          for (std::size_t t = s + 1; t < N; ++t) {
            TransformReport rep;
            try {
              rep = applyCremona(a, sc.spec, r, s, t);
            } catch (const Error& e) {
              CHECK(e.kind() == ErrorKind::Precondition);
              continue;
            }
            CHECK_MESSAGE(rep.definitionPreserved, name << " " << rep.gamma.str());
            CHECK(satisfiesDefinition(sc.spec, rep.output));
            for (const auto& v : rep.output.vectors) {
              CHECK(isAdmissible(v));
              CHECK(isPositive(v));
            }
            // reflecting again in the relabeled triple returns to the input orbit
            auto back = applyCremona(rep.output, sc.spec, rep.relabel[r], rep.relabel[s], rep.relabel[t], true);
            CHECK(canonicalForm(back.reflected) == canonicalForm(a));
          }
    }
  }
}

TEST_CASE("extending the ambient space") {
  auto f7 = builtinScenario("fano7");
  auto ext = extendAmbient(f7.assignments[0], f7.spec);
  auto f8 = builtinScenario("fanoExtended8");
  CHECK(ext.assignment == f8.assignments[0]);
  CHECK(ext.spec.ambientN == 8);
  CHECK(ext.assumptions.size() == 1);
  CHECK(buildForest(ext.assignment).nodes[7].minimal);
  CHECK(buildForest(ext.assignment).nodes[7].maximal);
}
