#include "sympconf/cremona.hpp"

#include "sympconf/error.hpp"

#include <algorithm>
#include <functional>

namespace sympconf {

namespace {

std::string lbl(std::size_t i) { return "E" + std::to_string(i + 1); }

void checkTriple(std::size_t N, std::size_t r, std::size_t s, std::size_t t) {
  if (r >= N || s >= N || t >= N) throw Error(ErrorKind::Precondition, "reflection index out of range");
  if (r == s || r == t || s == t) throw Error(ErrorKind::Precondition, "reflection indices must be distinct");
}

}  // namespace

std::vector<std::string> blowdownNecessaryViolations(const ClassVector& v) {
  std::vector<std::string> out;
  if (v.a() < 2) return out;
  auto b = v.b();
  std::sort(b.begin(), b.end(), std::greater<>());
  if (b.size() >= 2 && v.a() < b[0] + b[1])
    out.push_back(v.str() + ": degree below the sum of two multiplicities (" + formatInteger(b[0]) + "+" +
                  formatInteger(b[1]) + ")");
  if (v.a() >= 3 && b.size() >= 5) {
    Integer five = b[0] + b[1] + b[2] + b[3] + b[4];
    if (2 * v.a() < five)
      out.push_back(v.str() + ": twice the degree is below the five largest multiplicities (" + formatInteger(five) + ")");
  }
  return out;
}

AdmissibilityReport checkReflectionAdmissible(const Assignment& a, std::size_t r, std::size_t s, std::size_t t) {
  checkTriple(a.ambient(), r, s, t);
  AdmissibilityReport rep;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto& v = a.vectors[k];
    Integer sum = v.b(r) + v.b(s) + v.b(t);
    std::string why;
    if (v.a() < 0) why = "negative degree";
    else if (v.a() == 1 && sum > 2) why = "degree 1 with b_r+b_s+b_t = " + formatInteger(sum) + " > 2";
    else if (v.a() == 0 && sum > 0) why = "degree 0 with b_r+b_s+b_t = " + formatInteger(sum) + " > 0";
    if (!why.empty()) rep.failures.push_back({k, why});
    for (auto& d : blowdownNecessaryViolations(v)) rep.diagnostics.push_back({k, d});
  }
  rep.pass = rep.failures.empty();
  return rep;
}

const char* cremonaCaseName(CremonaCase c) {
  switch (c) {
    case CremonaCase::Case1: return "Case1";
    case CremonaCase::Case2: return "Case2";
    case CremonaCase::Case3: return "Case3";
    case CremonaCase::NotApplicable: return "NotApplicable";
  }
  return "?";
}

CaseResult classifyCase(const NearnessForest& f, std::size_t r, std::size_t s, std::size_t t) {
  checkTriple(f.size(), r, s, t);
  const auto& R = f.nodes[r];
  const auto& S = f.nodes[s];
  const auto& T = f.nodes[t];
  CaseResult c;
  if (R.minimal && S.minimal && T.minimal) {
    c.kase = CremonaCase::Case1;
    c.assumptions.push_back("the points " + lbl(r) + ", " + lbl(s) + ", " + lbl(t) +
                            " do not lie on a common degree 1 J-holomorphic sphere");
  } else if (R.minimal && S.minimal && T.parent == s) {
    c.kase = CremonaCase::Case2;
    c.assumptions.push_back("the point " + lbl(t) + " is not on the proper transform of the degree 1 sphere through " +
                            lbl(r) + " and " + lbl(s));
  } else if (R.minimal && S.parent == r && T.parent == s && !T.satellite) {
    c.kase = CremonaCase::Case3;
  }
  return c;
}

TransformReport applyCremona(const Assignment& a, const ConfigSpec& spec, std::size_t r, std::size_t s, std::size_t t,
                             bool unsafe) {
  const std::size_t N = a.ambient();
  checkTriple(N, r, s, t);
  TransformReport rep;
  rep.input = a;
  rep.gamma = TwoClass::heee(r, s, t);

  auto adm = checkReflectionAdmissible(a, r, s, t);
  rep.diagnostics = adm.diagnostics;
  if (!adm.pass && !unsafe)
    throw Error(ErrorKind::Precondition, "reflection not admissible on component " +
                                             std::to_string(adm.failures[0].component + 1) + ": " + adm.failures[0].reason);

  std::optional<NearnessForest> forest;
  try {
    forest = buildForest(a);
  } catch (const Error& e) {
    if (!unsafe) throw;
    rep.notes.push_back(std::string("input forest unavailable: ") + e.what());
  }
  if (forest) {
    auto cr = classifyCase(*forest, r, s, t);
    rep.kase = cr.kase;
    rep.assumptions = cr.assumptions;
  }
  if (rep.kase == CremonaCase::NotApplicable && !unsafe)
    throw Error(ErrorKind::Precondition, "classes " + lbl(r) + ", " + lbl(s) + ", " + lbl(t) + " match none of the three cases");
  rep.virtualExpression = adm.pass && rep.kase != CremonaCase::NotApplicable;
  if (!rep.virtualExpression) rep.notes.push_back("unsafe reflection: output is not a virtual expression");

  for (const auto& v : a.vectors) {
    auto w = reflect(rep.gamma, v);
    if (rep.virtualExpression && w.a() < 0) throw Error(ErrorKind::Precondition, "reflected degree is negative: " + w.str());
    rep.reflected.vectors.push_back(std::move(w));
  }
  rep.definitionPreserved = satisfiesDefinition(spec, rep.reflected);

  try {
    auto norm = normalizeOrder(rep.reflected.vectors);
    rep.output = norm.assignment;
    rep.relabel = norm.relabel;
  } catch (const Error& e) {
    if (rep.virtualExpression) throw;
    rep.output = rep.reflected;
    rep.relabel.resize(N);
    for (std::size_t i = 0; i < N; ++i) rep.relabel[i] = i;
    rep.notes.push_back(std::string("ordering failed: ") + e.what());
    return rep;
  }
  rep.type = buildCombinatorialType(rep.output);
  rep.blowdown = checkBlowdownAssumptions(rep.output, BlowdownMode::Plain);
  rep.blowdownPrimed = checkBlowdownAssumptions(rep.output, BlowdownMode::Primed);
  if (rep.virtualExpression)
    rep.notes.push_back(rep.blowdown->pass
                            ? "(a)/(b) hold on the output: nonexistence of the transformed arrangement implies nonexistence of the input"
                            : "(a)/(b) fail on the output: no realizability transfer is claimed");
  return rep;
}

Extension extendAmbient(const Assignment& a, const ConfigSpec& spec, std::size_t extra) {
  Extension e;
  e.spec = spec;
  e.spec.ambientN = spec.ambientN + extra;
  for (const auto& v : a.vectors) {
    auto b = v.b();
    b.resize(b.size() + extra, 0);
    e.assignment.vectors.emplace_back(v.a(), std::move(b));
  }
  for (std::size_t i = 0; i < extra; ++i)
    e.assumptions.push_back("the new point " + lbl(spec.ambientN + i) +
                            " is generic: off every component and off the lines through pairs of existing points");
  return e;
}

}  // namespace sympconf
