#include "sympconf/json_io.hpp"

#include "sympconf/error.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace sympconf {

namespace {

[[noreturn]] void parseFail(const std::string& what) { throw Error(ErrorKind::Parse, what); }

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> splitComma(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

Json optIndex(const std::optional<std::size_t>& i) { return i ? Json(*i + 1) : Json(nullptr); }

Json indices1(const std::vector<std::size_t>& v) {
  Json j = Json::array();
  for (auto i : v) j.push_back(i + 1);
  return j;
}

Json certificateJson(const Certificate& c) {
  return Json{{"eq", rationalsJson(c.eq)}, {"ineq", rationalsJson(c.ineq)}};
}

}  // namespace

ClassVector parseClass(std::string_view text, std::size_t N) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) parseFail("empty class");
  Integer a = 0;
  std::vector<Integer> b(N, 0);
  std::size_t p = 0;
  if (s == "0") return ClassVector(a, b);
  while (p < s.size()) {
    int sign = 1;
    if (s[p] == '+' || s[p] == '-') {
      sign = s[p] == '-' ? -1 : 1;
      ++p;
    } else if (p != 0) {
      parseFail("expected sign in '" + s + "'");
    }
    std::size_t q = p;
    while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
    Integer coef = q > p ? Integer(s.substr(p, q - p)) : Integer(1);
    p = q;
    if (p >= s.size()) parseFail("dangling coefficient in '" + s + "'");
    if (s[p] == 'H') {
      a += sign * coef;
      ++p;
    } else if (s[p] == 'E') {
      ++p;
      q = p;
      while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
      if (q == p) parseFail("missing E index in '" + s + "'");
      std::size_t idx = std::stoul(s.substr(p, q - p));
      if (idx < 1 || idx > N) parseFail("E index out of range in '" + s + "'");
      b[idx - 1] -= sign * coef;  // the class carries -b_i E_i
      p = q;
    } else {
      parseFail("unexpected character in '" + s + "'");
    }
  }
  return ClassVector(a, b);
}

RationalVector parseRationalList(std::string_view text) {
  RationalVector v;
  for (const auto& t : splitComma(text)) {
    if (t.empty()) parseFail("empty entry in list");
    v.push_back(parseRational(t));
  }
  return v;
}

std::vector<std::size_t> parseIndexList(std::string_view text) {
  std::vector<std::size_t> v;
  for (const auto& t : splitComma(text)) {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) parseFail("bad index '" + t + "'");
    std::size_t i = std::stoul(t);
    if (i == 0) parseFail("indices are 1-based");
    v.push_back(i - 1);
  }
  return v;
}

Json integerJson(const Integer& z) {
  if (fitsInt64(z)) return Json(toInt64(z));
  return Json(z.get_str());
}

Integer integerFromJson(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      parseFail("bad integer string");
    }
  }
  parseFail("expected an integer");
}

Json rationalsJson(const RationalVector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(formatRational(x));
  return j;
}

RationalVector rationalsFromJson(const Json& j) {
  if (!j.is_array()) parseFail("expected an array of rationals");
  RationalVector v;
  for (const auto& x : j) {
    if (x.is_string()) v.push_back(parseRational(x.get<std::string>()));
    else if (x.is_number_integer()) v.push_back(Rational(integerFromJson(x)));
    else parseFail("rational entries must be strings or integers");
  }
  return v;
}

Json classJson(const ClassVector& v) {
  Json j = Json::array();
  j.push_back(integerJson(v.a()));
  for (const auto& b : v.b()) j.push_back(integerJson(b));
  return j;
}

ClassVector classFromJson(const Json& j, std::size_t N) {
  if (j.is_string()) return parseClass(j.get<std::string>(), N);
  if (!j.is_array() || j.size() != N + 1) parseFail("class vector must have N+1 entries");
  std::vector<Integer> b;
  for (std::size_t i = 1; i < j.size(); ++i) b.push_back(integerFromJson(j[i]));
  return ClassVector(integerFromJson(j[0]), b);
}

ConfigSpec configFromJson(const Json& j) {
  auto bad = [](const std::string& s) -> Error { return Error(ErrorKind::InvalidConfig, s); };
  if (!j.is_object()) throw bad("config must be a JSON object");
  if (!j.contains("N") || !j["N"].is_number_integer() || j["N"].get<long long>() < 0)
    throw bad("missing or invalid N");
  if (!j.contains("components") || !j["components"].is_array()) throw bad("missing components");
  ConfigSpec s;
  s.ambientN = j["N"].get<std::size_t>();
  for (const auto& c : j["components"]) {
    if (!c.is_object() || !c.contains("nu") || !c["nu"].is_number_integer()) throw bad("component needs integer nu");
    s.nu.push_back(c["nu"].get<long>());
    long g = c.value("genus", 0L);
    s.genus.push_back(g);
  }
  const std::size_t n = s.nu.size();
  s.offDiag.assign(n, std::vector<int>(n, 0));
  if (j.contains("intersections")) {
    if (!j["intersections"].is_array()) throw bad("intersections must be a list of pairs");
    for (const auto& e : j["intersections"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw bad("intersection entries are [k, l] pairs");
      long k = e[0].get<long>(), l = e[1].get<long>();
      if (k < 1 || l < 1 || k > static_cast<long>(n) || l > static_cast<long>(n) || k == l)
        throw bad("intersection pair out of range");
      s.offDiag[k - 1][l - 1] = s.offDiag[l - 1][k - 1] = 1;
    }
  }
  if (j.contains("star") && !j["star"].is_null()) {
    const auto& st = j["star"];
    if (st.contains("c")) {
      try {
        s.starC = rationalsFromJson(st["c"]);
      } catch (const Error& e) {
        throw bad(std::string("star.c: ") + e.what());
      }
    }
    s.starAsserted = st.value("asserted", false);
  }
  s.validateShape();
  return s;
}

Json configJson(const ConfigSpec& spec) {
  Json j;
  j["N"] = spec.ambientN;
  Json comps = Json::array();
  for (std::size_t k = 0; k < spec.n(); ++k) comps.push_back(Json{{"nu", spec.nu[k]}, {"genus", spec.genus[k]}});
  j["components"] = comps;
  Json inter = Json::array();
  for (std::size_t k = 0; k < spec.n(); ++k)
    for (std::size_t l = k + 1; l < spec.n(); ++l)
      if (spec.offDiag[k][l]) inter.push_back(Json::array({k + 1, l + 1}));
  j["intersections"] = inter;
  if (spec.starC || spec.starAsserted) {
    Json st;
    if (spec.starC) st["c"] = rationalsJson(*spec.starC);
    st["asserted"] = spec.starAsserted;
    j["star"] = st;
  }
  return j;
}

Json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

ConfigSpec loadConfig(const std::string& path) {
  Json j;
  try {
    j = readJsonFile(path);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw Error(ErrorKind::InvalidConfig, e.what());
    throw;
  }
  return configFromJson(j);
}

Json assignmentJson(const Assignment& a) {
  Json vs = Json::array(), cs = Json::array();
  for (const auto& v : a.vectors) {
    vs.push_back(classJson(v));
    cs.push_back(v.str());
  }
  return Json{{"vectors", vs}, {"classes", cs}};
}

Assignment assignmentFromJson(const Json& j, std::size_t N) {
  const Json& list = j.is_object() ? (j.contains("vectors") ? j["vectors"] : j.at("classes")) : j;
  if (!list.is_array()) parseFail("assignment must be a list of classes");
  Assignment a;
  for (const auto& x : list) a.vectors.push_back(classFromJson(x, N));
  return a;
}

Json capsJson(const CapVector& caps) {
  Json per = Json::array();
  for (std::size_t k = 0; k < caps.perComponent.size(); ++k)
    per.push_back(Json{{"cap", formatRational(caps.perComponent[k])},
                       {"source", capSourceName(caps.provenance[k])}});
  return Json{{"perComponent", per}, {"atMostOneNegativeA", caps.atMostOneNegativeA}};
}

Json forestJson(const NearnessForest& f) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& n = f.nodes[i];
    nodes.push_back(Json{{"class", "E" + std::to_string(i + 1)},
                         {"parent", optIndex(n.parent)},
                         {"minimal", n.minimal},
                         {"maximal", n.maximal},
                         {"kind", n.minimal ? "minimal" : (n.satellite ? "satellite" : "free")},
                         {"leadingOf", optIndex(n.leadingOf)}});
  }
  return nodes;
}

Json typeJson(const CombinatorialType& t) {
  Json j;
  j["N"] = t.N;
  Json comps = Json::array();
  for (std::size_t k = 0; k < t.components.size(); ++k)
    comps.push_back(Json{{"component", t.components[k] + 1},
                         {"degree", integerJson(t.degree[k])},
                         {"genus", integerJson(t.genus[k])}});
  j["components"] = comps;
  j["nodes"] = forestJson(t.forest);
  Json mult = Json::array();
  for (const auto& row : t.mult) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(integerJson(x));
    mult.push_back(r);
  }
  j["multiplicities"] = mult;
  Json res = Json::array();
  for (const auto& row : t.residual) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(integerJson(x));
    res.push_back(r);
  }
  j["residuals"] = res;
  Json zs = Json::array();
  for (std::size_t z = 0; z < t.zeroComponents.size(); ++z) {
    Json pairs = Json::array();
    for (std::size_t k = 0; k < t.components.size(); ++k) pairs.push_back(integerJson(t.zeroPairing[k][z]));
    zs.push_back(Json{{"component", t.zeroComponents[z] + 1}, {"pairings", pairs}});
  }
  j["zeroDegree"] = zs;
  Json local = Json::array();
  auto roots = t.forest.roots();
  for (std::size_t k = 0; k < t.components.size(); ++k)
    for (std::size_t l = k + 1; l < t.components.size(); ++l)
      for (std::size_t r : roots) {
        Integer m = t.localMultiplicity(k, l, r);
        if (m != 0)
          local.push_back(Json{{"pair", Json::array({t.components[k] + 1, t.components[l] + 1})},
                               {"root", "E" + std::to_string(r + 1)},
                               {"multiplicity", integerJson(m)}});
      }
  j["localMultiplicities"] = local;
  return j;
}

Json blowdownJson(const BlowdownReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back(Json{{"component", e.component + 1},
                           {"leading", "E" + std::to_string(e.leading + 1)},
                           {"case", blowdownCaseName(e.kase, r.primed)},
                           {"holders", indices1(e.holders)},
                           {"pass", e.pass},
                           {"offending", indices1(e.offending)},
                           {"detail", e.detail}});
  return Json{{"mode", r.primed ? "primed" : "plain"},
              {"sigma0", optIndex(r.sigma0)},
              {"pass", r.pass},
              {"entries", entries},
              {"c", BlowdownReport::c},
              {"d", r.d()},
              {"e", r.e()}};
}

Json transformJson(const TransformReport& r) {
  Json j;
  j["gamma"] = r.gamma.str();
  j["case"] = cremonaCaseName(r.kase);
  j["virtualExpression"] = r.virtualExpression;
  j["before"] = assignmentJson(r.input);
  j["reflected"] = assignmentJson(r.reflected);
  j["after"] = assignmentJson(r.output);
  j["relabel"] = indices1(r.relabel);
  j["assumptions"] = r.assumptions;
  Json diag = Json::array();
  for (const auto& d : r.diagnostics) diag.push_back(Json{{"component", d.component + 1}, {"reason", d.reason}});
  j["diagnostics"] = diag;
  j["definitionPreserved"] = r.definitionPreserved;
  j["type"] = r.type ? typeJson(*r.type) : Json(nullptr);
  j["blowdown"] = r.blowdown ? blowdownJson(*r.blowdown) : Json(nullptr);
  j["blowdownPrimed"] = r.blowdownPrimed ? blowdownJson(*r.blowdownPrimed) : Json(nullptr);
  j["notes"] = r.notes;
  return j;
}

Json verdictJson(const Verdict& v) {
  Json j;
  j["verdict"] = verdictKindName(v.kind);
  if (v.certificate) j["certificate"] = certificateJson(*v.certificate);
  if (v.separator) j["separator"] = rationalsJson(*v.separator);
  if (v.separatorCertificate) j["separatorCertificate"] = certificateJson(*v.separatorCertificate);
  if (!v.witness.empty()) {
    j["witness"] = rationalsJson(v.witness);
    j["q"] = formatRational(v.q);
  }
  if (!v.notes.empty()) j["notes"] = v.notes;
  return j;
}

Json deltaReportJson(const DeltaReport& r, bool includeAll) {
  Json j;
  j["eliminatedForOrbit"] = r.eliminatedForOrbit;
  j["labelings"] = r.perTau.size();
  j["distinctSystems"] = r.distinctSystems;
  Json per = Json::array();
  for (std::size_t i = 0; i < r.perTau.size(); ++i) {
    if (!includeAll && r.perTau[i].kind == VerdictKind::Eliminated) continue;
    Json e = verdictJson(r.perTau[i]);
    e["tau"] = indices1(r.taus[i]);
    per.push_back(e);
  }
  j[includeAll ? "perLabeling" : "survivingLabelings"] = per;
  return j;
}

Json robustJson(const RobustnessResult& r) {
  Json j{{"result", robustKindName(r.kind)}, {"x", rationalsJson(r.x)}, {"reason", r.reason}};
  if (r.violatedRow) j["violatedRow"] = *r.violatedRow;
  return j;
}

Json isoJson(const IsoResult& r) {
  Json j;
  j["status"] = r.status == IsoStatus::Isomorphic ? "isomorphic"
                : r.status == IsoStatus::NotIsomorphic ? "not-isomorphic"
                                                       : "undecided";
  j["steps"] = r.steps;
  if (r.witness) {
    j["componentMap"] = indices1(r.witness->componentMap);
    j["nodeMap"] = indices1(r.witness->nodeMap);
  }
  return j;
}

Json scenarioJson(const Scenario& s) {
  Json j;
  j["name"] = s.name;
  j["description"] = s.description;
  j["config"] = configJson(s.spec);
  Json as = Json::array();
  for (const auto& a : s.assignments) {
    Json cs = Json::array();
    for (const auto& v : a.vectors) cs.push_back(v.str());
    as.push_back(cs);
  }
  j["assignments"] = as;
  if (s.transform) {
    Json ex = Json::array();
    for (const auto& v : s.transform->expected.vectors) ex.push_back(v.str());
    j["transform"] = Json{{"gamma", Json::array({s.transform->gamma[0] + 1, s.transform->gamma[1] + 1,
                                                 s.transform->gamma[2] + 1})},
                          {"expected", ex}};
  }
  return j;
}

Scenario scenarioFromJson(const Json& j) {
  Scenario s;
  s.name = j.at("name").get<std::string>();
  s.description = j.value("description", "");
  s.spec = configFromJson(j.at("config"));
  // Optional letter labels, e.g. {"i": 1} turns "Ei" into "E1".
  auto relabel = [&](const Json& list) {
    if (!j.contains("labels")) return list;
    Json out = Json::array();
    for (const auto& x : list) {
      std::string t = x.get<std::string>(), r;
      for (std::size_t p = 0; p < t.size(); ++p) {
        r += t[p];
        if (t[p] == 'E' && p + 1 < t.size() && std::isalpha(static_cast<unsigned char>(t[p + 1]))) {
          std::string key(1, t[p + 1]);
          if (!j["labels"].contains(key)) parseFail("unknown label " + key);
          r += std::to_string(j["labels"][key].get<int>());
          ++p;
        }
      }
      out.push_back(r);
    }
    return out;
  };
  for (const auto& a : j.at("assignments")) s.assignments.push_back(assignmentFromJson(relabel(a), s.spec.ambientN));
  if (j.contains("transform")) {
    const auto& t = j["transform"];
    ScenarioTransform st;
    for (std::size_t i = 0; i < 3; ++i) st.gamma[i] = t.at("gamma").at(i).get<std::size_t>() - 1;
    st.expected = assignmentFromJson(t.at("expected"), s.spec.ambientN);
    s.transform = st;
  }
  return s;
}

std::string scenarioDataDir() {
  if (const char* env = std::getenv("SYMPCONF_DATA_DIR")) return std::string(env) + "/scenarios";
  return std::string(SYMPCONF_DATA_DIR) + "/scenarios";
}

}  // namespace sympconf
