#include "sympconf/cremona.hpp"
#include "sympconf/eliminate.hpp"
#include "sympconf/enumerate.hpp"
#include "sympconf/error.hpp"
#include "sympconf/json_io.hpp"
#include "sympconf/nearness.hpp"
#include "sympconf/scenarios.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace sympconf;

namespace {

constexpr const char* kVersion = "0.3.0";

enum Exit { Ok = 0, Usage = 1, ConfigInvalid = 2, Infeasible = 3, CheckpointBad = 4, CheckFailed = 5 };

struct Options {
  std::string config, out, scenario, assignments;
  bool resume = false;
  unsigned workers = 0;
  std::string delta, gamma, capsOverride, certificate, variant;
  bool search = false, unsafe = false, check = false, all = false;
  std::size_t extend = 0, checkpointInterval = 64;
  std::uint64_t seed = 1;
  std::string scenarioArg;
};

void progress(const std::string& msg) { std::cerr << "[sympconf] " << msg << std::endl; }

unsigned workerCount(const Options& o) {
  if (o.workers) return o.workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Configuration plus any assignments supplied with it.
struct Input {
  ConfigSpec spec;
  std::vector<Assignment> assignments;
  std::string source;
  std::optional<Scenario> scenario;
};

std::vector<Assignment> readAssignments(const std::string& path, std::size_t N) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  std::vector<Assignment> out;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    Json j = Json::parse(text);
    for (const auto& x : j) out.push_back(assignmentFromJson(x, N));
    return out;
  }
  // JSONL as written by `enumerate`
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j = Json::parse(line);
    if (j.contains("manifest") && !j.contains("vectors") && !j.contains("classes")) continue;
    out.push_back(assignmentFromJson(j, N));
  }
  return out;
}

Input loadInput(const Options& o, bool needAssignments) {
  Input in;
  if (!o.scenario.empty()) {
    in.scenario = builtinScenario(o.scenario);
    in.spec = in.scenario->spec;
    in.assignments = in.scenario->assignments;
    in.source = "scenario:" + o.scenario;
  }
  if (!o.config.empty()) {
    in.spec = loadConfig(o.config);
    in.source = o.config;
    if (in.scenario) in.assignments.clear();
  }
  if (in.source.empty()) throw CLI::ValidationError("input", "one of --config or --scenario is required");
  if (!o.assignments.empty()) in.assignments = readAssignments(o.assignments, in.spec.ambientN);
  if (needAssignments && in.assignments.empty())
    throw Error(ErrorKind::Precondition, "no assignments: pass --scenario or --assignments");
  for (const auto& a : in.assignments) {
    std::string why;
    if (a.size() != in.spec.n() || a.ambient() != in.spec.ambientN)
      throw Error(ErrorKind::DimensionMismatch, "assignment does not match the configuration");
    if (!satisfiesDefinition(in.spec, a, &why)) throw Error(ErrorKind::Precondition, "assignment rejected: " + why);
  }
  return in;
}

CapRequest capRequest(const Options& o, const ConfigSpec& spec) {
  CapRequest req;
  req.unsafe = o.unsafe;
  if (!o.variant.empty()) {
    if (o.variant == "i0")
      req.variant = StarVariant::i0();
    else if (o.variant == "i1")
      req.variant = StarVariant::i1();
    else
      throw CLI::ValidationError("--variant", "expected i0 or i1");
  }
  if (!o.capsOverride.empty()) {
    auto caps = parseRationalList(o.capsOverride);
    if (caps.size() == 1) caps.assign(spec.n(), caps[0]);
    if (caps.size() != spec.n())
      throw CLI::ValidationError("--caps-override", "needs one value or one per component");
    for (const auto& c : caps) req.overrides.emplace_back(c);
  }
  return req;
}

// Everything that determines the report; timestamps stay outside the hash.
Json manifest(const Options& o, const std::string& command, const Input& in, const std::optional<CapVector>& caps) {
  Json cfg = configJson(in.spec);
  Json flags;
  flags["command"] = command;
  flags["delta"] = o.delta;
  flags["gamma"] = o.gamma;
  flags["extend"] = o.extend;
  flags["search"] = o.search;
  flags["unsafe"] = o.unsafe;
  flags["variant"] = o.variant;
  flags["capsOverride"] = o.capsOverride;
  flags["certificate"] = o.certificate;
  flags["seed"] = o.seed;
  Json m;
  m["tool"] = "sympconf";
  m["version"] = kVersion;
  m["source"] = in.source;
  m["configHash"] = hexDigest(fnv1a(cfg.dump()));
  m["caps"] = caps ? capsJson(*caps) : Json(nullptr);
  m["flags"] = flags;
  if (!o.assignments.empty()) m["assignmentsFile"] = o.assignments;
  m["hash"] = hexDigest(fnv1a(m.dump()));
  return m;
}

std::string isoNow() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void writeManifest(const Options& o, Json m) {
  if (o.out.empty()) return;
  m["writtenAt"] = isoNow();
  std::ofstream f(o.out + ".manifest.json");
  if (!f) throw Error(ErrorKind::Io, "cannot write manifest next to " + o.out);
  f << m.dump(2) << "\n";
}

void emit(const Options& o, const Json& report) {
  if (o.out.empty()) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(ErrorKind::Io, "cannot write " + o.out);
  f << report.dump(2) << "\n";
}

std::array<std::size_t, 3> parseGamma(const std::string& text) {
  auto idx = parseIndexList(text);
  if (idx.size() != 3) throw CLI::ValidationError("--gamma", "expects three indices r,s,t");
  return {idx[0], idx[1], idx[2]};
}

// ---- subcommands

int cmdEnumerate(const Options& o) {
  auto in = loadInput(o, false);
  auto caps = dispatchCaps(in.spec, capRequest(o, in.spec));
  SearchSpec search;
  search.caps = caps;
  search.atMostOneNegativeA = caps.atMostOneNegativeA;
  search.workers = workerCount(o);
  search.progress = progress;
  if (o.resume && o.out.empty()) throw CLI::ValidationError("--resume", "needs --out");
  if (!o.out.empty()) {
    search.checkpointPath = o.out + ".checkpoint";
    search.checkpointInterval = o.checkpointInterval;
    search.resume = o.resume;
  }
  auto m = manifest(o, "enumerate", in, caps);
  progress("enumerating, caps " + capsJson(caps)["perComponent"].dump());
  auto res = enumerateAssignments(in.spec, search);
  for (const auto& w : res.warnings) progress("warning: " + w);

  std::ostringstream lines;
  lines << Json{{"manifest", m["hash"]}, {"specHash", res.specHash}, {"count", res.assignments.size()}}.dump()
        << "\n";
  for (std::size_t i = 0; i < res.assignments.size(); ++i) {
    Json j = assignmentJson(res.assignments[i]);
    Json row{{"manifest", m["hash"]}, {"index", i + 1}};
    row["vectors"] = j["vectors"];
    row["classes"] = j["classes"];
    lines << row.dump() << "\n";
  }
  if (o.out.empty()) {
    std::cout << lines.str();
  } else {
    std::ofstream f(o.out);
    if (!f) throw Error(ErrorKind::Io, "cannot write " + o.out);
    f << lines.str();
    writeManifest(o, m);
  }
  progress(std::to_string(res.assignments.size()) + " orbit(s)" + (res.resumed ? " (resumed)" : ""));
  return Ok;
}

std::vector<const ConeSpec*> deltaCones(const ConfigSpec& spec, const Options& o, Cones& storage) {
  StarData star = starData(spec);
  StarVariant v = o.variant == "i0" ? StarVariant::i0() : StarVariant::i1();
  storage = buildCones(spec, star, v);
  if (!storage.interiorWitness) throw Error(ErrorKind::Precondition, "the delta cone has empty interior");
  return {&storage.cDelta, &storage.cStar};
}

Json eliminateReport(const Options& o, const Input& in, const std::vector<Permutation>& aut, bool* allEliminated) {
  const std::size_t N = in.spec.ambientN;
  RationalVector delta;
  Json notes = Json::array();
  std::vector<std::size_t> todo(in.assignments.size());
  for (std::size_t i = 0; i < todo.size(); ++i) todo[i] = i;
  if (o.search) {
    Cones cones;
    auto cs = deltaCones(in.spec, o, cones);
    DeltaSearchStrategy st;
    st.seed = o.seed;
    st.workers = workerCount(o);
    progress("searching for an eliminating delta over " + std::to_string(in.assignments.size()) + " assignment(s)");
    auto sr = searchEliminatingDelta(in.spec, in.assignments, cs, st);
    delta = sr.delta;
    for (const auto& n : sr.notes) notes.push_back(n);
    notes.push_back("candidates tried: " + std::to_string(sr.candidatesTried));
  } else {
    delta = parseRationalList(o.delta);
    if (delta.size() != in.spec.n()) throw CLI::ValidationError("--delta", "needs one entry per component");
  }
  Json results = Json::array();
  bool all = true;
  for (auto i : todo) {
    progress("assignment " + std::to_string(i + 1) + "/" + std::to_string(todo.size()));
    auto rep = testDelta(N, in.assignments[i], delta, aut);
    // re-check every certificate against its own system
    for (std::size_t t = 0; t < rep.perTau.size(); ++t) {
      RationalVector d(delta.size());
      for (std::size_t k = 0; k < d.size(); ++k) d[k] = delta[rep.taus[t][k]];
      if (!verifyVerdict(realizationSystem(N, in.assignments[i], d), rep.perTau[t]))
        throw std::logic_error("verdict failed re-verification");
    }
    all = all && rep.eliminatedForOrbit;
    Json r = deltaReportJson(rep, o.all);
    r["index"] = i + 1;
    r["classes"] = assignmentJson(in.assignments[i])["classes"];
    results.push_back(r);
  }
  if (allEliminated) *allEliminated = all;
  return Json{{"delta", rationalsJson(delta)}, {"autOrder", aut.size()}, {"allEliminated", all},
              {"notes", notes}, {"results", results}};
}

int cmdEliminate(const Options& o) {
  if (o.search == !o.delta.empty()) throw CLI::ValidationError("eliminate", "pass exactly one of --delta or --search");
  auto in = loadInput(o, true);
  auto aut = computeAut(in.spec);
  if (!aut.complete()) throw Error(ErrorKind::CapExceeded, "Aut(D) too large to list");
  auto m = manifest(o, "eliminate", in, std::nullopt);
  Json report = eliminateReport(o, in, aut.elements, nullptr);
  report["manifest"] = m["hash"];
  emit(o, report);
  writeManifest(o, m);
  return Ok;
}

int cmdRobust(const Options& o) {
  auto in = loadInput(o, true);
  std::optional<RationalVector> cert;
  if (!o.certificate.empty()) {
    cert = parseRationalList(o.certificate);
    if (cert->size() != in.spec.ambientN + 1)
      throw CLI::ValidationError("--certificate", "needs N+1 entries (lambda_0..lambda_N)");
  }
  auto m = manifest(o, "robust", in, std::nullopt);
  Json results = Json::array();
  for (std::size_t i = 0; i < in.assignments.size(); ++i) {
    Json r = robustJson(robustness(in.spec.ambientN, in.assignments[i], cert));
    r["index"] = i + 1;
    results.push_back(r);
  }
  emit(o, Json{{"manifest", m["hash"]}, {"results", results}});
  writeManifest(o, m);
  return Ok;
}

Json transformOne(const Options& o, const Assignment& a, const ConfigSpec& spec, std::array<std::size_t, 3> g) {
  Assignment src = a;
  ConfigSpec sp = spec;
  Json ext = nullptr;
  if (o.extend > 0) {
    auto e = extendAmbient(a, spec, o.extend);
    src = e.assignment;
    sp = e.spec;
    ext = Json{{"extra", o.extend}, {"assumptions", e.assumptions}};
  }
  auto rep = applyCremona(src, sp, g[0], g[1], g[2], o.unsafe);
  Json j = transformJson(rep);
  j["extension"] = ext;
  return j;
}

int cmdCremona(const Options& o) {
  if (o.gamma.empty()) throw CLI::ValidationError("--gamma", "required");
  auto g = parseGamma(o.gamma);
  auto in = loadInput(o, true);
  auto m = manifest(o, "cremona", in, std::nullopt);
  Json results = Json::array();
  for (std::size_t i = 0; i < in.assignments.size(); ++i) {
    Json j = transformOne(o, in.assignments[i], in.spec, g);
    j["index"] = i + 1;
    results.push_back(j);
  }
  emit(o, Json{{"manifest", m["hash"]}, {"results", results}});
  writeManifest(o, m);
  return Ok;
}

int cmdType(const Options& o) {
  auto in = loadInput(o, true);
  auto m = manifest(o, "type", in, std::nullopt);
  Json results = Json::array();
  for (std::size_t i = 0; i < in.assignments.size(); ++i) {
    const auto& a = in.assignments[i];
    Json j{{"index", i + 1}, {"classes", assignmentJson(a)["classes"]}};
    j["type"] = typeJson(buildCombinatorialType(a));
    j["blowdown"] = blowdownJson(checkBlowdownAssumptions(a, BlowdownMode::Plain));
    j["blowdownPrimed"] = blowdownJson(checkBlowdownAssumptions(a, BlowdownMode::Primed));
    results.push_back(j);
  }
  emit(o, Json{{"manifest", m["hash"]}, {"results", results}});
  writeManifest(o, m);
  return Ok;
}

int cmdScenario(const Options& o) {
  const std::string& name = o.scenarioArg;
  auto sc = builtinScenario(name);
  Json report{{"scenario", name}};
  if (!o.check) {
    report["data"] = scenarioJson(sc);
    emit(o, report);
    return Ok;
  }
  bool ok = true;
  Json diffs = Json::array();
  auto golden = scenarioFromJson(readJsonFile(scenarioDataDir() + "/" + name + ".json"));
  if (golden.assignments != sc.assignments) {
    ok = false;
    diffs.push_back("golden assignments differ from the builtin");
  }
  for (std::size_t i = 0; i < sc.assignments.size(); ++i) {
    std::string why;
    if (!satisfiesDefinition(sc.spec, sc.assignments[i], &why)) {
      ok = false;
      diffs.push_back("assignment " + std::to_string(i + 1) + ": " + why);
    }
  }
  if (golden.transform) {
    const auto& g = golden.transform->gamma;
    auto rep = applyCremona(sc.assignments.at(0), sc.spec, g[0], g[1], g[2]);
    for (std::size_t k = 0; k < rep.reflected.size(); ++k) {
      const auto& got = rep.reflected.vectors[k];
      const auto& want = golden.transform->expected.vectors.at(k);
      if (got != want) {
        ok = false;
        diffs.push_back("component " + std::to_string(k + 1) + ": got " + got.str() + ", expected " + want.str());
      }
    }
    report["transform"] = transformJson(rep);
  }
  report["match"] = ok;
  report["differences"] = diffs;
  emit(o, report);
  progress(name + (ok ? ": matches golden data" : ": MISMATCH"));
  return ok ? Ok : CheckFailed;
}

// enumerate -> eliminate -> transform -> type
int cmdPipeline(const Options& o) {
  auto in = loadInput(o, false);
  std::optional<CapVector> caps;
  if (in.assignments.empty()) {
    caps = dispatchCaps(in.spec, capRequest(o, in.spec));
    SearchSpec search;
    search.caps = *caps;
    search.atMostOneNegativeA = caps->atMostOneNegativeA;
    search.workers = workerCount(o);
    search.progress = progress;
    progress("stage 1: enumerate");
    in.assignments = enumerateAssignments(in.spec, search).assignments;
  }
  auto m = manifest(o, "pipeline", in, caps);
  Json report{{"manifest", m["hash"]}, {"enumerated", in.assignments.size()}};

  std::vector<std::size_t> survivors;
  if (!o.delta.empty() || o.search) {
    progress("stage 2: eliminate");
    auto aut = computeAut(in.spec);
    if (!aut.complete()) throw Error(ErrorKind::CapExceeded, "Aut(D) too large to list");
    Json el = eliminateReport(o, in, aut.elements, nullptr);
    for (const auto& r : el["results"])
      if (!r["eliminatedForOrbit"].get<bool>()) survivors.push_back(r["index"].get<std::size_t>() - 1);
    el.erase("results");
    report["elimination"] = el;
  } else {
    for (std::size_t i = 0; i < in.assignments.size(); ++i) survivors.push_back(i);
  }

  progress("stage 3: transform and type " + std::to_string(survivors.size()) + " survivor(s)");
  std::optional<std::array<std::size_t, 3>> g;
  if (!o.gamma.empty()) g = parseGamma(o.gamma);
  Json list = Json::array();
  for (auto i : survivors) {
    const auto& a = in.assignments[i];
    Json s{{"index", i + 1}, {"classes", assignmentJson(a)["classes"]}};
    s["robustness"] = robustJson(robustness(in.spec.ambientN, a, std::nullopt));
    try {
      s["type"] = typeJson(buildCombinatorialType(a));
      auto bd = checkBlowdownAssumptions(a, BlowdownMode::Plain);
      s["blowdown"] = blowdownJson(bd);
    } catch (const Error& e) {
      s["typeError"] = e.what();
    }
    if (g) {
      try {
        s["transform"] = transformOne(o, a, in.spec, *g);
      } catch (const Error& e) {
        s["transformError"] = e.what();
      }
    }
    list.push_back(s);
  }
  report["survivors"] = list;
  emit(o, report);
  writeManifest(o, m);
  return Ok;
}

int exitFor(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::InvalidConfig:
    case ErrorKind::Parse:
    case ErrorKind::Io:
    case ErrorKind::DimensionMismatch:
      return ConfigInvalid;
    case ErrorKind::CheckpointMismatch:
      return CheckpointBad;
    case ErrorKind::UnknownScenario:
      return Usage;
    default:
      return Infeasible;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homological expressions of symplectic sphere configurations"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--config", o.config, "configuration JSON");
    c->add_option("--scenario", o.scenario, "builtin scenario supplying config and assignments");
    c->add_option("--assignments", o.assignments, "assignments (JSON list or enumerate JSONL)");
    c->add_option("--out", o.out, "output file (default: stdout)");
    c->add_option("--workers", o.workers, "worker threads (default: all cores)");
    c->add_flag("--unsafe", o.unsafe, "allow loosened caps and skipped preconditions");
  };
  auto capsOpts = [&](CLI::App* c) {
    c->add_option("--caps-override", o.capsOverride, "a-caps, one value or one per component");
    c->add_option("--variant", o.variant, "use star-condition caps: i0 or i1");
  };
  auto deltaOpts = [&](CLI::App* c) {
    c->add_option("--delta", o.delta, "symplectic areas, e.g. 10,1,1");
    c->add_flag("--search", o.search, "search for an eliminating delta");
    c->add_option("--seed", o.seed, "seed for --search");
    c->add_flag("--all", o.all, "include every labeling in the report");
  };
  auto gammaOpts = [&](CLI::App* c) {
    c->add_option("--gamma", o.gamma, "reflection indices r,s,t (1-based)");
    c->add_option("--extend", o.extend, "extra exceptional classes before reflecting");
  };

  auto* en = app.add_subcommand("enumerate", "list assignments up to symmetry as JSONL");
  common(en);
  capsOpts(en);
  en->add_flag("--resume", o.resume, "continue from <out>.checkpoint");
  en->add_option("--checkpoint-interval", o.checkpointInterval, "work units between checkpoints");

  auto* el = app.add_subcommand("eliminate", "test a delta against every labeling");
  common(el);
  deltaOpts(el);
  el->add_option("--variant", o.variant, "star variant for --search cones: i0 or i1");

  auto* ro = app.add_subcommand("robust", "robustness certificate check");
  common(ro);
  ro->add_option("--certificate", o.certificate, "lambda_0..lambda_N");

  auto* cr = app.add_subcommand("cremona", "reflect in H-E_r-E_s-E_t");
  common(cr);
  gammaOpts(cr);

  auto* ty = app.add_subcommand("type", "nearness forest, type and blow-down checks");
  common(ty);

  auto* sc = app.add_subcommand("scenario", "print or check a builtin scenario");
  sc->add_option("name", o.scenarioArg, "scenario name")->required();
  sc->add_flag("--check", o.check, "diff against the stored golden data");
  sc->add_option("--out", o.out, "output file");

  auto* pl = app.add_subcommand("pipeline", "enumerate, eliminate, transform, type");
  common(pl);
  capsOpts(pl);
  deltaOpts(pl);
  gammaOpts(pl);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? Ok : Usage;
  }

  try {
    if (*en) return cmdEnumerate(o);
    if (*el) return cmdEliminate(o);
    if (*ro) return cmdRobust(o);
    if (*cr) return cmdCremona(o);
    if (*ty) return cmdType(o);
    if (*sc) return cmdScenario(o);
    if (*pl) return cmdPipeline(o);
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return Usage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exitFor(e);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ConfigInvalid;
  }
  return Usage;
}
