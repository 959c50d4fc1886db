#include "sympconf/eliminate.hpp"

#include "sympconf/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <thread>

namespace sympconf {

Rational lorentzQ(const RationalVector& x) {
  if (x.empty()) return 0;
  Rational q = x[0] * x[0];
  for (std::size_t i = 1; i < x.size(); ++i) q -= x[i] * x[i];
  return q;
}

namespace {

Rational bilinear(const RationalVector& x, const RationalVector& y) {
  Rational r = x[0] * y[0];
  for (std::size_t i = 1; i < x.size(); ++i) r -= x[i] * y[i];
  return r;
}

RationalVector axpy(const RationalVector& x, const Rational& s, const RationalVector& d) {
  RationalVector r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += s * d[i];
  return r;
}

RationalVector sub(const RationalVector& x, const RationalVector& y) {
  RationalVector r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

}  // namespace

Polyhedron lambdaCone(std::size_t N) {
  Polyhedron p(N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    RationalVector r(N + 1, Rational(0));
    r[i] = 1;
    p.addInequality(r, 0);
  }
  for (std::size_t i = 1; i <= N; ++i)
    for (std::size_t j = i + 1; j <= N; ++j)
      for (std::size_t k = j + 1; k <= N; ++k) {
        RationalVector r(N + 1, Rational(0));
        r[0] = 1;
        r[i] = r[j] = r[k] = -1;
        p.addInequality(r, 0);
      }
  return p;
}

std::string lambdaRowName(std::size_t N, std::size_t row) {
  if (row <= N) return "lambda" + std::to_string(row) + " >= 0";
  std::size_t idx = N + 1;
  for (std::size_t i = 1; i <= N; ++i)
    for (std::size_t j = i + 1; j <= N; ++j)
      for (std::size_t k = j + 1; k <= N; ++k, ++idx)
        if (idx == row)
          return "lambda0-lambda" + std::to_string(i) + "-lambda" + std::to_string(j) + "-lambda" + std::to_string(k) +
                 " >= 0";
  throw Error(ErrorKind::DimensionMismatch, "row index outside C_lambda");
}

Polyhedron realizationSystem(std::size_t N, const Assignment& a, const RationalVector& delta) {
  if (delta.size() != a.size()) throw Error(ErrorKind::DimensionMismatch, "delta length differs from component count");
  if (a.size() && a.ambient() != N) throw Error(ErrorKind::DimensionMismatch, "assignment ambient N");
  Polyhedron p = lambdaCone(N);
  auto m = a.rationalMatrix();
  for (std::size_t k = 0; k < m.size(); ++k) p.addEquality(m[k], delta[k]);
  return p;
}

const char* verdictKindName(VerdictKind k) {
  switch (k) {
    case VerdictKind::Eliminated: return "Eliminated";
    case VerdictKind::Realizable: return "Realizable";
    case VerdictKind::LinearFeasibleQuadUndecided: return "LinearFeasibleQuadUndecided";
  }
  return "?";
}

const char* robustKindName(RobustKind k) {
  switch (k) {
    case RobustKind::RobustCertified: return "RobustCertified";
    case RobustKind::CertificateRejected: return "CertificateRejected";
    case RobustKind::NoCertificateFound: return "NoCertificateFound";
    case RobustKind::Undecided: return "Undecided";
  }
  return "?";
}

namespace {

bool strictlyFeasible(const Polyhedron& p, const std::vector<bool>& strict, const RationalVector& x) {
  if (!p.contains(x)) return false;
  for (std::size_t r = 0; r < p.ineqRows().size(); ++r)
    if (strict[r] && dot(p.ineqRows()[r], x) <= p.ineqRhs()[r]) return false;
  return true;
}

// |g|_2 <= 1 and the bound certificate for x_0 - g.x' <= 0 over p.
bool verifySeparator(const Polyhedron& p, const RationalVector& g, const Certificate& c) {
  if (g.size() + 1 != p.dim()) return false;
  Rational norm = 0;
  for (const auto& x : g) norm += x * x;
  if (norm > 1) return false;
  // x_0 >= 0 must be one of the rows so that x_0^2 <= (g.x')^2
  RationalVector e0(p.dim(), Rational(0));
  e0[0] = 1;
  bool hasSign = false;
  for (std::size_t r = 0; r < p.ineqRows().size(); ++r) hasSign = hasSign || (p.ineqRows()[r] == e0 && p.ineqRhs()[r] >= 0);
  if (!hasSign) return false;
  RationalVector obj = e0;
  for (std::size_t i = 0; i < g.size(); ++i) obj[i + 1] = -g[i];
  return verifyUpperBound(p, obj, c, 0);
}

struct Slack {
  bool positive = false;
  RationalVector point;
  Rational t;
  Certificate certificate;  // strict Farkas on the original system when !positive
};

// max t subject to the system, t <= 1, and every strict row exceeding its rhs by t.
Slack maxSlack(const Polyhedron& p, const std::vector<bool>& strict) {
  std::size_t d = p.dim();
  Polyhedron s(d + 1);
  for (std::size_t i = 0; i < p.eqRows().size(); ++i) {
    auto r = p.eqRows()[i];
    r.push_back(0);
    s.addEquality(r, p.eqRhs()[i]);
  }
  for (std::size_t i = 0; i < p.ineqRows().size(); ++i) {
    auto r = p.ineqRows()[i];
    r.push_back(strict[i] ? Rational(-1) : Rational(0));
    s.addInequality(r, p.ineqRhs()[i]);
  }
  RationalVector top(d + 1, Rational(0));
  top[d] = -1;
  s.addInequality(top, -1);
  RationalVector obj(d + 1, Rational(0));
  obj[d] = 1;
  auto out = optimizeLinear(s, obj);
  Slack res;
  if (out.status == LPStatus::Optimal && out.value > 0) {
    res.positive = true;
    res.t = out.value;
    res.point.assign(out.point.begin(), out.point.begin() + static_cast<long>(d));
    return res;
  }
  if (out.status == LPStatus::Unbounded) throw std::logic_error("slack LP cannot be unbounded");
  res.certificate.eq = out.certificate.eq;
  res.certificate.ineq.assign(out.certificate.ineq.begin(), out.certificate.ineq.end() - 1);
  if (!verifyStrictFarkas(p, res.certificate, strict)) throw std::logic_error("slack certificate does not transfer");
  return res;
}

class WitnessSearch {
 public:
  WitnessSearch(const Polyhedron& p, const std::vector<bool>& strict, RationalVector start)
      : p_(p), strict_(strict), best_(std::move(start)), bestQ_(lorentzQ(best_)) {}

  bool found() const { return bestQ_ > 0; }
  const RationalVector& best() const { return best_; }
  const Rational& bestQ() const { return bestQ_; }

  // Move along the segment from the current best towards x (x only needs closed feasibility).
  void segment(const RationalVector& x) {
    RationalVector d = sub(x, best_);
    Rational Q = lorentzQ(d), B = bilinear(best_, d), q0 = bestQ_;
    bool endStrict = strictlyFeasible(p_, strict_, x);
    std::vector<Rational> cand;
    if (Q < 0 && B > 0 && -B / Q < 1) cand.push_back(-B / Q);
    cand.push_back(Rational(1));
    for (Rational s : cand) {
      auto f = [&](const Rational& u) -> Rational { return q0 + 2 * u * B + u * u * Q; };
      if (s == 1 && !endStrict) {
        if (f(s) <= q0) continue;
        // back off from the closed end while staying better than the start
        Rational gap(1, 2);
        Rational target = f(1) > 0 ? Rational(0) : q0;
        for (int k = 0; k < 80 && f(1 - gap) <= target; ++k) gap /= 2;
        s = 1 - gap;
      }
      if (f(s) > bestQ_) offer(axpy(best_, s, d));
    }
  }

  // Move along a recession direction r from the current best.
  void ray(const RationalVector& r) {
    Rational Q = lorentzQ(r), B = bilinear(best_, r), q0 = bestQ_;
    auto f = [&](const Rational& u) -> Rational { return q0 + 2 * u * B + u * u * Q; };
    Rational s;
    if (Q > 0) {
      s = 1;
      for (int k = 0; k < 200 && f(s) <= 0; ++k) s *= 2;
    } else if (Q == 0 && B > 0) {
      s = (q0 < 0 ? -q0 / (2 * B) : Rational(0)) + 1;
    } else if (Q < 0 && B > 0) {
      s = -B / Q;
    } else {
      return;
    }
    if (f(s) > bestQ_) offer(axpy(best_, s, r));
  }

  void offer(const RationalVector& x) {
    if (!strictlyFeasible(p_, strict_, x)) return;
    Rational q = lorentzQ(x);
    if (q > bestQ_) {
      best_ = x;
      bestQ_ = q;
    }
  }

 private:
  const Polyhedron& p_;
  const std::vector<bool>& strict_;
  RationalVector best_;
  Rational bestQ_;
};

std::optional<std::pair<RationalVector, Certificate>> separate(const Polyhedron& p, bool l1) {
  std::size_t d = p.dim(), me = p.eqRows().size(), mi = p.ineqRows().size();
  if (d < 2) return std::nullopt;
  std::size_t N = d - 1;
  // variables: y (me, free), z (mi, >= 0), g (N) or g+ g- (2N)
  std::size_t gv = l1 ? 2 * N : N, nv = me + mi + gv;
  Polyhedron lp(nv);
  for (std::size_t j = 0; j < d; ++j) {
    RationalVector row(nv, Rational(0));
    for (std::size_t i = 0; i < me; ++i) row[i] = p.eqRows()[i][j];
    for (std::size_t r = 0; r < mi; ++r) row[me + r] = p.ineqRows()[r][j];
    if (j >= 1) {
      row[me + mi + j - 1] = -1;
      if (l1) row[me + mi + N + j - 1] = 1;
    }
    lp.addEquality(row, j == 0 ? Rational(-1) : Rational(0));
  }
  RationalVector rhsRow(nv, Rational(0));
  for (std::size_t i = 0; i < me; ++i) rhsRow[i] = p.eqRhs()[i];
  for (std::size_t r = 0; r < mi; ++r) rhsRow[me + r] = p.ineqRhs()[r];
  lp.addInequality(rhsRow, 0);
  for (std::size_t r = 0; r < mi; ++r) {
    RationalVector row(nv, Rational(0));
    row[me + r] = 1;
    lp.addInequality(row, 0);
  }
  if (l1) {
    RationalVector sum(nv, Rational(0));
    for (std::size_t i = 0; i < 2 * N; ++i) {
      RationalVector row(nv, Rational(0));
      row[me + mi + i] = 1;
      lp.addInequality(row, 0);
      sum[me + mi + i] = -1;
    }
    lp.addInequality(sum, -1);
  } else {
    // largest k/1000 with (k/1000)^2 N <= 1
    long k = 0;
    while ((k + 1) * (k + 1) * static_cast<long>(N) <= 1000000) ++k;
    Rational r(k, 1000);
    r.canonicalize();
    for (std::size_t i = 0; i < N; ++i) {
      RationalVector up(nv, Rational(0)), lo(nv, Rational(0));
      up[me + mi + i] = -1;
      lo[me + mi + i] = 1;
      lp.addInequality(up, -r);
      lp.addInequality(lo, -r);
    }
  }
  auto out = lpFeasible(lp);
  if (out.status != LPStatus::Feasible && out.status != LPStatus::Optimal) return std::nullopt;
  Certificate c;
  c.eq.assign(out.point.begin(), out.point.begin() + static_cast<long>(me));
  c.ineq.assign(out.point.begin() + static_cast<long>(me), out.point.begin() + static_cast<long>(me + mi));
  RationalVector g(N);
  for (std::size_t i = 0; i < N; ++i) g[i] = out.point[me + mi + i] - (l1 ? out.point[me + mi + N + i] : Rational(0));
  if (!verifySeparator(p, g, c)) throw std::logic_error("separator certificate failed to verify");
  return std::make_pair(g, c);
}

}  // namespace

bool verifyVerdict(const Polyhedron& system, const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::Realizable:
      return strictlyFeasible(system, v.strictRows, v.witness) && lorentzQ(v.witness) > 0 && lorentzQ(v.witness) == v.q;
    case VerdictKind::Eliminated:
      if (v.certificate) return verifyStrictFarkas(system, *v.certificate, v.strictRows);
      if (v.separator && v.separatorCertificate) return verifySeparator(system, *v.separator, *v.separatorCertificate);
      return false;
    case VerdictKind::LinearFeasibleQuadUndecided:
      return true;
  }
  return false;
}

Verdict decideStrictQuad(const Polyhedron& p, const std::vector<bool>& strict) {
  Verdict v;
  v.strictRows = strict;
  auto sl = maxSlack(p, strict);
  if (!sl.positive) {
    v.kind = VerdictKind::Eliminated;
    v.certificate = sl.certificate;
    v.notes = "no point with the strict rows positive";
    return v;
  }
  WitnessSearch ws(p, strict, sl.point);
  auto done = [&] {
    if (!ws.found()) return false;
    v.kind = VerdictKind::Realizable;
    v.witness = ws.best();
    v.q = ws.bestQ();
    if (!verifyVerdict(p, v)) throw std::logic_error("witness failed re-substitution");
    return true;
  };
  if (done()) return v;

  std::size_t d = p.dim();
  // Ascent: maximize the linearization of q, then move along the segment or ray.
  for (int it = 0; it < 12 && !ws.found(); ++it) {
    Rational before = ws.bestQ();
    RationalVector grad(d);
    grad[0] = 2 * ws.best()[0];
    for (std::size_t i = 1; i < d; ++i) grad[i] = -2 * ws.best()[i];
    auto out = optimizeLinear(p, grad);
    if (out.status == LPStatus::Unbounded) ws.ray(out.ray);
    else if (out.status == LPStatus::Optimal) ws.segment(out.point);
    if (ws.bestQ() <= before) break;
  }
  if (done()) return v;

  // Strictly interior extreme points in each coordinate direction.
  Polyhedron inner = p;
  {
    Polyhedron shrunk(d);
    for (std::size_t i = 0; i < p.eqRows().size(); ++i) shrunk.addEquality(p.eqRows()[i], p.eqRhs()[i]);
    for (std::size_t r = 0; r < p.ineqRows().size(); ++r)
      shrunk.addInequality(p.ineqRows()[r], p.ineqRhs()[r] + (strict[r] ? sl.t / 2 : Rational(0)));
    inner = shrunk;
  }
  RationalVector start = ws.best();
  std::vector<RationalVector> pts;
  for (std::size_t i = 0; i < d && !ws.found(); ++i)
    for (auto sense : {Sense::Maximize, Sense::Minimize}) {
      RationalVector e(d, Rational(0));
      e[i] = 1;
      auto out = optimizeLinear(inner, e, sense);
      if (out.status == LPStatus::Optimal) {
        pts.push_back(out.point);
        ws.offer(out.point);
        ws.segment(out.point);
      } else if (out.status == LPStatus::Unbounded) {
        ws.ray(out.ray);
      }
    }
  for (std::size_t i = 0; i < pts.size() && !ws.found(); ++i)
    for (std::size_t j = i + 1; j < pts.size() && !ws.found(); ++j) {
      RationalVector mid = pts[i];
      for (std::size_t k = 0; k < d; ++k) mid[k] = (mid[k] + pts[j][k]) / 2;
      ws.offer(mid);
    }
  if (done()) return v;

  // Vertices and rays of the closed system, when few enough.
  auto vr = enumerateVerticesRays(p, 20000);
  if (!vr.capExceeded) {
    for (const auto& x : vr.vertices) ws.segment(x);
    for (const auto& r : vr.rays) ws.ray(r);
    for (const auto& r : vr.lineality) {
      ws.ray(r);
      RationalVector m = r;
      for (auto& x : m) x = -x;
      ws.ray(m);
    }
    if (done()) return v;
  }

  // Proof that q <= 0 on the whole system: x_0 <= g.x' with |g| <= 1.
  for (bool l1 : {false, true})
    if (auto sep = separate(p, l1)) {
      v.kind = VerdictKind::Eliminated;
      v.separator = sep->first;
      v.separatorCertificate = sep->second;
      v.notes = "q <= 0 on the linear system via a separating functional";
      return v;
    }

  v.kind = VerdictKind::LinearFeasibleQuadUndecided;
  v.witness = ws.best();
  v.q = ws.bestQ();
  v.notes = "strictly feasible points exist; best q found " + formatRational(ws.bestQ()) +
            (vr.capExceeded ? "; vertex enumeration over its cap" : "");
  return v;
}

Verdict testDeltaOnce(std::size_t N, const Assignment& a, const RationalVector& delta) {
  auto p = realizationSystem(N, a, delta);
  std::vector<bool> strict(p.ineqRows().size(), false);
  for (std::size_t i = 0; i <= N; ++i) strict[i] = true;
  return decideStrictQuad(p, strict);
}

DeltaReport testDelta(std::size_t N, const Assignment& a, const RationalVector& delta,
                      const std::vector<Permutation>& aut, bool stopOnSurvivor) {
  DeltaReport rep;
  rep.taus = aut;
  if (rep.taus.empty()) {
    Permutation id(a.size());
    for (std::size_t k = 0; k < id.size(); ++k) id[k] = k;
    rep.taus.push_back(id);
  }
  if (delta.size() != a.size()) throw Error(ErrorKind::DimensionMismatch, "delta length differs from component count");
  // Labelings with the same permuted delta share one system and one LP run.
  std::map<RationalVector, std::pair<Polyhedron, Verdict>> cache;
  rep.eliminatedForOrbit = true;
  for (const auto& tau : rep.taus) {
    if (tau.size() != a.size()) throw Error(ErrorKind::DimensionMismatch, "permutation length");
    RationalVector dt(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) dt[k] = delta[tau[k]];
    auto it = cache.find(dt);
    if (it == cache.end()) it = cache.emplace(dt, std::make_pair(realizationSystem(N, a, dt), testDeltaOnce(N, a, dt))).first;
    // every labeling's certificate is checked against that labeling's system
    if (!verifyVerdict(it->second.first, it->second.second)) throw std::logic_error("verdict failed re-verification");
    rep.perTau.push_back(it->second.second);
    if (it->second.second.kind != VerdictKind::Eliminated) {
      rep.eliminatedForOrbit = false;
      if (stopOnSurvivor) break;
    }
  }
  rep.distinctSystems = cache.size();
  return rep;
}

RobustnessResult robustness(std::size_t N, const Assignment& a, const std::optional<RationalVector>& certificate) {
  RobustnessResult res;
  auto cone = lambdaCone(N);
  auto m = a.rationalMatrix();
  if (certificate) {
    const auto& x = *certificate;
    res.x = x;
    if (x.size() != N + 1) {
      res.kind = RobustKind::CertificateRejected;
      res.reason = "certificate length must be N+1";
      return res;
    }
    for (std::size_t k = 0; k < m.size(); ++k)
      if (dot(m[k], x) != 0) {
        res.kind = RobustKind::CertificateRejected;
        res.reason = "I x is not zero in row " + std::to_string(k + 1);
        return res;
      }
    for (std::size_t r = 0; r < cone.ineqRows().size(); ++r) {
      Rational val = dot(cone.ineqRows()[r], x);
      if (val <= 0) {
        res.kind = RobustKind::CertificateRejected;
        res.violatedRow = r;
        std::string name = lambdaRowName(N, r);
        name = name.substr(0, name.size() - 5);
        res.reason = val == 0 ? "x lies on the boundary row " + name + " = 0" : "x violates " + name + " >= 0";
        return res;
      }
    }
    if (lorentzQ(x) <= 0) {
      res.kind = RobustKind::CertificateRejected;
      res.reason = "q(x) = " + formatRational(lorentzQ(x)) + " is not positive";
      return res;
    }
    res.kind = RobustKind::RobustCertified;
    res.reason = "I x = 0, x interior, q(x) = " + formatRational(lorentzQ(x));
    return res;
  }
  // Search the slice lambda_0 = 1 of ker(I) inside C_lambda.
  Polyhedron p = cone;
  for (const auto& row : m) p.addEquality(row, 0);
  RationalVector e0(N + 1, Rational(0));
  e0[0] = 1;
  p.addEquality(e0, 1);
  std::vector<bool> strict(p.ineqRows().size(), true);
  auto v = decideStrictQuad(p, strict);
  if (v.kind == VerdictKind::Realizable) {
    auto x = primitive(v.witness);
    auto check = robustness(N, a, x);
    if (check.kind != RobustKind::RobustCertified) throw std::logic_error("robustness witness failed its own check");
    return check;
  }
  res.kind = v.kind == VerdictKind::Eliminated ? RobustKind::NoCertificateFound : RobustKind::Undecided;
  res.reason = v.certificate ? "ker(I) misses the interior of C_lambda"
               : v.separator ? "q <= 0 on ker(I) inside C_lambda"
                             : v.notes;
  return res;
}

DeltaSearchReport searchEliminatingDelta(const ConfigSpec& spec, const std::vector<Assignment>& assignments,
                                         const std::vector<const ConeSpec*>& cones,
                                         const DeltaSearchStrategy& strategy) {
  std::size_t n = spec.n(), N = spec.ambientN;
  for (auto* c : cones)
    if (c->dim != n) throw Error(ErrorKind::DimensionMismatch, "cone dimension");
  auto w = interiorPoint(cones, n);
  if (!w) throw Error(ErrorKind::Precondition, "the cone has an empty interior");
  auto aut = computeAut(spec);
  if (!aut.complete()) throw Error(ErrorKind::CapExceeded, "Aut(D) too large to test every labeling");

  auto inside = [&](const RationalVector& d) {
    for (auto* c : cones)
      if (!c->strictlyContains(d)) return false;
    return true;
  };
  std::vector<RationalVector> cands;
  std::set<RationalVector> seen;
  auto add = [&](RationalVector d) {
    if (cands.size() >= strategy.maxCandidates || !inside(d)) return;
    d = primitive(d);
    if (seen.insert(d).second) cands.push_back(d);
  };
  RationalVector base = primitive(*w);
  add(base);
  add(RationalVector(n, Rational(1)));
  Rational top = 1;
  for (const auto& x : base) top = std::max(top, x);
  for (std::size_t k = 0; k < n; ++k)
    for (long mult : {1, 3, 9}) {
      RationalVector d = base;
      d[k] += top * mult;
      add(d);
    }
  double gridSize = std::pow(double(strategy.gridMax), double(n));
  if (n > 0 && gridSize <= double(strategy.maxGridPoints)) {
    std::vector<long> e(n, 1);
    while (true) {
      RationalVector d(n);
      for (std::size_t k = 0; k < n; ++k) d[k] = e[k];
      add(d);
      std::size_t k = 0;
      while (k < n && e[k] == static_cast<long>(strategy.gridMax)) e[k++] = 1;
      if (k == n) break;
      ++e[k];
    }
  }
  std::mt19937_64 rng(strategy.seed);
  for (std::size_t r = 0; r < strategy.randomPerturbations; ++r) {
    RationalVector d = base;
    for (auto& x : d) x = x * 4 + static_cast<long>(rng() % 4);
    add(d);
  }

  DeltaSearchReport rep;
  auto evaluate = [&](const RationalVector& d) {
    std::vector<std::optional<DeltaReport>> reports(assignments.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i; (i = next++) < assignments.size();) {
        auto r = testDelta(N, assignments[i], d, aut.elements, true);
        if (!r.eliminatedForOrbit) reports[i] = std::move(r);
      }
    };
    unsigned workers = std::max(1u, strategy.workers);
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    std::vector<SurvivorEntry> surv;
    for (std::size_t i = 0; i < reports.size(); ++i)
      if (reports[i]) surv.push_back({i, std::move(*reports[i])});
    return surv;
  };
  bool haveBest = false;
  auto consider = [&](const RationalVector& d) {
    ++rep.candidatesTried;
    auto surv = evaluate(d);
    if (!haveBest || surv.size() < rep.survivors.size()) {
      rep.delta = d;
      rep.survivors = std::move(surv);
      haveBest = true;
    }
    return rep.survivors.empty();
  };
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (consider(cands[i])) return rep;
  // Push the best candidate further along single coordinates.
  RationalVector best = rep.delta;
  for (std::size_t k = 0; k < n && rep.candidatesTried < strategy.maxCandidates; ++k)
    for (long s = 1; s <= 64 && rep.candidatesTried < strategy.maxCandidates; s *= 4) {
      RationalVector d = best;
      d[k] += top * s;
      if (!inside(d) || !seen.insert(primitive(d)).second) continue;
      if (consider(primitive(d))) return rep;
    }
  if (!rep.survivors.empty())
    rep.notes.push_back(std::to_string(rep.survivors.size()) + " assignment(s) survive every tried delta");
  return rep;
}

}  // namespace sympconf
