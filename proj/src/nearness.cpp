#include "sympconf/nearness.hpp"

#include "sympconf/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

namespace sympconf {

bool NearnessForest::leq(std::size_t i, std::size_t j) const {
  for (std::optional<std::size_t> c = j; c; c = nodes[*c].parent)
    if (*c == i) return true;
  return false;
}

std::vector<std::size_t> NearnessForest::roots() const {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!nodes[i].parent) r.push_back(i);
  return r;
}

std::vector<std::size_t> NearnessForest::children(std::size_t i) const {
  std::vector<std::size_t> c;
  for (std::size_t j = 0; j < nodes.size(); ++j)
    if (nodes[j].parent == i) c.push_back(j);
  return c;
}

std::vector<std::size_t> NearnessForest::subtree(std::size_t i) const {
  std::vector<std::size_t> out{i};
  for (std::size_t at = 0; at < out.size(); ++at)
    for (std::size_t c : children(out[at])) out.push_back(c);
  return out;
}

std::vector<std::size_t> NearnessForest::chain(std::size_t i) const {
  std::vector<std::size_t> out;
  for (auto p = nodes[i].parent; p; p = nodes[*p].parent) out.push_back(*p);
  return out;
}

std::optional<std::size_t> leadingClass(const ClassVector& v) {
  if (v.a() != 0) return std::nullopt;
  for (std::size_t i = 0; i < v.ambient(); ++i)
    if (v.b(i) == -1) return i;
  return std::nullopt;
}

namespace {

std::string lbl(std::size_t i) { return "E" + std::to_string(i + 1); }

}  // namespace

NearnessForest buildForest(const Assignment& a) {
  const std::size_t N = a.ambient();
  NearnessForest f;
  f.nodes.resize(N);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto& v = a.vectors[k];
    if (v.ambient() != N) throw Error(ErrorKind::DimensionMismatch, "component " + std::to_string(k + 1));
    if (v.a() < 0) throw Error(ErrorKind::Precondition, "component " + std::to_string(k + 1) + " has negative degree");
    if (!isAdmissible(v)) throw Error(ErrorKind::Precondition, "component " + std::to_string(k + 1) + " is not admissible");
    if (!isPositive(v))
      throw Error(ErrorKind::PositivityViolation, "component " + std::to_string(k + 1) + " (" + v.str() + ") is not positive");
    if (v.a() != 0) continue;
    std::size_t m = *leadingClass(v);
    if (f.nodes[m].leadingOf)
      throw Error(ErrorKind::NearnessViolation, lbl(m) + " leads two components");
    f.nodes[m].leadingOf = k;
    for (std::size_t i = 0; i < N; ++i)
      if (v.b(i) == 1) f.nodes[i].holders.push_back(k);
  }
  for (std::size_t i = 0; i < N; ++i) {
    auto& nd = f.nodes[i];
    if (nd.holders.size() > 2)
      throw Error(ErrorKind::NearnessViolation, lbl(i) + " is a non-leading class of more than two components");
    nd.minimal = nd.holders.empty();
    nd.satellite = nd.holders.size() == 2;
    // The parent is the larger leading class among the holders.
    for (std::size_t h : nd.holders) {
      std::size_t m = *leadingClass(a.vectors[h]);
      if (!nd.parent || m > *nd.parent) nd.parent = m;
    }
    if (nd.parent && *nd.parent >= i)
      throw Error(ErrorKind::NearnessViolation, lbl(i) + " precedes its parent " + lbl(*nd.parent));
    nd.maximal = !nd.leadingOf || square(a.vectors[*nd.leadingOf]) == -1;
  }
  // b_ki >= b_kj whenever E_i <= E_j; checking the order-1 edges suffices.
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto& v = a.vectors[k];
    if (v.a() <= 0) continue;
    for (std::size_t j = 0; j < N; ++j) {
      auto p = f.nodes[j].parent;
      if (p && v.b(*p) < v.b(j))
        throw Error(ErrorKind::MonotonicityViolation, "component " + std::to_string(k + 1) + ": b at " + lbl(*p) +
                                                          " is below b at " + lbl(j));
    }
  }
  return f;
}

const char* blowdownCaseName(BlowdownCase c, bool primed) {
  if (c == BlowdownCase::A) return primed ? "a'" : "a";
  return primed ? "b'" : "b";
}

BlowdownReport checkBlowdownAssumptions(const Assignment& a, BlowdownMode mode) {
  buildForest(a);
  const std::size_t N = a.ambient(), n = a.size();
  BlowdownReport rep;
  rep.primed = mode == BlowdownMode::Primed;
  if (rep.primed && N >= 2)
    for (std::size_t k = 0; k < n && !rep.sigma0; ++k)
      if (a.vectors[k].a() == 1 && a.vectors[k].b(0) > 0 && a.vectors[k].b(1) > 0) rep.sigma0 = k;

  for (std::size_t s = 0; s < n; ++s) {
    const auto& S = a.vectors[s];
    if (S.a() != 0) continue;
    BlowdownEntry e;
    e.component = s;
    e.leading = *leadingClass(S);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == s) continue;
      bool zeroHolder = a.vectors[k].a() == 0 && a.vectors[k].b(e.leading) == 1;
      bool sigmaHolder = rep.sigma0 == k && a.vectors[k].b(e.leading) > 0;
      if (zeroHolder || sigmaHolder) e.holders.push_back(k);
    }
    // With no holder the single-holder rule is applied with S_1 absent.
    e.kase = e.holders.size() >= 2 ? BlowdownCase::A : BlowdownCase::B;
    for (std::size_t l = 0; l < N; ++l) {
      if (S.b(l) != 1) continue;
      bool inHolder = false;
      for (std::size_t h : e.holders) inHolder = inHolder || a.vectors[h].b(l) != 0;
      if (inHolder) continue;
      std::vector<std::size_t> others;
      for (std::size_t k = 0; k < n; ++k)
        if (k != s && a.vectors[k].b(l) != 0) others.push_back(k);
      bool bad;
      if (e.kase == BlowdownCase::A) {
        std::size_t ones = 0;
        for (std::size_t k : others) ones += a.vectors[k].b(l) == 1;
        bad = ones > 1;
      } else {
        bad = others.size() > 1 || (others.size() == 1 && a.vectors[others[0]].b(l) > 1);
      }
      if (bad) e.offending.push_back(l);
    }
    e.pass = e.kase == BlowdownCase::A ? e.offending.empty() : e.offending.size() <= 1;
    e.detail = std::string("case (") + blowdownCaseName(e.kase, rep.primed) + ") for " + S.str() + ": " +
               std::to_string(e.offending.size()) + " offending class(es)";
    rep.pass = rep.pass && e.pass;
    rep.entries.push_back(std::move(e));
  }
  if (N >= 1)
    for (std::size_t k = 0; k < n; ++k) {
      const auto& v = a.vectors[k];
      if (!rep.dWitness && v.a() == 0 && v.b(0) == -1) rep.dWitness = k;
      if (!rep.eWitness && v.a() > 0 && 2 * v.b(0) < v.a()) rep.eWitness = k;
    }
  return rep;
}

Integer CombinatorialType::localMultiplicity(std::size_t k, std::size_t l, std::size_t root) const {
  Integer m = 0;
  for (std::size_t j : forest.subtree(root)) m += mult[k][j] * mult[l][j];
  return m;
}

bool CombinatorialType::bezoutConsistent(std::string* why) const {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  auto roots = forest.roots();
  std::vector<int> seen(N, 0);
  for (std::size_t r : roots)
    for (std::size_t j : forest.subtree(r)) ++seen[j];
  for (std::size_t j = 0; j < N; ++j)
    if (seen[j] != 1) return fail(lbl(j) + " is not covered by exactly one root");
  for (std::size_t k = 0; k < components.size(); ++k)
    for (std::size_t l = 0; l < components.size(); ++l) {
      if (k == l) continue;
      Integer s = residual[k][l];
      for (std::size_t r : roots) s += localMultiplicity(k, l, r);
      if (s != degree[k] * degree[l]) return fail("intersection count mismatch for a component pair");
      if (residual[k][l] < 0) return fail("negative residual");
    }
  return true;
}

CombinatorialType buildCombinatorialType(const Assignment& a) {
  CombinatorialType t;
  t.N = a.ambient();
  t.forest = buildForest(a);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto& v = a.vectors[k];
    if (v.a() > 0) {
      t.components.push_back(k);
      t.degree.push_back(v.a());
      t.genus.push_back(virtualGenus(v));
      t.mult.push_back(v.b());
    } else {
      t.zeroComponents.push_back(k);
      t.zeroRows.push_back(v.b());
    }
  }
  const std::size_t m = t.components.size();
  t.residual.assign(m, std::vector<Integer>(m, 0));
  t.zeroPairing.assign(m, std::vector<Integer>(t.zeroComponents.size(), 0));
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = 0; l < m; ++l)
      if (k != l) t.residual[k][l] = pair(a.vectors[t.components[k]], a.vectors[t.components[l]]);
    for (std::size_t z = 0; z < t.zeroComponents.size(); ++z)
      t.zeroPairing[k][z] = pair(a.vectors[t.components[k]], a.vectors[t.zeroComponents[z]]);
  }
  std::string why;
  if (!t.bezoutConsistent(&why)) throw Error(ErrorKind::BezoutInconsistent, why);
  return t;
}

namespace {

// Uniform view: every component as (a, genus, row).
struct Rows {
  std::vector<Integer> a, g;
  std::vector<const std::vector<Integer>*> row;
  std::vector<std::size_t> orig;
};

Rows rowsOf(const CombinatorialType& t) {
  Rows r;
  for (std::size_t k = 0; k < t.components.size(); ++k) {
    r.a.push_back(t.degree[k]);
    r.g.push_back(t.genus[k]);
    r.row.push_back(&t.mult[k]);
    r.orig.push_back(t.components[k]);
  }
  for (std::size_t z = 0; z < t.zeroComponents.size(); ++z) {
    r.a.push_back(0);
    r.g.push_back(0);
    r.row.push_back(&t.zeroRows[z]);
    r.orig.push_back(t.zeroComponents[z]);
  }
  return r;
}

bool sameFlags(const NearnessNode& x, const NearnessNode& y) {
  return x.minimal == y.minimal && x.maximal == y.maximal && x.satellite == y.satellite &&
         x.leadingOf.has_value() == y.leadingOf.has_value();
}

using ColumnSig = std::vector<std::tuple<Integer, Integer, Integer>>;

ColumnSig columnSig(const Rows& r, std::size_t i) {
  ColumnSig s;
  for (std::size_t k = 0; k < r.a.size(); ++k)
    if ((*r.row[k])[i] != 0) s.emplace_back(r.a[k], r.g[k], (*r.row[k])[i]);
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

bool verifyIsomorphism(const CombinatorialType& t1, const CombinatorialType& t2, const TypeIsomorphism& w,
                       std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  const std::size_t n = t1.components.size() + t1.zeroComponents.size();
  if (t1.N != t2.N || n != t2.components.size() + t2.zeroComponents.size()) return fail("sizes differ");
  if (w.nodeMap.size() != t1.N || w.componentMap.size() != n) return fail("witness has the wrong size");
  std::vector<char> hit(t1.N, 0), hitc(n, 0);
  for (std::size_t x : w.nodeMap) {
    if (x >= t1.N || hit[x]) return fail("node map is not a bijection");
    hit[x] = 1;
  }
  for (std::size_t x : w.componentMap) {
    if (x >= n || hitc[x]) return fail("component map is not a bijection");
    hitc[x] = 1;
  }
  Rows r1 = rowsOf(t1), r2 = rowsOf(t2);
  std::vector<std::size_t> pos2(n);
  for (std::size_t k = 0; k < n; ++k) pos2[r2.orig[k]] = k;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t l = pos2[w.componentMap[r1.orig[k]]];
    if (r1.a[k] != r2.a[l] || r1.g[k] != r2.g[l]) return fail("degree or genus not preserved");
    for (std::size_t i = 0; i < t1.N; ++i)
      if ((*r1.row[k])[i] != (*r2.row[l])[w.nodeMap[i]]) return fail("multiplicities not preserved");
  }
  for (std::size_t i = 0; i < t1.N; ++i) {
    const auto& x = t1.forest.nodes[i];
    const auto& y = t2.forest.nodes[w.nodeMap[i]];
    if (!sameFlags(x, y)) return fail("node flags not preserved");
    if (x.parent.has_value() != y.parent.has_value() || (x.parent && w.nodeMap[*x.parent] != *y.parent))
      return fail("forest structure not preserved");
  }
  return true;
}

IsoResult typesIsomorphic(const CombinatorialType& t1, const CombinatorialType& t2, std::size_t stepCap) {
  IsoResult res;
  const std::size_t N = t1.N;
  Rows r1 = rowsOf(t1), r2 = rowsOf(t2);
  const std::size_t n = r1.a.size();
  if (N != t2.N || n != r2.a.size() || t1.components.size() != t2.components.size()) return res;

  std::vector<ColumnSig> s1(N), s2(N);
  for (std::size_t i = 0; i < N; ++i) {
    s1[i] = columnSig(r1, i);
    s2[i] = columnSig(r2, i);
  }
  // cand[k][l]: component k of t1 may still map to l of t2.
  std::vector<std::vector<char>> cand(n, std::vector<char>(n, 0));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) cand[k][l] = r1.a[k] == r2.a[l] && r1.g[k] == r2.g[l];

  Permutation sigma(N, 0);
  std::vector<char> used(N, 0);
  bool capped = false;
  TypeIsomorphism w;

  // At a leaf the candidates relate identical rows, so a greedy match decides.
  auto matchComponents = [&]() -> bool {
    w.nodeMap = sigma;
    w.componentMap.assign(n, 0);
    std::vector<char> taken(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      bool found = false;
      for (std::size_t l = 0; l < n && !found; ++l)
        if (cand[k][l] && !taken[l]) {
          taken[l] = 1;
          w.componentMap[r1.orig[k]] = r2.orig[l];
          found = true;
        }
      if (!found) return false;
    }
    return verifyIsomorphism(t1, t2, w);
  };

  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (++res.steps > stepCap) {
      capped = true;
      return false;
    }
    if (i == N) return matchComponents();
    const auto& x = t1.forest.nodes[i];
    for (std::size_t j = 0; j < N; ++j) {
      if (used[j]) continue;
      const auto& y = t2.forest.nodes[j];
      if (!sameFlags(x, y) || s1[i] != s2[j]) continue;
      if (x.parent.has_value() != y.parent.has_value() || (x.parent && sigma[*x.parent] != *y.parent)) continue;
      std::vector<std::pair<std::size_t, std::size_t>> cleared;
      bool ok = true;
      for (std::size_t k = 0; k < n && ok; ++k) {
        bool any = false;
        for (std::size_t l = 0; l < n; ++l) {
          if (!cand[k][l]) continue;
          if ((*r1.row[k])[i] != (*r2.row[l])[j]) {
            cand[k][l] = 0;
            cleared.emplace_back(k, l);
          } else {
            any = true;
          }
        }
        ok = any;
      }
      if (ok) {
        sigma[i] = j;
        used[j] = 1;
        if (rec(i + 1)) return true;
        used[j] = 0;
      }
      for (auto [k, l] : cleared) cand[k][l] = 1;
      if (capped) return false;
    }
    return false;
  };

  if (!rec(0)) {
    res.status = capped ? IsoStatus::Undecided : IsoStatus::NotIsomorphic;
    return res;
  }
  res.status = IsoStatus::Isomorphic;
  res.witness = std::move(w);
  return res;
}

TypeIsomorphism invert(const TypeIsomorphism& w) {
  return {inverse(w.componentMap), inverse(w.nodeMap)};
}

TypeIsomorphism composeIso(const TypeIsomorphism& second, const TypeIsomorphism& first) {
  return {compose(second.componentMap, first.componentMap), compose(second.nodeMap, first.nodeMap)};
}

Assignment relabelColumns(const Assignment& a, const Permutation& p) {
  Assignment out;
  for (const auto& v : a.vectors) {
    std::vector<Integer> b(v.ambient());
    for (std::size_t i = 0; i < b.size(); ++i) b[p[i]] = v.b(i);
    out.vectors.emplace_back(v.a(), std::move(b));
  }
  return out;
}

NormalizedOrder normalizeOrder(const std::vector<ClassVector>& vectors) {
  const std::size_t N = vectors.empty() ? 0 : vectors[0].ambient();
  std::vector<std::vector<std::size_t>> pred(N);
  for (const auto& v : vectors) {
    if (v.ambient() != N) throw Error(ErrorKind::DimensionMismatch, "normalizeOrder");
    if (v.a() < 0 || !isAdmissible(v))
      throw Error(ErrorKind::Precondition, "normalizeOrder needs admissible vectors with a >= 0: " + v.str());
    if (v.a() != 0) continue;
    std::size_t m = *leadingClass(v);
    for (std::size_t i = 0; i < N; ++i)
      if (v.b(i) == 1) pred[i].push_back(m);
  }
  // Walk indices in order; before placing one, place its predecessors.
  std::vector<int> state(N, 0);  // 0 new, 1 open, 2 placed
  Permutation relabel(N, 0);
  std::size_t next = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    if (state[i] == 2) return;
    if (state[i] == 1) throw Error(ErrorKind::NotOrderable, "cyclic leading-class constraints through " + lbl(i));
    state[i] = 1;
    auto ps = pred[i];
    std::sort(ps.begin(), ps.end());
    for (std::size_t p : ps) visit(p);
    state[i] = 2;
    relabel[i] = next++;
  };
  for (std::size_t i = 0; i < N; ++i) visit(i);

  NormalizedOrder out;
  out.relabel = relabel;
  out.assignment = relabelColumns(Assignment{vectors}, relabel);
  for (const auto& v : out.assignment.vectors)
    if (!isPositive(v)) throw Error(ErrorKind::NotOrderable, v.str() + " stays non-positive");
  try {
    buildForest(out.assignment);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::MonotonicityViolation) throw;
    throw Error(ErrorKind::NotOrderable, e.what());
  }
  return out;
}

}  // namespace sympconf
