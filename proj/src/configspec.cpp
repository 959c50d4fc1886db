#include "sympconf/configspec.hpp"

#include "sympconf/error.hpp"
#include "sympconf/polyhedra.hpp"

#include <algorithm>
#include <functional>

namespace sympconf {

std::vector<std::vector<Integer>> ConfigSpec::q() const {
  std::vector<std::vector<Integer>> m(n(), std::vector<Integer>(n()));
  for (std::size_t k = 0; k < n(); ++k)
    for (std::size_t l = 0; l < n(); ++l) m[k][l] = nuKL(k, l);
  return m;
}

RationalMatrix ConfigSpec::qRational() const {
  RationalMatrix m(n(), RationalVector(n()));
  for (std::size_t k = 0; k < n(); ++k)
    for (std::size_t l = 0; l < n(); ++l) m[k][l] = nuKL(k, l);
  return m;
}

ConfigSpec ConfigSpec::disjoint(std::size_t N, std::size_t n, long nu, long genus) {
  ConfigSpec s;
  s.ambientN = N;
  s.nu.assign(n, nu);
  s.genus.assign(n, genus);
  s.offDiag.assign(n, std::vector<int>(n, 0));
  return s;
}

void ConfigSpec::validateShape() const {
  if (genus.size() != n()) throw Error(ErrorKind::InvalidConfig, "genus list length differs from component count");
  if (offDiag.size() != n()) throw Error(ErrorKind::InvalidConfig, "intersection matrix size");
  for (std::size_t k = 0; k < n(); ++k) {
    if (genus[k] < 0) throw Error(ErrorKind::InvalidConfig, "negative genus at component " + std::to_string(k + 1));
    if (offDiag[k].size() != n()) throw Error(ErrorKind::InvalidConfig, "intersection matrix row size");
    if (offDiag[k][k] != 0) throw Error(ErrorKind::InvalidConfig, "diagonal of the off-diagonal matrix must be 0");
    for (std::size_t l = 0; l < n(); ++l) {
      if (offDiag[k][l] != 0 && offDiag[k][l] != 1)
        throw Error(ErrorKind::InvalidConfig, "components meet at most once, transversely");
      if (offDiag[k][l] != offDiag[l][k]) throw Error(ErrorKind::InvalidConfig, "intersection matrix not symmetric");
    }
  }
  if (starC && starC->size() != n()) throw Error(ErrorKind::InvalidConfig, "star.c length differs from component count");
}

const char* configClassName(ConfigClass c) {
  switch (c) {
    case ConfigClass::NegDef: return "NegDef";
    case ConfigClass::ConnNonsingNonnegDef: return "ConnNonsingNonnegDef";
    case ConfigClass::FailsDoubleDagger: return "FailsDoubleDagger";
  }
  return "?";
}

bool isNegativeDefinite(const ConfigSpec& spec) {
  auto m = spec.q();
  for (auto& row : m)
    for (auto& x : row) x = -x;
  for (std::size_t k = 1; k <= m.size(); ++k) {
    std::vector<std::vector<Integer>> lead(k, std::vector<Integer>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead[i][j] = m[i][j];
    if (determinant(lead) <= 0) return false;
  }
  return true;
}

bool isConnected(const ConfigSpec& spec) {
  if (spec.n() == 0) return true;
  std::vector<bool> seen(spec.n(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    auto k = stack.back();
    stack.pop_back();
    for (std::size_t l = 0; l < spec.n(); ++l)
      if (!seen[l] && spec.offDiag[k][l]) {
        seen[l] = true;
        stack.push_back(l);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

ConfigClass validateConfig(const ConfigSpec& spec) {
  spec.validateShape();
  if (isNegativeDefinite(spec)) return ConfigClass::NegDef;
  if (isConnected(spec) && determinant(spec.q()) != 0) return ConfigClass::ConnNonsingNonnegDef;
  return ConfigClass::FailsDoubleDagger;
}

RationalVector adjunctionRhs(const ConfigSpec& spec) {
  RationalVector d(spec.n());
  for (std::size_t l = 0; l < spec.n(); ++l) d[l] = 2 * spec.genus[l] - 2 - spec.nu[l];
  return d;
}

AffineFamily starFamily(const ConfigSpec& spec) {
  std::size_t n = spec.n();
  RationalMatrix aug = spec.qRational();
  auto d = adjunctionRhs(spec);
  for (std::size_t i = 0; i < n; ++i) aug[i].push_back(d[i]);
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == n)
    throw Error(ErrorKind::SingularInconsistent, "Q c = d has no solution");
  AffineFamily fam;
  fam.particular.assign(n, Rational(0));
  for (std::size_t i = 0; i < piv.size(); ++i) fam.particular[piv[i]] = aug[i][n];
  fam.directions = nullSpaceBasis(spec.qRational(), n);
  return fam;
}

namespace {

bool solvesStar(const ConfigSpec& spec, const RationalVector& c) {
  auto q = spec.qRational();
  auto d = adjunctionRhs(spec);
  for (std::size_t l = 0; l < spec.n(); ++l)
    if (dot(q[l], c) != d[l]) return false;
  return true;
}

}  // namespace

StarData starData(const ConfigSpec& spec) {
  spec.validateShape();
  StarData s;
  auto fam = starFamily(spec);
  if (!fam.directions.empty()) {
    if (!spec.starC)
      throw Error(ErrorKind::SingularConsistent,
                  "Q is singular; c is determined only up to a " + std::to_string(fam.directions.size()) +
                      "-dimensional family; supply star.c explicitly");
    s.c = *spec.starC;
  } else {
    s.c = fam.particular;
    if (spec.starC && *spec.starC != s.c) throw Error(ErrorKind::InvalidConfig, "star.c does not solve Q c = d");
  }
  if (!solvesStar(spec, s.c)) throw Error(ErrorKind::InvalidConfig, "star.c does not solve Q c = d");
  s.asserted = spec.starAsserted;
  for (std::size_t k = 0; k < spec.n(); ++k) {
    if (sgn(s.c[k]) >= 0) s.i0.insert(k);
    long nu = spec.nu[k];
    if (spec.genus[k] == 0 && nu <= 0 && nu >= -3) s.i1.insert(k);
  }
  for (auto k : s.i0)
    if (!s.i1.count(k))
      throw Error(ErrorKind::StarSphereConditionViolated,
                  "component " + std::to_string(k + 1) + " has c_k >= 0 but is not a sphere of square -3..0");
  s.degenerate = spec.n() > 0 && isZero(s.c);
  if (s.degenerate && spec.ambientN != 9)
    s.warnings.push_back("c = 0 solves Q c = d, but K is nonzero unless N = 9; condition (*) cannot hold");
  return s;
}

Permutation compose(const Permutation& f, const Permutation& g) {
  Permutation h(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) h[i] = f[g[i]];
  return h;
}

Permutation inverse(const Permutation& f) {
  Permutation h(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) h[f[i]] = i;
  return h;
}

namespace {

class AutSearch {
 public:
  explicit AutSearch(const ConfigSpec& s) : s_(s), n_(s.n()) {}

  bool compatible(const Permutation& img, std::size_t k, std::size_t c) const {
    if (s_.nu[k] != s_.nu[c] || s_.genus[k] != s_.genus[c]) return false;
    for (std::size_t l = 0; l < k; ++l)
      if (s_.offDiag[k][l] != s_.offDiag[c][img[l]]) return false;
    return true;
  }

  // Depth-first over images of 0..n-1 starting from a fixed prefix; visit returns false to stop.
  void run(Permutation prefix, const std::function<bool(const Permutation&)>& visit) {
    Permutation img(n_, 0);
    std::vector<bool> used(n_, false);
    for (std::size_t k = 0; k < prefix.size(); ++k) {
      if (used[prefix[k]] || !compatible(img, k, prefix[k])) return;
      img[k] = prefix[k];
      used[prefix[k]] = true;
    }
    stop_ = false;
    rec(img, used, prefix.size(), visit);
  }

 private:
  void rec(Permutation& img, std::vector<bool>& used, std::size_t k, const std::function<bool(const Permutation&)>& visit) {
    if (stop_) return;
    if (k == n_) {
      if (!visit(img)) stop_ = true;
      return;
    }
    for (std::size_t c = 0; c < n_ && !stop_; ++c) {
      if (used[c] || !compatible(img, k, c)) continue;
      img[k] = c;
      used[c] = true;
      rec(img, used, k + 1, visit);
      used[c] = false;
    }
  }

  const ConfigSpec& s_;
  std::size_t n_;
  bool stop_ = false;
};

}  // namespace

AutGroup computeAut(const ConfigSpec& spec, std::size_t cap) {
  spec.validateShape();
  std::size_t n = spec.n();
  AutSearch search(spec);
  AutGroup g;
  g.order = 1;
  // Transversals of the stabilizer chain 1 >= Stab(0) >= Stab(0,1) >= ...
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t orbit = 0;
    Permutation prefix(i);
    for (std::size_t k = 0; k < i; ++k) prefix[k] = k;
    for (std::size_t j = i; j < n; ++j) {
      auto pre = prefix;
      pre.push_back(j);
      std::optional<Permutation> found;
      search.run(pre, [&](const Permutation& p) {
        found = p;
        return false;
      });
      if (!found) continue;
      ++orbit;
      if (j != i) g.generators.push_back(*found);
    }
    g.order *= orbit;
  }
  if (g.order <= cap) {
    search.run({}, [&](const Permutation& p) {
      g.elements.push_back(p);
      return true;
    });
  }
  if (n == 0) g.elements.push_back({});
  return g;
}

bool ConeSpec::contains(const RationalVector& x) const {
  for (const auto& r : rows)
    if (dot(r, x) < 0) return false;
  return true;
}

bool ConeSpec::strictlyContains(const RationalVector& x) const {
  for (const auto& r : rows)
    if (dot(r, x) <= 0) return false;
  return true;
}

std::string StarVariant::str() const {
  switch (kind) {
    case Kind::I0: return "I0";
    case Kind::I1: return "I1";
    case Kind::Subset: {
      std::string s = "S{";
      bool first = true;
      for (auto k : subset) {
        s += (first ? "" : ",") + std::to_string(k + 1);
        first = false;
      }
      return s + "}";
    }
  }
  return "?";
}

std::set<std::size_t> variantIndexSet(const StarData& star, const StarVariant& v) {
  switch (v.kind) {
    case StarVariant::Kind::I0: return star.i0;
    case StarVariant::Kind::I1: return star.i1;
    case StarVariant::Kind::Subset:
      for (auto k : star.i0)
        if (!v.subset.count(k)) throw Error(ErrorKind::Precondition, "subset must contain I0");
      for (auto k : v.subset)
        if (!star.i1.count(k)) throw Error(ErrorKind::Precondition, "subset must lie inside I1");
      return v.subset;
  }
  return {};
}

ConeSpec deltaCone(const ConfigSpec& spec) {
  auto cls = validateConfig(spec);
  if (cls == ConfigClass::FailsDoubleDagger)
    throw Error(ErrorKind::Precondition, "configuration fails condition (double dagger)");
  std::size_t n = spec.n();
  ConeSpec c;
  c.dim = n;
  for (std::size_t k = 0; k < n; ++k) {
    RationalVector r(n, Rational(0));
    r[k] = 1;
    c.rows.push_back(r);
  }
  if (cls == ConfigClass::ConnNonsingNonnegDef) {
    // rows of Q^{-1}
    auto q = spec.qRational();
    RationalMatrix inv(n);
    for (std::size_t k = 0; k < n; ++k) {
      RationalVector e(n, Rational(0));
      e[k] = 1;
      auto col = solveSquare(q, e);
      for (std::size_t i = 0; i < n; ++i) inv[i].push_back(col[i]);
    }
    for (auto& r : inv) c.rows.push_back(r);
  }
  return c;
}

std::optional<RationalVector> interiorPoint(const std::vector<const ConeSpec*>& cones, std::size_t dim) {
  RationalVector ones(dim, Rational(1));
  bool onesOk = true;
  for (auto* c : cones)
    if (!c->strictlyContains(ones)) onesOk = false;
  if (onesOk) return ones;
  Polyhedron p(dim + 1);
  for (auto* c : cones)
    for (const auto& r : c->rows) {
      auto row = r;
      row.push_back(-1);
      p.addInequality(row, 0);
    }
  RationalVector cap(dim + 1, Rational(0));
  cap[dim] = -1;
  p.addInequality(cap, -1);
  RationalVector obj(dim + 1, Rational(0));
  obj[dim] = 1;
  auto out = optimizeLinear(p, obj);
  if (out.status != LPStatus::Optimal || out.value <= 0) return std::nullopt;
  RationalVector x(out.point.begin(), out.point.begin() + dim);
  return primitive(x);
}

Cones buildCones(const ConfigSpec& spec, const StarData& star, const StarVariant& variant) {
  Cones out;
  out.cDelta = deltaCone(spec);
  std::size_t n = spec.n();
  out.cStar.dim = n;
  auto idx = variantIndexSet(star, variant);
  Rational weight = variant.kind == StarVariant::Kind::I0 ? 1 : 2;
  for (auto k : idx) {
    RationalVector r(n);
    for (std::size_t l = 0; l < n; ++l) r[l] = -star.c[l];
    r[k] -= weight;
    out.cStar.rows.push_back(r);
  }
  out.interiorWitness = interiorPoint({&out.cDelta, &out.cStar}, n);
  return out;
}

}  // namespace sympconf
