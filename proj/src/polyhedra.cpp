#include "sympconf/polyhedra.hpp"

#include "sympconf/error.hpp"

#include <cstdlib>
#include <limits>
#include <set>

namespace sympconf {

void Polyhedron::addEquality(RationalVector row, Rational rhs) {
  if (row.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "equality row length");
  eqRows_.push_back(std::move(row));
  eqRhs_.push_back(std::move(rhs));
}

void Polyhedron::addInequality(RationalVector row, Rational rhs) {
  if (row.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "inequality row length");
  ineqRows_.push_back(std::move(row));
  ineqRhs_.push_back(std::move(rhs));
}

std::optional<std::string> Polyhedron::firstViolation(const RationalVector& x) const {
  if (x.size() != dim_) return std::string("dimension");
  for (std::size_t i = 0; i < eqRows_.size(); ++i)
    if (dot(eqRows_[i], x) != eqRhs_[i]) return "equality " + std::to_string(i);
  for (std::size_t i = 0; i < ineqRows_.size(); ++i)
    if (dot(ineqRows_[i], x) < ineqRhs_[i]) return "inequality " + std::to_string(i);
  return std::nullopt;
}

bool Polyhedron::contains(const RationalVector& x) const { return !firstViolation(x); }

RationalVector combine(const Polyhedron& p, const Certificate& c) {
  if (c.eq.size() != p.eqRows().size() || c.ineq.size() != p.ineqRows().size())
    throw Error(ErrorKind::DimensionMismatch, "certificate length");
  RationalVector w(p.dim(), Rational(0));
  auto add = [&w](const RationalVector& row, const Rational& m) {
    if (sgn(m) == 0) return;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (sgn(row[j]) != 0) w[j] += m * row[j];
  };
  for (std::size_t i = 0; i < c.eq.size(); ++i) add(p.eqRows()[i], c.eq[i]);
  for (std::size_t i = 0; i < c.ineq.size(); ++i) add(p.ineqRows()[i], c.ineq[i]);
  return w;
}

Rational combinedRhs(const Polyhedron& p, const Certificate& c) {
  return dot(c.eq, p.eqRhs()) + dot(c.ineq, p.ineqRhs());
}

namespace {

bool nonNegative(const RationalVector& z) {
  for (const auto& v : z)
    if (sgn(v) < 0) return false;
  return true;
}

bool shapeOk(const Polyhedron& p, const Certificate& c) {
  return c.eq.size() == p.eqRows().size() && c.ineq.size() == p.ineqRows().size();
}

}  // namespace

bool verifyFarkas(const Polyhedron& p, const Certificate& c) {
  if (!shapeOk(p, c) || !nonNegative(c.ineq)) return false;
  return isZero(combine(p, c)) && combinedRhs(p, c) > 0;
}

bool verifyStrictFarkas(const Polyhedron& p, const Certificate& c, const std::vector<bool>& strictRows) {
  if (!shapeOk(p, c) || !nonNegative(c.ineq) || strictRows.size() != c.ineq.size()) return false;
  if (!isZero(combine(p, c))) return false;
  Rational r = combinedRhs(p, c);
  if (r > 0) return true;
  if (r < 0) return false;
  for (std::size_t i = 0; i < strictRows.size(); ++i)
    if (strictRows[i] && sgn(c.ineq[i]) > 0) return true;
  return false;
}

bool verifyUpperBound(const Polyhedron& p, const RationalVector& objective, const Certificate& c, const Rational& bound) {
  if (!shapeOk(p, c) || !nonNegative(c.ineq) || objective.size() != p.dim()) return false;
  RationalVector w = combine(p, c);
  for (std::size_t j = 0; j < w.size(); ++j)
    if (w[j] != -objective[j]) return false;
  return -combinedRhs(p, c) <= bound;
}

const char* lpStatusName(LPStatus s) {
  switch (s) {
    case LPStatus::Feasible: return "Feasible";
    case LPStatus::Infeasible: return "Infeasible";
    case LPStatus::Optimal: return "Optimal";
    case LPStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Dense tableau simplex with Bland's rule. Variables x_j are split into
// x+ - x- unless some inequality row is a plain bound c x_j >= 0.
class Simplex {
 public:
  explicit Simplex(const Polyhedron& p) : p_(p) { build(); }

  bool phaseOne();
  Certificate farkas() const;
  bool phaseTwo(const RationalVector& objective);  // false: unbounded
  RationalVector point() const;
  RationalVector ray() const { return ray_; }
  Certificate dual(const RationalVector& objective) const;

 private:
  enum class ColKind { Pos, Neg, NonNeg, Slack, Artificial };
  struct Col {
    ColKind kind;
    std::size_t ref;
  };
  struct Row {
    bool eq;
    std::size_t orig;
    int sign;
  };

  void build();
  void pivot(std::size_t r, std::size_t e);
  void resetObjective();
  // false when unbounded; entering column kept in unboundedCol_
  bool iterate();
  Certificate mapDuals(const RationalVector& pi, const RationalVector* objective) const;
  RationalVector duals() const;
  RationalVector mapColumns(const std::vector<Rational>& colValues) const;

  const Polyhedron& p_;
  std::vector<std::size_t> boundRow_;   // per variable
  std::vector<bool> isBound_;           // per inequality row
  std::vector<Col> cols_;
  std::vector<Row> rows_;
  std::vector<std::vector<Rational>> t_;  // rows x (cols + 1)
  std::vector<Rational> obj_;
  std::vector<Rational> cost_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> col0_;
  std::vector<bool> eligible_;
  std::vector<std::size_t> posCol_, negCol_;
  std::size_t unboundedCol_ = npos;
  RationalVector ray_;
  bool hasArtificial_ = false;
};

void Simplex::build() {
  std::size_t n = p_.dim();
  boundRow_.assign(n, npos);
  isBound_.assign(p_.ineqRows().size(), false);
  for (std::size_t i = 0; i < p_.ineqRows().size(); ++i) {
    if (sgn(p_.ineqRhs()[i]) != 0) continue;
    const auto& row = p_.ineqRows()[i];
    std::size_t nz = npos, count = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(row[j]) != 0) {
        nz = j;
        ++count;
      }
    if (count == 1 && sgn(row[nz]) > 0) {
      isBound_[i] = true;
      if (boundRow_[nz] == npos) boundRow_[nz] = i;
    }
  }
  posCol_.assign(n, npos);
  negCol_.assign(n, npos);
  for (std::size_t j = 0; j < n; ++j) {
    if (boundRow_[j] != npos) {
      posCol_[j] = cols_.size();
      cols_.push_back({ColKind::NonNeg, j});
    } else {
      posCol_[j] = cols_.size();
      cols_.push_back({ColKind::Pos, j});
      negCol_[j] = cols_.size();
      cols_.push_back({ColKind::Neg, j});
    }
  }
  for (std::size_t i = 0; i < p_.eqRows().size(); ++i)
    rows_.push_back({true, i, sgn(p_.eqRhs()[i]) < 0 ? -1 : 1});
  for (std::size_t i = 0; i < p_.ineqRows().size(); ++i)
    if (!isBound_[i]) rows_.push_back({false, i, sgn(p_.ineqRhs()[i]) <= 0 ? -1 : 1});

  std::size_t m = rows_.size();
  std::vector<std::size_t> slackOf(m, npos);
  for (std::size_t r = 0; r < m; ++r)
    if (!rows_[r].eq) {
      slackOf[r] = cols_.size();
      cols_.push_back({ColKind::Slack, r});
    }
  col0_.assign(m, npos);
  basis_.assign(m, npos);
  for (std::size_t r = 0; r < m; ++r) {
    if (!rows_[r].eq && rows_[r].sign < 0) {
      col0_[r] = slackOf[r];
    } else {
      col0_[r] = cols_.size();
      cols_.push_back({ColKind::Artificial, r});
      hasArtificial_ = true;
    }
    basis_[r] = col0_[r];
  }

  std::size_t width = cols_.size() + 1;
  t_.assign(m, std::vector<Rational>(width, Rational(0)));
  for (std::size_t r = 0; r < m; ++r) {
    const Row& row = rows_[r];
    const RationalVector& coeffs = row.eq ? p_.eqRows()[row.orig] : p_.ineqRows()[row.orig];
    const Rational& rhs = row.eq ? p_.eqRhs()[row.orig] : p_.ineqRhs()[row.orig];
    auto& tr = t_[r];
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(coeffs[j]) == 0) continue;
      tr[posCol_[j]] = row.sign * coeffs[j];
      if (negCol_[j] != npos) tr[negCol_[j]] = -row.sign * coeffs[j];
    }
    if (slackOf[r] != npos) tr[slackOf[r]] = -row.sign;
    tr[col0_[r]] = 1;
    tr[width - 1] = row.sign * rhs;
  }
  eligible_.assign(cols_.size(), true);
  cost_.assign(cols_.size(), Rational(0));
}

void Simplex::pivot(std::size_t r, std::size_t e) {
  std::size_t width = cols_.size() + 1;
  auto& pr = t_[r];
  Rational inv = 1 / pr[e];
  std::vector<std::size_t> nz;
  for (std::size_t j = 0; j < width; ++j)
    if (sgn(pr[j]) != 0) {
      pr[j] *= inv;
      nz.push_back(j);
    }
  auto eliminate = [&](std::vector<Rational>& row) {
    if (sgn(row[e]) == 0) return;
    Rational f = row[e];
    for (std::size_t j : nz) row[j] -= f * pr[j];
  };
  for (std::size_t i = 0; i < t_.size(); ++i)
    if (i != r) eliminate(t_[i]);
  eliminate(obj_);
  basis_[r] = e;
}

void Simplex::resetObjective() {
  std::size_t width = cols_.size() + 1;
  obj_.assign(width, Rational(0));
  for (std::size_t j = 0; j < cols_.size(); ++j) obj_[j] = cost_[j];
  for (std::size_t r = 0; r < t_.size(); ++r) {
    const Rational& cb = cost_[basis_[r]];
    if (sgn(cb) == 0) continue;
    for (std::size_t j = 0; j < width; ++j)
      if (sgn(t_[r][j]) != 0) obj_[j] -= cb * t_[r][j];
  }
}

bool Simplex::iterate() {
  std::size_t rhs = cols_.size();
  for (;;) {
    std::size_t e = npos;
    for (std::size_t j = 0; j < cols_.size(); ++j)
      if (eligible_[j] && sgn(obj_[j]) < 0) {
        e = j;
        break;
      }
    if (e == npos) return true;
    std::size_t leave = npos;
    Rational best;
    for (std::size_t r = 0; r < t_.size(); ++r) {
      if (sgn(t_[r][e]) <= 0) continue;
      Rational ratio = t_[r][rhs] / t_[r][e];
      if (leave == npos || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == npos) {
      unboundedCol_ = e;
      return false;
    }
    pivot(leave, e);
  }
}

bool Simplex::phaseOne() {
  if (!hasArtificial_) return true;
  for (std::size_t j = 0; j < cols_.size(); ++j)
    cost_[j] = cols_[j].kind == ColKind::Artificial ? 1 : 0;
  resetObjective();
  iterate();  // bounded below by zero
  if (sgn(obj_[cols_.size()]) != 0) return false;
  for (std::size_t r = 0; r < t_.size(); ++r) {
    if (cols_[basis_[r]].kind != ColKind::Artificial) continue;
    for (std::size_t j = 0; j < cols_.size(); ++j)
      if (cols_[j].kind != ColKind::Artificial && sgn(t_[r][j]) != 0) {
        pivot(r, j);
        break;
      }
  }
  for (std::size_t j = 0; j < cols_.size(); ++j)
    if (cols_[j].kind == ColKind::Artificial) eligible_[j] = false;
  return true;
}

RationalVector Simplex::duals() const {
  RationalVector pi(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) pi[r] = cost_[col0_[r]] - obj_[col0_[r]];
  return pi;
}

Certificate Simplex::mapDuals(const RationalVector& pi, const RationalVector* objective) const {
  Certificate c;
  c.eq.assign(p_.eqRows().size(), Rational(0));
  c.ineq.assign(p_.ineqRows().size(), Rational(0));
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Rational m = pi[r] * rows_[r].sign;
    (rows_[r].eq ? c.eq : c.ineq)[rows_[r].orig] = m;
  }
  RationalVector w = combine(p_, c);
  for (std::size_t j = 0; j < p_.dim(); ++j) {
    if (boundRow_[j] == npos) continue;
    Rational target = objective ? -(*objective)[j] : Rational(0);
    std::size_t b = boundRow_[j];
    c.ineq[b] = (target - w[j]) / p_.ineqRows()[b][j];
  }
  return c;
}

Certificate Simplex::farkas() const { return mapDuals(duals(), nullptr); }

Certificate Simplex::dual(const RationalVector& objective) const { return mapDuals(duals(), &objective); }

bool Simplex::phaseTwo(const RationalVector& objective) {
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    const Col& c = cols_[j];
    switch (c.kind) {
      case ColKind::Pos:
      case ColKind::NonNeg: cost_[j] = -objective[c.ref]; break;
      case ColKind::Neg: cost_[j] = objective[c.ref]; break;
      default: cost_[j] = 0;
    }
  }
  resetObjective();
  if (iterate()) return true;
  std::vector<Rational> d(cols_.size(), Rational(0));
  d[unboundedCol_] = 1;
  for (std::size_t r = 0; r < t_.size(); ++r) d[basis_[r]] = -t_[r][unboundedCol_];
  ray_ = mapColumns(d);
  return false;
}

RationalVector Simplex::mapColumns(const std::vector<Rational>& v) const {
  RationalVector x(p_.dim(), Rational(0));
  for (std::size_t j = 0; j < p_.dim(); ++j) {
    x[j] = v[posCol_[j]];
    if (negCol_[j] != npos) x[j] -= v[negCol_[j]];
  }
  return x;
}

RationalVector Simplex::point() const {
  std::vector<Rational> v(cols_.size(), Rational(0));
  for (std::size_t r = 0; r < t_.size(); ++r) v[basis_[r]] = t_[r][cols_.size()];
  return mapColumns(v);
}

[[noreturn]] void internalFailure(const char* what) {
  throw std::logic_error(std::string("simplex self-check failed: ") + what);
}

}  // namespace

LPOutcome lpFeasible(const Polyhedron& p) {
  Simplex s(p);
  LPOutcome out;
  if (!s.phaseOne()) {
    out.status = LPStatus::Infeasible;
    out.certificate = s.farkas();
    if (!verifyFarkas(p, out.certificate)) internalFailure("farkas");
    return out;
  }
  out.status = LPStatus::Feasible;
  out.point = s.point();
  if (!p.contains(out.point)) internalFailure("witness");
  return out;
}

LPOutcome optimizeLinear(const Polyhedron& p, const RationalVector& objective, Sense sense) {
  if (objective.size() != p.dim()) throw Error(ErrorKind::DimensionMismatch, "objective length");
  RationalVector c = objective;
  if (sense == Sense::Minimize)
    for (auto& v : c) v = -v;
  Simplex s(p);
  LPOutcome out;
  if (!s.phaseOne()) {
    out.status = LPStatus::Infeasible;
    out.certificate = s.farkas();
    if (!verifyFarkas(p, out.certificate)) internalFailure("farkas");
    return out;
  }
  if (!s.phaseTwo(c)) {
    out.status = LPStatus::Unbounded;
    out.point = s.point();
    out.ray = s.ray();
    Polyhedron cone(p.dim());
    for (std::size_t i = 0; i < p.eqRows().size(); ++i) cone.addEquality(p.eqRows()[i], 0);
    for (std::size_t i = 0; i < p.ineqRows().size(); ++i) cone.addInequality(p.ineqRows()[i], 0);
    if (!cone.contains(out.ray) || dot(c, out.ray) <= 0) internalFailure("ray");
    return out;
  }
  out.status = LPStatus::Optimal;
  out.point = s.point();
  out.value = dot(objective, out.point);
  out.certificate = s.dual(c);
  if (!p.contains(out.point)) internalFailure("optimal point");
  if (!verifyUpperBound(p, c, out.certificate, dot(c, out.point))) internalFailure("dual bound");
  return out;
}

std::vector<RationalVector> nullSpaceBasis(const RationalMatrix& m, std::size_t columns) {
  // Integer row reduction with gcd normalization; no fractions until the end.
  std::vector<std::vector<Integer>> a;
  for (const auto& row : m) {
    if (row.size() != columns) throw Error(ErrorKind::DimensionMismatch, "nullSpaceBasis row length");
    Integer l = 1;
    for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> ir(columns);
    for (std::size_t j = 0; j < columns; ++j) ir[j] = row[j].get_num() * (l / row[j].get_den());
    a.push_back(std::move(ir));
  }
  auto normalize = [](std::vector<Integer>& row) {
    Integer g = 0;
    for (const auto& x : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
      for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  };
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < columns && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Integer f = a[i][c], g = a[r][c];
      for (std::size_t j = 0; j < columns; ++j) a[i][j] = a[i][j] * g - a[r][j] * f;
      normalize(a[i]);
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> isPivot(columns, false);
  for (auto c : pivots) isPivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < columns; ++f) {
    if (isPivot[f]) continue;
    RationalVector v(columns, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = Rational(-a[i][f], a[i][pivots[i]]);
    for (auto& x : v) x.canonicalize();
    basis.push_back(primitive(v));
  }
  return basis;
}

namespace {

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return r;
}

// Calls f on every k-subset of {0..n-1}.
template <class F>
void forEachSubset(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::size_t rankOf(RationalMatrix m) { return rref(m).size(); }

}  // namespace

VertexRayResult enumerateVerticesRays(const Polyhedron& p, std::size_t basisCap) {
  if (const char* env = std::getenv("SYMPCONFIG_BASIS_CAP")) basisCap = std::strtoull(env, nullptr, 10);
  VertexRayResult out;
  std::size_t d = p.dim();
  RationalMatrix all = p.eqRows();
  all.insert(all.end(), p.ineqRows().begin(), p.ineqRows().end());
  out.lineality = nullSpaceBasis(all, d);
  if (!out.lineality.empty()) return out;  // not pointed

  std::size_t re = rankOf(p.eqRows());
  std::size_t k = d - re;
  std::size_t m = p.ineqRows().size();
  double count = binomial(m, k) + (k > 0 ? binomial(m, k - 1) : 0);
  if (count > double(basisCap)) {
    out.capExceeded = true;
    return out;
  }

  std::set<RationalVector> vertices, rays;
  forEachSubset(m, k, [&](const std::vector<std::size_t>& sub) {
    RationalMatrix sys;
    for (std::size_t i = 0; i < p.eqRows().size(); ++i) {
      sys.push_back(p.eqRows()[i]);
      sys.back().push_back(p.eqRhs()[i]);
    }
    for (auto i : sub) {
      sys.push_back(p.ineqRows()[i]);
      sys.back().push_back(p.ineqRhs()[i]);
    }
    auto piv = rref(sys);
    if (piv.size() != d || (piv.size() > 0 && piv.back() >= d)) return;
    // inconsistent systems show a pivot in the rhs column
    for (std::size_t r = d; r < sys.size(); ++r)
      if (sgn(sys[r][d]) != 0) return;
    RationalVector x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = sys[i][d];
    if (p.contains(x)) vertices.insert(x);
  });
  if (k > 0) {
    forEachSubset(m, k - 1, [&](const std::vector<std::size_t>& sub) {
      RationalMatrix sys = p.eqRows();
      for (auto i : sub) sys.push_back(p.ineqRows()[i]);
      auto dir = nullSpaceBasis(sys, d);
      if (dir.size() != 1) return;
      for (int s : {1, -1}) {
        RationalVector r = dir[0];
        if (s < 0)
          for (auto& v : r) v = -v;
        bool ok = true;
        for (const auto& row : p.ineqRows())
          if (dot(row, r) < 0) {
            ok = false;
            break;
          }
        if (ok) rays.insert(primitive(r));
      }
    });
  }
  out.vertices.assign(vertices.begin(), vertices.end());
  out.rays.assign(rays.begin(), rays.end());
  return out;
}

}  // namespace sympconf
