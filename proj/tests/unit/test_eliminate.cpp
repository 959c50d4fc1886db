#include "doctest.h"

#include "sympconf/eliminate.hpp"
#include "sympconf/error.hpp"

#include <random>

using namespace sympconf;

namespace {

ClassVector line(std::size_t N, const std::vector<std::size_t>& idx) {
  ClassVector v = ClassVector::hyperplane(N);
  for (auto i : idx) v -= ClassVector::exceptional(N, i - 1);
  return v;
}

Assignment fromLines(std::size_t N, const std::vector<std::vector<std::size_t>>& lines) {
  Assignment a;
  for (const auto& l : lines) a.vectors.push_back(line(N, l));
  return a;
}

Assignment fano() {
  return fromLines(7, {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {3, 5, 6}, {2, 5, 7}, {3, 4, 7}});
}

// i=1 j=2 k=3 r=4 s=5 t=6 u=7 v=8 w=9 x=10 y=11 z=12
Assignment nine() {
  return fromLines(12, {{1, 4, 5, 6}, {1, 7, 8, 9}, {1, 10, 11, 12}, {2, 4, 7, 10}, {2, 5, 8, 11}, {2, 6, 9, 12},
                        {3, 4, 8, 12}, {3, 5, 9, 10}, {3, 6, 7, 11}});
}

RationalVector vec(std::initializer_list<long> xs) {
  RationalVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

RationalVector ones(std::size_t n, long first = 1) {
  RationalVector v(n, Rational(1));
  if (n) v[0] = first;
  return v;
}

Assignment permuteColumns(const Assignment& a, const std::vector<std::size_t>& p) {
  Assignment out;
  for (const auto& v : a.vectors) {
    std::vector<Integer> b(v.ambient());
    for (std::size_t i = 0; i < b.size(); ++i) b[p[i]] = v.b(i);
    out.vectors.emplace_back(v.a(), b);
  }
  return out;
}

}  // namespace

TEST_CASE("realization system shape") {
  auto p = realizationSystem(7, fano(), RationalVector(7, Rational(1)));
  CHECK(p.eqRows().size() == 7);
  CHECK(p.ineqRows().size() == 8 + 35);
  CHECK(p.eqRows()[0] == vec({1, -1, -1, -1, 0, 0, 0, 0}));

  Assignment root;
  root.vectors.emplace_back(0, std::vector<long>{1, -1});
  auto p2 = realizationSystem(2, root, vec({5}));
  CHECK(p2.ineqRows().size() == 3);
  CHECK(p2.eqRows()[0] == vec({0, -1, 1}));
  CHECK(p2.eqRhs()[0] == 5);

  auto p0 = realizationSystem(4, Assignment{}, {});
  CHECK(p0.eqRows().empty());
  CHECK(p0.ineqRows().size() == 5 + 4);
  CHECK_THROWS_AS(realizationSystem(7, fano(), vec({1, 2})), Error);
  CHECK(lambdaRowName(7, 8) == "lambda0-lambda1-lambda2-lambda3 >= 0");
  CHECK(lambdaRowName(7, 3) == "lambda3 >= 0");
}

TEST_CASE("Fano: realizable at equal areas, eliminated with one heavy line") {
  auto v = testDeltaOnce(7, fano(), RationalVector(7, Rational(1)));
  REQUIRE(v.kind == VerdictKind::Realizable);
  CHECK(v.q > 0);
  // the stated witness works too
  auto p = realizationSystem(7, fano(), RationalVector(7, Rational(1)));
  CHECK(p.contains(ones(8, 4)));
  CHECK(lorentzQ(ones(8, 4)) == 9);

  auto aut = computeAut(ConfigSpec::disjoint(7, 7, -2)).elements;
  auto heavy = vec({10, 1, 1, 1, 1, 1, 1});
  auto rep = testDelta(7, fano(), heavy, aut);
  CHECK(rep.perTau.size() == 5040);
  CHECK(rep.eliminatedForOrbit);
  CHECK(rep.distinctSystems == 7);
  for (std::size_t i = 0; i < rep.perTau.size(); ++i) {
    const auto& t = rep.perTau[i];
    CHECK(t.kind == VerdictKind::Eliminated);
    RationalVector dt(7);
    for (std::size_t k = 0; k < 7; ++k) dt[k] = heavy[rep.taus[i][k]];
    CHECK(verifyVerdict(realizationSystem(7, fano(), dt), t));
  }
  auto eq = testDelta(7, fano(), RationalVector(7, Rational(1)), aut);
  CHECK_FALSE(eq.eliminatedForOrbit);
  CHECK(eq.distinctSystems == 1);
}

TEST_CASE("empty assignment is realizable") {
  for (std::size_t N = 0; N <= 12; ++N) {
    auto v = testDeltaOnce(N, Assignment{}, {});
    CHECK(v.kind == VerdictKind::Realizable);
    CHECK(lorentzQ(v.witness) > 0);
  }
}

TEST_CASE("verdicts do not depend on column order") {
  std::mt19937 rng(9);
  std::vector<std::size_t> p = {0, 1, 2, 3, 4, 5, 6};
  for (int i = 0; i < 10; ++i) {
    std::shuffle(p.begin(), p.end(), rng);
    auto f = permuteColumns(fano(), p);
    for (auto d : {vec({10, 1, 1, 1, 1, 1, 1}), vec({1, 1, 1, 1, 1, 1, 1}), vec({2, 3, 1, 1, 5, 1, 2})}) {
      auto a = testDeltaOnce(7, fano(), d);
      auto b = testDeltaOnce(7, f, d);
      CHECK(a.kind == b.kind);
    }
  }
}

TEST_CASE("robustness certificates") {
  auto r = robustness(12, nine(), ones(13, 4));
  CHECK(r.kind == RobustKind::RobustCertified);
  CHECK(lorentzQ(ones(13, 4)) == 4);

  auto f = robustness(7, fano(), ones(8, 3));
  CHECK(f.kind == RobustKind::CertificateRejected);
  REQUIRE(f.violatedRow);
  CHECK(lambdaRowName(7, *f.violatedRow) == "lambda0-lambda1-lambda2-lambda3 >= 0");
  CHECK(f.reason.find("boundary") != std::string::npos);

  CHECK(robustness(7, fano(), ones(8, 4)).kind == RobustKind::CertificateRejected);  // not in the null space
  CHECK(robustness(4, Assignment{}, ones(5, 4)).kind == RobustKind::RobustCertified);

  // search mode
  auto s = robustness(12, nine(), std::nullopt);
  CHECK(s.kind == RobustKind::RobustCertified);
  auto sf = robustness(7, fano(), std::nullopt);
  CHECK(sf.kind == RobustKind::NoCertificateFound);
  CHECK(robustness(5, Assignment{}, std::nullopt).kind == RobustKind::RobustCertified);
}

TEST_CASE("a robust assignment is realizable at random interior areas") {
  std::mt19937 rng(21);
  auto a = nine();
  for (int i = 0; i < 6; ++i) {
    RationalVector d(9);
    for (auto& x : d) x = Rational(1 + static_cast<long>(rng() % 20), 1 + static_cast<long>(rng() % 5));
    for (auto& x : d) x.canonicalize();
    auto v = testDeltaOnce(12, a, d);
    CHECK(v.kind == VerdictKind::Realizable);
  }
}

TEST_CASE("q is non-negative on the positive part of C_lambda for N <= 9") {
  std::mt19937 rng(2024);
  int zeros = 0;
  for (int it = 0; it < 10000; ++it) {
    std::size_t N = 3 + rng() % 7;
    RationalVector x(N + 1);
    bool special = N == 9 && rng() % 10 == 0;
    for (std::size_t i = 1; i <= N; ++i) {
      x[i] = special ? Rational(1) : Rational(1 + static_cast<long>(rng() % 50), 1 + static_cast<long>(rng() % 7));
      x[i].canonicalize();
    }
    std::vector<Rational> s(x.begin() + 1, x.end());
    std::sort(s.rbegin(), s.rend());
    Rational top = s[0] + s[1] + s[2];
    Rational extra = rng() % 3 == 0 ? Rational(0) : Rational(static_cast<long>(rng() % 10), 1 + static_cast<long>(rng() % 4));
    extra.canonicalize();
    x[0] = top + extra;
    if (special) {
      Rational scale(1 + static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 9));
      scale.canonicalize();
      for (auto& v : x) v *= scale;
    }
    REQUIRE(lambdaCone(N).contains(x));
    Rational q = lorentzQ(x);
    CHECK(q >= 0);
    if (q == 0) {
      ++zeros;
      CHECK(N == 9);
      for (std::size_t i = 1; i <= N; ++i) CHECK(x[0] == 3 * x[i]);
    }
  }
  CHECK(zeros > 0);
}

TEST_CASE("searching for an eliminating delta") {
  auto spec = ConfigSpec::disjoint(7, 7, -2);
  ConeSpec pos{7, {}};
  for (std::size_t k = 0; k < 7; ++k) {
    RationalVector r(7, Rational(0));
    r[k] = 1;
    pos.rows.push_back(r);
  }
  auto rep = searchEliminatingDelta(spec, {fano()}, {&pos});
  CHECK(rep.survivors.empty());
  auto check = testDelta(7, fano(), rep.delta, computeAut(spec).elements);
  CHECK(check.eliminatedForOrbit);

  auto empty = searchEliminatingDelta(spec, {}, {&pos});
  CHECK(empty.survivors.empty());
  CHECK(empty.candidatesTried == 1);

  // a robust assignment survives
  auto nspec = ConfigSpec::disjoint(12, 9, -3);
  ConeSpec npos{9, {}};
  for (std::size_t k = 0; k < 9; ++k) {
    RationalVector r(9, Rational(0));
    r[k] = 1;
    npos.rows.push_back(r);
  }
  DeltaSearchStrategy st;
  st.maxCandidates = 3;
  st.randomPerturbations = 0;
  auto nr = searchEliminatingDelta(nspec, {nine()}, {&npos}, st);
  CHECK(nr.survivors.size() == 1);

  ConeSpec emptyCone{7, pos.rows};
  emptyCone.rows.push_back(RationalVector(7, Rational(-1)));
  CHECK_THROWS_AS(searchEliminatingDelta(spec, {fano()}, {&emptyCone}), Error);
}

TEST_CASE("quadratic decisions beyond N = 9") {
  // E_i - E_{i+1} rows tie all lambda_i together; the line row fixes lambda_0 = 3 lambda_1 + h.
  const std::size_t N = 10;
  Assignment a;
  for (std::size_t i = 0; i + 1 < N; ++i) {
    std::vector<long> b(N, 0);
    b[i] = -1;
    b[i + 1] = 1;
    a.vectors.emplace_back(0, b);
  }
  a.vectors.push_back(line(N, {1, 2, 3}));
  RationalVector d(N, Rational(0));

  // h = 0: every point is s(3,1,...,1) with q = -s^2
  auto v = testDeltaOnce(N, a, d);
  REQUIRE(v.kind == VerdictKind::Eliminated);
  CHECK(v.separator);
  CHECK_FALSE(v.certificate);
  CHECK(verifyVerdict(realizationSystem(N, a, d), v));

  // h = 1: q = -s^2 + 6s + 1 is positive near s = 1
  d[N - 1] = 1;
  auto w = testDeltaOnce(N, a, d);
  REQUIRE(w.kind == VerdictKind::Realizable);
  CHECK(lorentzQ(w.witness) > 0);
  CHECK(verifyVerdict(realizationSystem(N, a, d), w));

  // a tampered separator no longer verifies
  auto bad = v;
  (*bad.separator)[0] += 1;
  CHECK_FALSE(verifyVerdict(realizationSystem(N, a, RationalVector(N, Rational(0))), bad));
}

TEST_CASE("N = 9 points on the (3,1,...,1) ray") {
  const std::size_t N = 9;
  Assignment a;
  for (std::size_t i = 0; i + 1 < N; ++i) {
    std::vector<long> b(N, 0);
    b[i] = -1;
    b[i + 1] = 1;
    a.vectors.emplace_back(0, b);
  }
  a.vectors.push_back(line(N, {1, 2, 3}));
  // only the ray survives: q = 0 everywhere, so nothing realizes
  auto v = testDeltaOnce(N, a, RationalVector(N, Rational(0)));
  CHECK(v.kind != VerdictKind::Realizable);
  if (v.kind == VerdictKind::Eliminated) CHECK(verifyVerdict(realizationSystem(N, a, RationalVector(N, Rational(0))), v));
  // freeing one coordinate leaves the ray
  Assignment b2 = a;
  b2.vectors.erase(b2.vectors.begin());
  auto w = testDeltaOnce(N, b2, RationalVector(N - 1, Rational(0)));
  CHECK(w.kind == VerdictKind::Realizable);
}
