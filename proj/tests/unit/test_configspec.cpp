#include "doctest.h"

#include "sympconf/configspec.hpp"
#include "sympconf/error.hpp"

#include <algorithm>
#include <random>

using namespace sympconf;

namespace {

ConfigSpec path3(long nu) {
  ConfigSpec s;
  s.ambientN = 5;
  s.nu = {nu, nu, nu};
  s.genus = {0, 0, 0};
  s.offDiag = {{0, 1, 0}, {1, 0, 1}, {0, 1, 0}};
  return s;
}

RationalMatrix sortedRows(RationalMatrix m) {
  std::sort(m.begin(), m.end());
  return m;
}

// Row r of a cone, read through tau: r'_k = r_{tau(k)}.
RationalMatrix permuteRows(const RationalMatrix& rows, const Permutation& tau) {
  RationalMatrix out;
  for (const auto& r : rows) {
    RationalVector p(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) p[k] = r[tau[k]];
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("classification") {
  CHECK(validateConfig(ConfigSpec::disjoint(7, 7, -2)) == ConfigClass::NegDef);
  CHECK(validateConfig(ConfigSpec::disjoint(3, 1, 1, 4)) == ConfigClass::ConnNonsingNonnegDef);
  CHECK(validateConfig(ConfigSpec::disjoint(3, 2, 0)) == ConfigClass::FailsDoubleDagger);
  CHECK(validateConfig(path3(-2)) == ConfigClass::NegDef);
  CHECK(validateConfig(path3(1)) == ConfigClass::ConnNonsingNonnegDef);
  CHECK(validateConfig(path3(-1)) == ConfigClass::ConnNonsingNonnegDef);  // det 1
  // two meeting (-1)-spheres: connected but det 0
  ConfigSpec pair2;
  pair2.ambientN = 2;
  pair2.nu = {-1, -1};
  pair2.genus = {0, 0};
  pair2.offDiag = {{0, 1}, {1, 0}};
  CHECK(validateConfig(pair2) == ConfigClass::FailsDoubleDagger);
  // disjoint, not negative definite
  CHECK(validateConfig(ConfigSpec::disjoint(3, 2, 1)) == ConfigClass::FailsDoubleDagger);
}

TEST_CASE("shape validation") {
  auto s = path3(-2);
  s.offDiag[0][2] = 1;  // asymmetric
  CHECK_THROWS_AS(s.validateShape(), Error);
  s = path3(-2);
  s.offDiag[0][1] = s.offDiag[1][0] = 2;
  CHECK_THROWS_AS(s.validateShape(), Error);
  s = path3(-2);
  s.genus[1] = -1;
  CHECK_THROWS_AS(s.validateShape(), Error);
}

TEST_CASE("star data") {
  auto nine = ConfigSpec::disjoint(12, 9, -3);
  auto st = starData(nine);
  for (const auto& c : st.c) CHECK(c == Rational(-1, 3));
  CHECK(st.i0.empty());
  CHECK(st.i1.size() == 9);
  CHECK_FALSE(st.degenerate);

  auto seven = ConfigSpec::disjoint(7, 7, -2);
  st = starData(seven);
  for (const auto& c : st.c) CHECK(c == 0);
  CHECK(st.i0.size() == 7);
  CHECK(st.degenerate);
  CHECK_FALSE(st.warnings.empty());

  auto one = ConfigSpec::disjoint(5, 1, -4);
  st = starData(one);
  CHECK(st.c[0] == Rational(-1, 2));
  CHECK(st.i0.empty());
  CHECK(st.i1.empty());

  // c >= 0 on a non-sphere component breaks (*)
  CHECK_THROWS_AS(starData(ConfigSpec::disjoint(5, 1, 1, 2)), Error);

  // singular: two disjoint tori of square 0, d = 0 is consistent
  try {
    starData(ConfigSpec::disjoint(3, 2, 0, 1));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularConsistent);
  }
  // two disjoint square-0 spheres: d = (-2, -2), outside the column space of 0
  try {
    starData(ConfigSpec::disjoint(3, 2, 0, 0));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularInconsistent);
  }
}

TEST_CASE("Q c = d on random nonsingular configurations") {
  std::mt19937 rng(7);
  int solved = 0;
  for (int iter = 0; iter < 300; ++iter) {
    std::size_t n = 1 + rng() % 5;
    ConfigSpec s;
    s.ambientN = 9;
    s.offDiag.assign(n, std::vector<int>(n, 0));
    for (std::size_t k = 0; k < n; ++k) {
      s.nu.push_back(static_cast<long>(rng() % 7) - 5);
      s.genus.push_back(rng() % 3 == 0 ? 1 : 0);
      for (std::size_t l = k + 1; l < n; ++l) s.offDiag[k][l] = s.offDiag[l][k] = rng() % 3 == 0;
    }
    auto q = s.qRational();
    if (determinant(s.q()) == 0) continue;
    auto d = adjunctionRhs(s);
    RationalVector c = solveSquare(q, d);
    bool sphereCond = true;
    for (std::size_t k = 0; k < n; ++k)
      if (c[k] >= 0 && !(s.genus[k] == 0 && s.nu[k] <= 0 && s.nu[k] >= -3)) sphereCond = false;
    if (!sphereCond) {
      CHECK_THROWS_AS(starData(s), Error);
      continue;
    }
    auto st = starData(s);
    for (std::size_t k = 0; k < n; ++k) CHECK(dot(q[k], st.c) == d[k]);
    ++solved;
  }
  CHECK(solved > 20);
}

TEST_CASE("automorphism groups") {
  auto g = computeAut(ConfigSpec::disjoint(7, 7, -2));
  CHECK(g.order == 5040);
  CHECK(g.elements.size() == 5040);

  ConfigSpec two;
  two.ambientN = 3;
  two.nu = {-1, -2};
  two.genus = {0, 0};
  two.offDiag = {{0, 0}, {0, 0}};
  CHECK(computeAut(two).order == 1);

  g = computeAut(path3(-2));
  CHECK(g.order == 2);
  std::set<Permutation> el(g.elements.begin(), g.elements.end());
  CHECK(el.count(Permutation{0, 1, 2}));
  CHECK(el.count(Permutation{2, 1, 0}));

  // generators only past the cap
  auto big = computeAut(ConfigSpec::disjoint(9, 9, -3), 1000);
  CHECK(big.order == 362880);
  CHECK_FALSE(big.complete());
  CHECK_FALSE(big.generators.empty());
}

TEST_CASE("automorphism groups are closed and preserve the delta cone") {
  std::vector<ConfigSpec> specs = {ConfigSpec::disjoint(6, 5, -2), path3(1), path3(-2)};
  // star: centre with four leaves
  ConfigSpec star;
  star.ambientN = 8;
  star.nu = {-3, -2, -2, -2, -2};
  star.genus = {0, 0, 0, 0, 0};
  star.offDiag.assign(5, std::vector<int>(5, 0));
  for (std::size_t l = 1; l < 5; ++l) star.offDiag[0][l] = star.offDiag[l][0] = 1;
  specs.push_back(star);
  for (const auto& s : specs) {
    auto g = computeAut(s);
    REQUIRE(g.complete());
    std::set<Permutation> el(g.elements.begin(), g.elements.end());
    CHECK(el.size() == g.elements.size());
    for (const auto& f : g.elements) {
      CHECK(el.count(inverse(f)));
      for (const auto& h : g.generators) CHECK(el.count(compose(f, h)));
      for (std::size_t k = 0; k < s.n(); ++k) {
        CHECK(s.nu[f[k]] == s.nu[k]);
        CHECK(s.genus[f[k]] == s.genus[k]);
        for (std::size_t l = 0; l < s.n(); ++l) CHECK(s.offDiag[f[k]][f[l]] == s.offDiag[k][l]);
      }
      auto cone = deltaCone(s);
      CHECK(sortedRows(permuteRows(cone.rows, f)) == sortedRows(cone.rows));
    }
  }
  CHECK(computeAut(star).order == 24);
}

TEST_CASE("cones") {
  auto nine = ConfigSpec::disjoint(12, 9, -3);
  auto st = starData(nine);
  auto cones = buildCones(nine, st, StarVariant::i1());
  REQUIRE(cones.interiorWitness);
  CHECK(cones.cStar.strictlyContains(*cones.interiorWitness));
  CHECK(cones.cDelta.strictlyContains(*cones.interiorWitness));
  RationalVector ones(9, Rational(1));
  CHECK(cones.cStar.strictlyContains(ones));  // 2 <= 3
  CHECK(cones.cDelta.rows.size() == 9);       // NegDef: delta >= 0 only

  auto seven = ConfigSpec::disjoint(7, 7, -2);
  auto st7 = starData(seven);
  auto c7 = buildCones(seven, st7, StarVariant::i0());
  CHECK_FALSE(c7.interiorWitness);

  // connected nonsingular, not negative definite: Q^{-1} rows added
  auto p = path3(1);
  auto cd = deltaCone(p);
  CHECK(cd.rows.size() == 6);
  auto qi = p.qRational();
  RationalVector delta{Rational(1), Rational(1), Rational(1)};
  // Q^{-1}(1,1,1) = (0,1,0) for this Q, so (1,1,1) lies on the boundary
  CHECK(cd.contains(delta));
  CHECK_FALSE(cd.strictlyContains(delta));
}

TEST_CASE("star variants") {
  auto nine = ConfigSpec::disjoint(12, 9, -3);
  auto st = starData(nine);
  CHECK(variantIndexSet(st, StarVariant::i0()).empty());
  CHECK(variantIndexSet(st, StarVariant::i1()).size() == 9);
  CHECK(variantIndexSet(st, StarVariant::of({0, 3})).size() == 2);
  auto single = ConfigSpec::disjoint(5, 1, -4);
  auto s1 = starData(single);
  CHECK_THROWS_AS(variantIndexSet(s1, StarVariant::of({0})), Error);  // not inside I1
}
