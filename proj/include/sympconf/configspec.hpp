#pragma once

#include "sympconf/numeric.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sympconf {

struct ConfigSpec {
  std::size_t ambientN = 0;
  std::vector<long> nu;      // self-intersections
  std::vector<long> genus;
  std::vector<std::vector<int>> offDiag;  // symmetric 0/1, zero diagonal
  // Optional user-supplied coefficients of condition (*).
  std::optional<RationalVector> starC;
  bool starAsserted = false;

  std::size_t n() const { return nu.size(); }
  long nuKL(std::size_t k, std::size_t l) const { return k == l ? nu[k] : offDiag[k][l]; }
  std::vector<std::vector<Integer>> q() const;
  RationalMatrix qRational() const;

  // Disjoint components with equal data.
  static ConfigSpec disjoint(std::size_t N, std::size_t n, long nu, long genus = 0);
  // Throws InvalidConfig when (†) data are malformed.
  void validateShape() const;
};

enum class ConfigClass { NegDef, ConnNonsingNonnegDef, FailsDoubleDagger };
const char* configClassName(ConfigClass c);

ConfigClass validateConfig(const ConfigSpec& spec);
bool isNegativeDefinite(const ConfigSpec& spec);
bool isConnected(const ConfigSpec& spec);

struct StarData {
  RationalVector c;
  std::set<std::size_t> i0, i1;
  bool asserted = false;
  bool degenerate = false;  // c = 0
  std::vector<std::string> warnings;
};

// Family of solutions of Q c = d for singular consistent Q.
struct AffineFamily {
  RationalVector particular;
  std::vector<RationalVector> directions;
};

// Solves Q c = d. Throws SingularInconsistent, SingularConsistent (unless the spec
// carries a verified user choice), StarSphereConditionViolated.
StarData starData(const ConfigSpec& spec);
AffineFamily starFamily(const ConfigSpec& spec);
RationalVector adjunctionRhs(const ConfigSpec& spec);

using Permutation = std::vector<std::size_t>;

struct AutGroup {
  std::vector<Permutation> generators;
  std::vector<Permutation> elements;  // empty when the order exceeds the cap
  Integer order;
  bool complete() const { return !elements.empty(); }
};

AutGroup computeAut(const ConfigSpec& spec, std::size_t cap = 1000000);
Permutation compose(const Permutation& f, const Permutation& g);  // f after g
Permutation inverse(const Permutation& f);

// Homogeneous cone { x : row . x >= 0 for every row }.
struct ConeSpec {
  std::size_t dim = 0;
  RationalMatrix rows;
  bool contains(const RationalVector& x) const;
  bool strictlyContains(const RationalVector& x) const;
};

struct StarVariant {
  enum class Kind { I0, I1, Subset };
  Kind kind = Kind::I1;
  std::set<std::size_t> subset;
  static StarVariant i0() { return {Kind::I0, {}}; }
  static StarVariant i1() { return {Kind::I1, {}}; }
  static StarVariant of(std::set<std::size_t> s) { return {Kind::Subset, std::move(s)}; }
  std::string str() const;
};

// Index set used by the variant, after checking I0 <= S <= I1.
std::set<std::size_t> variantIndexSet(const StarData& star, const StarVariant& v);

struct Cones {
  ConeSpec cDelta, cStar;
  std::optional<RationalVector> interiorWitness;
};

Cones buildCones(const ConfigSpec& spec, const StarData& star, const StarVariant& variant);
ConeSpec deltaCone(const ConfigSpec& spec);
// Strict interior point of the intersection of cones, or none.
std::optional<RationalVector> interiorPoint(const std::vector<const ConeSpec*>& cones, std::size_t dim);

}  // namespace sympconf
