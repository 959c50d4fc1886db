#pragma once

#include "sympconf/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sympconf {

// { x : A x = b, C x >= d } over the rationals.
class Polyhedron {
 public:
  explicit Polyhedron(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  void addEquality(RationalVector row, Rational rhs);
  void addInequality(RationalVector row, Rational rhs);

  const RationalMatrix& eqRows() const { return eqRows_; }
  const RationalVector& eqRhs() const { return eqRhs_; }
  const RationalMatrix& ineqRows() const { return ineqRows_; }
  const RationalVector& ineqRhs() const { return ineqRhs_; }

  bool contains(const RationalVector& x) const;
  // Index of the first violated row (equalities first), if any.
  std::optional<std::string> firstViolation(const RationalVector& x) const;

 private:
  std::size_t dim_;
  RationalMatrix eqRows_, ineqRows_;
  RationalVector eqRhs_, ineqRhs_;
};

// Multipliers y (equalities, free) and z (inequalities, z >= 0).
struct Certificate {
  RationalVector eq;
  RationalVector ineq;
};

// y^T A + z^T C, the combined row.
RationalVector combine(const Polyhedron& p, const Certificate& c);
// y^T b + z^T d.
Rational combinedRhs(const Polyhedron& p, const Certificate& c);

// z >= 0, y^T A + z^T C = 0, y^T b + z^T d > 0.
bool verifyFarkas(const Polyhedron& p, const Certificate& c);
// Certificate that no x satisfies the system with the marked inequality rows strict:
// combined row 0, z >= 0, and either rhs > 0, or rhs >= 0 with positive weight on a strict row.
bool verifyStrictFarkas(const Polyhedron& p, const Certificate& c, const std::vector<bool>& strictRows);
// Certificate that objective^T x <= bound on p: y^T A + z^T C = -objective and -(y^T b + z^T d) <= bound.
bool verifyUpperBound(const Polyhedron& p, const RationalVector& objective, const Certificate& c, const Rational& bound);

enum class LPStatus { Feasible, Infeasible, Optimal, Unbounded };
const char* lpStatusName(LPStatus s);

struct LPOutcome {
  LPStatus status = LPStatus::Infeasible;
  RationalVector point;       // Feasible / Optimal
  Rational value;             // Optimal
  RationalVector ray;         // Unbounded
  Certificate certificate;    // Infeasible: Farkas. Optimal: dual multipliers.
};

enum class Sense { Maximize, Minimize };

LPOutcome lpFeasible(const Polyhedron& p);
LPOutcome optimizeLinear(const Polyhedron& p, const RationalVector& objective, Sense sense = Sense::Maximize);

// Integer (primitive) vectors spanning ker(m).
std::vector<RationalVector> nullSpaceBasis(const RationalMatrix& m, std::size_t columns);

struct VertexRayResult {
  bool capExceeded = false;
  std::vector<RationalVector> vertices;
  std::vector<RationalVector> rays;
  std::vector<RationalVector> lineality;
};

// Brute-force active-set enumeration. Honors SYMPCONFIG_BASIS_CAP when set.
VertexRayResult enumerateVerticesRays(const Polyhedron& p, std::size_t basisCap = 200000);

}  // namespace sympconf
