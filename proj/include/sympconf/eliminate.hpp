#pragma once

#include "sympconf/configspec.hpp"
#include "sympconf/enumerate.hpp"
#include "sympconf/polyhedra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sympconf {

// q(x) = x_0^2 - sum x_i^2
Rational lorentzQ(const RationalVector& x);

// C_lambda over lambda_0..lambda_N: sign rows first (N+1 of them), then one row per triple i<j<k.
Polyhedron lambdaCone(std::size_t N);
std::string lambdaRowName(std::size_t N, std::size_t row);
// lambdaCone plus I lambda = delta.
Polyhedron realizationSystem(std::size_t N, const Assignment& a, const RationalVector& delta);

enum class VerdictKind { Eliminated, Realizable, LinearFeasibleQuadUndecided };
const char* verdictKindName(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::LinearFeasibleQuadUndecided;
  // Eliminated, linear: no point of the system has the strict rows positive.
  std::optional<Certificate> certificate;
  std::vector<bool> strictRows;
  // Eliminated, quadratic: x_0 <= g . x' on the system with |g| <= 1, so q <= 0 there.
  std::optional<RationalVector> separator;
  std::optional<Certificate> separatorCertificate;
  RationalVector witness;  // Realizable
  Rational q;
  std::string notes;
};

// Re-checks a verdict against its system.
bool verifyVerdict(const Polyhedron& system, const Verdict& v);

// Looks for a point with every strict row positive and q > 0; proves none exists when it can.
Verdict decideStrictQuad(const Polyhedron& system, const std::vector<bool>& strictRows);

struct DeltaReport {
  std::vector<Verdict> perTau;          // aligned with the aut list (identity alone when empty)
  std::vector<Permutation> taus;
  bool eliminatedForOrbit = false;      // every tau eliminated
  std::size_t distinctSystems = 0;
};

// Verdict for one labeling: delta_tau[k] = delta[tau(k)].
Verdict testDeltaOnce(std::size_t N, const Assignment& a, const RationalVector& delta);
// stopOnSurvivor: return as soon as one labeling is not eliminated (perTau is then partial).
DeltaReport testDelta(std::size_t N, const Assignment& a, const RationalVector& delta,
                      const std::vector<Permutation>& aut, bool stopOnSurvivor = false);

enum class RobustKind { RobustCertified, CertificateRejected, NoCertificateFound, Undecided };
const char* robustKindName(RobustKind k);

struct RobustnessResult {
  RobustKind kind = RobustKind::Undecided;
  RationalVector x;
  std::string reason;
  std::optional<std::size_t> violatedRow;  // index into lambdaCone rows for rejections
};

RobustnessResult robustness(std::size_t N, const Assignment& a, const std::optional<RationalVector>& certificate);

struct DeltaSearchStrategy {
  std::uint64_t seed = 1;
  std::size_t gridMax = 3;          // grid entries 1..gridMax (small n only)
  std::size_t maxGridPoints = 200;
  std::size_t randomPerturbations = 8;
  std::size_t maxCandidates = 400;
  unsigned workers = 1;
};

struct SurvivorEntry {
  std::size_t index;                // into the assignment list
  DeltaReport report;
};

struct DeltaSearchReport {
  RationalVector delta;
  std::vector<SurvivorEntry> survivors;
  std::size_t candidatesTried = 0;
  std::vector<std::string> notes;
};

DeltaSearchReport searchEliminatingDelta(const ConfigSpec& spec, const std::vector<Assignment>& assignments,
                                         const std::vector<const ConeSpec*>& cones,
                                         const DeltaSearchStrategy& strategy = {});

}  // namespace sympconf
