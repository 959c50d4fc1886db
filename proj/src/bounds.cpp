#include "sympconf/bounds.hpp"

#include "sympconf/error.hpp"

#include <algorithm>
#include <map>

namespace sympconf {

const char* capSourceName(CapSource s) {
  switch (s) {
    case CapSource::Cor28: return "Cor28";
    case CapSource::Thm16_I0: return "Thm16_I0";
    case CapSource::Thm16_Aggregate: return "Thm16_Aggregate";
    case CapSource::UserOverride: return "UserOverride";
  }
  return "?";
}

std::optional<long> corollary28Cap(long alpha, long g, long N) {
  long s = alpha + 2 * g - 2;
  if (s > 0) return N <= 9 ? std::optional<long>(3) : std::nullopt;
  if (s == 0) return N <= 8 ? std::optional<long>(3) : std::nullopt;
  if (s == -1) {
    if (N <= 7) return 3;
    if (N == 8) return 7;
    return std::nullopt;
  }
  if (N > 8) return std::nullopt;
  long f = N == 8 ? 6 : N == 7 ? 3 : 2;
  return f * -s;
}

long minimalA(long nu) {
  if (nu >= 0) return 1;  // a <= 0 forces negative square
  long num = 1 + nu;      // ceil(num / 2) for num <= 0
  return -((-num) / 2);
}

namespace {

Rational i0Cap(long N, long nu) {
  Rational half(N + nu, 2);
  half.canonicalize();
  return half > 3 ? half : Rational(3);
}

}  // namespace

CapVector theorem16Caps(const ConfigSpec& spec, const StarData& star, const StarVariant& variant,
                        bool atMostOneNegativeA) {
  if (!star.asserted) throw Error(ErrorKind::Precondition, "star-condition caps need the (*) identity to be asserted");
  auto J = variantIndexSet(star, variant);
  bool useI0 = variant.kind == StarVariant::Kind::I0;
  long N = static_cast<long>(spec.ambientN);
  std::size_t n = spec.n();
  CapVector out;
  out.atMostOneNegativeA = atMostOneNegativeA;
  out.perComponent.assign(n, Rational(0));
  out.provenance.assign(n, useI0 ? CapSource::Thm16_I0 : CapSource::Thm16_Aggregate);

  auto capIn = [&](std::size_t j) { return useI0 ? i0Cap(N, spec.nu[j]) : Rational(3); };
  // -3 = sum_k c_k a_k. Terms with c_j >= 0 in J are bounded by the in-set caps; every
  // term with c_j < 0 is bounded via the smallest admissible a_j.
  Rational base = 3;
  for (auto j : J)
    if (sgn(star.c[j]) >= 0) base += star.c[j] * capIn(j);
  for (std::size_t k = 0; k < n; ++k) {
    if (J.count(k)) {
      out.perComponent[k] = capIn(k);
      continue;
    }
    if (sgn(star.c[k]) >= 0) throw std::logic_error("c_k >= 0 outside the index set");
    Rational rhs = base;
    Rational worst = 0;  // most negative single contribution, used with the one-negative rule
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k || sgn(star.c[j]) >= 0) continue;
      Rational amin = minimalA(spec.nu[j]);
      Rational term = -star.c[j] * amin;  // (-c_j) a_j >= term
      if (atMostOneNegativeA && amin < 0) {
        worst = std::min(worst, term);
      } else {
        rhs -= term;
      }
    }
    rhs -= worst;
    out.perComponent[k] = rhs / -star.c[k];
  }
  return out;
}

SearchBox lemma24Box(long alpha, long g, long C) {
  if (g < 0) throw Error(ErrorKind::Precondition, "genus must be non-negative");
  SearchBox box;
  long lo = 1 - alpha;  // ceil(lo / 2)
  long aMinNonPos = lo >= 0 ? (lo + 1) / 2 : -((-lo) / 2);
  box.aMin = aMinNonPos <= 0 ? aMinNonPos : 1;
  box.aMax = C;
  box.bMaxPositiveBranch = C;
  long hi = -(1 + alpha);
  box.bMinNegativeBranch = hi >= 0 ? (hi + 1) / 2 : -((-hi) / 2);
  return box;
}

std::optional<long> lemma26MinSupport(long alpha, long g) {
  long s = alpha + 2 * g - 2;
  if (s < -2) return std::nullopt;
  return 10 - std::max(0L, 1 - s);
}

bool lemma215Form(const ClassVector& v, long alpha) {
  const Integer& a = v.a();
  Integer twoAa = 2 * a + alpha;
  if (twoAa < 1) return false;
  if (Integer(static_cast<long>(v.ambient())) < twoAa) return false;  // needs 2a+alpha distinct indices
  std::map<Integer, long> count;
  for (const auto& b : v.b()) ++count[b];
  Integer am1 = a - 1;
  long ones = count.count(1) ? count[1] : 0;
  long zeros = count.count(0) ? count[0] : 0;
  long others = static_cast<long>(v.ambient()) - ones - zeros;
  if (am1 == 1) return others == 0 && Integer(ones) == twoAa;
  if (am1 == 0) return others == 0 && Integer(ones) == twoAa - 1;
  long special = count.count(am1) ? count[am1] : 0;
  return special == 1 && others == 1 && Integer(ones) == twoAa - 1;
}

CapVector dispatchCaps(const ConfigSpec& spec, const CapRequest& req) {
  std::size_t n = spec.n();
  CapVector out;
  out.perComponent.assign(n, Rational(0));
  out.provenance.assign(n, CapSource::Cor28);
  std::vector<bool> have(n, false);
  long N = static_cast<long>(spec.ambientN);
  for (std::size_t k = 0; k < n; ++k)
    if (auto c = corollary28Cap(-spec.nu[k], spec.genus[k], N)) {
      out.perComponent[k] = *c;
      have[k] = true;
    }
  bool usedThm16 = false;
  if (req.variant) {
    auto star = starData(spec);
    if (star.asserted) {
      auto cones = buildCones(spec, star, *req.variant);
      if (cones.interiorWitness) {
        auto t = theorem16Caps(spec, star, *req.variant, req.atMostOneNegativeA.value_or(true));
        usedThm16 = true;
        for (std::size_t k = 0; k < n; ++k)
          if (!have[k] || t.perComponent[k] < out.perComponent[k]) {
            out.perComponent[k] = t.perComponent[k];
            out.provenance[k] = t.provenance[k];
            have[k] = true;
          }
      }
    }
  }
  out.atMostOneNegativeA = req.atMostOneNegativeA.value_or(usedThm16);
  if (!req.overrides.empty() && req.overrides.size() != n)
    throw Error(ErrorKind::DimensionMismatch, "cap override list length");
  for (std::size_t k = 0; k < req.overrides.size(); ++k) {
    if (!req.overrides[k]) continue;
    const Rational& o = *req.overrides[k];
    if (have[k] && o > out.perComponent[k] && !req.unsafe)
      throw Error(ErrorKind::UnsafeOverride, "override for component " + std::to_string(k + 1) +
                                                 " loosens the proven cap " + formatRational(out.perComponent[k]));
    if (!have[k] && !req.unsafe)
      throw Error(ErrorKind::UnsafeOverride,
                  "component " + std::to_string(k + 1) + " has no proven cap; an override needs --unsafe");
    out.perComponent[k] = o;
    out.provenance[k] = CapSource::UserOverride;
    have[k] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    if (!have[k]) throw Error(ErrorKind::NoFiniteCap, "no finite a-cap for component " + std::to_string(k + 1));
  return out;
}

}  // namespace sympconf
