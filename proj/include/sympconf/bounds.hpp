#pragma once

#include "sympconf/configspec.hpp"
#include "sympconf/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sympconf {

struct SearchBox {
  long aMin = 0, aMax = -1;
  long bMaxPositiveBranch = 0;
  long bMinNegativeBranch = 0;
  bool empty() const { return aMax < aMin; }
};

enum class CapSource { Cor28, Thm16_I0, Thm16_Aggregate, UserOverride };
const char* capSourceName(CapSource s);

struct CapVector {
  RationalVector perComponent;
  std::vector<CapSource> provenance;
  bool atMostOneNegativeA = false;
};

std::optional<long> corollary28Cap(long alpha, long g, long N);

// Lower bound for a over admissible classes of square nu.
long minimalA(long nu);

// Requires star.asserted.
CapVector theorem16Caps(const ConfigSpec& spec, const StarData& star, const StarVariant& variant,
                        bool atMostOneNegativeA = false);

SearchBox lemma24Box(long alpha, long g, long C);
std::optional<long> lemma26MinSupport(long alpha, long g);
bool lemma215Form(const ClassVector& v, long alpha);

struct CapRequest {
  std::optional<StarVariant> variant;            // star-condition caps when set and asserted
  std::vector<std::optional<Rational>> overrides;  // per component
  bool unsafe = false;
  std::optional<bool> atMostOneNegativeA;          // default: on with star-condition caps
};

// Componentwise minimum of every applicable cap; overrides may only tighten unless unsafe.
CapVector dispatchCaps(const ConfigSpec& spec, const CapRequest& req);

}  // namespace sympconf
