#pragma once

#include "sympconf/enumerate.hpp"
#include "sympconf/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sympconf {

// Infinitely-near structure on E_1..E_N. Node i is E_{i+1}.
struct NearnessNode {
  std::optional<std::size_t> parent;     // order-1 target
  bool minimal = true;
  bool maximal = true;
  bool satellite = false;                // two zero-degree components hold it as a non-leading class
  std::optional<std::size_t> leadingOf;  // component whose leading class this is
  std::vector<std::size_t> holders;      // zero-degree components with b = 1 here
};

struct NearnessForest {
  std::vector<NearnessNode> nodes;

  std::size_t size() const { return nodes.size(); }
  bool isFree(std::size_t i) const { return !nodes[i].minimal && !nodes[i].satellite; }
  // E_i <= E_j
  bool leq(std::size_t i, std::size_t j) const;
  std::vector<std::size_t> roots() const;
  std::vector<std::size_t> children(std::size_t i) const;
  // i followed by every descendant.
  std::vector<std::size_t> subtree(std::size_t i) const;
  // Order-1 chain from i down to its root (excluding i).
  std::vector<std::size_t> chain(std::size_t i) const;
};

// Index of the +1 entry of a zero-degree vector (b = -1).
std::optional<std::size_t> leadingClass(const ClassVector& v);

NearnessForest buildForest(const Assignment& a);

enum class BlowdownCase { A, B };
const char* blowdownCaseName(BlowdownCase c, bool primed);

struct BlowdownEntry {
  std::size_t component = 0;
  std::size_t leading = 0;
  std::vector<std::size_t> holders;  // S_1, S_2 (Sigma_0 included in primed mode)
  BlowdownCase kase = BlowdownCase::B;
  bool pass = true;
  std::vector<std::size_t> offending;  // classes E_{l_s} breaking the count
  std::string detail;
};

struct BlowdownReport {
  bool primed = false;
  std::optional<std::size_t> sigma0;
  std::vector<BlowdownEntry> entries;
  bool pass = true;
  std::optional<std::size_t> dWitness;  // component with leading class E_1
  std::optional<std::size_t> eWitness;  // component with 2 b_1 < a
  bool d() const { return dWitness.has_value(); }
  bool e() const { return eWitness.has_value(); }
  // Condition (c) is an area statement; it is always attainable by choosing w(E_1) = w(E_2).
  static constexpr const char* c = "area-dependent: available by choosing w(E1)=w(E2)";
};

enum class BlowdownMode { Plain, Primed };
BlowdownReport checkBlowdownAssumptions(const Assignment& a, BlowdownMode mode);

struct CombinatorialType {
  std::size_t N = 0;
  NearnessForest forest;
  std::vector<std::size_t> components;  // original indices with a > 0
  std::vector<std::size_t> zeroComponents;
  std::vector<Integer> degree, genus;   // per entry of components
  std::vector<std::vector<Integer>> mult;         // [component][node] = b
  std::vector<std::vector<Integer>> zeroRows;     // [zero component][node] = b
  std::vector<std::vector<Integer>> zeroPairing;  // [component][zero component] = A_k . S
  std::vector<std::vector<Integer>> residual;     // [component][component], diagonal unused

  // m_kl at a root: sum over its subtree of b_kj b_lj (positions into components).
  Integer localMultiplicity(std::size_t k, std::size_t l, std::size_t root) const;
  bool bezoutConsistent(std::string* why = nullptr) const;
};

CombinatorialType buildCombinatorialType(const Assignment& a);

struct TypeIsomorphism {
  std::vector<std::size_t> componentMap;  // original component index -> original index in the other type
  Permutation nodeMap;                    // E-index -> E-index
};

enum class IsoStatus { Isomorphic, NotIsomorphic, Undecided };

struct IsoResult {
  IsoStatus status = IsoStatus::NotIsomorphic;
  std::optional<TypeIsomorphism> witness;
  std::size_t steps = 0;
};

IsoResult typesIsomorphic(const CombinatorialType& t1, const CombinatorialType& t2, std::size_t stepCap = 10000000);
bool verifyIsomorphism(const CombinatorialType& t1, const CombinatorialType& t2, const TypeIsomorphism& w,
                       std::string* why = nullptr);
TypeIsomorphism invert(const TypeIsomorphism& w);
TypeIsomorphism composeIso(const TypeIsomorphism& second, const TypeIsomorphism& first);

struct NormalizedOrder {
  Assignment assignment;
  Permutation relabel;  // old E-index -> new E-index
};

NormalizedOrder normalizeOrder(const std::vector<ClassVector>& vectors);
Assignment relabelColumns(const Assignment& a, const Permutation& p);

}  // namespace sympconf
