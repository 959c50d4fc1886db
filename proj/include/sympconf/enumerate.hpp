#pragma once

#include "sympconf/bounds.hpp"
#include "sympconf/configspec.hpp"
#include "sympconf/lattice.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sympconf {

struct Assignment {
  std::vector<ClassVector> vectors;

  std::size_t size() const { return vectors.size(); }
  std::size_t ambient() const { return vectors.empty() ? 0 : vectors[0].ambient(); }
  // Associated matrix: row k = (a_k, -b_k1, ..., -b_kN).
  std::vector<std::vector<Integer>> matrix() const;
  RationalMatrix rationalMatrix() const;
  friend bool operator==(const Assignment& x, const Assignment& y) { return x.vectors == y.vectors; }
  friend bool operator<(const Assignment& x, const Assignment& y) { return x.vectors < y.vectors; }
};

// Checks admissibility and the three equation families of the definition of Omega(D).
bool satisfiesDefinition(const ConfigSpec& spec, const Assignment& a, std::string* why = nullptr);

struct SearchSpec {
  CapVector caps;
  bool atMostOneNegativeA = false;
  bool rowSymmetryBreaking = false;
  bool columnSymmetryBreaking = true;
  bool supportPruning = true;  // minimal-support rule for a > 3
  std::size_t checkpointInterval = 0;  // units between checkpoint writes; 0 = off
  std::size_t checkpointDepth = 2;
  std::string checkpointPath;
  bool resume = false;
  unsigned workers = 1;
  double oracleCap = 1e15;  // product of candidate-list sizes
  std::function<void(const std::string&)> progress;
};

// Non-increasing multiset of b-values (length N) for a fixed a.
struct Pattern {
  long a = 0;
  std::vector<long> b;
};

std::vector<Pattern> candidatePatterns(long nu, long g, std::size_t N, const SearchBox& box, bool supportPruning = true);
SearchBox componentBox(const ConfigSpec& spec, const CapVector& caps, std::size_t k);
std::vector<ClassVector> candidateVectors(std::size_t k, const ConfigSpec& spec, const SearchBox& box);

struct EnumerationResult {
  std::vector<Assignment> assignments;  // canonical, sorted
  std::vector<std::size_t> placementOrder;
  std::string specHash;
  std::size_t units = 0;
  bool resumed = false;
  std::vector<std::string> warnings;
};

std::string searchSpecHash(const ConfigSpec& spec, const SearchSpec& search, const std::vector<std::size_t>& order);
EnumerationResult enumerateAssignments(const ConfigSpec& spec, const SearchSpec& search);

Assignment canonicalForm(const Assignment& a, const std::vector<Permutation>& aut = {});
std::vector<Assignment> bruteForceOracle(const ConfigSpec& spec, const SearchSpec& search);

}  // namespace sympconf
