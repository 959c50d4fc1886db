#pragma once

#include "sympconf/numeric.hpp"

#include <array>
#include <string>
#include <vector>

namespace sympconf {

// A = a H - sum_i b_i E_i. E-indices are 0-based in the C++ API.
class ClassVector {
 public:
  ClassVector() = default;
  ClassVector(Integer a, std::vector<Integer> b) : a_(std::move(a)), b_(std::move(b)) {}
  ClassVector(long a, const std::vector<long>& b);

  static ClassVector zero(std::size_t N) { return ClassVector(Integer(0), std::vector<Integer>(N, 0)); }
  static ClassVector hyperplane(std::size_t N);
  static ClassVector exceptional(std::size_t N, std::size_t i);
  static ClassVector canonical(std::size_t N);

  const Integer& a() const { return a_; }
  const std::vector<Integer>& b() const { return b_; }
  const Integer& b(std::size_t i) const { return b_[i]; }
  std::size_t ambient() const { return b_.size(); }

  ClassVector& operator+=(const ClassVector& o);
  ClassVector& operator-=(const ClassVector& o);
  friend ClassVector operator+(ClassVector x, const ClassVector& y) { return x += y; }
  friend ClassVector operator-(ClassVector x, const ClassVector& y) { return x -= y; }
  friend ClassVector operator*(const Integer& s, ClassVector x);

  friend bool operator==(const ClassVector& x, const ClassVector& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator<(const ClassVector& x, const ClassVector& y);

  // Human-readable, e.g. "2H-E1-E2-E3" (1-based labels).
  std::string str() const;

 private:
  Integer a_ = 0;
  std::vector<Integer> b_;
};

// gamma = E_i - E_j (EE) or H - E_i - E_j - E_k (HEEE).
struct TwoClass {
  enum class Kind { EE, HEEE };
  Kind kind = Kind::HEEE;
  std::array<std::size_t, 3> idx{};

  static TwoClass ee(std::size_t i, std::size_t j);
  static TwoClass heee(std::size_t i, std::size_t j, std::size_t k);
  ClassVector vector(std::size_t N) const;
  std::string str() const;
};

Integer pair(const ClassVector& x, const ClassVector& y);
Integer square(const ClassVector& x);
Integer virtualGenus(const ClassVector& x);
bool isAdmissible(const ClassVector& v);
// Requires isAdmissible(v).
bool isPositive(const ClassVector& v);
ClassVector reflect(const TwoClass& gamma, const ClassVector& x);

}  // namespace sympconf
