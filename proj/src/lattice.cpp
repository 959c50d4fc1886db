#include "sympconf/lattice.hpp"

#include "sympconf/error.hpp"

#include <set>

namespace sympconf {

namespace {

void sameAmbient(const ClassVector& x, const ClassVector& y) {
  if (x.ambient() != y.ambient())
    throw Error(ErrorKind::DimensionMismatch,
                "ambient N differs: " + std::to_string(x.ambient()) + " vs " + std::to_string(y.ambient()));
}

}  // namespace

ClassVector::ClassVector(long a, const std::vector<long>& b) : a_(a) {
  b_.reserve(b.size());
  for (long x : b) b_.emplace_back(x);
}

ClassVector ClassVector::hyperplane(std::size_t N) {
  auto v = zero(N);
  v.a_ = 1;
  return v;
}

ClassVector ClassVector::exceptional(std::size_t N, std::size_t i) {
  if (i >= N) throw Error(ErrorKind::DimensionMismatch, "exceptional index out of range");
  auto v = zero(N);
  v.b_[i] = -1;
  return v;
}

ClassVector ClassVector::canonical(std::size_t N) {
  return ClassVector(Integer(-3), std::vector<Integer>(N, Integer(-1)));
}

ClassVector& ClassVector::operator+=(const ClassVector& o) {
  sameAmbient(*this, o);
  a_ += o.a_;
  for (std::size_t i = 0; i < b_.size(); ++i) b_[i] += o.b_[i];
  return *this;
}

ClassVector& ClassVector::operator-=(const ClassVector& o) {
  sameAmbient(*this, o);
  a_ -= o.a_;
  for (std::size_t i = 0; i < b_.size(); ++i) b_[i] -= o.b_[i];
  return *this;
}

ClassVector operator*(const Integer& s, ClassVector x) {
  x.a_ *= s;
  for (auto& v : x.b_) v *= s;
  return x;
}

bool operator<(const ClassVector& x, const ClassVector& y) {
  if (x.a_ != y.a_) return x.a_ < y.a_;
  return x.b_ < y.b_;
}

std::string ClassVector::str() const {
  std::string out;
  auto term = [&out](const Integer& c, const std::string& sym) {
    if (c == 0) return;
    if (c > 0 && !out.empty()) out += "+";
    if (c == -1) out += "-";
    else if (c != 1) out += c.get_str();
    out += sym;
  };
  term(a_, "H");
  for (std::size_t i = 0; i < b_.size(); ++i) term(-b_[i], "E" + std::to_string(i + 1));
  return out.empty() ? "0" : out;
}

TwoClass TwoClass::ee(std::size_t i, std::size_t j) {
  if (i == j) throw Error(ErrorKind::Precondition, "E_i - E_j needs distinct indices");
  return TwoClass{Kind::EE, {i, j, 0}};
}

TwoClass TwoClass::heee(std::size_t i, std::size_t j, std::size_t k) {
  std::set<std::size_t> s{i, j, k};
  if (s.size() != 3) throw Error(ErrorKind::Precondition, "H - E_i - E_j - E_k needs distinct indices");
  return TwoClass{Kind::HEEE, {i, j, k}};
}

ClassVector TwoClass::vector(std::size_t N) const {
  std::size_t used = kind == Kind::EE ? 2 : 3;
  for (std::size_t t = 0; t < used; ++t)
    if (idx[t] >= N) throw Error(ErrorKind::DimensionMismatch, "two-class index exceeds N");
  auto v = ClassVector::zero(N);
  if (kind == Kind::EE) {
    v = ClassVector::exceptional(N, idx[0]) - ClassVector::exceptional(N, idx[1]);
  } else {
    v = ClassVector::hyperplane(N);
    for (std::size_t t = 0; t < 3; ++t) v -= ClassVector::exceptional(N, idx[t]);
  }
  return v;
}

std::string TwoClass::str() const {
  if (kind == Kind::EE) return "E" + std::to_string(idx[0] + 1) + "-E" + std::to_string(idx[1] + 1);
  return "H-E" + std::to_string(idx[0] + 1) + "-E" + std::to_string(idx[1] + 1) + "-E" + std::to_string(idx[2] + 1);
}

Integer pair(const ClassVector& x, const ClassVector& y) {
  sameAmbient(x, y);
  Integer s = x.a() * y.a();
  for (std::size_t i = 0; i < x.ambient(); ++i) s -= x.b(i) * y.b(i);
  return s;
}

Integer square(const ClassVector& x) { return pair(x, x); }

Integer virtualGenus(const ClassVector& x) {
  Integer num = square(x) + pair(ClassVector::canonical(x.ambient()), x);
  // K is characteristic: K.A and A.A have the same parity.
  if (mpz_even_p(num.get_mpz_t()) == 0) throw Error(ErrorKind::Precondition, "odd genus numerator");
  return num / 2 + 1;
}

bool isAdmissible(const ClassVector& v) {
  if (v.a() > 0) {
    for (const auto& b : v.b())
      if (b < 0) return false;
    return true;
  }
  Integer want = -(abs(v.a()) + 1);
  int negatives = 0;
  for (const auto& b : v.b()) {
    if (b == want) ++negatives;
    else if (b != 0 && b != 1) return false;
  }
  return negatives == 1;
}

bool isPositive(const ClassVector& v) {
  if (!isAdmissible(v)) throw Error(ErrorKind::Precondition, "isPositive needs an admissible vector");
  if (v.a() > 0) return true;
  for (std::size_t i = 0; i < v.ambient(); ++i) {
    if (v.b(i) == 1) return false;
    if (v.b(i) < 0) return true;
  }
  return true;
}

ClassVector reflect(const TwoClass& gamma, const ClassVector& x) {
  ClassVector g = gamma.vector(x.ambient());
  return x + pair(g, x) * g;
}

}  // namespace sympconf
