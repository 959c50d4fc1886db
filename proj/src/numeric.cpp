#include "sympconf/numeric.hpp"

#include "sympconf/error.hpp"

#include <cctype>
#include <cstdio>
#include <limits>

namespace sympconf {

const char* errorKindName(ErrorKind k) {
  switch (k) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Precondition: return "PreconditionViolated";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::SingularInconsistent: return "SingularInconsistent";
    case ErrorKind::SingularConsistent: return "SingularConsistent";
    case ErrorKind::StarSphereConditionViolated: return "StarSphereConditionViolated";
    case ErrorKind::NoFiniteCap: return "NoFiniteCap";
    case ErrorKind::UnsafeOverride: return "UnsafeOverride";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::CheckpointMismatch: return "CheckpointMismatch";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorKind::PositivityViolation: return "PositivityViolation";
    case ErrorKind::NearnessViolation: return "NearnessViolation";
    case ErrorKind::NotOrderable: return "NotOrderable";
    case ErrorKind::BezoutInconsistent: return "BezoutInconsistent";
    case ErrorKind::UnknownScenario: return "UnknownScenario";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Error";
}

namespace {

bool allDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parseRational(std::string_view s) {
  std::string_view body = s;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!allDigits(num) || (slash != std::string_view::npos && !allDigits(den)))
    throw Error(ErrorKind::Parse, "not a rational: '" + std::string(s) + "'");
  Integer p{std::string(num)}, q{1};
  if (slash != std::string_view::npos) q = Integer(std::string(den));
  if (q == 0) throw Error(ErrorKind::Parse, "zero denominator: '" + std::string(s) + "'");
  if (!s.empty() && s[0] == '-') p = -p;
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string formatRational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string formatInteger(const Integer& z) { return z.get_str(); }

Integer floorOf(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceilOf(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational dot(const RationalVector& x, const RationalVector& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "dot product of unequal lengths");
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0 && sgn(y[i]) != 0) s += x[i] * y[i];
  return s;
}

bool isZero(const RationalVector& x) {
  for (const auto& v : x)
    if (sgn(v) != 0) return false;
  return true;
}

bool fitsInt64(const Integer& z) {
  static const Integer lo(std::to_string(std::numeric_limits<std::int64_t>::min()));
  static const Integer hi(std::to_string(std::numeric_limits<std::int64_t>::max()));
  return z >= lo && z <= hi;
}

std::int64_t toInt64(const Integer& z) {
  if (!fitsInt64(z)) throw Error(ErrorKind::CapExceeded, "integer does not fit in 64 bits: " + z.get_str());
  return std::stoll(z.get_str());
}

Integer determinant(const std::vector<std::vector<Integer>>& in) {
  std::size_t n = in.size();
  if (n == 0) return 1;
  auto m = in;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::vector<std::size_t> rref(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (sgn(m[r][j]) != 0) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

RationalVector solveSquare(RationalMatrix m, RationalVector rhs) {
  std::size_t n = m.size();
  if (rhs.size() != n) throw Error(ErrorKind::DimensionMismatch, "solveSquare: rhs length");
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw Error(ErrorKind::DimensionMismatch, "solveSquare: matrix not square");
    m[i].push_back(rhs[i]);
  }
  auto piv = rref(m);
  if (piv.size() != n || (n > 0 && piv.back() != n - 1))
    throw Error(ErrorKind::Precondition, "solveSquare: singular matrix");
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

RationalVector primitive(const RationalVector& v) {
  Integer l = 1, g = 0;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> ints;
  ints.reserve(v.size());
  for (const auto& x : v) {
    Integer t = x.get_num() * (l / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_mpz_t());
    ints.push_back(t);
  }
  RationalVector out(v.size());
  if (g == 0) return v;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(ints[i] / g);
  return out;
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hexDigest(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sympconf
