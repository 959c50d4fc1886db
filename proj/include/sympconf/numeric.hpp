#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sympconf {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

// Accepts "p/q", "p", with optional sign. Result is canonical.
Rational parseRational(std::string_view s);
// "p/q", or "p" when the denominator is 1.
std::string formatRational(const Rational& q);
std::string formatInteger(const Integer& z);

Integer floorOf(const Rational& q);
Integer ceilOf(const Rational& q);

Rational dot(const RationalVector& x, const RationalVector& y);
bool isZero(const RationalVector& x);

// Fits into int64 without loss.
bool fitsInt64(const Integer& z);
std::int64_t toInt64(const Integer& z);

// Exact determinant (Bareiss) of a square integer matrix.
Integer determinant(const std::vector<std::vector<Integer>>& m);

// Solve M x = rhs for square non-singular M. Throws on singular input.
RationalVector solveSquare(RationalMatrix m, RationalVector rhs);

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m);

// Scale to a primitive integer vector (same direction).
RationalVector primitive(const RationalVector& v);

// 64-bit FNV-1a, used for run manifests and checkpoint hashes.
std::uint64_t fnv1a(std::string_view data);
std::string hexDigest(std::uint64_t h);

}  // namespace sympconf
