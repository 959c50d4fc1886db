#pragma once

// Independent scan over integer vectors; shares no code with the library's pattern generator.

#include <cmath>
#include <functional>
#include <vector>

namespace scan {

// Calls f(b) for every non-increasing b >= 0 of length N with sum S and sum of squares Q.
inline void nonnegativeSolutions(long N, long S, long Q, const std::function<void(const std::vector<long>&)>& f) {
  if (S < 0 || Q < 0) return;
  std::vector<long> b;
  std::function<void(long, long, long)> rec = [&](long maxv, long s, long q) {
    long slots = N - static_cast<long>(b.size());
    if (slots == 0) {
      if (s == 0 && q == 0) f(b);
      return;
    }
    if (s > q) return;                                  // b^2 >= b
    if (double(s) * double(s) > double(slots) * double(q)) return;  // Cauchy-Schwarz
    for (long v = std::min(maxv, static_cast<long>(std::sqrt(double(q))) + 1); v >= 0; --v) {
      if (v * v > q || v > s) continue;
      if (v * slots < s) break;  // remaining entries are at most v
      b.push_back(v);
      rec(v, s - v, q - v * v);
      b.pop_back();
    }
  };
  rec(Q, S, Q);
}

// All admissible classes with a > 0, square -alpha and virtual genus g, up to order of b.
inline std::vector<std::vector<long>> positiveClasses(long a, long alpha, long g, long N) {
  std::vector<std::vector<long>> out;
  nonnegativeSolutions(N, 3 * a + alpha + 2 * g - 2, a * a + alpha, [&](const std::vector<long>& b) { out.push_back(b); });
  return out;
}

}  // namespace scan
