#include "sympconf/enumerate.hpp"

#include "sympconf/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace sympconf {

std::vector<std::vector<Integer>> Assignment::matrix() const {
  std::vector<std::vector<Integer>> m;
  for (const auto& v : vectors) {
    std::vector<Integer> row{v.a()};
    for (const auto& b : v.b()) row.push_back(-b);
    m.push_back(std::move(row));
  }
  return m;
}

RationalMatrix Assignment::rationalMatrix() const {
  RationalMatrix m;
  for (const auto& row : matrix()) {
    RationalVector r;
    for (const auto& x : row) r.emplace_back(x);
    m.push_back(std::move(r));
  }
  return m;
}

bool satisfiesDefinition(const ConfigSpec& spec, const Assignment& a, std::string* why) {
  auto fail = [why](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (a.size() != spec.n()) return fail("component count");
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto& v = a.vectors[k];
    std::string tag = "component " + std::to_string(k + 1);
    if (v.ambient() != spec.ambientN) return fail(tag + ": ambient N");
    if (!isAdmissible(v)) return fail(tag + ": not admissible");
    if (square(v) != spec.nu[k]) return fail(tag + ": self-intersection");
    Integer sum = -3 * v.a();
    for (const auto& b : v.b()) sum += b;
    if (sum != 2 * spec.genus[k] - 2 - spec.nu[k]) return fail(tag + ": canonical pairing");
    for (std::size_t l = k + 1; l < a.size(); ++l)
      if (pair(v, a.vectors[l]) != spec.offDiag[k][l])
        return fail("components " + std::to_string(k + 1) + "," + std::to_string(l + 1) + ": intersection");
  }
  return true;
}

namespace {

constexpr long kBoxLimit = 1000000;

using Row = std::vector<long>;

void genPositive(long maxv, long remSum, long remSq, std::size_t slots, Row& cur, std::vector<Row>& out) {
  if (remSum == 0 && remSq == 0) {
    out.push_back(cur);
    return;
  }
  if (slots == 0 || remSum <= 0 || remSq <= 0) return;
  for (long v = std::min(maxv, remSum); v >= 1; --v) {
    long s2 = remSum - v, q2 = remSq - v * v;
    if (q2 < 0 || s2 > q2) continue;
    if (q2 > s2 * v) continue;
    long r = static_cast<long>(slots) - 1;
    if (s2 > r * v) continue;
    if (s2 * s2 > r * q2) continue;
    cur.push_back(v);
    genPositive(v, s2, q2, slots - 1, cur, out);
    cur.pop_back();
  }
}

double multinomialCount(const Row& b) {
  std::map<long, int> cnt;
  for (long x : b) ++cnt[x];
  double r = std::lgamma(double(b.size()) + 1);
  for (auto& [v, c] : cnt) r -= std::lgamma(double(c) + 1);
  return std::round(std::exp(r));
}

}  // namespace

std::vector<Pattern> candidatePatterns(long nu, long g, std::size_t N, const SearchBox& box, bool supportPruning) {
  std::vector<Pattern> out;
  if (box.empty()) return out;
  if (box.aMax > kBoxLimit || box.aMin < -kBoxLimit) throw Error(ErrorKind::CapExceeded, "search box too large");
  long s = -nu + 2 * g - 2;  // alpha + 2g - 2
  auto minSupport = lemma26MinSupport(-nu, g);
  for (long a = std::max(1L, box.aMin); a <= box.aMax; ++a) {
    long sum = 3 * a + s, sq = a * a - nu;
    if (sum < 0 || sq < 0) continue;
    long maxv = std::min(box.bMaxPositiveBranch, std::max(1L, a - 1));
    std::vector<Row> rows;
    Row cur;
    genPositive(maxv, sum, sq, N, cur, rows);
    for (auto& r : rows) {
      long support = static_cast<long>(r.size());
      if (supportPruning && a > 3 && minSupport && support < *minSupport) continue;
      r.resize(N, 0);
      out.push_back({a, std::move(r)});
    }
  }
  // a <= 0: one entry a - 1, m entries 1; only genus 0 fits both equations
  for (long a = box.aMin; a <= std::min(0L, box.aMax); ++a) {
    if (g != 0) break;
    long m = 2 * a - 1 - nu;
    if (m < 0 || m + 1 > static_cast<long>(N) || a - 1 < box.bMinNegativeBranch) continue;
    Row r(N, 0);
    for (long i = 0; i < m; ++i) r[i] = 1;
    r[N - 1] = a - 1;
    out.push_back({a, std::move(r)});
  }
  return out;
}

SearchBox componentBox(const ConfigSpec& spec, const CapVector& caps, std::size_t k) {
  if (caps.perComponent.size() != spec.n()) throw Error(ErrorKind::DimensionMismatch, "caps length");
  Integer c = floorOf(caps.perComponent[k]);
  if (c > kBoxLimit) throw Error(ErrorKind::CapExceeded, "cap for component " + std::to_string(k + 1) + " too large");
  return lemma24Box(-spec.nu[k], spec.genus[k], std::max<long>(toInt64(c), -kBoxLimit));
}

std::vector<ClassVector> candidateVectors(std::size_t k, const ConfigSpec& spec, const SearchBox& box) {
  std::vector<ClassVector> out;
  for (auto& p : candidatePatterns(spec.nu[k], spec.genus[k], spec.ambientN, box)) {
    Row r = p.b;
    std::sort(r.begin(), r.end());
    do {
      out.emplace_back(p.a, r);
    } while (std::next_permutation(r.begin(), r.end()));
  }
  return out;
}

namespace {

using Key = std::vector<long>;  // row-major associated matrix

// Lex-minimal associated matrix over column permutations (and the given row permutations).
Key canonicalKey(const std::vector<long>& as, const std::vector<Row>& bs, const std::vector<Permutation>& aut) {
  std::size_t n = as.size(), N = n ? bs[0].size() : 0;
  Key best;
  auto consider = [&](const Permutation* tau) {
    std::vector<Row> cols(N, Row(n));
    std::vector<long> aa(n);
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t src = tau ? (*tau)[k] : k;
      aa[k] = as[src];
      for (std::size_t i = 0; i < N; ++i) cols[i][k] = -bs[src][i];
    }
    std::sort(cols.begin(), cols.end());
    Key key;
    key.reserve(n * (N + 1));
    for (std::size_t k = 0; k < n; ++k) {
      key.push_back(aa[k]);
      for (std::size_t i = 0; i < N; ++i) key.push_back(cols[i][k]);
    }
    if (best.empty() || key < best) best = std::move(key);
  };
  consider(nullptr);
  for (const auto& tau : aut) consider(&tau);
  return best;
}

Assignment fromKey(const Key& key, std::size_t n, std::size_t N) {
  Assignment a;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<long> b(N);
    for (std::size_t i = 0; i < N; ++i) b[i] = -key[k * (N + 1) + 1 + i];
    a.vectors.emplace_back(key[k * (N + 1)], b);
  }
  return a;
}

struct Node {
  std::vector<long> a;   // placement order
  std::vector<Row> b;
};

class Searcher {
 public:
  Searcher(const ConfigSpec& spec, const SearchSpec& search) : spec_(spec), search_(search), n_(spec.n()), N_(spec.ambientN) {
    std::vector<std::vector<Pattern>> byComp(n_);
    std::vector<double> counts(n_, 0);
    for (std::size_t k = 0; k < n_; ++k) {
      byComp[k] = candidatePatterns(spec.nu[k], spec.genus[k], N_, componentBox(spec, search.caps, k), search.supportPruning);
      for (auto& p : byComp[k]) counts[k] += multinomialCount(p.b);
    }
    order_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) order_[k] = k;
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) { return counts[x] < counts[y]; });
    for (auto k : order_) pats_.push_back(std::move(byComp[k]));
    if (search.rowSymmetryBreaking) {
      auto g = computeAut(spec);
      if (!g.complete()) throw Error(ErrorKind::CapExceeded, "Aut(D) too large to enumerate for row symmetry breaking");
      aut_ = g.elements;
    }
  }

  const std::vector<std::size_t>& order() const { return order_; }

  template <class F>
  void children(const Node& node, F&& f) const {
    std::size_t d = node.a.size();
    std::size_t k = order_[d];
    int negatives = 0;
    for (long x : node.a) negatives += x < 0;
    // blocks of columns equal on the placed rows
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    for (std::size_t i = 0; i < N_;) {
      std::size_t j = i + 1;
      if (search_.columnSymmetryBreaking)
        while (j < N_ && sameColumn(node, i, j)) ++j;
      blocks.emplace_back(i, j);
      i = j;
    }
    for (const auto& p : pats_[d]) {
      if (search_.atMostOneNegativeA && p.a < 0 && negatives > 0) continue;
      std::vector<long> values;
      std::vector<long> rem;
      for (long v : p.b) {
        if (values.empty() || values.back() != v) {
          values.push_back(v);
          rem.push_back(0);
        }
        ++rem.back();
      }
      Row row(N_, 0);
      distribute(blocks, 0, 0, blocks.empty() ? 0 : blocks[0].first, values, rem, row, [&](const Row& r) {
        for (std::size_t q = 0; q < d; ++q) {
          long dotv = 0;
          for (std::size_t i = 0; i < N_; ++i) dotv += node.b[q][i] * r[i];
          if (node.a[q] * p.a - dotv != spec_.offDiag[k][order_[q]]) return;
        }
        Node child = node;
        child.a.push_back(p.a);
        child.b.push_back(r);
        f(std::move(child));
      });
    }
  }

  void frontier(const Node& node, std::size_t depth, std::vector<Node>& out) const {
    if (node.a.size() == depth) {
      out.push_back(node);
      return;
    }
    children(node, [&](Node&& c) { frontier(c, depth, out); });
  }

  void complete(const Node& node, std::set<Key>& out) const {
    if (node.a.size() == n_) {
      std::vector<long> as(n_);
      std::vector<Row> bs(n_);
      for (std::size_t d = 0; d < n_; ++d) {
        as[order_[d]] = node.a[d];
        bs[order_[d]] = node.b[d];
      }
      out.insert(canonicalKey(as, bs, aut_));
      return;
    }
    children(node, [&](Node&& c) { complete(c, out); });
  }

 private:
  static bool sameColumn(const Node& node, std::size_t i, std::size_t j) {
    for (const auto& r : node.b)
      if (r[i] != r[j]) return false;
    return true;
  }

  // Fill the blocks in order; inside a block the values are non-increasing.
  template <class F>
  void distribute(const std::vector<std::pair<std::size_t, std::size_t>>& blocks, std::size_t bi, std::size_t vi,
                  std::size_t pos, const std::vector<long>& values, std::vector<long>& rem, Row& row, F&& f) const {
    if (bi == blocks.size()) {
      f(row);
      return;
    }
    auto [start, end] = blocks[bi];
    if (pos == end) {
      std::size_t next = bi + 1;
      distribute(blocks, next, 0, next < blocks.size() ? blocks[next].first : end, values, rem, row, f);
      return;
    }
    if (vi == values.size()) return;
    long left = static_cast<long>(end - pos);
    long maxTake = std::min(left, rem[vi]);
    long minTake = vi + 1 == values.size() ? left : 0;
    for (long x = maxTake; x >= minTake; --x) {
      for (long t = 0; t < x; ++t) row[pos + t] = values[vi];
      rem[vi] -= x;
      distribute(blocks, bi, vi + 1, pos + x, values, rem, row, f);
      rem[vi] += x;
    }
  }

  const ConfigSpec& spec_;
  const SearchSpec& search_;
  std::size_t n_, N_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<Pattern>> pats_;
  std::vector<Permutation> aut_;
};

nlohmann::json nodeToJson(const Node& node) {
  nlohmann::json j = nlohmann::json::array();
  for (std::size_t d = 0; d < node.a.size(); ++d) {
    nlohmann::json row = nlohmann::json::array({node.a[d]});
    for (long x : node.b[d]) row.push_back(x);
    j.push_back(row);
  }
  return j;
}

Node nodeFromJson(const nlohmann::json& j) {
  Node node;
  for (const auto& row : j) {
    node.a.push_back(row.at(0).get<long>());
    Row b;
    for (std::size_t i = 1; i < row.size(); ++i) b.push_back(row.at(i).get<long>());
    node.b.push_back(std::move(b));
  }
  return node;
}

void writeCheckpoint(const std::string& path, const std::string& hash, const std::vector<std::size_t>& order,
                     std::size_t depth, const std::vector<Node>& pending, const std::set<Key>& results) {
  nlohmann::json j;
  j["version"] = 1;
  j["specHash"] = hash;
  j["placementOrder"] = order;
  j["depth"] = depth;
  j["frontier"] = nlohmann::json::array();
  for (const auto& node : pending) j["frontier"].push_back(nodeToJson(node));
  j["results"] = results;
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorKind::Io, "cannot write checkpoint " + tmp);
    out << j.dump() << "\n";
    if (!out) throw Error(ErrorKind::Io, "checkpoint write failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(ErrorKind::Io, "cannot move checkpoint into place");
}

}  // namespace

std::string searchSpecHash(const ConfigSpec& spec, const SearchSpec& search, const std::vector<std::size_t>& order) {
  nlohmann::json j;
  j["N"] = spec.ambientN;
  j["nu"] = spec.nu;
  j["genus"] = spec.genus;
  j["offDiag"] = spec.offDiag;
  std::vector<std::string> caps;
  for (const auto& c : search.caps.perComponent) caps.push_back(formatRational(c));
  j["caps"] = caps;
  j["atMostOneNegativeA"] = search.atMostOneNegativeA;
  j["rowSymmetryBreaking"] = search.rowSymmetryBreaking;
  j["columnSymmetryBreaking"] = search.columnSymmetryBreaking;
  j["supportPruning"] = search.supportPruning;
  j["checkpointDepth"] = search.checkpointDepth;
  j["placementOrder"] = order;
  return hexDigest(fnv1a(j.dump()));
}

EnumerationResult enumerateAssignments(const ConfigSpec& spec, const SearchSpec& search) {
  spec.validateShape();
  EnumerationResult res;
  std::size_t n = spec.n(), N = spec.ambientN;
  if (n == 0) {
    res.assignments.push_back(Assignment{});
    res.units = 1;
    return res;
  }
  Searcher s(spec, search);
  res.placementOrder = s.order();
  res.specHash = searchSpecHash(spec, search, s.order());
  std::size_t depth = std::min(search.checkpointDepth, n);
  bool checkpointing = search.checkpointInterval > 0 && !search.checkpointPath.empty();

  std::vector<Node> units;
  std::set<Key> results;
  bool loaded = false;
  if (search.resume && !search.checkpointPath.empty()) {
    std::ifstream in(search.checkpointPath);
    if (in) {
      nlohmann::json j;
      try {
        in >> j;
      } catch (const std::exception& e) {
        throw Error(ErrorKind::Io, std::string("unreadable checkpoint: ") + e.what());
      }
      if (j.value("specHash", std::string()) != res.specHash)
        throw Error(ErrorKind::CheckpointMismatch, "checkpoint was written for a different search specification");
      for (const auto& node : j.at("frontier")) units.push_back(nodeFromJson(node));
      for (const auto& key : j.at("results")) results.insert(key.get<Key>());
      loaded = true;
      res.resumed = true;
    }
  }
  if (!loaded) s.frontier(Node{}, depth, units);
  res.units = units.size();

  std::size_t batch = checkpointing ? search.checkpointInterval : std::max<std::size_t>(units.size(), 1);
  unsigned workers = std::max(1u, search.workers);
  for (std::size_t start = 0; start < units.size(); start += batch) {
    std::size_t end = std::min(units.size(), start + batch);
    std::vector<std::set<Key>> local(end - start);
    std::atomic<std::size_t> next{start};
    auto work = [&] {
      for (std::size_t u; (u = next++) < end;) s.complete(units[u], local[u - start]);
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    for (auto& l : local) results.insert(l.begin(), l.end());
    if (search.progress)
      search.progress("units " + std::to_string(end) + "/" + std::to_string(units.size()) + ", orbits " +
                      std::to_string(results.size()));
    if (checkpointing) {
      try {
        writeCheckpoint(search.checkpointPath, res.specHash, res.placementOrder, depth,
                        std::vector<Node>(units.begin() + end, units.end()), results);
      } catch (const Error& e) {
        res.warnings.push_back(e.what());
      }
    }
  }

  for (const auto& key : results) {
    Assignment a = fromKey(key, n, N);
    std::string why;
    if (!satisfiesDefinition(spec, a, &why)) throw std::logic_error("emitted assignment violates the definition: " + why);
    res.assignments.push_back(std::move(a));
  }
  return res;
}

Assignment canonicalForm(const Assignment& a, const std::vector<Permutation>& aut) {
  std::size_t n = a.size(), N = a.ambient();
  bool small = true;
  for (const auto& v : a.vectors) {
    small = small && fitsInt64(v.a());
    for (const auto& b : v.b()) small = small && fitsInt64(b);
  }
  if (!small) throw Error(ErrorKind::CapExceeded, "canonicalForm works on 64-bit entries");
  std::vector<long> as(n);
  std::vector<Row> bs(n, Row(N));
  for (std::size_t k = 0; k < n; ++k) {
    as[k] = toInt64(a.vectors[k].a());
    for (std::size_t i = 0; i < N; ++i) bs[k][i] = toInt64(a.vectors[k].b(i));
  }
  for (const auto& tau : aut)
    if (tau.size() != n) throw Error(ErrorKind::DimensionMismatch, "row permutation length");
  return fromKey(canonicalKey(as, bs, aut), n, N);
}

std::vector<Assignment> bruteForceOracle(const ConfigSpec& spec, const SearchSpec& search) {
  spec.validateShape();
  std::size_t n = spec.n(), N = spec.ambientN;
  if (n == 0) return {Assignment{}};
  // Fully expanded candidate lists, natural component order, no symmetry breaking.
  std::vector<std::vector<std::pair<long, Row>>> cand(n);
  double product = 1;
  for (std::size_t k = 0; k < n; ++k) {
    auto box = componentBox(spec, search.caps, k);
    for (auto& p : candidatePatterns(spec.nu[k], spec.genus[k], N, box, false)) {
      Row r = p.b;
      std::sort(r.begin(), r.end());
      do {
        cand[k].emplace_back(p.a, r);
      } while (std::next_permutation(r.begin(), r.end()));
    }
    product *= double(cand[k].size());
  }
  if (product > search.oracleCap) throw Error(ErrorKind::CapExceeded, "oracle product of candidate lists exceeds its cap");
  for (std::size_t k = 0; k < n; ++k)
    if (cand[k].empty()) return {};

  // compat[k][l][x] = bitset over candidates y of l that pair correctly with candidate x of k (k < l)
  using Bits = std::vector<std::uint64_t>;
  auto words = [](std::size_t m) { return (m + 63) / 64; };
  std::vector<std::vector<std::vector<Bits>>> compat(n, std::vector<std::vector<Bits>>(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      compat[k][l].assign(cand[k].size(), Bits(words(cand[l].size()), 0));
      for (std::size_t x = 0; x < cand[k].size(); ++x)
        for (std::size_t y = 0; y < cand[l].size(); ++y) {
          long d = cand[k][x].first * cand[l][y].first;
          for (std::size_t i = 0; i < N; ++i) d -= cand[k][x].second[i] * cand[l][y].second[i];
          if (d == spec.offDiag[k][l]) compat[k][l][x][y / 64] |= std::uint64_t(1) << (y % 64);
        }
    }

  std::set<Key> keys;
  std::vector<std::size_t> choice(n);
  std::vector<long> as(n);
  std::vector<Row> bs(n);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      int negatives = 0;
      for (long a : as) negatives += a < 0;
      if (search.atMostOneNegativeA && negatives > 1) return;
      keys.insert(canonicalKey(as, bs, {}));
      return;
    }
    Bits allowed(words(cand[k].size()), ~std::uint64_t(0));
    for (std::size_t p = 0; p < k; ++p) {
      const Bits& c = compat[p][k][choice[p]];
      for (std::size_t w = 0; w < allowed.size(); ++w) allowed[w] &= c[w];
    }
    for (std::size_t y = 0; y < cand[k].size(); ++y) {
      if (!(allowed[y / 64] >> (y % 64) & 1)) continue;
      choice[k] = y;
      as[k] = cand[k][y].first;
      bs[k] = cand[k][y].second;
      rec(k + 1);
    }
  };
  rec(0);

  std::vector<Permutation> aut;
  if (search.rowSymmetryBreaking) aut = computeAut(spec).elements;
  std::set<Key> out;
  for (const auto& key : keys) {
    Assignment a = fromKey(key, n, N);
    out.insert(aut.empty() ? key : canonicalKey([&] {
      std::vector<long> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = key[k * (N + 1)];
      return x;
    }(), [&] {
      std::vector<Row> x(n, Row(N));
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < N; ++i) x[k][i] = -key[k * (N + 1) + 1 + i];
      return x;
    }(), aut));
  }
  std::vector<Assignment> result;
  for (const auto& key : out) result.push_back(fromKey(key, n, N));
  return result;
}

}  // namespace sympconf
