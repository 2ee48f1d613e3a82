#include "chscan/random_graph.hpp"

#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

namespace chscan {

namespace {

struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, k), exact via rejection
  std::uint64_t uniform(std::uint64_t k) {
    std::uint64_t limit = 0ULL - (0ULL - k) % k;  // 2^64 - (2^64 mod k), 0 means no rejection
    std::uint64_t x;
    do {
      x = next();
    } while (limit != 0 && x >= limit);
    return x % k;
  }
};

}  // namespace

Graph gen_random_graph(NodeId n, std::int64_t m, std::uint64_t seed, std::int64_t max_weight) {
  if (n < 0) throw std::invalid_argument("gen_random_graph: negative node count");
  if (max_weight < 1) throw std::invalid_argument("gen_random_graph: max_weight must be >= 1");
  std::int64_t all_pairs = static_cast<std::int64_t>(n) * (n - 1);
  if (m < 0 || m > all_pairs)
    throw std::invalid_argument("gen_random_graph: m out of range for simple digraph");

  SplitMix64 rng{seed};
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(static_cast<size_t>(m));
  if (2 * m >= all_pairs) {
    std::vector<std::pair<NodeId, NodeId>> pool;
    pool.reserve(static_cast<size_t>(all_pairs));
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = 0; v < n; ++v)
        if (u != v) pool.emplace_back(u, v);
    for (std::int64_t i = 0; i < m; ++i) {
      std::int64_t j = i + static_cast<std::int64_t>(rng.uniform(pool.size() - i));
      std::swap(pool[i], pool[j]);
      pairs.push_back(pool[i]);
    }
  } else {
    std::unordered_set<std::int64_t> used;
    used.reserve(static_cast<size_t>(m) * 2);
    while (static_cast<std::int64_t>(pairs.size()) < m) {
      NodeId u = static_cast<NodeId>(rng.uniform(n));
      NodeId v = static_cast<NodeId>(rng.uniform(n - 1));
      if (v >= u) ++v;
      if (used.insert(static_cast<std::int64_t>(u) * n + v).second) pairs.emplace_back(u, v);
    }
  }

  std::vector<Arc> arcs;
  arcs.reserve(pairs.size());
  for (auto [u, v] : pairs) {
    double w = static_cast<double>(1 + rng.uniform(static_cast<std::uint64_t>(max_weight)));
    arcs.push_back({u, v, w, kNoNode});
  }
  return Graph(n, std::move(arcs));
}

}  // namespace chscan
