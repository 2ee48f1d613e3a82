#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "chscan/graph.hpp"
#include "chscan/min_heap.hpp"

namespace chscan {

struct DistanceMap {
  std::vector<double> dist;            // kInf where unreachable
  std::vector<std::int32_t> pred_arc;  // arc index into g.arcs(), -1 at source / unreached
};

struct SearchStats {
  std::int64_t pq_operations = 0;
  std::int64_t settled = 0;
  std::int64_t arcs_examined = 0;
  std::int64_t labels_updated = 0;
};

// Textbook single-source Dijkstra with stale-entry skipping. keep(arc) filters
// the arcs the search may traverse (used for the upward/downward restrictions).
// Heap entries order by (distance, node) so runs are deterministic.
template <class Filter>
DistanceMap dijkstra_sssp(const Graph& g, NodeId source, Filter&& keep,
                          SearchStats* stats = nullptr) {
  NodeId n = g.node_count();
  DistanceMap r{std::vector<double>(n, kInf), std::vector<std::int32_t>(n, -1)};
  CountingMinHeap<std::pair<double, NodeId>> heap;
  r.dist[source] = 0.0;
  heap.push({0.0, source});
  SearchStats local;
  while (!heap.empty()) {
    auto [d, v] = heap.pop();
    if (d > r.dist[v]) continue;  // stale
    ++local.settled;
    for (std::int32_t ai : g.out_arcs(v)) {
      const Arc& a = g.arc(ai);
      if (!keep(a)) continue;
      ++local.arcs_examined;
      double cand = d + a.weight;
      if (cand < r.dist[a.target]) {
        r.dist[a.target] = cand;
        r.pred_arc[a.target] = ai;
        ++local.labels_updated;
        heap.push({cand, a.target});
      }
    }
  }
  local.pq_operations = heap.ops();
  if (stats) *stats = local;
  return r;
}

inline DistanceMap dijkstra_sssp(const Graph& g, NodeId source, SearchStats* stats = nullptr) {
  return dijkstra_sssp(g, source, [](const Arc&) { return true; }, stats);
}

// Dense n-by-n distance matrix, row = source.
struct DistanceMatrix {
  NodeId n = 0;
  std::vector<double> d;

  double at(NodeId s, NodeId t) const { return d[static_cast<size_t>(s) * n + t]; }
  double& at(NodeId s, NodeId t) { return d[static_cast<size_t>(s) * n + t]; }
};

// Ground-truth oracle: one Dijkstra per source. Guarded by a node cap since
// the matrix is quadratic; raise the cap deliberately, not by accident.
DistanceMatrix all_pairs_oracle(const Graph& g, NodeId node_cap = 500);

}  // namespace chscan
