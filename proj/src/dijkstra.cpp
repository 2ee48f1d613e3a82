#include "chscan/dijkstra.hpp"

#include <stdexcept>
#include <string>

namespace chscan {

DistanceMatrix all_pairs_oracle(const Graph& g, NodeId node_cap) {
  NodeId n = g.node_count();
  if (n > node_cap)
    throw std::invalid_argument("all_pairs_oracle: " + std::to_string(n) +
                                " nodes exceeds cap " + std::to_string(node_cap));
  DistanceMatrix m{n, std::vector<double>(static_cast<size_t>(n) * n, kInf)};
  for (NodeId s = 0; s < n; ++s) {
    DistanceMap r = dijkstra_sssp(g, s);
    for (NodeId t = 0; t < n; ++t) m.at(s, t) = r.dist[t];
  }
  return m;
}

}  // namespace chscan
