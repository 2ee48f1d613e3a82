#include "chscan/graph.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace chscan {

Graph::Graph(NodeId node_count, std::vector<Arc> arcs) : node_count_(node_count) {
  if (node_count < 0) throw std::invalid_argument("graph: negative node count");
  arcs_.reserve(arcs.size());
  std::unordered_map<std::int64_t, std::int32_t> seen;
  seen.reserve(arcs.size());
  for (const Arc& a : arcs) {
    if (a.source < 0 || a.source >= node_count_ || a.target < 0 || a.target >= node_count_)
      throw std::invalid_argument("graph: arc endpoint out of range: " + std::to_string(a.source) +
                                  "->" + std::to_string(a.target));
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight))
      throw std::invalid_argument("graph: arc weight must be finite and non-negative");
    if (a.source == a.target) continue;  // self loops carry no shortest-path information
    std::int64_t key = static_cast<std::int64_t>(a.source) * node_count_ + a.target;
    auto [it, inserted] = seen.emplace(key, static_cast<std::int32_t>(arcs_.size()));
    if (inserted) {
      arcs_.push_back(a);
    } else if (a.weight < arcs_[it->second].weight) {
      arcs_[it->second] = a;
    }
  }
  build_adjacency();
}

void Graph::build_adjacency() {
  out_offset_.assign(node_count_ + 1, 0);
  in_offset_.assign(node_count_ + 1, 0);
  for (const Arc& a : arcs_) {
    ++out_offset_[a.source + 1];
    ++in_offset_[a.target + 1];
  }
  for (NodeId v = 0; v < node_count_; ++v) {
    out_offset_[v + 1] += out_offset_[v];
    in_offset_[v + 1] += in_offset_[v];
  }
  out_index_.resize(arcs_.size());
  in_index_.resize(arcs_.size());
  std::vector<std::int32_t> out_fill(out_offset_.begin(), out_offset_.end() - 1);
  std::vector<std::int32_t> in_fill(in_offset_.begin(), in_offset_.end() - 1);
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(arcs_.size()); ++i) {
    out_index_[out_fill[arcs_[i].source]++] = i;
    in_index_[in_fill[arcs_[i].target]++] = i;
  }
}

std::span<const std::int32_t> Graph::out_arcs(NodeId v) const {
  return {out_index_.data() + out_offset_[v], out_index_.data() + out_offset_[v + 1]};
}

std::span<const std::int32_t> Graph::in_arcs(NodeId v) const {
  return {in_index_.data() + in_offset_[v], in_index_.data() + in_offset_[v + 1]};
}

Graph Graph::transposed() const {
  std::vector<Arc> rev;
  rev.reserve(arcs_.size());
  for (const Arc& a : arcs_) rev.push_back({a.target, a.source, a.weight, a.shortcut_mid});
  return Graph(node_count_, std::move(rev));
}

}  // namespace chscan
