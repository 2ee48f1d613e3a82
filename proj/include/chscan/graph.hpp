#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace chscan {

using NodeId = std::int32_t;

constexpr NodeId kNoNode = -1;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDefaultTolerance = 1e-9;

// Directed weighted arc. shortcut_mid is kNoNode for original arcs; a shortcut
// u->w with shortcut_mid = v stands for the two-arc path u->v->w.
struct Arc {
  NodeId source = kNoNode;
  NodeId target = kNoNode;
  double weight = 0.0;
  NodeId shortcut_mid = kNoNode;

  bool is_shortcut() const { return shortcut_mid != kNoNode; }
  bool operator==(const Arc&) const = default;
};

// Immutable directed graph over dense node ids 0..n-1. Construction drops
// self loops and collapses duplicate (source,target) pairs to the minimum
// weight, keeping the position of the first occurrence. At most one arc per
// ordered pair survives, so arc indices are stable handles.
class Graph {
 public:
  Graph() = default;
  Graph(NodeId node_count, std::vector<Arc> arcs);

  NodeId node_count() const { return node_count_; }
  std::int64_t arc_count() const { return static_cast<std::int64_t>(arcs_.size()); }
  std::span<const Arc> arcs() const { return arcs_; }
  const Arc& arc(std::int32_t i) const { return arcs_[i]; }

  // Arc indices leaving / entering a node.
  std::span<const std::int32_t> out_arcs(NodeId v) const;
  std::span<const std::int32_t> in_arcs(NodeId v) const;

  // Graph with every arc reversed, arc order preserved.
  Graph transposed() const;

 private:
  void build_adjacency();

  NodeId node_count_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::int32_t> out_offset_, out_index_;
  std::vector<std::int32_t> in_offset_, in_index_;
};

}  // namespace chscan
