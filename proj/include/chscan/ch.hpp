#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "chscan/graph.hpp"

namespace chscan {

// Bijection node -> level. Levels are dense 0..n-1; contraction processes
// nodes in ascending level.
class RankMap {
 public:
  RankMap() = default;
  explicit RankMap(std::vector<std::int32_t> rank_of_node);  // validates bijectivity

  std::int32_t size() const { return static_cast<std::int32_t>(rank_.size()); }
  std::int32_t rank(NodeId v) const { return rank_[v]; }
  NodeId node_at_rank(std::int32_t r) const { return node_at_[r]; }
  std::span<const std::int32_t> ranks() const { return rank_; }

  bool operator==(const RankMap&) const = default;

 private:
  std::vector<std::int32_t> rank_;
  std::vector<NodeId> node_at_;
};

// Arc copy laid out for the in-order scans, carrying its index into aug_arcs
// so label predecessors can reference the original record.
struct ScanArc {
  NodeId source;
  NodeId target;
  double weight;
  std::int32_t aug_index;

  bool operator==(const ScanArc&) const = default;
};

// The two read-only scan arrays. up holds arcs with rank(source) < rank(target)
// sorted ascending by rank(source); down holds the rest sorted ascending by
// rank(target). Both sorts are stable, so arcs tied on the key keep the order
// they have in aug_arcs. first_by_rank[r] is the index of the first arc whose
// key rank is >= r (length n+1), which is where a scan for a node of rank r
// may start.
struct ScanArrays {
  std::vector<ScanArc> up, down;
  std::vector<std::int32_t> up_first_by_rank, down_first_by_rank;

  bool operator==(const ScanArrays&) const = default;
};

ScanArrays build_scan_arrays(std::span<const Arc> aug_arcs, const RankMap& ranks);

// Preprocessed hierarchy: the untouched base graph, the node levels, and the
// augmented arc list (every base arc followed by the shortcuts in insertion
// order) from which the scan arrays are derived.
class ContractionHierarchy {
 public:
  ContractionHierarchy() = default;

  // Structural validation only (ids in range, mid levels below endpoint
  // levels); deserialize_ch additionally checks shortcut weight consistency.
  static ContractionHierarchy from_parts(Graph base, RankMap ranks, std::vector<Arc> shortcuts);

  const Graph& base() const { return base_; }
  const RankMap& ranks() const { return ranks_; }
  std::span<const Arc> aug_arcs() const { return aug_; }
  const ScanArrays& scan() const { return scan_; }
  std::int64_t shortcut_count() const { return static_cast<std::int64_t>(aug_.size()) - base_.arc_count(); }

  // Index of the cheapest aug arc u->v, -1 if none. Shortcut halves resolve
  // through this (a shortcut's stored weight equals the sum of the cheapest
  // records for its two halves at the time it was created).
  std::int32_t best_aug_arc(NodeId u, NodeId v) const;

  // Adjacency over aug_arcs (derived, not serialized), for the Dijkstra
  // reference query.
  std::span<const std::int32_t> aug_out_arcs(NodeId v) const;
  std::span<const std::int32_t> aug_in_arcs(NodeId v) const;

 private:
  Graph base_;
  RankMap ranks_;
  std::vector<Arc> aug_;
  ScanArrays scan_;
  std::unordered_map<std::int64_t, std::int32_t> best_by_pair_;
  std::vector<std::int32_t> aug_out_offset_, aug_out_index_, aug_in_offset_, aug_in_index_;
};

// Text format, 1-based node ids throughout:
//   ch 1 <n> <m_orig> <m_aug>
//   r <node> <rank>            one per node
//   a <u> <v> <w>              original arcs, in order
//   s <u> <v> <w> <mid>        shortcuts, in order
std::string serialize_ch(const ContractionHierarchy& ch);
void serialize_ch(const ContractionHierarchy& ch, std::ostream& out);

// Parses and fully validates (version, counts, rank bijection, shortcut mid
// levels, shortcut weight = sum of its halves). Throws std::runtime_error.
ContractionHierarchy deserialize_ch(std::istream& in);
ContractionHierarchy deserialize_ch_file(const std::string& path);

}  // namespace chscan
