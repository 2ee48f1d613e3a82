#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chscan/ch.hpp"
#include "chscan/graph.hpp"

namespace chscan {

struct Seed {
  NodeId node;
  double initial_distance = 0.0;
};

struct QueryOptions {
  double tolerance = kDefaultTolerance;
  bool with_paths = true;

  // Stop at the first node labeled from both sides and report its combined
  // distance. Deliberately wrong in general (the first meeting node need not
  // be the best one); kept for demonstrating why the full combine is needed.
  bool stop_at_first_meeting = false;

  // Abort both scans once the backward scan's current arc ends below the
  // forward scan's current arc's start level. Off by default: it truncates
  // the label arrays, so results are only upper bounds unless the instance
  // happens to be benign. Single departure/arrival only.
  bool enable_rank_break = false;
};

struct QueryStats {
  std::int64_t arcs_scanned_forward = 0;
  std::int64_t arcs_scanned_backward = 0;
  std::int64_t labels_updated = 0;
  std::int64_t pq_operations = 0;
};

struct QueryResult {
  double distance = kInf;
  NodeId meeting_node = kNoNode;
  std::vector<Arc> packed_path;    // arcs from aug_arcs, may contain shortcuts
  std::vector<Arc> unpacked_path;  // original arcs only
  QueryStats stats;
};

// Earliest-style scan query over the hierarchy: one in-order pass over the
// upward array seeded at the departures, one over the downward array seeded
// at the arrivals, interleaved one arc at a time, then a min-plus combine
// per arrival (meeting node = argmin, smallest node id on ties). No priority
// queue is involved. Returns one result per arrival, in input order.
std::vector<QueryResult> csa_ch_query(const ContractionHierarchy& ch,
                                      std::span<const Seed> departures,
                                      std::span<const NodeId> arrivals,
                                      const QueryOptions& opts = {});

QueryResult csa_ch_query_pair(const ContractionHierarchy& ch, NodeId source, NodeId target,
                              const QueryOptions& opts = {});

// Reference query: upward Dijkstra from the source, downward Dijkstra onto the
// target, terminating a direction once its frontier cannot beat the best
// combined distance seen.
QueryResult bidir_dijkstra_ch(const ContractionHierarchy& ch, NodeId source, NodeId target,
                              const QueryOptions& opts = {});

// Batched form: one forward scan carrying a label lane per departure, one
// backward scan with a lane per arrival, then a min-plus combine into a
// |departures| x |arrivals| matrix. Lane storage materializes per touched
// node. Entries are bit-identical to the corresponding pairwise queries.
class ManyToManyResult {
 public:
  std::int32_t departure_count() const { return n_dep_; }
  std::int32_t arrival_count() const { return n_arr_; }
  double distance(std::int32_t dep_index, std::int32_t arr_index) const {
    return dist_[static_cast<size_t>(dep_index) * n_arr_ + arr_index];
  }
  NodeId meeting_node(std::int32_t dep_index, std::int32_t arr_index) const {
    return meet_[static_cast<size_t>(dep_index) * n_arr_ + arr_index];
  }
  std::vector<Arc> packed_path(const ContractionHierarchy& ch, std::int32_t dep_index,
                               std::int32_t arr_index) const;
  const QueryStats& stats() const { return stats_; }

 private:
  friend ManyToManyResult csa_ch_many_to_many(const ContractionHierarchy&, std::span<const Seed>,
                                              std::span<const NodeId>, const QueryOptions&);
  std::int32_t n_dep_ = 0, n_arr_ = 0;
  std::vector<double> dist_;
  std::vector<NodeId> meet_;
  QueryStats stats_;
  // per-touched-node label lanes, kept for path reconstruction
  std::vector<std::int32_t> slot_f_, slot_b_;
  std::vector<std::int32_t> pred_f_, pred_b_;
};

ManyToManyResult csa_ch_many_to_many(const ContractionHierarchy& ch,
                                     std::span<const Seed> departures,
                                     std::span<const NodeId> arrivals,
                                     const QueryOptions& opts = {});

// Expands shortcuts recursively until only original arcs remain. Throws
// std::invalid_argument when consecutive arcs do not share an endpoint.
std::vector<Arc> unpack_path(const ContractionHierarchy& ch, std::span<const Arc> packed);

}  // namespace chscan
