#include "chscan/ch_query.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "chscan/kernels.hpp"
#include "chscan/min_heap.hpp"

namespace chscan {

namespace {

void check_node(const ContractionHierarchy& ch, NodeId v, const char* what) {
  if (v < 0 || v >= ch.base().node_count())
    throw std::invalid_argument(std::string(what) + " node out of range: " + std::to_string(v));
}

// Sparse per-node label lanes: a node gets `width` doubles plus predecessor
// marks the first time a scan touches it.
struct LaneStore {
  std::int32_t width = 0;
  std::vector<std::int32_t> slot;
  std::vector<double> dist;
  std::vector<std::int32_t> pred;

  LaneStore(NodeId n, std::int32_t w) : width(w), slot(n, -1) {}

  std::int32_t materialize(NodeId v) {
    if (slot[v] >= 0) return slot[v];
    std::int32_t s = static_cast<std::int32_t>(dist.size() / width);
    slot[v] = s;
    dist.resize(dist.size() + width, kInf);
    pred.resize(pred.size() + width, -1);
    return s;
  }

  double* lane(std::int32_t s) { return dist.data() + static_cast<size_t>(s) * width; }
  const double* lane(std::int32_t s) const { return dist.data() + static_cast<size_t>(s) * width; }
  std::int32_t* marks(std::int32_t s) { return pred.data() + static_cast<size_t>(s) * width; }
  std::int32_t mark(std::int32_t s, std::int32_t i) const {
    return pred[static_cast<size_t>(s) * width + i];
  }
};

std::vector<Arc> forward_chain(const ContractionHierarchy& ch, std::span<const std::int32_t> pred,
                               NodeId from) {
  std::vector<Arc> chain;
  NodeId x = from;
  while (pred[x] != -1) {
    const Arc& a = ch.aug_arcs()[pred[x]];
    chain.push_back(a);
    x = a.source;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

void attach_paths(const ContractionHierarchy& ch, QueryResult& r, std::vector<Arc> packed) {
  r.packed_path = std::move(packed);
  r.unpacked_path = unpack_path(ch, r.packed_path);
}

}  // namespace

std::vector<QueryResult> csa_ch_query(const ContractionHierarchy& ch,
                                      std::span<const Seed> departures,
                                      std::span<const NodeId> arrivals,
                                      const QueryOptions& opts) {
  const NodeId n = ch.base().node_count();
  const RankMap& rk = ch.ranks();
  if ((opts.stop_at_first_meeting || opts.enable_rank_break) &&
      (departures.size() != 1 || arrivals.size() != 1))
    throw std::invalid_argument("csa_ch_query: early-stop modes need one departure and one arrival");
  if (arrivals.empty()) return {};
  for (NodeId t : arrivals) check_node(ch, t, "arrival");

  std::vector<double> dist_f(n, kInf);
  std::vector<std::int32_t> pred_f(n, -1);
  std::int32_t min_dep_rank = n;
  for (const Seed& s : departures) {
    check_node(ch, s.node, "departure");
    if (!(s.initial_distance >= 0.0) || !std::isfinite(s.initial_distance))
      throw std::invalid_argument("csa_ch_query: initial distance must be finite and non-negative");
    dist_f[s.node] = std::min(dist_f[s.node], s.initial_distance);
    min_dep_rank = std::min(min_dep_rank, rk.rank(s.node));
  }

  const std::int32_t width = static_cast<std::int32_t>(arrivals.size());
  const bool single = width == 1;
  std::vector<double> dist_b;          // single-arrival labels
  std::vector<std::int32_t> pred_b;
  LaneStore lanes(n, width);           // multi-arrival labels
  std::int32_t min_arr_rank = n;
  if (single) {
    dist_b.assign(n, kInf);
    pred_b.assign(n, -1);
    dist_b[arrivals[0]] = 0.0;
    min_arr_rank = rk.rank(arrivals[0]);
  } else {
    for (std::int32_t j = 0; j < width; ++j) {
      std::int32_t s = lanes.materialize(arrivals[j]);
      lanes.lane(s)[j] = 0.0;
      min_arr_rank = std::min(min_arr_rank, rk.rank(arrivals[j]));
    }
  }

  const auto& up = ch.scan().up;
  const auto& down = ch.scan().down;
  size_t fu = ch.scan().up_first_by_rank[min_dep_rank];
  size_t bd = ch.scan().down_first_by_rank[min_arr_rank];
  const double tol = opts.tolerance;
  const auto& K = kernels::active();
  QueryStats stats;

  NodeId trapped = kNoNode;
  if (opts.stop_at_first_meeting && dist_f[arrivals[0]] != kInf)
    trapped = arrivals[0];  // seeded on both sides before any arc was scanned

  while (trapped == kNoNode && (fu < up.size() || bd < down.size())) {
    if (opts.enable_rank_break && fu < up.size() && bd < down.size() &&
        rk.rank(down[bd].target) < rk.rank(up[fu].source))
      break;
    if (fu < up.size()) {
      const ScanArc& a = up[fu++];
      ++stats.arcs_scanned_forward;
      if (dist_f[a.source] != kInf) {
        double cand = dist_f[a.source] + a.weight;
        if (cand < dist_f[a.target] - tol) {
          dist_f[a.target] = cand;
          pred_f[a.target] = a.aug_index;
          ++stats.labels_updated;
          if (opts.stop_at_first_meeting && dist_b[a.target] != kInf) trapped = a.target;
        }
      }
    }
    if (trapped == kNoNode && bd < down.size()) {
      const ScanArc& a = down[bd++];
      ++stats.arcs_scanned_backward;
      if (single) {
        if (dist_b[a.target] != kInf) {
          double cand = dist_b[a.target] + a.weight;
          if (cand < dist_b[a.source] - tol) {
            dist_b[a.source] = cand;
            pred_b[a.source] = a.aug_index;
            ++stats.labels_updated;
            if (opts.stop_at_first_meeting && dist_f[a.source] != kInf) trapped = a.source;
          }
        }
      } else {
        std::int32_t st = lanes.slot[a.target];
        if (st >= 0) {
          std::int32_t ss = lanes.materialize(a.source);
          stats.labels_updated += K.relax_lanes(lanes.lane(st), a.weight, tol, lanes.lane(ss),
                                                lanes.marks(ss), a.aug_index, width);
        }
      }
    }
  }

  std::vector<QueryResult> results(width);
  if (trapped != kNoNode) {
    QueryResult& r = results[0];
    r.distance = dist_f[trapped] + dist_b[trapped];
    r.meeting_node = trapped;
    r.stats = stats;
    if (opts.with_paths) {
      std::vector<Arc> packed = forward_chain(ch, pred_f, trapped);
      NodeId x = trapped;
      while (pred_b[x] != -1) {
        const Arc& a = ch.aug_arcs()[pred_b[x]];
        packed.push_back(a);
        x = a.target;
      }
      attach_paths(ch, r, std::move(packed));
    }
    return results;
  }

  if (single) {
    auto best = K.min_plus_argmin(dist_f.data(), dist_b.data(), n);
    QueryResult& r = results[0];
    r.stats = stats;
    if (best.index >= 0) {
      r.distance = best.value;
      r.meeting_node = best.index;
      if (opts.with_paths) {
        std::vector<Arc> packed = forward_chain(ch, pred_f, r.meeting_node);
        NodeId x = r.meeting_node;
        while (pred_b[x] != -1) {
          const Arc& a = ch.aug_arcs()[pred_b[x]];
          packed.push_back(a);
          x = a.target;
        }
        attach_paths(ch, r, std::move(packed));
      }
    }
    return results;
  }

  std::vector<double> combined(width, kInf);
  std::vector<std::int32_t> meet(width, -1);
  for (NodeId v = 0; v < n; ++v) {
    if (dist_f[v] == kInf || lanes.slot[v] < 0) continue;
    K.min_plus_accumulate(combined.data(), meet.data(), dist_f[v], lanes.lane(lanes.slot[v]), v,
                          width);
  }
  for (std::int32_t j = 0; j < width; ++j) {
    QueryResult& r = results[j];
    r.stats = stats;
    if (meet[j] < 0) continue;
    r.distance = combined[j];
    r.meeting_node = meet[j];
    if (opts.with_paths) {
      std::vector<Arc> packed = forward_chain(ch, pred_f, r.meeting_node);
      NodeId x = r.meeting_node;
      while (lanes.slot[x] >= 0 && lanes.mark(lanes.slot[x], j) != -1) {
        const Arc& a = ch.aug_arcs()[lanes.mark(lanes.slot[x], j)];
        packed.push_back(a);
        x = a.target;
      }
      attach_paths(ch, r, std::move(packed));
    }
  }
  return results;
}

QueryResult csa_ch_query_pair(const ContractionHierarchy& ch, NodeId source, NodeId target,
                              const QueryOptions& opts) {
  Seed seed{source, 0.0};
  NodeId arrival = target;
  return csa_ch_query(ch, {&seed, 1}, {&arrival, 1}, opts)[0];
}

QueryResult bidir_dijkstra_ch(const ContractionHierarchy& ch, NodeId source, NodeId target,
                              const QueryOptions& opts) {
  check_node(ch, source, "source");
  check_node(ch, target, "target");
  const NodeId n = ch.base().node_count();
  const RankMap& rk = ch.ranks();
  std::vector<double> dist_f(n, kInf), dist_b(n, kInf);
  std::vector<std::int32_t> pred_f(n, -1), pred_b(n, -1);
  CountingMinHeap<std::pair<double, NodeId>> heap_f, heap_b;
  QueryResult r;
  QueryStats& stats = r.stats;

  double best = kInf;
  NodeId meet = kNoNode;
  auto consider = [&](NodeId x) {
    if (dist_f[x] == kInf || dist_b[x] == kInf) return;
    double c = dist_f[x] + dist_b[x];
    if (c < best) {
      best = c;
      meet = x;
    }
  };

  dist_f[source] = 0.0;
  heap_f.push({0.0, source});
  dist_b[target] = 0.0;
  heap_b.push({0.0, target});
  consider(source);

  while (true) {
    bool f_live = !heap_f.empty() && heap_f.top().first < best;
    bool b_live = !heap_b.empty() && heap_b.top().first < best;
    if (!f_live && !b_live) break;
    bool take_f = f_live && (!b_live || heap_f.top().first <= heap_b.top().first);
    if (take_f) {
      auto [d, v] = heap_f.pop();
      if (d > dist_f[v]) continue;
      for (std::int32_t ai : ch.aug_out_arcs(v)) {
        const Arc& a = ch.aug_arcs()[ai];
        if (rk.rank(a.target) <= rk.rank(a.source)) continue;  // upward only
        ++stats.arcs_scanned_forward;
        double cand = d + a.weight;
        if (cand < dist_f[a.target]) {
          dist_f[a.target] = cand;
          pred_f[a.target] = ai;
          ++stats.labels_updated;
          heap_f.push({cand, a.target});
          consider(a.target);
        }
      }
    } else {
      auto [d, v] = heap_b.pop();
      if (d > dist_b[v]) continue;
      for (std::int32_t ai : ch.aug_in_arcs(v)) {
        const Arc& a = ch.aug_arcs()[ai];
        if (rk.rank(a.source) <= rk.rank(a.target)) continue;  // downward only
        ++stats.arcs_scanned_backward;
        double cand = d + a.weight;
        if (cand < dist_b[a.source]) {
          dist_b[a.source] = cand;
          pred_b[a.source] = ai;
          ++stats.labels_updated;
          heap_b.push({cand, a.source});
          consider(a.source);
        }
      }
    }
  }

  stats.pq_operations = heap_f.ops() + heap_b.ops();
  if (meet == kNoNode) return r;
  r.distance = best;
  r.meeting_node = meet;
  if (opts.with_paths) {
    std::vector<Arc> packed = forward_chain(ch, pred_f, meet);
    NodeId x = meet;
    while (pred_b[x] != -1) {
      const Arc& a = ch.aug_arcs()[pred_b[x]];
      packed.push_back(a);
      x = a.target;
    }
    attach_paths(ch, r, std::move(packed));
  }
  return r;
}

ManyToManyResult csa_ch_many_to_many(const ContractionHierarchy& ch,
                                     std::span<const Seed> departures,
                                     std::span<const NodeId> arrivals,
                                     const QueryOptions& opts) {
  const NodeId n = ch.base().node_count();
  const RankMap& rk = ch.ranks();
  ManyToManyResult m;
  m.n_dep_ = static_cast<std::int32_t>(departures.size());
  m.n_arr_ = static_cast<std::int32_t>(arrivals.size());
  m.dist_.assign(static_cast<size_t>(m.n_dep_) * m.n_arr_, kInf);
  m.meet_.assign(static_cast<size_t>(m.n_dep_) * m.n_arr_, kNoNode);
  if (m.n_dep_ == 0 || m.n_arr_ == 0) return m;

  const double tol = opts.tolerance;
  const auto& K = kernels::active();

  LaneStore fwd(n, m.n_dep_);
  std::int32_t min_dep_rank = n;
  for (std::int32_t i = 0; i < m.n_dep_; ++i) {
    const Seed& s = departures[i];
    check_node(ch, s.node, "departure");
    if (!(s.initial_distance >= 0.0) || !std::isfinite(s.initial_distance))
      throw std::invalid_argument("csa_ch_many_to_many: initial distance must be finite and non-negative");
    std::int32_t sl = fwd.materialize(s.node);
    fwd.lane(sl)[i] = std::min(fwd.lane(sl)[i], s.initial_distance);
    min_dep_rank = std::min(min_dep_rank, rk.rank(s.node));
  }
  const auto& up = ch.scan().up;
  for (size_t i = ch.scan().up_first_by_rank[min_dep_rank]; i < up.size(); ++i) {
    const ScanArc& a = up[i];
    ++m.stats_.arcs_scanned_forward;
    std::int32_t ss = fwd.slot[a.source];
    if (ss < 0) continue;
    std::int32_t st = fwd.materialize(a.target);
    m.stats_.labels_updated += K.relax_lanes(fwd.lane(ss), a.weight, tol, fwd.lane(st),
                                             fwd.marks(st), a.aug_index, m.n_dep_);
  }

  LaneStore bwd(n, m.n_arr_);
  std::int32_t min_arr_rank = n;
  for (std::int32_t j = 0; j < m.n_arr_; ++j) {
    check_node(ch, arrivals[j], "arrival");
    std::int32_t sl = bwd.materialize(arrivals[j]);
    bwd.lane(sl)[j] = 0.0;
    min_arr_rank = std::min(min_arr_rank, rk.rank(arrivals[j]));
  }
  const auto& down = ch.scan().down;
  for (size_t i = ch.scan().down_first_by_rank[min_arr_rank]; i < down.size(); ++i) {
    const ScanArc& a = down[i];
    ++m.stats_.arcs_scanned_backward;
    std::int32_t st = bwd.slot[a.target];
    if (st < 0) continue;
    std::int32_t ss = bwd.materialize(a.source);
    m.stats_.labels_updated += K.relax_lanes(bwd.lane(st), a.weight, tol, bwd.lane(ss),
                                             bwd.marks(ss), a.aug_index, m.n_arr_);
  }

  // combine: row d of the matrix accumulates min over v of fwd[v][d] + bwd[v][*];
  // visiting v in ascending id with strict improvement keeps the smallest
  // meeting node on ties, matching the pairwise combine
  for (NodeId v = 0; v < n; ++v) {
    std::int32_t sf = fwd.slot[v], sb = bwd.slot[v];
    if (sf < 0 || sb < 0) continue;
    const double* f = fwd.lane(sf);
    const double* b = bwd.lane(sb);
    for (std::int32_t d = 0; d < m.n_dep_; ++d) {
      if (f[d] == kInf) continue;
      K.min_plus_accumulate(m.dist_.data() + static_cast<size_t>(d) * m.n_arr_,
                            m.meet_.data() + static_cast<size_t>(d) * m.n_arr_, f[d], b, v,
                            m.n_arr_);
    }
  }

  m.slot_f_ = std::move(fwd.slot);
  m.pred_f_ = std::move(fwd.pred);
  m.slot_b_ = std::move(bwd.slot);
  m.pred_b_ = std::move(bwd.pred);
  return m;
}

std::vector<Arc> ManyToManyResult::packed_path(const ContractionHierarchy& ch,
                                               std::int32_t dep_index,
                                               std::int32_t arr_index) const {
  NodeId meeting = meeting_node(dep_index, arr_index);
  if (meeting == kNoNode) return {};
  std::vector<Arc> packed;
  NodeId x = meeting;
  while (slot_f_[x] >= 0) {
    std::int32_t p = pred_f_[static_cast<size_t>(slot_f_[x]) * n_dep_ + dep_index];
    if (p == -1) break;
    const Arc& a = ch.aug_arcs()[p];
    packed.push_back(a);
    x = a.source;
  }
  std::reverse(packed.begin(), packed.end());
  x = meeting;
  while (slot_b_[x] >= 0) {
    std::int32_t p = pred_b_[static_cast<size_t>(slot_b_[x]) * n_arr_ + arr_index];
    if (p == -1) break;
    const Arc& a = ch.aug_arcs()[p];
    packed.push_back(a);
    x = a.target;
  }
  return packed;
}

std::vector<Arc> unpack_path(const ContractionHierarchy& ch, std::span<const Arc> packed) {
  for (size_t i = 0; i + 1 < packed.size(); ++i)
    if (packed[i].target != packed[i + 1].source)
      throw std::invalid_argument("unpack_path: arcs are not contiguous");
  std::vector<Arc> out;
  std::vector<Arc> stack;
  for (const Arc& top : packed) {
    stack.assign(1, top);
    while (!stack.empty()) {
      Arc a = stack.back();
      stack.pop_back();
      if (!a.is_shortcut()) {
        out.push_back(a);
        continue;
      }
      std::int32_t left = ch.best_aug_arc(a.source, a.shortcut_mid);
      std::int32_t right = ch.best_aug_arc(a.shortcut_mid, a.target);
      if (left < 0 || right < 0)
        throw std::invalid_argument("unpack_path: shortcut half not present");
      stack.push_back(ch.aug_arcs()[right]);
      stack.push_back(ch.aug_arcs()[left]);
    }
  }
  return out;
}

}  // namespace chscan
