#include "chscan/ch_build.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "chscan/ch_query.hpp"
#include "chscan/min_heap.hpp"

namespace chscan {

ContractionWorkGraph::ContractionWorkGraph(const Graph& g)
    : out_(g.node_count()), in_(g.node_count()), contracted_(g.node_count(), 0) {
  for (const Arc& a : g.arcs()) {
    out_[a.source].push_back({a.target, a.weight, kNoNode});
    in_[a.target].push_back({a.source, a.weight, kNoNode});
  }
}

bool ContractionWorkGraph::add_or_improve(NodeId u, NodeId w, double weight, NodeId mid) {
  for (WArc& rec : out_[u]) {
    if (rec.other != w) continue;
    if (weight >= rec.weight) return false;
    bool was_original = rec.mid == kNoNode;
    rec.weight = weight;
    rec.mid = mid;
    for (WArc& rin : in_[w]) {
      if (rin.other == u) {
        rin.weight = weight;
        rin.mid = mid;
        break;
      }
    }
    if (was_original && mid != kNoNode) shortcut_order_.emplace_back(u, w);
    return true;
  }
  out_[u].push_back({w, weight, mid});
  in_[w].push_back({u, weight, mid});
  if (mid != kNoNode) shortcut_order_.emplace_back(u, w);
  return true;
}

std::vector<Arc> ContractionWorkGraph::shortcuts() const {
  std::vector<Arc> result;
  result.reserve(shortcut_order_.size());
  for (auto [u, w] : shortcut_order_) {
    for (const WArc& rec : out_[u]) {
      if (rec.other == w) {
        result.push_back({u, w, rec.weight, rec.mid});
        break;
      }
    }
  }
  return result;
}

double witness_search(const ContractionWorkGraph& g, NodeId from, NodeId to, NodeId excluded,
                      double cap, int settle_limit) {
  thread_local std::vector<double> dist;
  thread_local std::vector<std::int64_t> stamp;
  thread_local std::int64_t epoch = 0;
  if (static_cast<NodeId>(dist.size()) < g.node_count()) {
    dist.resize(g.node_count());
    stamp.resize(g.node_count(), 0);
  }
  ++epoch;
  auto label = [&](NodeId v) { return stamp[v] == epoch ? dist[v] : kInf; };
  auto set_label = [&](NodeId v, double d) {
    dist[v] = d;
    stamp[v] = epoch;
  };

  if (from == to) return 0.0 <= cap ? 0.0 : kInf;
  CountingMinHeap<std::pair<double, NodeId>> heap;
  set_label(from, 0.0);
  heap.push({0.0, from});
  int settled = 0;
  while (!heap.empty()) {
    auto [d, x] = heap.pop();
    if (d > label(x)) continue;
    if (x == to) return d;
    if (++settled > settle_limit) break;
    if (x == excluded) continue;
    for (const auto& a : g.out(x)) {
      if (a.other == excluded || g.contracted(a.other)) continue;
      double cand = d + a.weight;
      if (cand > cap || cand >= label(a.other)) continue;
      set_label(a.other, cand);
      heap.push({cand, a.other});
    }
  }
  return label(to);  // truncated or exhausted: best known label is an upper bound
}

namespace {

// neighbor lists of v among the still-uncontracted nodes, ids ascending
std::vector<ContractionWorkGraph::WArc> live_neighbors(
    std::span<const ContractionWorkGraph::WArc> arcs, const ContractionWorkGraph& wg) {
  std::vector<ContractionWorkGraph::WArc> live;
  for (const auto& a : arcs)
    if (!wg.contracted(a.other)) live.push_back(a);
  std::sort(live.begin(), live.end(),
            [](const auto& x, const auto& y) { return x.other < y.other; });
  return live;
}

// Adds the shortcuts required to remove v while preserving distances among the
// remaining nodes. With count_only set, nothing is mutated and the return
// value is the number of shortcuts that would be added.
int contract_node(ContractionWorkGraph& wg, NodeId v, int settle_limit, double tolerance,
                  bool count_only = false) {
  auto ins = live_neighbors(wg.in(v), wg);
  auto outs = live_neighbors(wg.out(v), wg);
  int added = 0;
  for (const auto& ia : ins) {
    for (const auto& oa : outs) {
      if (ia.other == oa.other) continue;
      double via = ia.weight + oa.weight;
      double wit = witness_search(wg, ia.other, oa.other, v, via, settle_limit);
      if (wit > via + tolerance) {
        ++added;
        if (!count_only) wg.add_or_improve(ia.other, oa.other, via, v);
      }
    }
  }
  return added;
}

std::int64_t edge_difference(ContractionWorkGraph& wg, NodeId v, int settle_limit,
                             double tolerance) {
  std::int64_t removed = 0;
  for (const auto& a : wg.in(v))
    if (!wg.contracted(a.other)) ++removed;
  for (const auto& a : wg.out(v))
    if (!wg.contracted(a.other)) ++removed;
  return contract_node(wg, v, settle_limit, tolerance, /*count_only=*/true) - removed;
}

}  // namespace

RankMap order_nodes(const Graph& g, const OrderingStrategy& strategy, int witness_settle_limit) {
  NodeId n = g.node_count();
  switch (strategy.kind) {
    case OrderingStrategy::Kind::InputOrder:
    case OrderingStrategy::Kind::ByNodeId: {
      std::vector<std::int32_t> identity(n);
      for (NodeId v = 0; v < n; ++v) identity[v] = v;
      return RankMap(std::move(identity));
    }
    case OrderingStrategy::Kind::Explicit: {
      if (static_cast<NodeId>(strategy.explicit_ranks.size()) != n)
        throw std::invalid_argument("order_nodes: explicit rank list has wrong length");
      return RankMap(strategy.explicit_ranks);
    }
    case OrderingStrategy::Kind::EdgeDifference:
      break;
  }

  ContractionWorkGraph wg(g);
  using Entry = std::pair<std::int64_t, NodeId>;  // (priority, node), smaller id wins ties
  CountingMinHeap<Entry> heap;
  for (NodeId v = 0; v < n; ++v)
    heap.push({edge_difference(wg, v, witness_settle_limit, kDefaultTolerance), v});

  std::vector<std::int32_t> rank(n, -1);
  std::int32_t next_rank = 0;
  while (!heap.empty()) {
    auto [prio, v] = heap.pop();
    if (wg.contracted(v)) continue;  // stale duplicate
    std::int64_t fresh = edge_difference(wg, v, witness_settle_limit, kDefaultTolerance);
    if (!heap.empty() && Entry{fresh, v} > heap.top()) {
      heap.push({fresh, v});
      continue;
    }
    contract_node(wg, v, witness_settle_limit, kDefaultTolerance);
    wg.mark_contracted(v);
    rank[v] = next_rank++;
  }
  return RankMap(std::move(rank));
}

ContractionHierarchy contract(const Graph& g, RankMap ranks, int witness_settle_limit,
                              double tolerance) {
  if (ranks.size() != g.node_count())
    throw std::invalid_argument("contract: rank map size mismatch");
  ContractionWorkGraph wg(g);
  for (std::int32_t r = 0; r < ranks.size(); ++r) {
    NodeId v = ranks.node_at_rank(r);
    contract_node(wg, v, witness_settle_limit, tolerance);
    wg.mark_contracted(v);
  }
  return ContractionHierarchy::from_parts(g, std::move(ranks), wg.shortcuts());
}

std::vector<UpDownViolation> verify_updown_property(const ContractionHierarchy& ch,
                                                    const DistanceMatrix& oracle,
                                                    double tolerance) {
  NodeId n = ch.base().node_count();
  if (oracle.n != n) throw std::invalid_argument("verify_updown_property: oracle size mismatch");
  std::vector<Seed> sources(n);
  std::vector<NodeId> targets(n);
  for (NodeId v = 0; v < n; ++v) {
    sources[v] = {v, 0.0};
    targets[v] = v;
  }
  QueryOptions opts;
  opts.tolerance = tolerance;
  opts.with_paths = false;
  ManyToManyResult m = csa_ch_many_to_many(ch, sources, targets, opts);

  std::vector<UpDownViolation> bad;
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = 0; t < n; ++t) {
      double got = m.distance(s, t), want = oracle.at(s, t);
      if (got == kInf && want == kInf) continue;
      if (got == kInf || want == kInf || std::abs(got - want) > tolerance)
        bad.push_back({s, t, got, want});
    }
  }
  return bad;
}

}  // namespace chscan
