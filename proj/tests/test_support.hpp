#pragma once

// Shared fixtures and independent oracles for the test suite. The oracles are
// deliberately implemented with different algorithms than the library code
// they check: simple-path enumeration instead of Dijkstra, and reachability
// over a time-expanded event graph instead of the connection scan.

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "chscan/ch.hpp"
#include "chscan/ch_build.hpp"
#include "chscan/dijkstra.hpp"
#include "chscan/graph.hpp"
#include "chscan/timetable.hpp"

namespace chscan::testing {

// Four nodes, five arcs; the running fixture used across the query tests.
// Shortest 0->3 is 0->2->1->3 = 2.5, shortest 0->1 is 0->2->1 = 1.5.
inline Graph example1_graph() {
  std::vector<Arc> arcs{
      {0, 1, 2.0}, {0, 2, 0.5}, {2, 1, 1.0}, {1, 3, 1.0}, {2, 3, 2.0},
  };
  return Graph(4, std::move(arcs));
}

inline ContractionHierarchy example1_ch() {
  Graph g = example1_graph();
  return contract(g, order_nodes(g, OrderingStrategy::input_order()));
}

// All-pairs shortest distances by enumerating simple paths (no repeated
// nodes). Exponential, fine for the tiny instances it is applied to.
inline DistanceMatrix brute_force_distances(const Graph& g) {
  NodeId n = g.node_count();
  DistanceMatrix m;
  m.n = n;
  m.d.assign(static_cast<size_t>(n) * n, kInf);
  std::vector<char> on_path(n, 0);
  for (NodeId s = 0; s < n; ++s) {
    m.at(s, s) = 0.0;
    auto dfs = [&](auto&& self, NodeId v, double len) -> void {
      on_path[v] = 1;
      for (std::int32_t ai : g.out_arcs(v)) {
        const Arc& a = g.arc(ai);
        if (on_path[a.target]) continue;
        double cand = len + a.weight;
        if (cand < m.at(s, a.target)) m.at(s, a.target) = cand;
        self(self, a.target, cand);
      }
      on_path[v] = 0;
    };
    dfs(dfs, s, 0.0);
  }
  return m;
}

// Earliest arrival per stop via reachability over the time-expanded event
// graph: one vertex per (stop, time) event, zero-cost waiting edges chaining
// a stop's events in time order, one edge per connection. Every edge moves
// forward in time, so the earliest reachable event time at a stop is its
// earliest arrival.
inline std::vector<Time> time_expanded_earliest_arrival(
    const Timetable& tt, const std::vector<std::pair<StopId, Time>>& departures) {
  std::map<std::pair<StopId, Time>, std::int32_t> event_id;
  auto intern = [&](StopId s, Time t) {
    return event_id.emplace(std::make_pair(s, t), static_cast<std::int32_t>(event_id.size()))
        .first->second;
  };
  for (const Connection& c : tt.connections()) {
    intern(c.dep_stop, c.dep_time);
    intern(c.arr_stop, c.arr_time);
  }
  for (auto [s, t] : departures) intern(s, t);

  std::int32_t n_events = static_cast<std::int32_t>(event_id.size());
  std::vector<std::vector<std::int32_t>> succ(n_events);
  // waiting edges: consecutive events at the same stop (map iteration is
  // already sorted by (stop, time))
  for (auto it = event_id.begin(); it != event_id.end(); ++it) {
    auto next = std::next(it);
    if (next != event_id.end() && next->first.first == it->first.first)
      succ[it->second].push_back(next->second);
  }
  for (const Connection& c : tt.connections())
    succ[event_id.at({c.dep_stop, c.dep_time})].push_back(event_id.at({c.arr_stop, c.arr_time}));

  std::vector<char> reach(n_events, 0);
  std::vector<std::int32_t> stack;
  for (auto [s, t] : departures) {
    std::int32_t e = event_id.at({s, t});
    if (!reach[e]) {
      reach[e] = 1;
      stack.push_back(e);
    }
  }
  while (!stack.empty()) {
    std::int32_t e = stack.back();
    stack.pop_back();
    for (std::int32_t f : succ[e])
      if (!reach[f]) {
        reach[f] = 1;
        stack.push_back(f);
      }
  }

  std::vector<Time> earliest(tt.stop_count(), kNever);
  for (const auto& [key, e] : event_id)
    if (reach[e]) earliest[key.first] = std::min(earliest[key.first], key.second);
  return earliest;
}

// Random timetable over n_stops named S0..S{n-1}. Times land in [0, max_time]
// with dep < arr: strictly positive ride times keep the earliest-arrival
// labels independent of how ties on dep_time are ordered, so the oracle
// comparison is well defined. Uses mt19937_64 on purpose (different stream
// than the library's graph generator).
inline Timetable gen_random_timetable(std::int32_t n_stops, std::int32_t n_conns,
                                      std::uint64_t seed, Time max_time = 100) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> names;
  for (std::int32_t i = 0; i < n_stops; ++i) names.push_back("S" + std::to_string(i));
  std::uniform_int_distribution<std::int32_t> pick_stop(0, n_stops - 1);
  std::uniform_int_distribution<Time> pick_time(0, max_time);
  std::vector<Connection> conns;
  for (std::int32_t i = 0; i < n_conns; ++i) {
    StopId a = pick_stop(rng);
    StopId b = pick_stop(rng);
    if (a == b) b = (b + 1) % n_stops;
    Time t1 = pick_time(rng);
    Time t2 = pick_time(rng);
    conns.push_back({a, b, std::min(t1, t2), std::max(t1, t2) + 1});
  }
  return Timetable(std::move(names), std::move(conns));
}

// Scratch file that removes itself. Contents land under the system temp dir.
class TempFile {
 public:
  explicit TempFile(const std::string& contents, const std::string& suffix = ".txt") {
    static std::atomic<int> counter{0};
    path_ = (std::filesystem::temp_directory_path() /
             ("chscan_test_" + std::to_string(::getpid()) + "_" +
              std::to_string(counter.fetch_add(1)) + suffix))
                .string();
    std::ofstream out(path_);
    out << contents;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace chscan::testing
