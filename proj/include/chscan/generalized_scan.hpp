#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chscan/ch.hpp"
#include "chscan/timetable.hpp"

namespace chscan {

// One-pass label correction over an arc array pre-sorted by a policy-defined
// order. The policy supplies the whole instantiation:
//
//   using ArcT / Value        arc record and label type
//   unreached()               label sentinel
//   tail(a) / head(a)         node the arc is relaxed from / into
//   precedes(a, b)            the sort order; the input must already obey it
//   can_extend(label, a)      boarding guard at the tail (seeds always pass)
//   extend(label, a)          label produced at the head
//   improves(cand, cur)       strict improvement test
//   target_done(label, a)     with targets given: this target cannot improve
//                             once the scan reached arc a (enables the break)
//
// One pass is exact whenever the instance has the property that on some
// optimal path to every reachable node the arcs appear in scan order; the
// callers here (timetable connections by departure time, hierarchy arcs by
// level) guarantee that by construction.
template <class Policy>
struct GenScanResult {
  std::vector<typename Policy::Value> label;
  std::vector<std::int32_t> pred;  // index into the scanned array, -1 at seeds
  std::int64_t arcs_scanned = 0;
};

template <class Policy>
GenScanResult<Policy> generalized_scan(
    const Policy& policy, std::span<const typename Policy::ArcT> arcs, std::int32_t node_count,
    std::span<const std::pair<std::int32_t, typename Policy::Value>> seeds,
    std::span<const std::int32_t> targets = {}) {
  for (size_t i = 0; i + 1 < arcs.size(); ++i)
    if (policy.precedes(arcs[i + 1], arcs[i]))
      throw std::invalid_argument("generalized_scan: arcs violate the scan order");

  GenScanResult<Policy> r;
  r.label.assign(node_count, policy.unreached());
  r.pred.assign(node_count, -1);
  for (auto& [node, value] : seeds) {
    if (node < 0 || node >= node_count)
      throw std::invalid_argument("generalized_scan: seed node out of range");
    if (policy.improves(value, r.label[node])) r.label[node] = value;
  }
  for (std::int32_t t : targets)
    if (t < 0 || t >= node_count)
      throw std::invalid_argument("generalized_scan: target node out of range");

  for (size_t i = 0; i < arcs.size(); ++i) {
    const auto& a = arcs[i];
    ++r.arcs_scanned;
    auto& tail_label = r.label[policy.tail(a)];
    if (tail_label != policy.unreached() && policy.can_extend(tail_label, a)) {
      auto cand = policy.extend(tail_label, a);
      if (policy.improves(cand, r.label[policy.head(a)])) {
        r.label[policy.head(a)] = cand;
        r.pred[policy.head(a)] = static_cast<std::int32_t>(i);
      }
    }
    if (!targets.empty()) {
      bool done = true;
      for (std::int32_t t : targets) {
        if (r.label[t] == policy.unreached() || !policy.target_done(r.label[t], a)) {
          done = false;
          break;
        }
      }
      if (done) break;
    }
  }
  return r;
}

// Timetable instantiation: connections ascending by departure time, label =
// earliest arrival. Matches csa_earliest_arrival label for label.
struct EarliestArrivalPolicy {
  using ArcT = Connection;
  using Value = Time;

  Value unreached() const { return kNever; }
  std::int32_t tail(const Connection& c) const { return c.dep_stop; }
  std::int32_t head(const Connection& c) const { return c.arr_stop; }
  bool precedes(const Connection& a, const Connection& b) const { return a.dep_time < b.dep_time; }
  bool can_extend(Value at_tail, const Connection& c) const { return at_tail <= c.dep_time; }
  Value extend(Value, const Connection& c) const { return c.arr_time; }
  bool improves(Value cand, Value cur) const { return cand < cur; }
  bool target_done(Value label, const Connection& c) const { return c.dep_time >= label; }
};

// Hierarchy instantiations: additive weights, any finite label may extend.
// Upward arcs scan ascending by tail level, downward arcs are traversed
// against their direction (label flows target -> source) ascending by target
// level. No break rule: a target's label can improve to the very end.
struct UpwardAdditivePolicy {
  using ArcT = ScanArc;
  using Value = double;

  const RankMap* ranks;
  double tolerance = kDefaultTolerance;

  Value unreached() const { return kInf; }
  std::int32_t tail(const ScanArc& a) const { return a.source; }
  std::int32_t head(const ScanArc& a) const { return a.target; }
  bool precedes(const ScanArc& a, const ScanArc& b) const {
    return ranks->rank(a.source) < ranks->rank(b.source);
  }
  bool can_extend(Value, const ScanArc&) const { return true; }
  Value extend(Value at_tail, const ScanArc& a) const { return at_tail + a.weight; }
  bool improves(Value cand, Value cur) const { return cand < cur - tolerance; }
  bool target_done(Value, const ScanArc&) const { return false; }
};

struct DownwardAdditivePolicy {
  using ArcT = ScanArc;
  using Value = double;

  const RankMap* ranks;
  double tolerance = kDefaultTolerance;

  Value unreached() const { return kInf; }
  std::int32_t tail(const ScanArc& a) const { return a.target; }
  std::int32_t head(const ScanArc& a) const { return a.source; }
  bool precedes(const ScanArc& a, const ScanArc& b) const {
    return ranks->rank(a.target) < ranks->rank(b.target);
  }
  bool can_extend(Value, const ScanArc&) const { return true; }
  Value extend(Value at_tail, const ScanArc& a) const { return at_tail + a.weight; }
  bool improves(Value cand, Value cur) const { return cand < cur - tolerance; }
  bool target_done(Value, const ScanArc&) const { return false; }
};

}  // namespace chscan
