#include "chscan/csa.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace chscan {

ArrivalLabels csa_earliest_arrival(const Timetable& tt,
                                   std::span<const std::pair<StopId, Time>> departures,
                                   std::span<const StopId> arrivals,
                                   const EarliestArrivalOptions& opts) {
  const StopId n = tt.stop_count();
  ArrivalLabels out;
  out.arrival.assign(n, kNever);
  out.pred_connection.assign(n, -1);

  Time earliest_seed = kNever;
  for (auto [stop, at] : departures) {
    if (stop < 0 || stop >= n)
      throw std::invalid_argument("csa_earliest_arrival: departure stop out of range");
    if (at < 0) throw std::invalid_argument("csa_earliest_arrival: negative departure time");
    out.arrival[stop] = std::min(out.arrival[stop], at);
    earliest_seed = std::min(earliest_seed, at);
  }
  for (StopId s : arrivals)
    if (s < 0 || s >= n) throw std::invalid_argument("csa_earliest_arrival: arrival stop out of range");
  if (departures.empty()) return out;

  auto conns = tt.connections();
  // first connection departing at or after the earliest seed
  size_t i = std::lower_bound(conns.begin(), conns.end(), earliest_seed,
                              [](const Connection& c, Time t) { return c.dep_time < t; }) -
             conns.begin();

  for (; i < conns.size(); ++i) {
    const Connection& c = conns[i];
    ++out.connections_scanned;
    if (out.arrival[c.dep_stop] <= c.dep_time && c.arr_time < out.arrival[c.arr_stop]) {
      out.arrival[c.arr_stop] = c.arr_time;
      out.pred_connection[c.arr_stop] = static_cast<std::int32_t>(i);
    }
    if (opts.use_break && !arrivals.empty()) {
      Time latest = 0;
      bool all_reached = true;
      for (StopId s : arrivals) {
        if (out.arrival[s] == kNever) {
          all_reached = false;
          break;
        }
        latest = std::max(latest, out.arrival[s]);
      }
      // everything later departs at or after every answer, so nothing can improve
      if (all_reached && c.dep_time >= latest) break;
    }
  }
  return out;
}

std::vector<Connection> reconstruct_journey(const Timetable& tt, const ArrivalLabels& labels,
                                            StopId stop) {
  if (stop < 0 || stop >= tt.stop_count())
    throw std::invalid_argument("reconstruct_journey: stop out of range");
  if (labels.arrival[stop] == kNever)
    throw std::invalid_argument("reconstruct_journey: stop " + std::to_string(stop) +
                                " was never reached");
  std::vector<Connection> journey;
  StopId at = stop;
  while (labels.pred_connection[at] != -1) {
    const Connection& c = tt.connection(labels.pred_connection[at]);
    journey.push_back(c);
    at = c.dep_stop;
  }
  std::reverse(journey.begin(), journey.end());
  return journey;
}

}  // namespace chscan
