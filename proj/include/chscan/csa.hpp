#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "chscan/timetable.hpp"

namespace chscan {

struct ArrivalLabels {
  std::vector<Time> arrival;                 // kNever where unreachable
  std::vector<std::int32_t> pred_connection; // index into tt.connections(), -1 at seeds
  std::int64_t connections_scanned = 0;
};

struct EarliestArrivalOptions {
  // Stop scanning once every requested arrival stop has a finite label and the
  // current connection departs no earlier than the latest of them. Purely an
  // early exit; labels for the arrival stops never change.
  bool use_break = true;
};

// Single in-order pass over the connections. A connection c is boardable when
// the label at its departure stop is <= dep_time(c); it improves the arrival
// stop when arr_time(c) is strictly smaller than the label there. The scan
// starts at the first connection departing at or after the earliest seed.
// departures holds (stop, earliest departure time) seeds; duplicates keep the
// smaller time.
ArrivalLabels csa_earliest_arrival(const Timetable& tt,
                                   std::span<const std::pair<StopId, Time>> departures,
                                   std::span<const StopId> arrivals,
                                   const EarliestArrivalOptions& opts = {});

// Connection sequence reaching `stop`, earliest first. Empty when the stop is
// a seed; throws std::invalid_argument when the stop was never reached.
std::vector<Connection> reconstruct_journey(const Timetable& tt, const ArrivalLabels& labels,
                                            StopId stop);

}  // namespace chscan
