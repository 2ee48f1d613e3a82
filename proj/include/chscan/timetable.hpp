#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace chscan {

using StopId = std::int32_t;
using Time = std::int64_t;  // seconds; integer so comparisons are exact

constexpr Time kNever = std::numeric_limits<Time>::max();

// A single vehicle hop: board at dep_stop no later than dep_time, alight at
// arr_stop at arr_time. Transfers take zero time.
struct Connection {
  StopId dep_stop;
  StopId arr_stop;
  Time dep_time;
  Time arr_time;

  bool operator==(const Connection&) const = default;
};

// Connections sorted ascending by departure time (stable, so rows tied on
// dep_time keep input order). Stops are dense ids with names attached.
class Timetable {
 public:
  Timetable() = default;
  Timetable(std::vector<std::string> stop_names, std::vector<Connection> connections);

  std::int32_t stop_count() const { return static_cast<std::int32_t>(names_.size()); }
  std::span<const Connection> connections() const { return conns_; }
  const Connection& connection(std::int32_t i) const { return conns_[i]; }
  const std::string& stop_name(StopId s) const { return names_[s]; }
  StopId stop_by_name(const std::string& name) const;  // -1 if unknown

 private:
  std::vector<std::string> names_;
  std::vector<Connection> conns_;
};

// CSV with header dep_stop,arr_stop,dep_time,arr_time. Stop names map to
// dense ids in order of first appearance; times are non-negative integers
// with dep_time <= arr_time. Errors name the offending line.
Timetable load_timetable_csv(std::istream& in);
Timetable load_timetable_csv_file(const std::string& path);
void write_timetable_csv(const Timetable& tt, std::ostream& out);

}  // namespace chscan
