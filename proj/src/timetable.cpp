#include "chscan/timetable.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace chscan {

Timetable::Timetable(std::vector<std::string> stop_names, std::vector<Connection> connections)
    : names_(std::move(stop_names)), conns_(std::move(connections)) {
  StopId n = stop_count();
  for (const Connection& c : conns_) {
    if (c.dep_stop < 0 || c.dep_stop >= n || c.arr_stop < 0 || c.arr_stop >= n)
      throw std::invalid_argument("timetable: stop id out of range");
    if (c.dep_time < 0 || c.arr_time < c.dep_time)
      throw std::invalid_argument("timetable: connection must have 0 <= dep_time <= arr_time");
  }
  std::stable_sort(conns_.begin(), conns_.end(),
                   [](const Connection& a, const Connection& b) { return a.dep_time < b.dep_time; });
}

StopId Timetable::stop_by_name(const std::string& name) const {
  for (StopId s = 0; s < stop_count(); ++s)
    if (names_[s] == name) return s;
  return -1;
}

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw std::runtime_error("timetable csv: line " + std::to_string(line_no) + ": " + what);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

Time parse_time(const std::string& s, int line_no) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    fail(line_no, "expected a non-negative integer time, got '" + s + "'");
  try {
    return std::stoll(s);
  } catch (const std::out_of_range&) {
    fail(line_no, "time out of range: '" + s + "'");
  }
}

}  // namespace

Timetable load_timetable_csv(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw std::runtime_error("timetable csv: empty input");
  ++line_no;
  auto header = split_csv(line);
  if (header != std::vector<std::string>{"dep_stop", "arr_stop", "dep_time", "arr_time"})
    fail(line_no, "expected header dep_stop,arr_stop,dep_time,arr_time");

  std::vector<std::string> names;
  std::unordered_map<std::string, StopId> id_of;
  auto intern = [&](const std::string& name, int ln) {
    if (name.empty()) fail(ln, "empty stop name");
    auto [it, inserted] = id_of.emplace(name, static_cast<StopId>(names.size()));
    if (inserted) names.push_back(name);
    return it->second;
  };

  std::vector<Connection> conns;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto f = split_csv(line);
    if (f.size() != 4) fail(line_no, "expected 4 fields");
    Connection c;
    c.dep_stop = intern(f[0], line_no);
    c.arr_stop = intern(f[1], line_no);
    c.dep_time = parse_time(f[2], line_no);
    c.arr_time = parse_time(f[3], line_no);
    if (c.arr_time < c.dep_time) fail(line_no, "arr_time before dep_time");
    conns.push_back(c);
  }
  return Timetable(std::move(names), std::move(conns));
}

Timetable load_timetable_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("timetable csv: cannot open " + path);
  return load_timetable_csv(in);
}

void write_timetable_csv(const Timetable& tt, std::ostream& out) {
  out << "dep_stop,arr_stop,dep_time,arr_time\n";
  for (const Connection& c : tt.connections())
    out << tt.stop_name(c.dep_stop) << "," << tt.stop_name(c.arr_stop) << "," << c.dep_time << ","
        << c.arr_time << "\n";
}

}  // namespace chscan
