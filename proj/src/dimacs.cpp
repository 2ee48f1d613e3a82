#include "chscan/dimacs.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "chscan/util.hpp"

namespace chscan {

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw std::runtime_error("dimacs: line " + std::to_string(line_no) + ": " + what);
}

void reject_trailing(std::istringstream& ls, int line_no) {
  std::string rest;
  if (ls >> rest) fail(line_no, "trailing characters '" + rest + "'");
}

}  // namespace

Graph load_dimacs(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool have_problem = false;
  long long n = 0, m = 0;
  std::vector<Arc> arcs;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;  // blank line
    if (tag == "c") continue;
    if (tag == "p") {
      if (have_problem) fail(line_no, "duplicate problem line");
      std::string kind;
      if (!(ls >> kind >> n >> m) || kind != "sp") fail(line_no, "expected 'p sp <n> <m>'");
      if (n < 0 || m < 0) fail(line_no, "negative counts in problem line");
      reject_trailing(ls, line_no);
      have_problem = true;
      arcs.reserve(static_cast<size_t>(m));
    } else if (tag == "a") {
      if (!have_problem) fail(line_no, "arc line before problem line");
      long long u, v, w;
      if (!(ls >> u >> v >> w)) fail(line_no, "expected 'a <u> <v> <w>'");
      if (u < 1 || u > n || v < 1 || v > n) fail(line_no, "node id out of range");
      if (w < 0) fail(line_no, "negative arc weight");
      reject_trailing(ls, line_no);
      arcs.push_back({static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1),
                      static_cast<double>(w), kNoNode});
    } else {
      fail(line_no, "unknown line tag '" + tag + "'");
    }
  }
  if (!have_problem) throw std::runtime_error("dimacs: missing problem line");
  return Graph(static_cast<NodeId>(n), std::move(arcs));
}

Graph load_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("dimacs: cannot open " + path);
  return load_dimacs(in);
}

void write_dimacs(const Graph& g, std::ostream& out) {
  out << "p sp " << g.node_count() << " " << g.arc_count() << "\n";
  for (const Arc& a : g.arcs())
    out << "a " << a.source + 1 << " " << a.target + 1 << " " << format_number(a.weight) << "\n";
}

}  // namespace chscan
