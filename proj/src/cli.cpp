#include "chscan/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "chscan/ch.hpp"
#include "chscan/ch_build.hpp"
#include "chscan/ch_query.hpp"
#include "chscan/csa.hpp"
#include "chscan/dijkstra.hpp"
#include "chscan/dimacs.hpp"
#include "chscan/random_graph.hpp"
#include "chscan/timetable.hpp"
#include "chscan/util.hpp"

namespace chscan {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

OrderingStrategy make_strategy(const std::string& name, const std::string& order_file) {
  if (name == "input-order") return OrderingStrategy::input_order();
  if (name == "by-node-id") return OrderingStrategy::by_node_id();
  if (name == "edge-difference") return OrderingStrategy::edge_difference();
  if (name == "explicit") {
    if (order_file.empty())
      throw std::runtime_error("--ordering explicit needs --order-file");
    std::ifstream in(order_file);
    if (!in) throw std::runtime_error("cannot open order file " + order_file);
    std::vector<std::int32_t> ranks;
    long long r;
    while (in >> r) ranks.push_back(static_cast<std::int32_t>(r));
    return OrderingStrategy::explicit_ranks_of(std::move(ranks));
  }
  throw std::runtime_error("unknown ordering '" + name + "'");
}

NodeId to_internal(long long one_based, NodeId n, const char* what) {
  if (one_based < 1 || one_based > n)
    throw std::runtime_error(std::string(what) + " node id " + std::to_string(one_based) +
                             " out of range 1.." + std::to_string(n));
  return static_cast<NodeId>(one_based - 1);
}

std::string path_column(const std::vector<Arc>& unpacked, NodeId source, double distance) {
  if (distance == kInf) return "";
  std::string s = std::to_string(source + 1);
  for (const Arc& a : unpacked) s += "->" + std::to_string(a.target + 1);
  return s;
}

// first non-blank line decides: 'ch ...' hierarchy vs DIMACS graph
bool looks_like_ch_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string tag;
  if (in >> tag) return tag == "ch";
  return false;
}

int cmd_preprocess(const std::string& graph_path, const std::string& ordering,
                   const std::string& order_file, int settle_limit, double tolerance,
                   const std::string& out_path, std::ostream& out, std::ostream& err) {
  Graph g = load_dimacs_file(graph_path);
  auto t0 = std::chrono::steady_clock::now();
  RankMap ranks = order_nodes(g, make_strategy(ordering, order_file), settle_limit);
  ContractionHierarchy ch = contract(g, std::move(ranks), settle_limit, tolerance);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
  std::ofstream fout(out_path);
  if (!fout) throw std::runtime_error("cannot write " + out_path);
  serialize_ch(ch, fout);
  err << "wrote " << out_path << "\n";
  out << "nodes,arcs,shortcuts,upward_arcs,downward_arcs,build_ms\n";
  out << g.node_count() << "," << g.arc_count() << "," << ch.shortcut_count() << ","
      << ch.scan().up.size() << "," << ch.scan().down.size() << "," << ms.count() << "\n";
  return 0;
}

int cmd_query(const std::string& ch_path, const std::vector<long long>& from,
              const std::vector<long long>& to, const std::string& algo, bool with_paths,
              double tolerance, std::ostream& out, std::ostream&) {
  ContractionHierarchy ch = deserialize_ch_file(ch_path);
  NodeId n = ch.base().node_count();
  std::vector<NodeId> sources, targets;
  for (long long v : from) sources.push_back(to_internal(v, n, "source"));
  for (long long v : to) targets.push_back(to_internal(v, n, "target"));

  QueryOptions opts;
  opts.tolerance = tolerance;
  opts.with_paths = with_paths;

  out << (with_paths ? "source,target,distance,path\n" : "source,target,distance\n");
  auto emit = [&](NodeId s, NodeId t, double dist, const std::vector<Arc>& unpacked) {
    out << s + 1 << "," << t + 1 << "," << format_number(dist);
    if (with_paths) out << "," << path_column(unpacked, s, dist);
    out << "\n";
  };

  if (algo == "csa-ch-m2m") {
    std::vector<Seed> seeds;
    for (NodeId s : sources) seeds.push_back({s, 0.0});
    ManyToManyResult m = csa_ch_many_to_many(ch, seeds, targets, opts);
    for (std::int32_t i = 0; i < m.departure_count(); ++i)
      for (std::int32_t j = 0; j < m.arrival_count(); ++j) {
        std::vector<Arc> unpacked;
        if (with_paths && m.distance(i, j) != kInf)
          unpacked = unpack_path(ch, m.packed_path(ch, i, j));
        emit(sources[i], targets[j], m.distance(i, j), unpacked);
      }
    return 0;
  }
  for (NodeId s : sources) {
    DistanceMap base_map;
    if (algo == "dijkstra") base_map = dijkstra_sssp(ch.base(), s);
    for (NodeId t : targets) {
      if (algo == "csa-ch") {
        QueryResult r = csa_ch_query_pair(ch, s, t, opts);
        emit(s, t, r.distance, r.unpacked_path);
      } else if (algo == "bidir-dijkstra-ch") {
        QueryResult r = bidir_dijkstra_ch(ch, s, t, opts);
        emit(s, t, r.distance, r.unpacked_path);
      } else if (algo == "dijkstra") {
        std::vector<Arc> chain;
        if (base_map.dist[t] != kInf) {
          for (NodeId x = t; base_map.pred_arc[x] != -1;) {
            const Arc& a = ch.base().arc(base_map.pred_arc[x]);
            chain.push_back(a);
            x = a.source;
          }
          std::reverse(chain.begin(), chain.end());
        }
        emit(s, t, base_map.dist[t], chain);
      } else {
        throw std::runtime_error("unknown algorithm '" + algo + "'");
      }
    }
  }
  return 0;
}

struct VerifyOutcome {
  std::int64_t pairs = 0;
  std::int64_t mismatches = 0;
  std::int64_t updown_violations = 0;
  std::string first_violation;
};

VerifyOutcome verify_one(const ContractionHierarchy& ch, double tolerance) {
  VerifyOutcome o;
  const Graph& g = ch.base();
  NodeId n = g.node_count();
  DistanceMatrix oracle = all_pairs_oracle(g, std::max<NodeId>(n, 1));
  QueryOptions opts;
  opts.tolerance = tolerance;
  opts.with_paths = false;
  auto mismatch = [&](double a, double b) {
    if (a == kInf && b == kInf) return false;
    return a == kInf || b == kInf || std::fabs(a - b) > tolerance;
  };
  for (NodeId s = 0; s < n; ++s) {
    Seed seed{s, 0.0};
    std::vector<NodeId> all(n);
    for (NodeId t = 0; t < n; ++t) all[t] = t;
    auto scan_results = csa_ch_query(ch, {&seed, 1}, all, opts);
    for (NodeId t = 0; t < n; ++t) {
      ++o.pairs;
      double want = oracle.at(s, t);
      double got_scan = scan_results[t].distance;
      double got_bidir = bidir_dijkstra_ch(ch, s, t, opts).distance;
      if (mismatch(got_scan, want) || mismatch(got_bidir, want)) {
        ++o.mismatches;
        if (o.first_violation.empty())
          o.first_violation = std::to_string(s + 1) + "->" + std::to_string(t + 1);
      }
    }
  }
  o.updown_violations = static_cast<std::int64_t>(verify_updown_property(ch, oracle, tolerance).size());
  return o;
}

int cmd_verify(const std::string& file, const std::vector<int>& sizes,
               const std::vector<std::uint64_t>& seeds, const std::string& orderings,
               int settle_limit, double tolerance, std::ostream& out, std::ostream& err) {
  std::vector<std::string> ordering_names;
  if (orderings == "both")
    ordering_names = {"input-order", "edge-difference"};
  else
    ordering_names = {orderings};

  out << "instance,ordering,pairs,mismatches,updown_violations,status,first_violation\n";
  bool all_ok = true;
  auto report = [&](const std::string& instance, const std::string& ordering,
                    const VerifyOutcome& o) {
    bool ok = o.mismatches == 0 && o.updown_violations == 0;
    all_ok = all_ok && ok;
    out << instance << "," << ordering << "," << o.pairs << "," << o.mismatches << ","
        << o.updown_violations << "," << (ok ? "pass" : "fail") << "," << o.first_violation
        << "\n";
    if (!ok && !o.first_violation.empty())
      err << instance << " (" << ordering << "): first violating pair " << o.first_violation
          << "\n";
  };

  if (!file.empty()) {
    if (looks_like_ch_file(file)) {
      ContractionHierarchy ch = deserialize_ch_file(file);
      report(file, "file", verify_one(ch, tolerance));
    } else {
      Graph g = load_dimacs_file(file);
      for (const auto& name : ordering_names) {
        ContractionHierarchy ch =
            contract(g, order_nodes(g, make_strategy(name, ""), settle_limit), settle_limit, tolerance);
        report(file, name, verify_one(ch, tolerance));
      }
    }
    return all_ok ? 0 : 1;
  }

  for (int size : sizes) {
    for (std::uint64_t seed : seeds) {
      std::int64_t m = std::min<std::int64_t>(5LL * size, static_cast<std::int64_t>(size) * (size - 1));
      Graph g = gen_random_graph(size, m, seed, 100);
      for (const auto& name : ordering_names) {
        ContractionHierarchy ch =
            contract(g, order_nodes(g, make_strategy(name, ""), settle_limit), settle_limit, tolerance);
        report("n" + std::to_string(size) + "-s" + std::to_string(seed), name,
               verify_one(ch, tolerance));
      }
    }
  }
  return all_ok ? 0 : 1;
}

int cmd_bench(const std::string& graph_path, int pairs, std::uint64_t seed,
              const std::string& ordering, int settle_limit, double tolerance, std::ostream& out,
              std::ostream& err) {
  Graph g = load_dimacs_file(graph_path);
  if (g.node_count() == 0) throw std::runtime_error("bench: graph has no nodes");
  ContractionHierarchy ch =
      contract(g, order_nodes(g, make_strategy(ordering, ""), settle_limit), settle_limit, tolerance);

  std::string instance = graph_path;
  if (auto slash = instance.find_last_of('/'); slash != std::string::npos)
    instance = instance.substr(slash + 1);

  QueryOptions opts;
  opts.tolerance = tolerance;
  opts.with_paths = false;

  out << "instance,pair,algorithm,source,target,distance,wall_ns,arcs_scanned,labels_updated,"
         "pq_operations\n";
  std::uint64_t state = seed;
  bool agree = true;
  for (int p = 0; p < pairs; ++p) {
    NodeId s = static_cast<NodeId>(splitmix64(state) % g.node_count());
    NodeId t = static_cast<NodeId>(splitmix64(state) % g.node_count());
    double reference = kInf;
    auto emit = [&](const char* algo, double dist, std::int64_t wall_ns, const QueryStats& st) {
      out << instance << "," << p << "," << algo << "," << s + 1 << "," << t + 1 << ","
          << format_number(dist) << "," << wall_ns << ","
          << st.arcs_scanned_forward + st.arcs_scanned_backward << "," << st.labels_updated << ","
          << st.pq_operations << "\n";
      if (reference == kInf && dist == kInf) return;
      if (std::fabs(reference - dist) > tolerance) agree = false;
    };
    auto timed = [](auto&& fn) {
      auto t0 = std::chrono::steady_clock::now();
      auto result = fn();
      auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      return std::make_pair(std::move(result), static_cast<std::int64_t>(ns));
    };

    {
      SearchStats st;
      auto [dm, ns] = timed([&] { return dijkstra_sssp(g, s, &st); });
      reference = dm.dist[t];
      QueryStats qs{st.arcs_examined, 0, st.labels_updated, st.pq_operations};
      emit("dijkstra", dm.dist[t], ns, qs);
    }
    {
      auto [r, ns] = timed([&] { return bidir_dijkstra_ch(ch, s, t, opts); });
      emit("bidir-dijkstra-ch", r.distance, ns, r.stats);
    }
    {
      auto [r, ns] = timed([&] { return csa_ch_query_pair(ch, s, t, opts); });
      emit("csa-ch", r.distance, ns, r.stats);
    }
    {
      Seed sd{s, 0.0};
      NodeId tv = t;
      auto [m, ns] = timed([&] { return csa_ch_many_to_many(ch, {&sd, 1}, {&tv, 1}, opts); });
      emit("csa-ch-m2m", m.distance(0, 0), ns, m.stats());
    }
  }
  if (!agree) {
    err << "bench: algorithms disagree on some pair\n";
    return 1;
  }
  return 0;
}

int cmd_timetable(const std::string& csv_path, const std::vector<std::string>& from,
                  const std::vector<std::string>& to, bool no_break, bool journeys,
                  std::ostream& out, std::ostream&) {
  Timetable tt = load_timetable_csv_file(csv_path);
  auto stop_of = [&](const std::string& name) {
    StopId s = tt.stop_by_name(name);
    if (s < 0) throw std::runtime_error("unknown stop '" + name + "'");
    return s;
  };
  std::vector<std::pair<StopId, Time>> seeds;
  for (const std::string& spec : from) {
    auto at = spec.find_last_of('@');
    if (at == std::string::npos)
      throw std::runtime_error("--from wants STOP@TIME, got '" + spec + "'");
    std::string name = spec.substr(0, at);
    std::string time_s = spec.substr(at + 1);
    if (time_s.empty() || time_s.find_first_not_of("0123456789") != std::string::npos)
      throw std::runtime_error("bad departure time in '" + spec + "'");
    seeds.emplace_back(stop_of(name), std::stoll(time_s));
  }
  std::vector<StopId> arrivals;
  for (const std::string& name : to) arrivals.push_back(stop_of(name));

  EarliestArrivalOptions opts;
  opts.use_break = !no_break;
  ArrivalLabels labels = csa_earliest_arrival(tt, seeds, arrivals, opts);

  out << (journeys ? "stop,arrival,journey\n" : "stop,arrival\n");
  for (size_t i = 0; i < arrivals.size(); ++i) {
    StopId s = arrivals[i];
    out << to[i] << ",";
    if (labels.arrival[s] == kNever) {
      out << "inf";
      if (journeys) out << ",";
    } else {
      out << labels.arrival[s];
      if (journeys) {
        out << ",";
        std::string sep;
        for (const Connection& c : reconstruct_journey(tt, labels, s)) {
          out << sep << tt.stop_name(c.dep_stop) << "@" << c.dep_time << "->"
              << tt.stop_name(c.arr_stop) << "@" << c.arr_time;
          sep = ";";
        }
      }
    }
    out << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"contraction hierarchy preprocessing and scan-based shortest path queries"};
  app.require_subcommand(1);

  double tolerance = kDefaultTolerance;
  int settle_limit = kDefaultWitnessSettleLimit;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tolerance", tolerance, "distance comparison tolerance")
        ->capture_default_str();
    sub->add_option("--settle-limit", settle_limit, "witness search settle cap")
        ->capture_default_str();
  };
  const std::vector<std::string> ordering_choices{"input-order", "by-node-id", "edge-difference",
                                                  "explicit"};

  auto* pre = app.add_subcommand("preprocess", "build and save a hierarchy");
  std::string pre_graph, pre_ordering = "edge-difference", pre_order_file, pre_out;
  pre->add_option("graph", pre_graph, "input graph (DIMACS sp)")->required();
  pre->add_option("--ordering", pre_ordering)->check(CLI::IsMember(ordering_choices))
      ->capture_default_str();
  pre->add_option("--order-file", pre_order_file, "rank per node, used with --ordering explicit");
  pre->add_option("--out", pre_out, "output hierarchy file")->required();
  add_common(pre);

  auto* qry = app.add_subcommand("query", "distances between node sets");
  std::string qry_ch, qry_algo = "csa-ch";
  std::vector<long long> qry_from, qry_to;
  bool qry_paths = false;
  qry->add_option("hierarchy", qry_ch, "hierarchy file from preprocess")->required();
  qry->add_option("--from", qry_from, "source nodes, 1-based")->required()->delimiter(',');
  qry->add_option("--to", qry_to, "target nodes, 1-based")->required()->delimiter(',');
  qry->add_option("--algo", qry_algo)
      ->check(CLI::IsMember({"csa-ch", "bidir-dijkstra-ch", "csa-ch-m2m", "dijkstra"}))
      ->capture_default_str();
  qry->add_flag("--paths", qry_paths, "append the unpacked path column");
  add_common(qry);

  auto* ver = app.add_subcommand("verify", "cross-check queries against the exact oracle");
  std::string ver_file, ver_orderings = "both";
  std::vector<int> ver_sizes{10, 30};
  std::vector<std::uint64_t> ver_seeds{1, 2, 3};
  ver->add_option("file", ver_file, "graph or hierarchy file; omit to sweep seeded instances");
  ver->add_option("--sizes", ver_sizes, "node counts for seeded instances")->delimiter(',');
  ver->add_option("--seeds", ver_seeds, "instance seeds")->delimiter(',');
  ver->add_option("--orderings", ver_orderings)
      ->check(CLI::IsMember({"input-order", "by-node-id", "edge-difference", "both"}))
      ->capture_default_str();
  add_common(ver);

  auto* ben = app.add_subcommand("bench", "time the query algorithms on random pairs");
  std::string ben_graph, ben_ordering = "edge-difference";
  int ben_pairs = 100;
  std::uint64_t ben_seed = 1;
  ben->add_option("graph", ben_graph, "input graph (DIMACS sp)")->required();
  ben->add_option("--pairs", ben_pairs)->capture_default_str();
  ben->add_option("--seed", ben_seed)->capture_default_str();
  ben->add_option("--ordering", ben_ordering)
      ->check(CLI::IsMember({"input-order", "by-node-id", "edge-difference"}))
      ->capture_default_str();
  add_common(ben);

  auto* ttc = app.add_subcommand("timetable", "earliest arrivals over a timetable");
  std::string ttc_csv;
  std::vector<std::string> ttc_from, ttc_to;
  bool ttc_no_break = false, ttc_journeys = false;
  ttc->add_option("timetable", ttc_csv, "timetable csv")->required();
  ttc->add_option("--from", ttc_from, "departure as STOP@TIME")->required();
  ttc->add_option("--to", ttc_to, "arrival stop")->required();
  ttc->add_flag("--no-break", ttc_no_break, "scan every connection");
  ttc->add_flag("--journeys", ttc_journeys, "append the journey column");

  std::vector<const char*> argv;
  argv.push_back("chscan");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (pre->parsed())
      return cmd_preprocess(pre_graph, pre_ordering, pre_order_file, settle_limit, tolerance,
                            pre_out, out, err);
    if (qry->parsed())
      return cmd_query(qry_ch, qry_from, qry_to, qry_algo, qry_paths, tolerance, out, err);
    if (ver->parsed())
      return cmd_verify(ver_file, ver_sizes, ver_seeds, ver_orderings, settle_limit, tolerance,
                        out, err);
    if (ben->parsed())
      return cmd_bench(ben_graph, ben_pairs, ben_seed, ben_ordering, settle_limit, tolerance, out,
                       err);
    if (ttc->parsed())
      return cmd_timetable(ttc_csv, ttc_from, ttc_to, ttc_no_break, ttc_journeys, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace chscan
