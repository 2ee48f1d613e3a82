#include "chscan/ch.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "chscan/util.hpp"

namespace chscan {

RankMap::RankMap(std::vector<std::int32_t> rank_of_node) : rank_(std::move(rank_of_node)) {
  std::int32_t n = static_cast<std::int32_t>(rank_.size());
  node_at_.assign(n, kNoNode);
  for (NodeId v = 0; v < n; ++v) {
    std::int32_t r = rank_[v];
    if (r < 0 || r >= n) throw std::invalid_argument("rank map: rank out of range");
    if (node_at_[r] != kNoNode) throw std::invalid_argument("rank map: duplicate rank " + std::to_string(r));
    node_at_[r] = v;
  }
}

ScanArrays build_scan_arrays(std::span<const Arc> aug_arcs, const RankMap& ranks) {
  ScanArrays s;
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(aug_arcs.size()); ++i) {
    const Arc& a = aug_arcs[i];
    ScanArc sa{a.source, a.target, a.weight, i};
    if (ranks.rank(a.source) < ranks.rank(a.target))
      s.up.push_back(sa);
    else
      s.down.push_back(sa);
  }
  auto& rk = ranks;
  std::stable_sort(s.up.begin(), s.up.end(), [&rk](const ScanArc& x, const ScanArc& y) {
    return rk.rank(x.source) < rk.rank(y.source);
  });
  std::stable_sort(s.down.begin(), s.down.end(), [&rk](const ScanArc& x, const ScanArc& y) {
    return rk.rank(x.target) < rk.rank(y.target);
  });

  std::int32_t n = ranks.size();
  auto offsets = [n](const std::vector<ScanArc>& arr, auto key) {
    std::vector<std::int32_t> first(n + 1, 0);
    std::int32_t pos = 0;
    for (std::int32_t r = 0; r <= n; ++r) {
      while (pos < static_cast<std::int32_t>(arr.size()) && key(arr[pos]) < r) ++pos;
      first[r] = pos;
    }
    return first;
  };
  s.up_first_by_rank = offsets(s.up, [&rk](const ScanArc& a) { return rk.rank(a.source); });
  s.down_first_by_rank = offsets(s.down, [&rk](const ScanArc& a) { return rk.rank(a.target); });
  return s;
}

ContractionHierarchy ContractionHierarchy::from_parts(Graph base, RankMap ranks,
                                                      std::vector<Arc> shortcuts) {
  NodeId n = base.node_count();
  if (ranks.size() != n) throw std::invalid_argument("hierarchy: rank map size mismatch");
  ContractionHierarchy ch;
  ch.base_ = std::move(base);
  ch.ranks_ = std::move(ranks);
  ch.aug_.assign(ch.base_.arcs().begin(), ch.base_.arcs().end());
  for (const Arc& s : shortcuts) {
    if (s.source < 0 || s.source >= n || s.target < 0 || s.target >= n)
      throw std::invalid_argument("hierarchy: shortcut endpoint out of range");
    if (s.shortcut_mid == kNoNode)
      throw std::invalid_argument("hierarchy: shortcut without middle node");
    if (s.shortcut_mid < 0 || s.shortcut_mid >= n)
      throw std::invalid_argument("hierarchy: shortcut middle out of range");
    if (ch.ranks_.rank(s.shortcut_mid) >= ch.ranks_.rank(s.source) ||
        ch.ranks_.rank(s.shortcut_mid) >= ch.ranks_.rank(s.target))
      throw std::invalid_argument("hierarchy: shortcut middle must rank below both endpoints");
    if (!(s.weight >= 0.0) || !std::isfinite(s.weight))
      throw std::invalid_argument("hierarchy: shortcut weight must be finite and non-negative");
    ch.aug_.push_back(s);
  }
  ch.scan_ = build_scan_arrays(ch.aug_, ch.ranks_);
  ch.best_by_pair_.reserve(ch.aug_.size());
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(ch.aug_.size()); ++i) {
    const Arc& a = ch.aug_[i];
    std::int64_t key = static_cast<std::int64_t>(a.source) * n + a.target;
    auto [it, inserted] = ch.best_by_pair_.emplace(key, i);
    if (!inserted && a.weight < ch.aug_[it->second].weight) it->second = i;
  }

  ch.aug_out_offset_.assign(n + 1, 0);
  ch.aug_in_offset_.assign(n + 1, 0);
  for (const Arc& a : ch.aug_) {
    ++ch.aug_out_offset_[a.source + 1];
    ++ch.aug_in_offset_[a.target + 1];
  }
  for (NodeId v = 0; v < n; ++v) {
    ch.aug_out_offset_[v + 1] += ch.aug_out_offset_[v];
    ch.aug_in_offset_[v + 1] += ch.aug_in_offset_[v];
  }
  ch.aug_out_index_.resize(ch.aug_.size());
  ch.aug_in_index_.resize(ch.aug_.size());
  std::vector<std::int32_t> ofill(ch.aug_out_offset_.begin(), ch.aug_out_offset_.end() - 1);
  std::vector<std::int32_t> ifill(ch.aug_in_offset_.begin(), ch.aug_in_offset_.end() - 1);
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(ch.aug_.size()); ++i) {
    ch.aug_out_index_[ofill[ch.aug_[i].source]++] = i;
    ch.aug_in_index_[ifill[ch.aug_[i].target]++] = i;
  }
  return ch;
}

std::span<const std::int32_t> ContractionHierarchy::aug_out_arcs(NodeId v) const {
  return {aug_out_index_.data() + aug_out_offset_[v], aug_out_index_.data() + aug_out_offset_[v + 1]};
}

std::span<const std::int32_t> ContractionHierarchy::aug_in_arcs(NodeId v) const {
  return {aug_in_index_.data() + aug_in_offset_[v], aug_in_index_.data() + aug_in_offset_[v + 1]};
}

std::int32_t ContractionHierarchy::best_aug_arc(NodeId u, NodeId v) const {
  auto it = best_by_pair_.find(static_cast<std::int64_t>(u) * base_.node_count() + v);
  return it == best_by_pair_.end() ? -1 : it->second;
}

void serialize_ch(const ContractionHierarchy& ch, std::ostream& out) {
  NodeId n = ch.base().node_count();
  out << "ch 1 " << n << " " << ch.base().arc_count() << " " << ch.aug_arcs().size() << "\n";
  for (NodeId v = 0; v < n; ++v) out << "r " << v + 1 << " " << ch.ranks().rank(v) << "\n";
  for (const Arc& a : ch.aug_arcs()) {
    if (a.is_shortcut())
      out << "s " << a.source + 1 << " " << a.target + 1 << " " << format_number(a.weight) << " "
          << a.shortcut_mid + 1 << "\n";
    else
      out << "a " << a.source + 1 << " " << a.target + 1 << " " << format_number(a.weight) << "\n";
  }
}

std::string serialize_ch(const ContractionHierarchy& ch) {
  std::ostringstream os;
  serialize_ch(ch, os);
  return os.str();
}

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw std::runtime_error("ch format: line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

ContractionHierarchy deserialize_ch(std::istream& in) {
  std::string line;
  int line_no = 0;
  long long n = 0, m_orig = 0, m_aug = 0;
  bool have_header = false;
  std::vector<std::int32_t> rank_of_node;
  std::vector<char> rank_seen;
  long long ranks_read = 0;
  std::vector<Arc> originals, shortcuts;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (!have_header) {
      long long version;
      if (tag != "ch" || !(ls >> version >> n >> m_orig >> m_aug))
        fail(line_no, "expected 'ch 1 <n> <m_orig> <m_aug>'");
      if (version != 1) fail(line_no, "unsupported version " + std::to_string(version));
      if (n < 0 || m_orig < 0 || m_aug < m_orig) fail(line_no, "inconsistent header counts");
      have_header = true;
      rank_of_node.assign(static_cast<size_t>(n), 0);
      rank_seen.assign(static_cast<size_t>(n), 0);
      continue;
    }
    if (tag == "r") {
      long long v, r;
      if (!(ls >> v >> r)) fail(line_no, "expected 'r <node> <rank>'");
      if (v < 1 || v > n) fail(line_no, "node id out of range");
      if (r < 0 || r >= n) fail(line_no, "rank out of range");
      if (rank_seen[v - 1]) fail(line_no, "duplicate rank line for node " + std::to_string(v));
      rank_seen[v - 1] = 1;
      rank_of_node[v - 1] = static_cast<std::int32_t>(r);
      ++ranks_read;
    } else if (tag == "a") {
      long long u, v;
      double w;
      if (!(ls >> u >> v >> w)) fail(line_no, "expected 'a <u> <v> <w>'");
      if (u < 1 || u > n || v < 1 || v > n) fail(line_no, "node id out of range");
      originals.push_back({static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1), w, kNoNode});
    } else if (tag == "s") {
      long long u, v, mid;
      double w;
      if (!(ls >> u >> v >> w >> mid)) fail(line_no, "expected 's <u> <v> <w> <mid>'");
      if (u < 1 || u > n || v < 1 || v > n || mid < 1 || mid > n)
        fail(line_no, "node id out of range");
      shortcuts.push_back({static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1), w,
                           static_cast<NodeId>(mid - 1)});
    } else {
      fail(line_no, "unknown line tag '" + tag + "'");
    }
  }
  if (!have_header) throw std::runtime_error("ch format: missing header");
  if (ranks_read != n) throw std::runtime_error("ch format: expected one rank line per node");
  if (static_cast<long long>(originals.size()) != m_orig)
    throw std::runtime_error("ch format: original arc count does not match header");
  if (static_cast<long long>(originals.size() + shortcuts.size()) != m_aug)
    throw std::runtime_error("ch format: augmented arc count does not match header");

  Graph base(static_cast<NodeId>(n), originals);
  if (base.arc_count() != m_orig)
    throw std::runtime_error("ch format: original arcs contain duplicates or self loops");

  ContractionHierarchy ch;
  try {
    ch = ContractionHierarchy::from_parts(std::move(base), RankMap(std::move(rank_of_node)),
                                          std::move(shortcuts));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("ch format: ") + e.what());
  }

  // every shortcut must decompose into the two halves it claims
  for (const Arc& a : ch.aug_arcs()) {
    if (!a.is_shortcut()) continue;
    std::int32_t left = ch.best_aug_arc(a.source, a.shortcut_mid);
    std::int32_t right = ch.best_aug_arc(a.shortcut_mid, a.target);
    if (left < 0 || right < 0)
      throw std::runtime_error("ch format: shortcut half missing for " +
                               std::to_string(a.source + 1) + "->" + std::to_string(a.target + 1));
    double sum = ch.aug_arcs()[left].weight + ch.aug_arcs()[right].weight;
    if (std::fabs(sum - a.weight) > kDefaultTolerance)
      throw std::runtime_error("ch format: shortcut weight differs from the sum of its halves for " +
                               std::to_string(a.source + 1) + "->" + std::to_string(a.target + 1));
  }
  return ch;
}

ContractionHierarchy deserialize_ch_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("ch format: cannot open " + path);
  return deserialize_ch(in);
}

}  // namespace chscan
