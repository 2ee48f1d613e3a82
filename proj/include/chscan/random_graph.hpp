#pragma once

#include <cstdint>

#include "chscan/graph.hpp"

namespace chscan {

// Deterministic seeded digraph generator: m distinct ordered pairs (u,v),
// u != v, no self loops, integer weights drawn uniformly from 1..max_weight.
// Throws std::invalid_argument when m exceeds n*(n-1) or max_weight < 1.
//
// The bit stream is pinned so instances are reproducible anywhere:
//  - splitmix64 over the seed (state += 0x9e3779b97f4a7c15; z = state;
//    z = (z ^ z>>30) * 0xbf58476d1ce4e5b9; z = (z ^ z>>27) * 0x94d049bb133111eb;
//    return z ^ z>>31)
//  - uniform(k) by rejection: redraw while x >= 2^64 - (2^64 mod k), return x mod k
//  - if 2*m >= n*(n-1): enumerate all ordered pairs lexicographically and take
//    the first m of a partial Fisher-Yates shuffle (j = i + uniform(P-i));
//    otherwise draw pairs as u = uniform(n), v = uniform(n-1) skipped past u,
//    discarding repeats, until m distinct pairs exist
//  - one weight per kept pair, in kept order: 1 + uniform(max_weight)
Graph gen_random_graph(NodeId n, std::int64_t m, std::uint64_t seed, std::int64_t max_weight);

}  // namespace chscan
