#pragma once

// Seeded random stream generators shared by the unit and acceptance suites.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "streamscc/ingest.hpp"
#include "streamscc/stream_graph.hpp"

namespace testsupport {

using streamscc::interval;
using streamscc::link_segment;
using streamscc::node_id;
using streamscc::node_segment;
using streamscc::raw_stream;
using streamscc::stream_graph;
using streamscc::tick;

struct gen_params {
  unsigned seed = 1;
  std::size_t max_nodes = 10;
  std::size_t node_segments = 12;
  std::size_t link_segments = 15;
  tick time_range = 40;   // starts drawn from [0, time_range]
  tick max_len = 12;
  int singleton_pct = 20;  // chance of a zero-length segment
};

// Random normalized stream with colliding event times, singleton segments
// and links guaranteed to lie inside both node presences.
inline stream_graph random_stream(const gen_params& p) {
  std::mt19937 rng(p.seed);
  auto pick = [&](tick lo, tick hi) {
    return std::uniform_int_distribution<tick>(lo, hi)(rng);
  };

  raw_stream nodes_only;
  for (std::size_t i = 0; i < p.node_segments; ++i) {
    node_id u = static_cast<node_id>(pick(0, static_cast<tick>(p.max_nodes) - 1));
    tick b = pick(0, p.time_range);
    tick len = pick(0, 99) < p.singleton_pct ? 0 : pick(1, p.max_len);
    nodes_only.node_segments.push_back({{b, b + len}, u});
  }
  stream_graph base = build_stream(nodes_only);

  raw_stream full;
  full.node_segments = nodes_only.node_segments;
  for (std::size_t i = 0; i < p.link_segments; ++i) {
    node_id u = static_cast<node_id>(pick(0, static_cast<tick>(p.max_nodes) - 1));
    node_id v = static_cast<node_id>(pick(0, static_cast<tick>(p.max_nodes) - 1));
    if (u == v) continue;
    // intersect the two presences and drop a link inside some overlap
    auto pu = base.presence(u);
    auto pv = base.presence(v);
    std::vector<interval> overlaps;
    for (const auto& a : pu)
      for (const auto& b : pv) {
        tick lo = std::max(a.b, b.b), hi = std::min(a.e, b.e);
        if (lo <= hi) overlaps.push_back({lo, hi});
      }
    if (overlaps.empty()) continue;
    const interval& ov = overlaps[static_cast<std::size_t>(
        pick(0, static_cast<tick>(overlaps.size()) - 1))];
    tick b = pick(ov.b, ov.e);
    tick e = pick(0, 99) < p.singleton_pct ? b : pick(b, ov.e);
    full.link_segments.push_back({{b, e}, u, v});
  }
  return build_stream(full);
}

// Random instantaneous-interaction dataset rendered in the `u v t` text
// format, for delta-analysis tests.
inline std::string random_interactions(unsigned seed, std::size_t nodes,
                                       std::size_t events, tick time_range) {
  std::mt19937 rng(seed);
  auto pick = [&](tick lo, tick hi) {
    return std::uniform_int_distribution<tick>(lo, hi)(rng);
  };
  std::ostringstream out;
  for (std::size_t i = 0; i < events; ++i) {
    auto u = pick(0, static_cast<tick>(nodes) - 1);
    auto v = pick(0, static_cast<tick>(nodes) - 1);
    if (u == v) continue;
    out << "n" << u << " n" << v << " " << pick(0, time_range) << "\n";
  }
  return out.str();
}

}  // namespace testsupport
