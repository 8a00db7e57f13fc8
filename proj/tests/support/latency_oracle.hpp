#pragma once

// Brute-force latency oracle: bounded enumeration of time-respecting paths
// over event times, independent of the library's profile sweep. For each
// source and each departure event time, it searches states (node, instant)
// by crossing links present at the instant and waiting to the next event
// time while the node stays present, then minimizes arrival - departure.

#include <limits>
#include <vector>

#include "streamscc/latency.hpp"
#include "streamscc/stream_graph.hpp"

namespace testsupport {

using streamscc::latency_matrix;
using streamscc::node_id;
using streamscc::stream_graph;
using streamscc::tick;

inline latency_matrix latency_oracle(const stream_graph& s) {
  const std::size_t n = s.node_count();
  const auto& times = s.event_times();
  const std::size_t et = times.size();
  latency_matrix out(n);

  auto present_at = [&](node_id x, std::size_t i) {
    return s.node_present_at(x, times[i]);
  };
  auto can_wait = [&](node_id x, std::size_t i) {
    return i + 1 < et && s.node_present_throughout(x, times[i], times[i + 1]);
  };
  auto links_at = [&](std::size_t i) {
    std::vector<std::pair<node_id, node_id>> out_links;
    for (const auto& ls : s.link_segments())
      if (ls.iv.contains(times[i])) out_links.emplace_back(ls.u, ls.v);
    return out_links;
  };

  for (node_id src = 0; src < n; ++src) {
    for (std::size_t start = 0; start < et; ++start) {
      if (!present_at(src, start)) continue;
      // BFS over (node, event index) states from (src, start)
      std::vector<std::uint8_t> visited(n * et, 0);
      std::vector<std::pair<node_id, std::size_t>> queue{{src, start}};
      visited[src * et + start] = 1;
      for (std::size_t h = 0; h < queue.size(); ++h) {
        auto [x, i] = queue[h];
        if (x != src) {
          tick cand = times[i] - times[start];
          tick cur = out.at(src, x);
          if (cur < 0 || cand < cur) out.set(src, x, cand);
        }
        for (const auto& [a, b] : links_at(i)) {
          node_id y;
          if (a == x)
            y = b;
          else if (b == x)
            y = a;
          else
            continue;
          if (!visited[y * et + i]) {
            visited[y * et + i] = 1;
            queue.emplace_back(y, i);
          }
        }
        if (can_wait(x, i) && !visited[x * et + (i + 1)]) {
          visited[x * et + (i + 1)] = 1;
          queue.emplace_back(x, i + 1);
        }
      }
    }
  }
  return out;
}

}  // namespace testsupport
