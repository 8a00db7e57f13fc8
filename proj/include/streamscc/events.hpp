#pragma once

#include <algorithm>
#include <tuple>
#include <vector>

#include "streamscc/stream_graph.hpp"

namespace streamscc {

// Same-time processing order. Fixed globally: node arrivals, then link
// arrivals, then link departures, then node departures. Every sweep in the
// library follows this order.
enum class event_kind : std::uint8_t {
  node_arrival = 0,
  link_arrival = 1,
  link_departure = 2,
  node_departure = 3,
};

struct event {
  tick time = 0;
  event_kind kind = event_kind::node_arrival;
  node_id u = 0;
  node_id v = 0;        // valid for link events only
  tick segment_end = 0;  // the segment's other endpoint

  bool is_link() const {
    return kind == event_kind::link_arrival || kind == event_kind::link_departure;
  }
};

// Time-ordered sequence of node/link arrivals and departures: exactly one
// arrival and one departure per segment (even when b == e), 2N + 2M events
// in total, sorted by (time, kind, ids) so ties are deterministic.
inline std::vector<event> event_sequence(const stream_graph& s) {
  std::vector<event> ev;
  ev.reserve(2 * s.node_segments().size() + 2 * s.link_segments().size());
  for (const auto& ns : s.node_segments()) {
    ev.push_back({ns.iv.b, event_kind::node_arrival, ns.node, 0, ns.iv.e});
    ev.push_back({ns.iv.e, event_kind::node_departure, ns.node, 0, ns.iv.b});
  }
  for (const auto& ls : s.link_segments()) {
    ev.push_back({ls.iv.b, event_kind::link_arrival, ls.u, ls.v, ls.iv.e});
    ev.push_back({ls.iv.e, event_kind::link_departure, ls.u, ls.v, ls.iv.b});
  }
  std::sort(ev.begin(), ev.end(), [](const event& a, const event& b) {
    return std::tie(a.time, a.kind, a.u, a.v, a.segment_end) <
           std::tie(b.time, b.kind, b.u, b.v, b.segment_end);
  });
  return ev;
}

}  // namespace streamscc
