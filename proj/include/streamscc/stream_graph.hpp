#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "streamscc/core.hpp"

namespace streamscc {

// Maximal closed interval of continuous presence of one node.
struct node_segment {
  interval iv;
  node_id node = 0;

  friend bool operator==(const node_segment&, const node_segment&) = default;
};

// Maximal closed interval of continuous presence of one link. The pair is
// unordered; stored with u < v.
struct link_segment {
  interval iv;
  node_id u = 0;
  node_id v = 0;

  friend bool operator==(const link_segment&, const link_segment&) = default;
};

// Unnormalized input to build_stream: segments in any order, possibly
// overlapping per key. Labels are optional; missing labels are stringified
// dense ids.
struct raw_stream {
  std::vector<std::string> labels;
  std::vector<node_segment> node_segments;
  std::vector<link_segment> link_segments;
  std::optional<interval> horizon;  // default: tight hull of all segments
};

struct stream_stats {
  std::size_t n = 0;                 // distinct present nodes
  std::size_t m = 0;                 // distinct linked pairs
  std::size_t node_segment_count = 0;
  std::size_t link_segment_count = 0;
  std::size_t event_time_count = 0;  // distinct event times
};

// Static graph at one instant: nodes and edges, both sorted.
struct static_graph {
  std::vector<node_id> nodes;
  std::vector<std::pair<node_id, node_id>> edges;
};

// Connected components of a static graph, each sorted, in order of their
// smallest member.
std::vector<std::vector<node_id>> connected_components(const static_graph& g);

// A normalized stream graph: horizon T = [alpha, omega], a node-label
// dictionary, and maximal node/link segments sorted by (start, key).
// Immutable after construction; safe to read from multiple threads.
class stream_graph {
 public:
  stream_graph() = default;

  const interval& horizon() const { return horizon_; }
  std::size_t node_count() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(node_id u) const { return labels_[u]; }
  const std::vector<node_segment>& node_segments() const { return node_segments_; }
  const std::vector<link_segment>& link_segments() const { return link_segments_; }

  // Maximal presence intervals of one node, sorted.
  std::span<const interval> presence(node_id u) const {
    if (u >= presence_.size()) return {};
    return presence_[u];
  }

  bool node_present_at(node_id u, tick t) const {
    return covering_segment(presence(u), t, t) != nullptr;
  }

  // True iff [a, b] is contained in the node's presence.
  bool node_present_throughout(node_id u, tick a, tick b) const {
    return covering_segment(presence(u), a, b) != nullptr;
  }

  stream_stats stats() const;

  // G_t: nodes and links present at instant t (closed-interval membership).
  static_graph graph_at(tick t) const;

  // Graph at a doubled-coordinate instant (see bounded_interval::contains_scaled);
  // allows sampling midpoints between event times.
  static_graph graph_at_scaled(tick t2) const;

  // G_t^-: nodes and links present throughout [t', t] where t' is the event
  // time preceding t. Throws no_predecessor_event_time when t is the first
  // event time, and error when t is not an event time at all.
  static_graph graph_just_before(tick t) const;

  // Distinct event times, sorted increasing.
  const std::vector<tick>& event_times() const { return event_times_; }

  friend stream_graph build_stream(raw_stream raw);

 private:
  static const interval* covering_segment(std::span<const interval> ivs, tick a,
                                          tick b) {
    // first segment with iv.b > a, step back one
    auto it = std::upper_bound(ivs.begin(), ivs.end(), a,
                               [](tick t, const interval& iv) { return t < iv.b; });
    if (it == ivs.begin()) return nullptr;
    --it;
    return (it->e >= b) ? &*it : nullptr;
  }

  interval horizon_{0, 0};
  std::vector<std::string> labels_;
  std::vector<node_segment> node_segments_;  // sorted by (b, node, e)
  std::vector<link_segment> link_segments_;  // sorted by (b, u, v, e)
  std::vector<std::vector<interval>> presence_;  // per node, sorted
  std::vector<tick> event_times_;
};

// Normalizes raw segments into a stream graph: merges overlapping or
// touching same-key segments into maximal ones, sorts by start time, and
// checks every invariant (segments inside the horizon, link presence
// covered by both node presences, no self loops).
inline stream_graph build_stream(raw_stream raw) {
  stream_graph s;

  // Merge per-key segment lists to maximal segments. Touching closed
  // intervals ([0,5] and [5,9]) union to one segment.
  auto merge_sorted = [](std::vector<interval>& ivs) {
    std::sort(ivs.begin(), ivs.end());
    std::size_t out = 0;
    for (std::size_t i = 0; i < ivs.size(); ++i) {
      if (out > 0 && ivs[i].b <= ivs[out - 1].e) {
        ivs[out - 1].e = std::max(ivs[out - 1].e, ivs[i].e);
      } else {
        ivs[out++] = ivs[i];
      }
    }
    ivs.resize(out);
  };

  node_id max_id = 0;
  bool any = false;
  for (const auto& ns : raw.node_segments) {
    max_id = std::max(max_id, ns.node);
    any = true;
  }
  for (const auto& ls : raw.link_segments) {
    if (ls.u == ls.v)
      throw self_loop("link segment with identical endpoints: node " +
                      std::to_string(ls.u));
    max_id = std::max(max_id, std::max(ls.u, ls.v));
    any = true;
  }
  const std::size_t n_ids = any ? static_cast<std::size_t>(max_id) + 1 : 0;

  s.labels_ = std::move(raw.labels);
  while (s.labels_.size() < n_ids)
    s.labels_.push_back(std::to_string(s.labels_.size()));

  s.presence_.resize(n_ids);
  for (const auto& ns : raw.node_segments) {
    if (ns.iv.b > ns.iv.e)
      throw error("node segment with b > e for node " + s.labels_[ns.node]);
    s.presence_[ns.node].push_back(ns.iv);
  }
  for (auto& ivs : s.presence_) merge_sorted(ivs);

  std::map<std::pair<node_id, node_id>, std::vector<interval>> links;
  for (const auto& ls : raw.link_segments) {
    if (ls.iv.b > ls.iv.e)
      throw error("link segment with b > e for pair " + s.labels_[ls.u] + " " +
                  s.labels_[ls.v]);
    auto key = std::minmax(ls.u, ls.v);
    links[{key.first, key.second}].push_back(ls.iv);
  }
  for (auto& [key, ivs] : links) merge_sorted(ivs);

  // Link presence must be covered by both node presences at every instant.
  for (const auto& [key, ivs] : links) {
    for (const auto& iv : ivs) {
      for (node_id side : {key.first, key.second}) {
        if (!stream_graph::covering_segment(s.presence_[side], iv.b, iv.e))
          throw link_outside_node_presence(
              "link " + s.labels_[key.first] + " " + s.labels_[key.second] +
              " [" + std::to_string(iv.b) + "," + std::to_string(iv.e) +
              "] not covered by presence of node " + s.labels_[side]);
      }
    }
  }

  // Horizon: explicit or tight hull.
  bool have_seg = false;
  tick lo = 0, hi = 0;
  for (const auto& ivs : s.presence_)
    for (const auto& iv : ivs) {
      if (!have_seg) {
        lo = iv.b;
        hi = iv.e;
        have_seg = true;
      } else {
        lo = std::min(lo, iv.b);
        hi = std::max(hi, iv.e);
      }
    }
  if (raw.horizon) {
    s.horizon_ = *raw.horizon;
    if (s.horizon_.b > s.horizon_.e) throw error("horizon with b > e");
    if (have_seg && !(s.horizon_.b <= lo && hi <= s.horizon_.e))
      throw segment_outside_horizon("segment outside horizon [" +
                                    std::to_string(s.horizon_.b) + "," +
                                    std::to_string(s.horizon_.e) + "]");
  } else {
    s.horizon_ = have_seg ? interval{lo, hi} : interval{0, 0};
  }

  for (node_id u = 0; u < n_ids; ++u)
    for (const auto& iv : s.presence_[u]) s.node_segments_.push_back({iv, u});
  std::sort(s.node_segments_.begin(), s.node_segments_.end(),
            [](const node_segment& a, const node_segment& b) {
              return std::tie(a.iv.b, a.node, a.iv.e) <
                     std::tie(b.iv.b, b.node, b.iv.e);
            });
  for (const auto& [key, ivs] : links)
    for (const auto& iv : ivs)
      s.link_segments_.push_back({iv, key.first, key.second});
  std::sort(s.link_segments_.begin(), s.link_segments_.end(),
            [](const link_segment& a, const link_segment& b) {
              return std::tie(a.iv.b, a.u, a.v, a.iv.e) <
                     std::tie(b.iv.b, b.u, b.v, b.iv.e);
            });

  for (const auto& ns : s.node_segments_) {
    s.event_times_.push_back(ns.iv.b);
    s.event_times_.push_back(ns.iv.e);
  }
  for (const auto& ls : s.link_segments_) {
    s.event_times_.push_back(ls.iv.b);
    s.event_times_.push_back(ls.iv.e);
  }
  std::sort(s.event_times_.begin(), s.event_times_.end());
  s.event_times_.erase(std::unique(s.event_times_.begin(), s.event_times_.end()),
                       s.event_times_.end());
  return s;
}

inline stream_stats stream_graph::stats() const {
  stream_stats st;
  for (const auto& ivs : presence_)
    if (!ivs.empty()) ++st.n;
  std::pair<node_id, node_id> prev{0, 0};
  bool first = true;
  std::vector<std::pair<node_id, node_id>> pairs;
  pairs.reserve(link_segments_.size());
  for (const auto& ls : link_segments_) pairs.emplace_back(ls.u, ls.v);
  std::sort(pairs.begin(), pairs.end());
  for (const auto& p : pairs) {
    if (first || p != prev) ++st.m;
    prev = p;
    first = false;
  }
  st.node_segment_count = node_segments_.size();
  st.link_segment_count = link_segments_.size();
  st.event_time_count = event_times_.size();
  return st;
}

inline static_graph stream_graph::graph_at(tick t) const {
  if (!horizon_.contains(t))
    throw time_outside_horizon("instant " + std::to_string(t) +
                               " outside horizon");
  return graph_at_scaled(2 * t);
}

inline static_graph stream_graph::graph_at_scaled(tick t2) const {
  static_graph g;
  for (const auto& ns : node_segments_)
    if (2 * ns.iv.b <= t2 && t2 <= 2 * ns.iv.e) g.nodes.push_back(ns.node);
  for (const auto& ls : link_segments_)
    if (2 * ls.iv.b <= t2 && t2 <= 2 * ls.iv.e) g.edges.emplace_back(ls.u, ls.v);
  std::sort(g.nodes.begin(), g.nodes.end());
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

inline static_graph stream_graph::graph_just_before(tick t) const {
  auto it = std::lower_bound(event_times_.begin(), event_times_.end(), t);
  if (it == event_times_.end() || *it != t)
    throw error("instant " + std::to_string(t) + " is not an event time");
  if (it == event_times_.begin())
    throw no_predecessor_event_time("first event time has no predecessor");
  tick prev = *std::prev(it);
  static_graph g;
  for (const auto& ns : node_segments_)
    if (ns.iv.b <= prev && t <= ns.iv.e) g.nodes.push_back(ns.node);
  for (const auto& ls : link_segments_)
    if (ls.iv.b <= prev && t <= ls.iv.e) g.edges.emplace_back(ls.u, ls.v);
  std::sort(g.nodes.begin(), g.nodes.end());
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

inline std::vector<std::vector<node_id>> connected_components(
    const static_graph& g) {
  if (g.nodes.empty()) return {};
  const std::size_t n = g.nodes.size();
  // nodes are sorted; compress to slots for dense adjacency
  std::vector<std::int32_t> slot(g.nodes.back() + 1, -1);
  for (std::size_t i = 0; i < n; ++i) slot[g.nodes[i]] = static_cast<std::int32_t>(i);
  std::vector<std::vector<std::int32_t>> adj(n);
  for (const auto& [u, v] : g.edges) {
    adj[slot[u]].push_back(slot[v]);
    adj[slot[v]].push_back(slot[u]);
  }
  std::vector<std::vector<node_id>> comps;
  std::vector<bool> seen(n, false);
  std::vector<std::int32_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    seen[i] = true;
    queue.assign(1, static_cast<std::int32_t>(i));
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (std::int32_t w : adj[queue[h]])
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
    std::vector<node_id> comp;
    comp.reserve(queue.size());
    for (std::int32_t k : queue) comp.push_back(g.nodes[k]);
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

}  // namespace streamscc
