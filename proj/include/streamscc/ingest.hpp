#pragma once

#include <cstdlib>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "streamscc/stream_graph.hpp"

namespace streamscc {

// delta-analysis parameter: each instantaneous interaction lasts delta ticks.
struct delta_config {
  tick delta = 0;  // >= 0
};

// Approximation parameter. Rounding every segment [b,e] to
// [ceil(b), floor(e)] on the Delta grid collapses event times to multiples
// of Delta. Meant to be used with Delta < delta after delta-analysis.
struct approx_config {
  tick Delta = 1;  // > 0
};

namespace detail {

// Interns string labels to dense ids in first-appearance order.
class label_table {
 public:
  node_id intern(const std::string& s) {
    auto [it, fresh] = index_.try_emplace(s, static_cast<node_id>(labels_.size()));
    if (fresh) labels_.push_back(s);
    return it->second;
  }
  std::vector<std::string> take_labels() { return std::move(labels_); }

 private:
  std::unordered_map<std::string, node_id> index_;
  std::vector<std::string> labels_;
};

// Parses a decimal timestamp token into ticks: value * scale, rounded to
// the nearest tick (half away from zero). scale must be >= 1. Plain
// integers with scale 1 pass through exactly.
inline bool parse_scaled_time(const std::string& tok, tick scale, tick& out) {
  if (tok.empty()) return false;
  std::size_t i = 0;
  bool neg = false;
  if (tok[i] == '+' || tok[i] == '-') {
    neg = tok[i] == '-';
    ++i;
  }
  if (i == tok.size()) return false;
  __int128 int_part = 0;
  bool any_digit = false;
  for (; i < tok.size() && tok[i] != '.'; ++i) {
    if (tok[i] < '0' || tok[i] > '9') return false;
    int_part = int_part * 10 + (tok[i] - '0');
    any_digit = true;
  }
  __int128 frac = 0, denom = 1;
  if (i < tok.size()) {  // fraction
    ++i;
    if (i == tok.size() && !any_digit) return false;
    for (; i < tok.size(); ++i) {
      if (tok[i] < '0' || tok[i] > '9') return false;
      if (denom <= static_cast<__int128>(1) << 100) {
        frac = frac * 10 + (tok[i] - '0');
        denom *= 10;
      }
      any_digit = true;
    }
  }
  if (!any_digit) return false;
  __int128 num = (int_part * denom + frac) * scale;
  __int128 q = num / denom;
  __int128 r = num % denom;
  if (2 * r >= denom) ++q;
  if (neg) q = -q;
  out = static_cast<tick>(q);
  return true;
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream iss(line);
  std::string t;
  while (iss >> t) toks.push_back(std::move(t));
  return toks;
}

}  // namespace detail

// Parses instantaneous interactions, one `u v t` per line, into a stream
// graph under delta-analysis: each interaction contributes [t, t+delta] to
// the pair's presence, contributions closer than delta merge into one link
// segment, and a node is present exactly when it has at least one link.
// Lines starting with '#' and blank lines are skipped. time_scale converts
// decimal timestamps to ticks.
inline stream_graph parse_interactions(std::istream& in, delta_config cfg,
                                       tick time_scale = 1) {
  if (cfg.delta < 0) throw error("delta must be >= 0");
  detail::label_table labels;
  std::map<std::pair<node_id, node_id>, std::vector<tick>> times;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() != 3)
      throw malformed_line(line_no, "expected `u v t`, got " +
                                        std::to_string(toks.size()) + " fields");
    tick t;
    if (!detail::parse_scaled_time(toks[2], time_scale, t))
      throw malformed_line(line_no, "bad timestamp `" + toks[2] + "`");
    node_id u = labels.intern(toks[0]);
    node_id v = labels.intern(toks[1]);
    if (u == v) throw self_loop("line " + std::to_string(line_no) +
                                ": self loop on node " + toks[0]);
    auto key = std::minmax(u, v);
    times[{key.first, key.second}].push_back(t);
  }

  raw_stream raw;
  raw.labels = labels.take_labels();
  std::vector<std::vector<interval>> node_presence(raw.labels.size());
  for (auto& [key, ts] : times) {
    std::sort(ts.begin(), ts.end());
    for (std::size_t i = 0; i < ts.size();) {
      tick b = ts[i];
      tick e = ts[i] + cfg.delta;
      ++i;
      // interactions no more than delta apart chain into one segment
      while (i < ts.size() && ts[i] <= e) {
        e = ts[i] + cfg.delta;
        ++i;
      }
      raw.link_segments.push_back({{b, e}, key.first, key.second});
      node_presence[key.first].push_back({b, e});
      node_presence[key.second].push_back({b, e});
    }
  }
  for (node_id u = 0; u < node_presence.size(); ++u)
    for (const auto& iv : node_presence[u]) raw.node_segments.push_back({iv, u});
  return build_stream(std::move(raw));
}

// Parses explicit segments: `n u b e` node lines, `l u v b e` link lines,
// '#' comments. A node with no `n` lines defaults to the union of its link
// presences; explicit node lines that fail to cover a link raise
// link_outside_node_presence.
inline stream_graph parse_segments(std::istream& in, tick time_scale = 1) {
  detail::label_table labels;
  raw_stream raw;
  std::vector<bool> has_node_lines;
  std::vector<std::vector<interval>> link_presence;  // per node
  auto grow = [&](node_id u) {
    if (u >= has_node_lines.size()) {
      has_node_lines.resize(u + 1, false);
      link_presence.resize(u + 1);
    }
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    tick b, e;
    if (toks[0] == "n") {
      if (toks.size() != 4) throw malformed_line(line_no, "expected `n u b e`");
      if (!detail::parse_scaled_time(toks[2], time_scale, b) ||
          !detail::parse_scaled_time(toks[3], time_scale, e))
        throw malformed_line(line_no, "bad segment bounds");
      if (b > e) throw malformed_line(line_no, "segment with b > e");
      node_id u = labels.intern(toks[1]);
      grow(u);
      has_node_lines[u] = true;
      raw.node_segments.push_back({{b, e}, u});
    } else if (toks[0] == "l") {
      if (toks.size() != 5) throw malformed_line(line_no, "expected `l u v b e`");
      if (!detail::parse_scaled_time(toks[3], time_scale, b) ||
          !detail::parse_scaled_time(toks[4], time_scale, e))
        throw malformed_line(line_no, "bad segment bounds");
      if (b > e) throw malformed_line(line_no, "segment with b > e");
      node_id u = labels.intern(toks[1]);
      node_id v = labels.intern(toks[2]);
      if (u == v) throw self_loop("line " + std::to_string(line_no) +
                                  ": self loop on node " + toks[1]);
      grow(std::max(u, v));
      raw.link_segments.push_back({{b, e}, u, v});
      link_presence[u].push_back({b, e});
      link_presence[v].push_back({b, e});
    } else {
      throw malformed_line(line_no, "unknown record `" + toks[0] + "`");
    }
  }
  raw.labels = labels.take_labels();
  for (node_id u = 0; u < link_presence.size(); ++u)
    if (!has_node_lines[u])
      for (const auto& iv : link_presence[u]) raw.node_segments.push_back({iv, u});
  return build_stream(std::move(raw));
}

// Result of the Delta-approximation. Segments whose rounded interval is
// empty are dropped and counted; with Delta below the dataset's delta no
// segment is ever dropped.
struct approx_result {
  stream_graph stream;
  std::size_t dropped_node_segments = 0;
  std::size_t dropped_link_segments = 0;
};

// Replaces every segment [b, e] by [ceil(b), floor(e)] on the Delta grid.
// The result is included in the input stream (same horizon, same labels),
// so it never creates a new reachability relation.
inline approx_result approximate(const stream_graph& s, approx_config cfg) {
  if (cfg.Delta <= 0) throw non_positive_delta("Delta must be > 0");
  approx_result res;
  raw_stream raw;
  raw.labels = s.labels();
  raw.horizon = s.horizon();
  for (const auto& ns : s.node_segments()) {
    tick b = ceil_to_multiple(ns.iv.b, cfg.Delta);
    tick e = floor_to_multiple(ns.iv.e, cfg.Delta);
    if (b > e)
      ++res.dropped_node_segments;
    else
      raw.node_segments.push_back({{b, e}, ns.node});
  }
  for (const auto& ls : s.link_segments()) {
    tick b = ceil_to_multiple(ls.iv.b, cfg.Delta);
    tick e = floor_to_multiple(ls.iv.e, cfg.Delta);
    if (b > e)
      ++res.dropped_link_segments;
    else
      raw.link_segments.push_back({{b, e}, ls.u, ls.v});
  }
  res.stream = build_stream(std::move(raw));
  return res;
}

}  // namespace streamscc
