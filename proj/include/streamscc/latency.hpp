#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "streamscc/stream_graph.hpp"

namespace streamscc {

// Pairwise latencies of a stream. latency(u, v) is the minimal elapsed time
// of a time-respecting path from u to v: links are crossed instantaneously
// while present, several links may be chained at one instant, and waiting at
// a node is allowed only while the node is present. -1 encodes unreachable;
// the diagonal is not meaningful.
class latency_matrix {
 public:
  static constexpr tick unreachable = -1;

  latency_matrix() = default;
  explicit latency_matrix(std::size_t n)
      : n_(n), lat_(n * n, unreachable) {}

  std::size_t node_count() const { return n_; }
  tick at(node_id u, node_id v) const { return lat_[u * n_ + v]; }
  bool reachable(node_id u, node_id v) const { return at(u, v) >= 0; }
  void set(node_id u, node_id v, tick l) { lat_[u * n_ + v] = l; }

 private:
  std::size_t n_ = 0;
  std::vector<tick> lat_;
};

inline constexpr std::uint64_t default_latency_budget = 10'000'000;

// Exact latencies by a per-source profile sweep over event times. For each
// source, every node carries the latest feasible departure time with which
// it is currently reachable; the value spreads within each instant through
// the connected components of G_t, survives between instants only while the
// node stays present, and every increase (arrival a, departure d) yields a
// latency candidate a - d. Guarded: refuses streams with
// n * event_time_count above the budget.
inline latency_matrix latencies(const stream_graph& s,
                                std::uint64_t budget = default_latency_budget) {
  const std::size_t n = s.node_count();
  const auto& times = s.event_times();
  const std::size_t et = times.size();
  if (static_cast<std::uint64_t>(n) * et > budget)
    throw budget_exceeded("latency computation needs n*event_times = " +
                          std::to_string(n * et) + " > budget " +
                          std::to_string(budget));
  latency_matrix out(n);
  if (n == 0 || et == 0) return out;

  auto time_index = [&](tick t) {
    return static_cast<std::size_t>(
        std::lower_bound(times.begin(), times.end(), t) - times.begin());
  };

  // presence and gap-spanning bitmaps, plus per-instant edge lists
  std::vector<std::uint8_t> present(n * et, 0);
  std::vector<std::uint8_t> spans(n * (et > 0 ? et : 1), 0);
  std::vector<std::vector<std::pair<node_id, node_id>>> edges_at(et);
  for (const auto& ns : s.node_segments()) {
    std::size_t lo = time_index(ns.iv.b), hi = time_index(ns.iv.e);
    for (std::size_t i = lo; i <= hi; ++i) present[ns.node * et + i] = 1;
    for (std::size_t i = lo; i < hi; ++i) spans[ns.node * et + i] = 1;
  }
  for (const auto& ls : s.link_segments()) {
    std::size_t lo = time_index(ls.iv.b), hi = time_index(ls.iv.e);
    for (std::size_t i = lo; i <= hi; ++i) edges_at[i].emplace_back(ls.u, ls.v);
  }

  constexpr tick kNoToken = std::numeric_limits<tick>::min();
  std::vector<tick> depart(n);
  std::vector<node_id> stack;
  std::vector<std::vector<node_id>> adj(n);
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t pass = 0;

  for (node_id src = 0; src < n; ++src) {
    std::fill(depart.begin(), depart.end(), kNoToken);
    for (std::size_t i = 0; i < et; ++i) {
      const tick t = times[i];
      if (i > 0)
        for (node_id x = 0; x < n; ++x)
          if (depart[x] != kNoToken && !spans[x * et + (i - 1)])
            depart[x] = kNoToken;
      if (present[src * et + i]) depart[src] = t;

      if (edges_at[i].empty()) continue;
      for (const auto& [u, v] : edges_at[i]) {
        adj[u].push_back(v);
        adj[v].push_back(u);
      }
      ++pass;
      // spread the best departure through each linked component of G_t
      for (const auto& [eu, ev] : edges_at[i]) {
        for (node_id root : {eu, ev}) {
          if (seen[root] == pass) continue;
          stack.assign(1, root);
          seen[root] = pass;
          std::size_t h = 0;
          tick best = depart[root];
          while (h < stack.size()) {
            node_id x = stack[h++];
            for (node_id w : adj[x])
              if (seen[w] != pass) {
                seen[w] = pass;
                stack.push_back(w);
                best = std::max(best, depart[w]);
              }
          }
          if (best == kNoToken) continue;
          for (node_id x : stack)
            if (depart[x] < best) {
              depart[x] = best;
              if (x != src) {
                tick cand = t - best;
                tick cur = out.at(src, x);
                if (cur < 0 || cand < cur) out.set(src, x, cand);
              }
            }
        }
      }
      for (const auto& [u, v] : edges_at[i]) {
        adj[u].clear();
        adj[v].clear();
      }
    }
    // a node linked to the source at a shared instant has latency 0 and is
    // caught above; the source itself never enters its own row
  }
  return out;
}

// Approximation-error metrics between a stream and its Delta-approximation,
// over ordered node pairs (u != v). Sums are restricted to pairs reachable
// in both streams (pair_count_used records the denominator actually used);
// pairs reachable only in the original count as missing paths.
struct approx_report {
  double lrmse = 0;
  double avg_difference = 0;
  double avg_stretch = 1;
  std::uint64_t missing_paths = 0;
  std::uint64_t pair_count_used = 0;
};

inline approx_report compare_latency_matrices(const latency_matrix& base,
                                              const latency_matrix& approx) {
  if (base.node_count() != approx.node_count())
    throw mismatched_node_sets("latency matrices of different sizes");
  approx_report rep;
  long double sq = 0, diff = 0, stretch = 0;
  const std::size_t n = base.node_count();
  for (node_id u = 0; u < n; ++u)
    for (node_id v = 0; v < n; ++v) {
      if (u == v) continue;
      const bool rb = base.reachable(u, v);
      const bool ra = approx.reachable(u, v);
      if (rb && !ra) {
        ++rep.missing_paths;
        continue;
      }
      if (!rb) continue;
      const tick l = base.at(u, v);
      const tick la = approx.at(u, v);
      sq += static_cast<long double>(la - l) * (la - l);
      diff += static_cast<long double>(la - l);
      stretch += static_cast<long double>(la + 1) / (l + 1);
      ++rep.pair_count_used;
    }
  if (rep.pair_count_used > 0) {
    rep.lrmse = static_cast<double>(
        std::sqrt(sq / static_cast<long double>(rep.pair_count_used)));
    rep.avg_difference =
        static_cast<double>(diff / static_cast<long double>(rep.pair_count_used));
    rep.avg_stretch =
        static_cast<double>(stretch / static_cast<long double>(rep.pair_count_used));
  }
  return rep;
}

// Compares a stream with its approximation end to end. Both streams must
// share one node dictionary (approximate() guarantees this).
inline approx_report compare(const stream_graph& s, const stream_graph& s_delta,
                             std::uint64_t budget = default_latency_budget) {
  if (s.labels() != s_delta.labels())
    throw mismatched_node_sets("streams with different node sets");
  return compare_latency_matrices(latencies(s, budget),
                                  latencies(s_delta, budget));
}

}  // namespace streamscc
