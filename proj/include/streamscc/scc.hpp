#pragma once

#include <algorithm>
#include <cassert>
#include <chrono>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "streamscc/dynamic_connectivity.hpp"
#include "streamscc/events.hpp"
#include "streamscc/stream_graph.hpp"

namespace streamscc {

// A strongly connected component of a stream: an interval (with per-endpoint
// openness) times a set of nodes that is a connected component of G_t at
// every instant of the interval. The components of a stream partition its
// temporal nodes.
struct component {
  bounded_interval iv;
  std::vector<node_id> nodes;  // sorted

  friend bool operator==(const component&, const component&) = default;
};

// Canonical order: by b, then e, then endpoint flags, then node list.
inline bool canonical_less(const component& a, const component& b) {
  auto key = [](const component& c) {
    return std::make_tuple(c.iv.b, !c.iv.b_closed, c.iv.e, !c.iv.e_closed);
  };
  if (key(a) != key(b)) return key(a) < key(b);
  return a.nodes < b.nodes;
}

// Receives closed components as the sweep emits them. Called from the run's
// thread only; nodes spans are only valid for the duration of the call and
// are not necessarily sorted.
class component_sink {
 public:
  virtual ~component_sink() = default;
  virtual void on_component(const bounded_interval& iv,
                            std::span<const node_id> nodes) = 0;
};

// Counts components without materializing node lists.
class counting_sink final : public component_sink {
 public:
  void on_component(const bounded_interval&, std::span<const node_id>) override {
    ++count_;
  }
  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t count_ = 0;
};

// Materializes every component with sorted node lists.
class collecting_sink final : public component_sink {
 public:
  void on_component(const bounded_interval& iv,
                    std::span<const node_id> nodes) override {
    component c{iv, {nodes.begin(), nodes.end()}};
    std::sort(c.nodes.begin(), c.nodes.end());
    components_.push_back(std::move(c));
  }
  std::vector<component>& components() { return components_; }
  const std::vector<component>& components() const { return components_; }

 private:
  std::vector<component> components_;
};

struct scc_summary {
  std::uint64_t component_count = 0;
  std::size_t max_component_size = 0;
  double wall_ms = 0;
};

namespace detail {

inline bounded_interval make_iv(tick b, bool b_closed, tick e, bool e_closed) {
  return bounded_interval{b, e, b_closed, e_closed};
}

class sweep_clock {
 public:
  sweep_clock() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// Recomputation-based sweep, straight from the definition: walk event times,
// compare the open components against the connected components of G_t^- and
// then of G_t, closing and opening as they differ. Quadratic-ish and simple;
// serves as the oracle for the other two algorithms.
inline scc_summary scc_naive(const stream_graph& s, component_sink& sink) {
  detail::sweep_clock clock;
  scc_summary sum;
  const auto& times = s.event_times();
  if (times.empty()) {
    sum.wall_ms = clock.ms();
    return sum;
  }

  struct open_bound {
    tick b;
    bool b_closed;
  };
  // open components keyed by their (sorted) node set
  std::map<std::vector<node_id>, open_bound> open;
  std::vector<const std::vector<node_id>*> node2set(s.node_count(), nullptr);

  auto emit = [&](const std::vector<node_id>& nodes, open_bound ob, tick e,
                  bool e_closed) {
    sink.on_component(detail::make_iv(ob.b, ob.b_closed, e, e_closed), nodes);
    ++sum.component_count;
    sum.max_component_size = std::max(sum.max_component_size, nodes.size());
  };

  // Brings `open` in line with the connected components of g. Missing sets
  // open with `opening`; stale sets close with bound (e, e_closed).
  auto reconcile = [&](const static_graph& g, open_bound opening, tick e,
                       bool e_closed) {
    auto ccs = connected_components(g);
    std::map<std::vector<node_id>, bool> is_cc;
    for (const auto& cc : ccs) is_cc.emplace(cc, true);
    std::vector<std::vector<node_id>> stale;
    for (const auto& [nodes, ob] : open)
      if (!is_cc.count(nodes)) stale.push_back(nodes);
    for (const auto& nodes : stale) {
      emit(nodes, open[nodes], e, e_closed);
      for (node_id x : nodes) node2set[x] = nullptr;
      open.erase(nodes);
    }
    for (auto& cc : ccs) {
      if (open.count(cc)) continue;
      auto [it, ok] = open.emplace(std::move(cc), opening);
      assert(ok);
      for (node_id x : it->first) node2set[x] = &it->first;
    }
  };

  const auto events = event_sequence(s);
  std::size_t ei = 0;

  reconcile(s.graph_at(times[0]), {times[0], true}, 0, false);
  while (ei < events.size() && events[ei].time == times[0]) ++ei;

  for (std::size_t k = 1; k < times.size(); ++k) {
    const tick t = times[k];
    const tick prev = times[k - 1];

    // fast path: an event time whose events are all link arrivals inside
    // existing components changes nothing
    bool skip = true;
    std::size_t ej = ei;
    while (ej < events.size() && events[ej].time == t) {
      const event& e = events[ej];
      if (e.kind != event_kind::link_arrival || node2set[e.u] == nullptr ||
          node2set[e.u] != node2set[e.v]) {
        skip = false;
      }
      ++ej;
    }
    ei = ej;
    if (skip) continue;

    reconcile(s.graph_just_before(t), {prev, false}, prev, true);
    reconcile(s.graph_at(t), {t, true}, t, false);
  }
  for (const auto& [nodes, ob] : open) emit(nodes, ob, times.back(), true);

  sum.wall_ms = clock.ms();
  return sum;
}

// Event-driven sweep: maintains the open components across single events.
// Link arrivals merge two components; link departures re-check connectivity
// inside the affected component with a bidirectional search; node events
// handle singletons. Emits exactly the same component set as scc_naive.
inline scc_summary scc_direct(const stream_graph& s, component_sink& sink) {
  detail::sweep_clock clock;
  scc_summary sum;

  struct open_comp {
    tick b;
    bool b_closed;
    std::vector<node_id> members;
  };

  const std::size_t n = s.node_count();
  std::vector<open_comp*> comp_of(n, nullptr);
  std::vector<std::vector<node_id>> adj(n);
  std::vector<std::uint32_t> mark_epoch(n, 0);
  std::vector<std::uint8_t> mark_side(n, 0);
  std::uint32_t epoch = 0;

  auto emit = [&](const open_comp& c, tick e, bool e_closed) {
    sink.on_component(detail::make_iv(c.b, c.b_closed, e, e_closed), c.members);
    ++sum.component_count;
    sum.max_component_size = std::max(sum.max_component_size, c.members.size());
  };

  auto drop_adj = [&](node_id u, node_id v) {
    auto& lst = adj[u];
    for (std::size_t i = 0; i < lst.size(); ++i)
      if (lst[i] == v) {
        lst[i] = lst.back();
        lst.pop_back();
        return;
      }
    assert(false && "edge missing from adjacency");
  };

  std::vector<node_id> qa, qb;
  // After removing edge (u, v): expands from both endpoints in lockstep;
  // returns false when they are still connected, otherwise fills `side`
  // with the complete component of whichever endpoint exhausted first.
  auto disconnected = [&](node_id u, node_id v, std::vector<node_id>& side) {
    ++epoch;
    qa.assign(1, u);
    qb.assign(1, v);
    mark_epoch[u] = mark_epoch[v] = epoch;
    mark_side[u] = 0;
    mark_side[v] = 1;
    std::size_t ha = 0, hb = 0;
    auto expand = [&](std::vector<node_id>& q, std::size_t& h, std::uint8_t sd) {
      node_id x = q[h++];
      for (node_id w : adj[x]) {
        if (mark_epoch[w] == epoch) {
          if (mark_side[w] != sd) return true;  // frontiers met
        } else {
          mark_epoch[w] = epoch;
          mark_side[w] = sd;
          q.push_back(w);
        }
      }
      return false;
    };
    while (true) {
      if (ha == qa.size()) {
        side = qa;
        return true;
      }
      if (expand(qa, ha, 0)) return false;
      if (hb == qb.size()) {
        side = qb;
        return true;
      }
      if (expand(qb, hb, 1)) return false;
    }
  };

  std::vector<node_id> side;
  for (const event& ev : event_sequence(s)) {
    const tick t = ev.time;
    switch (ev.kind) {
      case event_kind::node_arrival: {
        comp_of[ev.u] = new open_comp{t, true, {ev.u}};
        break;
      }
      case event_kind::link_arrival: {
        adj[ev.u].push_back(ev.v);
        adj[ev.v].push_back(ev.u);
        open_comp* cu = comp_of[ev.u];
        open_comp* cv = comp_of[ev.v];
        if (cu == cv) break;
        if (!(cu->b == t && cu->b_closed)) emit(*cu, t, false);
        if (!(cv->b == t && cv->b_closed)) emit(*cv, t, false);
        if (cu->members.size() < cv->members.size()) std::swap(cu, cv);
        for (node_id x : cv->members) {
          comp_of[x] = cu;
          cu->members.push_back(x);
        }
        cu->b = t;
        cu->b_closed = true;
        delete cv;
        break;
      }
      case event_kind::link_departure: {
        drop_adj(ev.u, ev.v);
        drop_adj(ev.v, ev.u);
        open_comp* c = comp_of[ev.u];
        assert(c == comp_of[ev.v]);
        if (!disconnected(ev.u, ev.v, side)) break;
        if (!(c->b == t && !c->b_closed)) emit(*c, t, true);
        // `side` holds one complete post-split component; carve it out
        auto* fresh = new open_comp{t, false, side};
        const std::uint8_t fresh_side = mark_side[side.front()];
        for (node_id x : side) comp_of[x] = fresh;
        std::erase_if(c->members, [&](node_id x) {
          return mark_epoch[x] == epoch && mark_side[x] == fresh_side;
        });
        c->b = t;
        c->b_closed = false;
        break;
      }
      case event_kind::node_departure: {
        open_comp* c = comp_of[ev.u];
        assert(c && c->members.size() == 1);
        if (!(c->b == t && !c->b_closed)) emit(*c, t, true);
        delete c;
        comp_of[ev.u] = nullptr;
        break;
      }
    }
  }
  sum.wall_ms = clock.ms();
  return sum;
}

// Same sweep as scc_direct, with the connectivity bookkeeping delegated to
// the fully dynamic structure; each open component's begin bound lives in a
// shared record relabeled on the smaller side at merges and splits.
inline scc_summary scc_fd(const stream_graph& s, component_sink& sink) {
  detail::sweep_clock clock;
  scc_summary sum;

  struct fd_rec {
    tick b;
    bool b_closed;
  };
  dynamic_connectivity dc(s.node_count());
  std::vector<fd_rec*> rec_of(s.node_count(), nullptr);

  auto emit = [&](const fd_rec& r, tick e, bool e_closed,
                  std::span<const node_id> nodes) {
    sink.on_component(detail::make_iv(r.b, r.b_closed, e, e_closed), nodes);
    ++sum.component_count;
    sum.max_component_size = std::max(sum.max_component_size, nodes.size());
  };

  for (const event& ev : event_sequence(s)) {
    const tick t = ev.time;
    switch (ev.kind) {
      case event_kind::node_arrival: {
        dc.insert_node(ev.u);
        rec_of[ev.u] = new fd_rec{t, true};
        break;
      }
      case event_kind::link_arrival: {
        if (dc.connected(ev.u, ev.v)) {
          dc.insert_edge(ev.u, ev.v);
          break;
        }
        node_id small = dc.component_size(ev.u) <= dc.component_size(ev.v)
                            ? ev.u
                            : ev.v;
        node_id large = small == ev.u ? ev.v : ev.u;
        std::vector<node_id> small_nodes = dc.component_nodes(small);
        fd_rec* rs = rec_of[small];
        fd_rec* rl = rec_of[large];
        if (!(rs->b == t && rs->b_closed)) emit(*rs, t, false, small_nodes);
        if (!(rl->b == t && rl->b_closed))
          emit(*rl, t, false, dc.component_nodes(large));
        dc.insert_edge(ev.u, ev.v);
        for (node_id x : small_nodes) rec_of[x] = rl;
        rl->b = t;
        rl->b_closed = true;
        delete rs;
        break;
      }
      case event_kind::link_departure: {
        fd_rec* r = rec_of[ev.u];
        auto out = dc.delete_edge(ev.u, ev.v);
        if (!out.split) break;
        if (!(r->b == t && !r->b_closed)) {
          std::vector<node_id> all = out.side_a;
          all.insert(all.end(), out.side_b.begin(), out.side_b.end());
          emit(*r, t, true, all);
        }
        const auto& smaller =
            out.side_a.size() <= out.side_b.size() ? out.side_a : out.side_b;
        auto* fresh = new fd_rec{t, false};
        for (node_id x : smaller) rec_of[x] = fresh;
        r->b = t;
        r->b_closed = false;
        break;
      }
      case event_kind::node_departure: {
        fd_rec* r = rec_of[ev.u];
        if (!(r->b == t && !r->b_closed)) {
          const node_id just_u[1] = {ev.u};
          emit(*r, t, true, just_u);
        }
        dc.remove_node(ev.u);
        delete r;
        rec_of[ev.u] = nullptr;
        break;
      }
    }
  }
  sum.wall_ms = clock.ms();
  return sum;
}

// Checks the partition property against the definition by sampling: at every
// event time and at every midpoint between consecutive event times, each
// present node must lie in exactly one covering component, and each covering
// component's node set must be exactly a connected component of the sampled
// graph. Samples are taken in doubled coordinates so midpoints stay exact.
inline bool verify_partition(const stream_graph& s,
                             const std::vector<component>& comps) {
  const auto& times = s.event_times();
  std::vector<tick> samples;
  for (std::size_t i = 0; i < times.size(); ++i) {
    samples.push_back(2 * times[i]);
    if (i + 1 < times.size()) samples.push_back(times[i] + times[i + 1]);
  }

  for (const auto& c : comps) {
    if (!c.iv.valid() || c.nodes.empty()) return false;
    if (!std::is_sorted(c.nodes.begin(), c.nodes.end())) return false;
  }

  // bucket components by the samples they cover
  std::vector<std::vector<std::size_t>> at_sample(samples.size());
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const auto& iv = comps[ci].iv;
    tick lo = 2 * iv.b + (iv.b_closed ? 0 : 1);
    tick hi = 2 * iv.e - (iv.e_closed ? 0 : 1);
    auto it = std::lower_bound(samples.begin(), samples.end(), lo);
    for (; it != samples.end() && *it <= hi; ++it)
      at_sample[static_cast<std::size_t>(it - samples.begin())].push_back(ci);
    // a valid nonempty interval always covers at least one sample; a
    // candidate covering none can never be checked, so reject it
    if (lo > hi) return false;
  }

  for (std::size_t si = 0; si < samples.size(); ++si) {
    auto g = s.graph_at_scaled(samples[si]);
    auto ccs = connected_components(g);
    std::vector<bool> claimed(ccs.size(), false);
    std::map<node_id, std::size_t> cc_of;
    for (std::size_t k = 0; k < ccs.size(); ++k)
      for (node_id x : ccs[k]) cc_of[x] = k;
    for (std::size_t ci : at_sample[si]) {
      const auto& nodes = comps[ci].nodes;
      auto it = cc_of.find(nodes.front());
      if (it == cc_of.end()) return false;      // node not even present
      if (claimed[it->second]) return false;    // overlapping components
      if (ccs[it->second] != nodes) return false;
      claimed[it->second] = true;
    }
    for (bool c : claimed)
      if (!c) return false;  // present node uncovered
  }
  return true;
}

// One emission record per line: left flag, bounds, right flag, size, labels.
// `[2 5] 2 u v` is the closed component ([2,5],{u,v}); `]5 9] 1 u` is
// (]5,9],{u}).
inline std::string render_component(const component& c, const stream_graph& s) {
  std::string out;
  out += c.iv.b_closed ? '[' : ']';
  out += std::to_string(c.iv.b);
  out += ' ';
  out += std::to_string(c.iv.e);
  out += c.iv.e_closed ? ']' : '[';
  out += ' ';
  out += std::to_string(c.nodes.size());
  for (node_id x : c.nodes) {
    out += ' ';
    out += s.label(x);
  }
  return out;
}

using scc_algorithm = scc_summary (*)(const stream_graph&, component_sink&);

inline scc_algorithm algorithm_by_name(const std::string& name) {
  if (name == "naive") return &scc_naive;
  if (name == "direct") return &scc_direct;
  if (name == "fd") return &scc_fd;
  throw error("unknown algorithm: " + name);
}

}  // namespace streamscc
