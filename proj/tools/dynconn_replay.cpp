// Trace replay benchmark for the dynamic connectivity structure.
//
// Reads `i u v` / `d u v` / `q u v` lines (insert, delete, query) from a
// file, or generates a synthetic trace, and replays it. With --baseline the
// same trace is answered by BFS over the current edge set, for comparison;
// with --verify every query is checked against that baseline.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "streamscc/dynamic_connectivity.hpp"

using streamscc::dynamic_connectivity;
using streamscc::node_id;

struct op {
  char kind;  // 'i', 'd', 'q'
  node_id u, v;
};

static std::vector<op> load_trace(const std::string& path, node_id& n) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    std::exit(2);
  }
  std::vector<op> ops;
  std::string kind;
  node_id u, v;
  n = 0;
  while (in >> kind >> u >> v) {
    if (kind != "i" && kind != "d" && kind != "q") {
      std::cerr << "bad op `" << kind << "`\n";
      std::exit(2);
    }
    ops.push_back({kind[0], u, v});
    n = std::max(n, std::max(u, v) + 1);
  }
  return ops;
}

static std::vector<op> synth_trace(node_id n, std::size_t count,
                                   unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<node_id> pick(0, n - 1);
  std::uniform_int_distribution<int> what(0, 9);
  std::vector<std::pair<node_id, node_id>> live;
  std::vector<op> ops;
  while (ops.size() < count) {
    int w = what(rng);
    if (w < 4 || live.empty()) {  // insert
      node_id u = pick(rng), v = pick(rng);
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      bool dup = false;
      for (const auto& e : live)
        if (e.first == u && e.second == v) dup = true;
      if (dup) continue;
      live.emplace_back(u, v);
      ops.push_back({'i', u, v});
    } else if (w < 7) {  // delete
      std::uniform_int_distribution<std::size_t> at(0, live.size() - 1);
      std::size_t k = at(rng);
      ops.push_back({'d', live[k].first, live[k].second});
      live[k] = live.back();
      live.pop_back();
    } else {  // query
      ops.push_back({'q', pick(rng), pick(rng)});
    }
  }
  return ops;
}

// recompute-from-scratch baseline: adjacency + BFS per query
struct bfs_baseline {
  explicit bfs_baseline(node_id n) : adj(n), seen(n, 0) {}
  std::vector<std::vector<node_id>> adj;
  std::vector<unsigned> seen;
  unsigned pass = 0;

  void insert(node_id u, node_id v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  void erase(node_id u, node_id v) {
    auto drop = [&](node_id a, node_id b) {
      auto& l = adj[a];
      for (std::size_t i = 0; i < l.size(); ++i)
        if (l[i] == b) {
          l[i] = l.back();
          l.pop_back();
          return;
        }
    };
    drop(u, v);
    drop(v, u);
  }
  bool connected(node_id u, node_id v) {
    if (u == v) return true;
    ++pass;
    std::vector<node_id> q{u};
    seen[u] = pass;
    for (std::size_t h = 0; h < q.size(); ++h)
      for (node_id w : adj[q[h]]) {
        if (seen[w] == pass) continue;
        if (w == v) return true;
        seen[w] = pass;
        q.push_back(w);
      }
    return false;
  }
};

int main(int argc, char** argv) {
  CLI::App app{"dynamic connectivity trace replay"};
  std::string path;
  node_id n = 1000;
  std::size_t count = 100000;
  unsigned seed = 1;
  bool verify = false, baseline = false;
  app.add_option("--trace", path, "trace file with `i u v`/`d u v`/`q u v`");
  app.add_option("--nodes", n, "node count for synthetic traces");
  app.add_option("--ops", count, "op count for synthetic traces");
  app.add_option("--seed", seed, "synthetic trace seed");
  app.add_flag("--verify", verify, "check every query against BFS");
  app.add_flag("--baseline", baseline, "also time the BFS baseline");
  CLI11_PARSE(app, argc, argv);

  std::vector<op> ops =
      path.empty() ? synth_trace(n, count, seed) : load_trace(path, n);

  using clock = std::chrono::steady_clock;
  dynamic_connectivity dc(n);
  for (node_id u = 0; u < n; ++u) dc.insert_node(u);
  bfs_baseline ref(n);
  std::size_t queries = 0, hits = 0;

  auto t0 = clock::now();
  for (const auto& o : ops) {
    switch (o.kind) {
      case 'i':
        dc.insert_edge(o.u, o.v);
        break;
      case 'd':
        dc.delete_edge(o.u, o.v);
        break;
      case 'q':
        ++queries;
        if (dc.connected(o.u, o.v)) ++hits;
        break;
    }
  }
  double dyn_ms =
      std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  std::cout << "dynconn: " << ops.size() << " ops in " << dyn_ms << " ms ("
            << queries << " queries, " << hits << " connected)\n";

  if (verify) {
    dynamic_connectivity dc2(n);
    for (node_id u = 0; u < n; ++u) dc2.insert_node(u);
    bfs_baseline ref2(n);
    std::size_t bad = 0;
    for (const auto& o : ops) {
      switch (o.kind) {
        case 'i':
          dc2.insert_edge(o.u, o.v);
          ref2.insert(o.u, o.v);
          break;
        case 'd':
          dc2.delete_edge(o.u, o.v);
          ref2.erase(o.u, o.v);
          break;
        case 'q':
          if (dc2.connected(o.u, o.v) != ref2.connected(o.u, o.v)) ++bad;
          break;
      }
    }
    std::cout << "verify: " << (bad ? "FAILED" : "ok") << " (" << bad
              << " mismatches)\n";
    if (bad) return 1;
  }

  if (baseline) {
    auto t1 = clock::now();
    std::size_t bq = 0;
    for (const auto& o : ops) {
      switch (o.kind) {
        case 'i':
          ref.insert(o.u, o.v);
          break;
        case 'd':
          ref.erase(o.u, o.v);
          break;
        case 'q':
          ++bq;
          ref.connected(o.u, o.v);
          break;
      }
    }
    double ref_ms =
        std::chrono::duration<double, std::milli>(clock::now() - t1).count();
    std::cout << "bfs baseline: " << ops.size() << " ops in " << ref_ms
              << " ms\n";
  }
  return 0;
}
