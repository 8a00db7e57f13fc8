#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "streamscc/core.hpp"

namespace streamscc {

struct unknown_node : error {
  using error::error;
};
struct duplicate_node : error {
  using error::error;
};
struct duplicate_edge : error {
  using error::error;
};
struct unknown_edge : error {
  using error::error;
};
struct remove_non_isolated : error {
  using error::error;
};

// Fully dynamic connectivity over an undirected graph: edge insertion,
// edge deletion, connectivity queries and component enumeration, all with
// polylogarithmic amortized update cost.
//
// Implementation: the Holm-de Lichtenberg-Thorup level structure. Each edge
// carries a level; forest F_i is a spanning forest of the edges with level
// >= i, represented as an Euler tour kept in a splay tree. Deleting a tree
// edge searches for a replacement level by level, promoting the smaller
// side's edges one level up, which pays for the search amortized.
//
// Single-writer: not safe for concurrent mutation. Queries restructure the
// splay trees, so they are not const either.
class dynamic_connectivity {
 public:
  struct merge_outcome {
    bool merged = false;  // endpoints were in different components
  };
  struct split_outcome {
    bool split = false;
    std::vector<node_id> side_a;  // populated iff split
    std::vector<node_id> side_b;
  };

  dynamic_connectivity() = default;
  explicit dynamic_connectivity(std::size_t expected_nodes) {
    verts_.reserve(expected_nodes);
  }
  ~dynamic_connectivity() { clear(); }

  dynamic_connectivity(const dynamic_connectivity&) = delete;
  dynamic_connectivity& operator=(const dynamic_connectivity&) = delete;

  void clear() {
    for (auto& vr : verts_)
      for (auto* el : vr.elems) delete el;
    verts_.clear();
    for (auto& [key, er] : edges_)
      for (auto& [a, b] : er.elems) {
        delete a;
        delete b;
      }
    edges_.clear();
    components_ = 0;
    nodes_present_ = 0;
  }

  void insert_node(node_id u) {
    if (u >= verts_.size()) verts_.resize(u + 1);
    auto& vr = verts_[u];
    if (vr.present) throw duplicate_node("node already present: " + std::to_string(u));
    vr.present = true;
    ensure_elem(vr, 0, u);
    ++components_;
    ++nodes_present_;
  }

  // The node must be isolated (degree 0).
  void remove_node(node_id u) {
    auto& vr = rec(u);
    for (const auto& lst : vr.nontree)
      if (!lst.empty())
        throw remove_non_isolated("node " + std::to_string(u) + " has incident edges");
    splay(vr.elems[0]);
    if (vr.elems[0]->size != 1)
      throw remove_non_isolated("node " + std::to_string(u) + " has incident edges");
    for (auto* el : vr.elems) {
      assert(el == nullptr || (splay(el), el->size == 1));
      delete el;
    }
    vr.elems.clear();
    vr.nontree.clear();
    vr.present = false;
    --components_;
    --nodes_present_;
  }

  bool has_node(node_id u) const {
    return u < verts_.size() && verts_[u].present;
  }
  bool has_edge(node_id u, node_id v) const {
    return edges_.count(edge_key(u, v)) != 0;
  }

  merge_outcome insert_edge(node_id u, node_id v) {
    auto& ru = rec(u);
    auto& rv = rec(v);
    if (u == v) throw self_loop("self loop on node " + std::to_string(u));
    std::uint64_t key = edge_key(u, v);
    if (edges_.count(key))
      throw duplicate_edge("edge already present: " + std::to_string(u) + " " +
                           std::to_string(v));
    edge_rec er;
    bool conn = same_tree(ru.elems[0], rv.elems[0]);
    if (!conn) {
      er.tree = true;
      er.elems.push_back(make_edge_pair(0, u, v, /*level_exact=*/true));
      link_tour(0, u, v, er.elems[0]);
      --components_;
    } else {
      add_nontree(0, u, v);
    }
    edges_.emplace(key, std::move(er));
    return {!conn};
  }

  split_outcome delete_edge(node_id u, node_id v) {
    rec(u);
    rec(v);
    auto it = edges_.find(edge_key(u, v));
    if (it == edges_.end())
      throw unknown_edge("no such edge: " + std::to_string(u) + " " +
                         std::to_string(v));
    edge_rec er = std::move(it->second);
    edges_.erase(it);
    if (!er.tree) {
      drop_nontree(er.level, u, v);
      return {};
    }
    const int lvl = er.level;
    for (int j = 0; j <= lvl; ++j) cut_tour(er.elems[j]);
    for (auto& [a, b] : er.elems) {
      delete a;
      delete b;
    }

    // Search for a replacement edge, highest level first.
    for (int i = lvl; i >= 0; --i) {
      if (find_replacement(i, u, v)) return {};
    }
    ++components_;
    split_outcome out;
    out.split = true;
    out.side_a = collect_tree_nodes(verts_[u].elems[0]);
    out.side_b = collect_tree_nodes(verts_[v].elems[0]);
    return out;
  }

  bool connected(node_id u, node_id v) {
    auto& ru = rec(u);
    auto& rv = rec(v);
    return same_tree(ru.elems[0], rv.elems[0]);
  }

  // All nodes of u's component, in unspecified order. O(component size).
  std::vector<node_id> component_nodes(node_id u) {
    return collect_tree_nodes(rec(u).elems[0]);
  }

  std::size_t component_size(node_id u) {
    auto& ru = rec(u);
    splay(ru.elems[0]);
    return ru.elems[0]->vertex_count;
  }

  std::size_t component_count() const { return components_; }
  std::size_t node_count() const { return nodes_present_; }

 private:
  // bit flags on tour elements
  static constexpr std::uint8_t kHasNontree = 1;  // vertex element: level-i non-tree edges at this vertex
  static constexpr std::uint8_t kLevelExact = 2;  // edge element: edge level equals forest level

  // One element of an Euler tour sequence: either a vertex element (a == b,
  // one per vertex per level) or one of the two directed elements of a tree
  // edge. Implicit-key splay node with subtree aggregates.
  struct ett_node {
    ett_node* ch[2] = {nullptr, nullptr};
    ett_node* parent = nullptr;
    std::uint32_t size = 1;
    std::uint32_t vertex_count = 0;
    std::uint8_t self_mask = 0;
    std::uint8_t subtree_mask = 0;
    node_id a = 0;
    node_id b = 0;

    bool is_vertex() const { return a == b; }
  };

  struct vertex_rec {
    bool present = false;
    std::vector<ett_node*> elems;                // per level, lazily grown
    std::vector<std::vector<node_id>> nontree;   // per level neighbor lists
  };

  struct edge_rec {
    int level = 0;
    bool tree = false;
    std::vector<std::pair<ett_node*, ett_node*>> elems;  // per level 0..level
  };

  static std::uint64_t edge_key(node_id u, node_id v) {
    auto [a, b] = std::minmax(u, v);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  vertex_rec& rec(node_id u) {
    if (u >= verts_.size() || !verts_[u].present)
      throw unknown_node("no such node: " + std::to_string(u));
    return verts_[u];
  }

  // --- splay machinery -----------------------------------------------

  static void pull(ett_node* x) {
    x->size = 1;
    x->vertex_count = x->is_vertex() ? 1 : 0;
    x->subtree_mask = x->self_mask;
    for (ett_node* c : x->ch)
      if (c) {
        x->size += c->size;
        x->vertex_count += c->vertex_count;
        x->subtree_mask |= c->subtree_mask;
      }
  }

  static int side_of(const ett_node* x) { return x->parent->ch[1] == x; }

  static void rotate(ett_node* x) {
    ett_node* p = x->parent;
    ett_node* g = p->parent;
    int gs = g ? (g->ch[1] == p) : 0;
    int s = side_of(x);
    ett_node* c = x->ch[1 - s];
    p->ch[s] = c;
    if (c) c->parent = p;
    x->ch[1 - s] = p;
    p->parent = x;
    x->parent = g;
    if (g) g->ch[gs] = x;
    pull(p);
    pull(x);
  }

  static void splay(ett_node* x) {
    while (x->parent) {
      ett_node* p = x->parent;
      if (p->parent) rotate(side_of(x) == side_of(p) ? p : x);
      rotate(x);
    }
  }

  static ett_node* tree_root(ett_node* x) {
    while (x->parent) x = x->parent;
    return x;
  }

  // After splaying x then y: if they share a tree, splaying y gives x a parent.
  static bool same_tree(ett_node* x, ett_node* y) {
    if (x == y) return true;
    splay(x);
    splay(y);
    return x->parent != nullptr;
  }

  static std::uint32_t index_of(ett_node* x) {
    splay(x);
    return x->ch[0] ? x->ch[0]->size : 0;
  }

  static ett_node* join(ett_node* l, ett_node* r) {
    if (!l) return r;
    if (!r) return l;
    while (l->ch[1]) l = l->ch[1];
    splay(l);
    l->ch[1] = r;
    r->parent = l;
    pull(l);
    return l;
  }

  // Splits into ([..before x], [x..]); left part may be null.
  static std::pair<ett_node*, ett_node*> split_before(ett_node* x) {
    splay(x);
    ett_node* l = x->ch[0];
    if (l) {
      l->parent = nullptr;
      x->ch[0] = nullptr;
      pull(x);
    }
    return {l, x};
  }

  // Splits into ([..x], [after x..]); right part may be null.
  static std::pair<ett_node*, ett_node*> split_after(ett_node* x) {
    splay(x);
    ett_node* r = x->ch[1];
    if (r) {
      r->parent = nullptr;
      x->ch[1] = nullptr;
      pull(x);
    }
    return {x, r};
  }

  // Rotates the tour so it starts at the given vertex element.
  static ett_node* reroot(ett_node* vx) {
    auto [l, r] = split_before(vx);
    return join(r, l);
  }

  static void set_flag(ett_node* x, std::uint8_t bit, bool on) {
    splay(x);
    if (on)
      x->self_mask |= bit;
    else
      x->self_mask &= static_cast<std::uint8_t>(~bit);
    pull(x);
  }

  // Finds some element with the given self bit under root. Root's subtree
  // mask must contain the bit.
  static ett_node* find_flagged(ett_node* root, std::uint8_t bit) {
    ett_node* x = root;
    while (true) {
      if (x->ch[0] && (x->ch[0]->subtree_mask & bit)) {
        x = x->ch[0];
      } else if (x->self_mask & bit) {
        return x;
      } else {
        x = x->ch[1];
        assert(x && (x->subtree_mask & bit));
      }
    }
  }

  // --- level / tour helpers -------------------------------------------

  void ensure_elem(vertex_rec& vr, std::size_t level, node_id u) {
    if (vr.elems.size() <= level) vr.elems.resize(level + 1, nullptr);
    if (!vr.elems[level]) {
      auto* el = new ett_node;
      el->a = el->b = u;
      pull(el);
      vr.elems[level] = el;
    }
    if (vr.nontree.size() <= level) vr.nontree.resize(level + 1);
  }

  std::pair<ett_node*, ett_node*> make_edge_pair(int forest_level, node_id u,
                                                 node_id v, bool level_exact) {
    auto* fwd = new ett_node;
    fwd->a = u;
    fwd->b = v;
    auto* bwd = new ett_node;
    bwd->a = v;
    bwd->b = u;
    if (level_exact) {
      fwd->self_mask = kLevelExact;
      bwd->self_mask = kLevelExact;
    }
    pull(fwd);
    pull(bwd);
    (void)forest_level;
    return {fwd, bwd};
  }

  // Joins the tours of u and v in forest i: tour(u) ++ fwd ++ tour(v) ++ bwd.
  void link_tour(std::size_t i, node_id u, node_id v,
                 std::pair<ett_node*, ett_node*> pair) {
    ett_node* a = reroot(verts_[u].elems[i]);
    ett_node* b = reroot(verts_[v].elems[i]);
    join(join(a, pair.first), join(b, pair.second));
  }

  // Removes both elements of a tree edge from its tour, splitting it in two.
  void cut_tour(std::pair<ett_node*, ett_node*> pair) {
    ett_node* first = pair.first;
    ett_node* second = pair.second;
    if (index_of(second) < index_of(first)) std::swap(first, second);
    auto [l, rest] = split_before(first);
    auto [mid_with_ends, tail] = split_after(second);
    (void)mid_with_ends;
    auto [f_only, mid_r] = split_after(first);
    (void)f_only;
    auto [mid, s_only] = split_before(second);
    (void)s_only;
    assert(mid != nullptr);
    join(l, tail);
    first->ch[0] = first->ch[1] = nullptr;
    first->parent = nullptr;
    second->ch[0] = second->ch[1] = nullptr;
    second->parent = nullptr;
  }

  void add_nontree(std::size_t level, node_id u, node_id v) {
    for (node_id x : {u, v}) {
      node_id y = (x == u) ? v : u;
      auto& vr = verts_[x];
      ensure_elem(vr, level, x);
      auto& lst = vr.nontree[level];
      lst.push_back(y);
      if (lst.size() == 1) set_flag(vr.elems[level], kHasNontree, true);
    }
  }

  void drop_nontree(std::size_t level, node_id u, node_id v) {
    for (node_id x : {u, v}) {
      node_id y = (x == u) ? v : u;
      auto& lst = verts_[x].nontree[level];
      for (std::size_t k = 0; k < lst.size(); ++k)
        if (lst[k] == y) {
          lst[k] = lst.back();
          lst.pop_back();
          break;
        }
      if (lst.empty()) set_flag(verts_[x].elems[level], kHasNontree, false);
    }
  }

  // Promotes the tree edge (x, y) from level i to i+1: it stays in forests
  // 0..i and additionally joins forest i+1.
  void promote_tree_edge(std::size_t i, node_id x, node_id y) {
    auto& er = edges_[edge_key(x, y)];
    assert(er.tree && er.level == static_cast<int>(i));
    er.level = static_cast<int>(i) + 1;
    set_flag(er.elems[i].first, kLevelExact, false);
    set_flag(er.elems[i].second, kLevelExact, false);
    ensure_elem(verts_[x], i + 1, x);
    ensure_elem(verts_[y], i + 1, y);
    er.elems.push_back(make_edge_pair(static_cast<int>(i) + 1, x, y, true));
    link_tour(i + 1, x, y, er.elems[i + 1]);
  }

  // Turns the non-tree edge (x, y) of level i into a tree edge, linking the
  // tours of forests 0..i.
  void adopt_replacement(std::size_t i, node_id x, node_id y) {
    auto& er = edges_[edge_key(x, y)];
    er.tree = true;
    for (std::size_t j = 0; j <= i; ++j) {
      er.elems.push_back(make_edge_pair(static_cast<int>(j), x, y, j == i));
      link_tour(j, x, y, er.elems[j]);
    }
  }

  // One HDT level of the replacement search after cutting a tree edge whose
  // endpoints were u and v. Returns true when a replacement reconnected them.
  bool find_replacement(std::size_t i, node_id u, node_id v) {
    splay(verts_[u].elems[i]);
    splay(verts_[v].elems[i]);
    node_id small = (verts_[u].elems[i]->vertex_count <=
                     verts_[v].elems[i]->vertex_count)
                        ? u
                        : v;

    // Move the small side's level-i tree edges one level up.
    while (true) {
      splay(verts_[small].elems[i]);
      ett_node* root = verts_[small].elems[i];
      if (!(root->subtree_mask & kLevelExact)) break;
      ett_node* f = find_flagged(root, kLevelExact);
      promote_tree_edge(i, std::min(f->a, f->b), std::max(f->a, f->b));
    }

    // Scan the small side's level-i non-tree edges: internal ones get
    // promoted, the first external one is the replacement.
    while (true) {
      splay(verts_[small].elems[i]);
      ett_node* root = verts_[small].elems[i];
      if (!(root->subtree_mask & kHasNontree)) break;
      ett_node* velem = find_flagged(root, kHasNontree);
      node_id x = velem->a;
      node_id y = verts_[x].nontree[i].back();
      bool internal = same_tree(verts_[y].elems[i], verts_[x].elems[i]);
      drop_nontree(i, x, y);
      if (internal) {
        edges_[edge_key(x, y)].level = static_cast<int>(i) + 1;
        add_nontree(i + 1, x, y);
      } else {
        adopt_replacement(i, x, y);
        return true;
      }
    }
    return false;
  }

  std::vector<node_id> collect_tree_nodes(ett_node* any) {
    splay(any);
    std::vector<node_id> out;
    out.reserve(any->vertex_count);
    std::vector<ett_node*> stack{any};
    while (!stack.empty()) {
      ett_node* x = stack.back();
      stack.pop_back();
      if (x->is_vertex()) out.push_back(x->a);
      for (ett_node* c : x->ch)
        if (c && c->vertex_count) stack.push_back(c);
    }
    return out;
  }

  std::vector<vertex_rec> verts_;
  std::unordered_map<std::uint64_t, edge_rec> edges_;
  std::size_t components_ = 0;
  std::size_t nodes_present_ = 0;
};

}  // namespace streamscc
