#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_set>

#include "infodist/error.hpp"
#include "infodist/quartet.hpp"

namespace infodist {

namespace {

int as_int(std::size_t v) { return static_cast<int>(v); }

std::string newick_label(const std::string& s) {
  if (!s.empty() && s.find_first_of(" \t\n()[]':;,") == std::string::npos) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

QuartetTree::QuartetTree(std::vector<std::string> labels, const std::vector<Edge>& edges)
    : labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  if (n < 4) throw TooFewLeaves("a quartet tree needs at least 4 leaves, got " + std::to_string(n));
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw DuplicateLabel("label '" + l + "' appears twice", {l});
  }
  const std::size_t nodes = 2 * n - 2;
  if (edges.size() != nodes - 1) {
    throw DegenerateInput("a tree with " + std::to_string(n) + " leaves has " +
                          std::to_string(nodes - 1) + " edges, got " + std::to_string(edges.size()));
  }
  adj_.assign(nodes, {});
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= as_int(nodes) || b >= as_int(nodes) || a == b) {
      throw DegenerateInput("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                            ") is out of range");
    }
    connect(a, b);
  }
  validate();
}

void QuartetTree::connect(int a, int b) {
  adj_[static_cast<std::size_t>(a)].push_back(b);
  adj_[static_cast<std::size_t>(b)].push_back(a);
}

void QuartetTree::disconnect(int a, int b) {
  auto drop = [](std::vector<int>& v, int x) { v.erase(std::find(v.begin(), v.end(), x)); };
  drop(adj_[static_cast<std::size_t>(a)], b);
  drop(adj_[static_cast<std::size_t>(b)], a);
}

void QuartetTree::validate() const {
  const std::size_t n = labels_.size();
  for (std::size_t v = 0; v < adj_.size(); ++v) {
    const std::size_t want = v < n ? 1 : 3;
    if (adj_[v].size() != want) {
      throw DegenerateInput("node " + std::to_string(v) + " has degree " +
                            std::to_string(adj_[v].size()) + ", expected " + std::to_string(want));
    }
  }
  std::vector<char> seen(adj_.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj_[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != adj_.size()) throw DegenerateInput("tree is not connected");
}

std::vector<QuartetTree::Edge> QuartetTree::edges() const {
  std::vector<Edge> out;
  for (std::size_t v = 0; v < adj_.size(); ++v) {
    for (int w : adj_[v]) {
      if (as_int(v) < w) out.emplace_back(as_int(v), w);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> QuartetTree::leaf_path_lengths() const {
  const std::size_t n = labels_.size();
  std::vector<std::vector<int>> out(n, std::vector<int>(n, 0));
  std::vector<int> dist(adj_.size());
  std::vector<int> queue(adj_.size());
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::size_t head = 0, tail = 0;
    queue[tail++] = as_int(s);
    dist[s] = 0;
    while (head < tail) {
      const int v = queue[head++];
      for (int w : adj_[static_cast<std::size_t>(v)]) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          queue[tail++] = w;
        }
      }
    }
    for (std::size_t t = 0; t < n; ++t) out[s][t] = dist[t];
  }
  return out;
}

std::vector<int> QuartetTree::subtree_nodes(int u, int v) const {
  std::vector<int> out{v};
  std::vector<std::pair<int, int>> stack{{v, u}};
  while (!stack.empty()) {
    const auto [x, parent] = stack.back();
    stack.pop_back();
    for (int w : adj_[static_cast<std::size_t>(x)]) {
      if (w != parent) {
        out.push_back(w);
        stack.emplace_back(w, x);
      }
    }
  }
  return out;
}

namespace {

/// Walks the tree from a fixed root edge, children ordered by the smallest leaf
/// label below them, so the result depends only on topology and labels.
struct CanonicalWalk {
  const QuartetTree& t;
  std::vector<int> rank = label_ranks(t);  // leaf -> position of its label in sorted order

  static std::vector<int> label_ranks(const QuartetTree& t) {
    std::vector<int> order(t.leaf_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return t.labels()[static_cast<std::size_t>(a)] < t.labels()[static_cast<std::size_t>(b)];
    });
    std::vector<int> r(t.leaf_count());
    for (std::size_t i = 0; i < order.size(); ++i) r[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    return r;
  }

  std::pair<int, int> root_edge() const {
    const int first = static_cast<int>(std::find(rank.begin(), rank.end(), 0) - rank.begin());
    const int p = t.neighbors(first)[0];
    std::vector<int> others;
    for (int w : t.neighbors(p)) {
      if (w != first) others.push_back(w);
    }
    const int x = others[0], y = others[1];
    if (t.is_leaf(x) && !t.is_leaf(y)) return {p, y};
    if (!t.is_leaf(x) && t.is_leaf(y)) return {p, x};
    return min_leaf(p, x) > min_leaf(p, y) ? std::pair{p, x} : std::pair{p, y};
  }

  int min_leaf(int parent, int v) const {
    if (t.is_leaf(v)) return rank[static_cast<std::size_t>(v)];
    int best = std::numeric_limits<int>::max();
    for (int w : t.neighbors(v)) {
      if (w != parent) best = std::min(best, min_leaf(v, w));
    }
    return best;
  }

  /// Children of v (away from parent) sorted by min leaf.
  std::vector<int> children(int parent, int v) const {
    std::vector<std::pair<int, int>> keyed;
    for (int w : t.neighbors(v)) {
      if (w != parent) keyed.emplace_back(min_leaf(v, w), w);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> out;
    for (const auto& [k, w] : keyed) out.push_back(w);
    return out;
  }

  std::string render(int parent, int v) const {
    if (t.is_leaf(v)) return newick_label(t.labels()[static_cast<std::size_t>(v)]);
    std::string s = "(";
    bool first = true;
    for (int w : children(parent, v)) {
      s += (first ? "" : ",") + render(v, w);
      first = false;
    }
    return s + ")";
  }
};

}  // namespace

std::string QuartetTree::canonical() const {
  CanonicalWalk walk{*this};
  const auto [p, q] = walk.root_edge();
  return "(" + walk.render(q, p) + "," + walk.render(p, q) + ");";
}

std::string to_newick(const QuartetTree& t) { return t.canonical(); }

std::string to_dot(const QuartetTree& t) {
  CanonicalWalk walk{t};
  const auto [p, q] = walk.root_edge();
  std::vector<int> internal_id(t.node_count(), -1);
  int next_id = 0;
  auto name = [&](int v) {
    if (t.is_leaf(v)) return "leaf" + std::to_string(v);
    if (internal_id[static_cast<std::size_t>(v)] < 0) internal_id[static_cast<std::size_t>(v)] = next_id++;
    return "n" + std::to_string(internal_id[static_cast<std::size_t>(v)]);
  };
  std::string nodes, edges;
  std::function<void(int, int)> visit = [&](int parent, int v) {
    const std::string nv = name(v);
    if (t.is_leaf(v)) {
      nodes += "  " + nv + " [label=\"" + dot_escape(t.labels()[static_cast<std::size_t>(v)]) +
               "\", shape=box];\n";
      return;
    }
    nodes += "  " + nv + " [label=\"\", shape=point];\n";
    for (int w : walk.children(parent, v)) {
      edges += "  " + nv + " -- " + name(w) + ";\n";
      visit(v, w);
    }
  };
  visit(q, p);
  edges += "  " + name(p) + " -- " + name(q) + ";\n";
  visit(p, q);
  return "graph tree {\n" + nodes + edges + "}\n";
}

// ---- moves -------------------------------------------------------------------------

std::optional<QuartetTree> QuartetTree::swap_leaves(int a, int b) const {
  if (a == b || !is_leaf(a) || !is_leaf(b) || a < 0 || b < 0) return std::nullopt;
  const int pa = neighbors(a)[0], pb = neighbors(b)[0];
  if (pa == pb) return std::nullopt;
  QuartetTree out = *this;
  out.disconnect(a, pa);
  out.disconnect(b, pb);
  out.connect(a, pb);
  out.connect(b, pa);
  return out;
}

std::optional<QuartetTree> QuartetTree::prune_regraft(int u, int v, int p, int q) const {
  const int nodes = as_int(node_count());
  for (int x : {u, v, p, q}) {
    if (x < 0 || x >= nodes) return std::nullopt;
  }
  if (is_leaf(u)) return std::nullopt;
  const auto& nu = neighbors(u);
  if (std::find(nu.begin(), nu.end(), v) == nu.end()) return std::nullopt;
  const auto& np = neighbors(p);
  if (std::find(np.begin(), np.end(), q) == np.end()) return std::nullopt;
  const auto pruned = subtree_nodes(u, v);
  auto inside = [&](int x) {
    return x == u || std::find(pruned.begin(), pruned.end(), x) != pruned.end();
  };
  if (inside(p) || inside(q)) return std::nullopt;
  std::vector<int> xy;
  for (int w : nu) {
    if (w != v) xy.push_back(w);
  }
  QuartetTree out = *this;
  out.disconnect(u, xy[0]);
  out.disconnect(u, xy[1]);
  out.connect(xy[0], xy[1]);
  out.disconnect(p, q);
  out.connect(p, u);
  out.connect(u, q);
  if (out.canonical() == canonical()) return std::nullopt;
  return out;
}

std::optional<QuartetTree> QuartetTree::exchange_subtrees(int u1, int v1, int u2, int v2) const {
  const int nodes = as_int(node_count());
  for (int x : {u1, v1, u2, v2}) {
    if (x < 0 || x >= nodes) return std::nullopt;
  }
  if (u1 == u2) return std::nullopt;
  const auto& n1 = neighbors(u1);
  const auto& n2 = neighbors(u2);
  if (std::find(n1.begin(), n1.end(), v1) == n1.end()) return std::nullopt;
  if (std::find(n2.begin(), n2.end(), v2) == n2.end()) return std::nullopt;
  const auto s1 = subtree_nodes(u1, v1);
  const auto s2 = subtree_nodes(u2, v2);
  auto contains = [](const std::vector<int>& s, int x) {
    return std::find(s.begin(), s.end(), x) != s.end();
  };
  if (contains(s2, u1) || contains(s1, u2)) return std::nullopt;
  for (int x : s1) {
    if (contains(s2, x)) return std::nullopt;
  }
  QuartetTree out = *this;
  out.disconnect(u1, v1);
  out.disconnect(u2, v2);
  out.connect(u1, v2);
  out.connect(u2, v1);
  if (out.canonical() == canonical()) return std::nullopt;
  return out;
}

// ---- topology -----------------------------------------------------------------------

QuartetTopology normalize_topology(int a, int b, int c, int d) {
  if (a > b) std::swap(a, b);
  if (c > d) std::swap(c, d);
  if (a > c) {
    std::swap(a, c);
    std::swap(b, d);
  }
  return {a, b, c, d};
}

QuartetTopology embedded_topology(const QuartetTree& t, int u, int v, int w, int x) {
  const auto paths = t.leaf_path_lengths();
  auto d = [&](int i, int j) {
    return paths[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  };
  const int s1 = d(u, v) + d(w, x);
  const int s2 = d(u, w) + d(v, x);
  const int s3 = d(u, x) + d(v, w);
  if (s1 < s2 && s1 < s3) return normalize_topology(u, v, w, x);
  if (s2 < s3) return normalize_topology(u, w, v, x);
  return normalize_topology(u, x, v, w);
}

// ---- generation -------------------------------------------------------------------

QuartetTree random_tree(const std::vector<std::string>& labels, std::uint64_t seed) {
  const std::size_t n = labels.size();
  if (n < 4) throw TooFewLeaves("a quartet tree needs at least 4 leaves, got " + std::to_string(n));
  Rng rng(seed);
  const int first_internal = as_int(n);
  std::vector<QuartetTree::Edge> edges{{0, first_internal}, {1, first_internal}, {2, first_internal}};
  int next_internal = first_internal + 1;
  for (std::size_t k = 3; k < n; ++k) {
    const auto e = rng.index(edges.size());
    const auto [a, b] = edges[e];
    const int w = next_internal++;
    edges[e] = {a, w};
    edges.emplace_back(w, b);
    edges.emplace_back(as_int(k), w);
  }
  return QuartetTree(labels, edges);
}

std::vector<QuartetTree> enumerate_trees(const std::vector<std::string>& labels) {
  const std::size_t n = labels.size();
  if (n < 4) throw TooFewLeaves("a quartet tree needs at least 4 leaves, got " + std::to_string(n));
  if (n > 8) {
    throw TooManyLeaves("exhaustive enumeration is limited to 8 leaves, got " + std::to_string(n));
  }
  std::vector<QuartetTree> out;
  const int first_internal = as_int(n);
  std::vector<QuartetTree::Edge> edges{{0, first_internal}, {1, first_internal}, {2, first_internal}};
  std::function<void(std::size_t)> grow = [&](std::size_t k) {
    if (k == n) {
      out.emplace_back(labels, edges);
      return;
    }
    const int w = first_internal + as_int(k) - 2;
    const std::size_t m = edges.size();
    for (std::size_t e = 0; e < m; ++e) {
      const auto saved = edges[e];
      edges[e] = {saved.first, w};
      edges.emplace_back(w, saved.second);
      edges.emplace_back(as_int(k), w);
      grow(k + 1);
      edges.pop_back();
      edges.pop_back();
      edges[e] = saved;
    }
  };
  grow(3);
  return out;
}

namespace {

std::pair<int, int> random_directed_edge(const QuartetTree& t, Rng& rng) {
  const int v = static_cast<int>(rng.index(t.node_count()));
  const auto& nv = t.neighbors(v);
  return {nv[rng.index(nv.size())], v};
}

}  // namespace

Proposal propose_move(const QuartetTree& t, Rng& rng) {
  const std::size_t n = t.leaf_count();
  for (;;) {
    const auto kind = rng.index(3);
    if (kind == 0) {
      const int a = static_cast<int>(rng.index(n));
      const int b = static_cast<int>(rng.index(n));
      if (auto out = t.swap_leaves(a, b)) return {std::move(*out), std::pair{a, b}};
    } else if (kind == 1) {
      const auto [u, v] = random_directed_edge(t, rng);
      const auto all = t.edges();
      const auto [p, q] = all[rng.index(all.size())];
      if (auto out = t.prune_regraft(u, v, p, q)) return {std::move(*out), std::nullopt};
    } else {
      const auto [u1, v1] = random_directed_edge(t, rng);
      const auto [u2, v2] = random_directed_edge(t, rng);
      if (auto out = t.exchange_subtrees(u1, v1, u2, v2)) return {std::move(*out), std::nullopt};
    }
  }
}

QuartetTree mutate(const QuartetTree& t, std::uint64_t seed) {
  Rng rng(seed);
  return propose_move(t, rng).tree;
}

std::vector<QuartetTree> all_mutations(const QuartetTree& t) {
  const int n = as_int(t.leaf_count());
  const int nodes = as_int(t.node_count());
  std::set<std::string> seen{t.canonical()};
  std::vector<QuartetTree> out;
  auto keep = [&](std::optional<QuartetTree> c) {
    if (c && seen.insert(c->canonical()).second) out.push_back(std::move(*c));
  };
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) keep(t.swap_leaves(a, b));
  }
  std::vector<std::pair<int, int>> directed;
  for (int v = 0; v < nodes; ++v) {
    for (int u : t.neighbors(v)) directed.emplace_back(u, v);
  }
  const auto all = t.edges();
  for (const auto& [u, v] : directed) {
    for (const auto& [p, q] : all) keep(t.prune_regraft(u, v, p, q));
  }
  for (const auto& [u1, v1] : directed) {
    for (const auto& [u2, v2] : directed) keep(t.exchange_subtrees(u1, v1, u2, v2));
  }
  return out;
}

}  // namespace infodist
