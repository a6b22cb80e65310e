#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infodist/distances.hpp"
#include "infodist/random.hpp"

namespace infodist {

/// Unrooted ternary tree. Nodes 0..n-1 are the leaves (node i carries
/// labels()[i]); nodes n..2n-3 are internal with degree 3.
class QuartetTree {
 public:
  using Edge = std::pair<int, int>;

  /// Throws TooFewLeaves for n < 4, DuplicateLabel, and DegenerateInput when
  /// the edges do not form a valid ternary tree.
  QuartetTree(std::vector<std::string> labels, const std::vector<Edge>& edges);

  std::size_t leaf_count() const noexcept { return labels_.size(); }
  std::size_t node_count() const noexcept { return adj_.size(); }
  bool is_leaf(int v) const noexcept { return v < static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  /// Each edge once, (smaller, larger), sorted.
  std::vector<Edge> edges() const;

  /// Edge counts between every pair of leaves.
  std::vector<std::vector<int>> leaf_path_lengths() const;

  /// Rooted-at-a-fixed-edge Newick with children ordered by smallest leaf
  /// label; equal strings iff equal labelled topologies.
  std::string canonical() const;

  bool same_topology(const QuartetTree& other) const { return canonical() == other.canonical(); }

  // Move primitives. Each returns nullopt when the move is invalid for the
  // given arguments or leaves the topology unchanged.
  std::optional<QuartetTree> swap_leaves(int a, int b) const;
  /// Prunes the subtree hanging at `v` off internal node `u` (edge u-v) and
  /// regrafts it onto edge (p, q) of the remainder.
  std::optional<QuartetTree> prune_regraft(int u, int v, int p, int q) const;
  /// Exchanges the subtree at v1 (seen from u1) with the subtree at v2 (seen from u2).
  std::optional<QuartetTree> exchange_subtrees(int u1, int v1, int u2, int v2) const;

  /// Nodes reachable from v without crossing edge v-u.
  std::vector<int> subtree_nodes(int u, int v) const;

  /// Raises DegenerateInput if degree or connectivity constraints fail.
  void validate() const;

 private:
  void connect(int a, int b);
  void disconnect(int a, int b);

  std::vector<std::string> labels_;
  std::vector<std::vector<int>> adj_;
};

/// The pairing {a,b}|{c,d} of a quartet, stored with a < b, c < d, a < c.
struct QuartetTopology {
  int a, b, c, d;
  friend bool operator==(const QuartetTopology&, const QuartetTopology&) = default;
};

QuartetTopology normalize_topology(int a, int b, int c, int d);

/// Pairing whose tree paths are edge-disjoint; leaves given as node ids.
QuartetTopology embedded_topology(const QuartetTree& t, int u, int v, int w, int x);

struct QuartetScore {
  double c_t = 0.0;
  double m_min = 0.0;
  double m_max = 0.0;
  double s = 1.0;
};

/// Fixed matrix against which trees are scored. Per-quartet min/max costs are
/// precomputed once.
class QuartetScorer {
 public:
  /// Throws InfiniteDistance, TooFewLeaves.
  explicit QuartetScorer(const DistanceMatrix& d);

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }

  /// Throws LabelMismatch when the tree's labels differ from the matrix's
  /// (leaves are matched by label, so order may differ).
  QuartetScore score(const QuartetTree& t) const;
  /// c_t of the tree obtained from `t` by swapping leaves a and b, given the
  /// score of `t`; only quartets touching a or b are revisited.
  double c_t_after_swap(const QuartetTree& t, const QuartetScore& before, int a, int b) const;
  QuartetScore make_score(double c_t) const;

  double distance(std::size_t i, std::size_t j) const { return d_[i * size() + j]; }

 private:
  std::vector<int> leaf_to_row(const QuartetTree& t) const;
  double quartet_cost(const std::vector<std::vector<int>>& paths, const std::vector<int>& row,
                      int a, int b, int c, int d) const;

  std::vector<std::string> labels_;
  std::vector<double> d_;
  double m_min_ = 0.0;
  double m_max_ = 0.0;
};

/// Uniform topology by sequential leaf insertion on a uniformly chosen edge.
QuartetTree random_tree(const std::vector<std::string>& labels, std::uint64_t seed);

/// One random move: leaf swap, subtree prune-and-regraft or subtree exchange,
/// each with probability 1/3. Always returns a different topology.
QuartetTree mutate(const QuartetTree& t, std::uint64_t seed);

/// mutate() with the move exposed: `swapped` is set for leaf swaps so callers
/// can rescore incrementally.
struct Proposal {
  QuartetTree tree;
  std::optional<std::pair<int, int>> swapped;
};
Proposal propose_move(const QuartetTree& t, Rng& rng);

/// Every distinct topology reachable from `t` by one move.
std::vector<QuartetTree> all_mutations(const QuartetTree& t);

/// All (2n-5)!! topologies over `labels` (n ≤ 8, else TooManyLeaves).
std::vector<QuartetTree> enumerate_trees(const std::vector<std::string>& labels);

struct TraceRow {
  std::size_t step = 0;
  std::size_t restart = 0;
  double s = 0.0;
};

struct HillClimbParams {
  std::size_t restarts = 10;
  std::size_t patience = 1000;
  std::uint64_t seed = 0;
  /// Safety cap on proposals per restart (0 = unlimited).
  std::size_t max_proposals = 0;
};

struct TreeResult {
  QuartetTree tree;
  QuartetScore score;
  std::vector<TraceRow> trace;  // accepted steps (step 0 = start) of every restart
};

TreeResult hill_climb(const DistanceMatrix& d, const HillClimbParams& params);

/// Exact maximizer of s; ties go to the smallest canonical form.
TreeResult brute_force(const DistanceMatrix& d);

std::string to_newick(const QuartetTree& t);
std::string to_dot(const QuartetTree& t);
std::string trace_to_csv(const std::vector<TraceRow>& trace);

}  // namespace infodist
