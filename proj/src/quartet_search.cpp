#include <algorithm>
#include <cstdio>
#include <unordered_map>

#include "infodist/error.hpp"
#include "infodist/parallel.hpp"
#include "infodist/quartet.hpp"

namespace infodist {

namespace {

constexpr double kAcceptMargin = 1e-12;
constexpr double kTieTolerance = 1e-12;

/// true if (s, form) beats (best_s, best_form): higher s, then smaller form.
bool better(double s, const std::string& form, double best_s, const std::string& best_form) {
  if (s > best_s + kTieTolerance) return true;
  if (s < best_s - kTieTolerance) return false;
  return form < best_form;
}

}  // namespace

QuartetScorer::QuartetScorer(const DistanceMatrix& d) : labels_(d.labels()) {
  const std::size_t n = labels_.size();
  if (n < 4) throw TooFewLeaves("quartet scoring needs at least 4 items, got " + std::to_string(n));
  d_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = d(i, j);
      if (!std::isfinite(v)) {
        throw InfiniteDistance("distance between '" + labels_[i] + "' and '" + labels_[j] +
                                   "' is infinite",
                               {labels_[i], labels_[j]});
      }
      d_[i * n + j] = v;
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        for (std::size_t e = c + 1; e < n; ++e) {
          const double s1 = distance(a, b) + distance(c, e);
          const double s2 = distance(a, c) + distance(b, e);
          const double s3 = distance(a, e) + distance(b, c);
          m_min_ += std::min({s1, s2, s3});
          m_max_ += std::max({s1, s2, s3});
        }
      }
    }
  }
}

std::vector<int> QuartetScorer::leaf_to_row(const QuartetTree& t) const {
  const std::size_t n = labels_.size();
  if (t.leaf_count() != n) {
    throw LabelMismatch("tree has " + std::to_string(t.leaf_count()) + " leaves, matrix has " +
                        std::to_string(n) + " labels");
  }
  std::unordered_map<std::string, int> row_of;
  for (std::size_t i = 0; i < n; ++i) row_of[labels_[i]] = static_cast<int>(i);
  // row -> leaf node
  std::vector<int> node_of_row(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    auto it = row_of.find(t.labels()[v]);
    if (it == row_of.end()) {
      throw LabelMismatch("tree leaf '" + t.labels()[v] + "' is not a matrix label", {t.labels()[v]});
    }
    node_of_row[static_cast<std::size_t>(it->second)] = static_cast<int>(v);
  }
  return node_of_row;
}

double QuartetScorer::quartet_cost(const std::vector<std::vector<int>>& paths,
                                   const std::vector<int>& node, int a, int b, int c, int e) const {
  auto p = [&](int i, int j) {
    return paths[static_cast<std::size_t>(node[static_cast<std::size_t>(i)])]
                [static_cast<std::size_t>(node[static_cast<std::size_t>(j)])];
  };
  auto dist = [&](int i, int j) {
    return distance(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  };
  const int s1 = p(a, b) + p(c, e);
  const int s2 = p(a, c) + p(b, e);
  const int s3 = p(a, e) + p(b, c);
  if (s1 < s2 && s1 < s3) return dist(a, b) + dist(c, e);
  if (s2 < s3) return dist(a, c) + dist(b, e);
  return dist(a, e) + dist(b, c);
}

QuartetScore QuartetScorer::make_score(double c_t) const {
  QuartetScore sc;
  sc.c_t = c_t;
  sc.m_min = m_min_;
  sc.m_max = m_max_;
  if (m_max_ > m_min_) {
    sc.s = std::clamp((m_max_ - c_t) / (m_max_ - m_min_), 0.0, 1.0);
  } else {
    sc.s = 1.0;
  }
  return sc;
}

QuartetScore QuartetScorer::score(const QuartetTree& t) const {
  const auto node = leaf_to_row(t);
  const auto paths = t.leaf_path_lengths();
  const int n = static_cast<int>(labels_.size());
  double c_t = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        for (int e = c + 1; e < n; ++e) c_t += quartet_cost(paths, node, a, b, c, e);
      }
    }
  }
  return make_score(c_t);
}

double QuartetScorer::c_t_after_swap(const QuartetTree& t, const QuartetScore& before, int a,
                                     int b) const {
  const auto node = leaf_to_row(t);
  const auto paths = t.leaf_path_lengths();
  const int n = static_cast<int>(labels_.size());
  int ra = -1, rb = -1;
  for (int r = 0; r < n; ++r) {
    if (node[static_cast<std::size_t>(r)] == a) ra = r;
    if (node[static_cast<std::size_t>(r)] == b) rb = r;
  }
  auto swapped = node;
  std::swap(swapped[static_cast<std::size_t>(ra)], swapped[static_cast<std::size_t>(rb)]);

  double delta = 0.0;
  auto visit = [&](int w, int x, int y, int z) {
    int q[4] = {w, x, y, z};
    std::sort(q, q + 4);
    delta += quartet_cost(paths, swapped, q[0], q[1], q[2], q[3]) -
             quartet_cost(paths, node, q[0], q[1], q[2], q[3]);
  };
  // Quartets holding ra (with or without rb), then those holding rb but not ra.
  for (int x = 0; x < n; ++x) {
    if (x == ra) continue;
    for (int y = x + 1; y < n; ++y) {
      if (y == ra) continue;
      for (int z = y + 1; z < n; ++z) {
        if (z == ra) continue;
        visit(ra, x, y, z);
        if (x != rb && y != rb && z != rb) visit(rb, x, y, z);
      }
    }
  }
  return before.c_t + delta;
}

TreeResult hill_climb(const DistanceMatrix& d, const HillClimbParams& params) {
  const QuartetScorer scorer(d);
  const std::size_t restarts = std::max<std::size_t>(1, params.restarts);

  struct Run {
    std::optional<QuartetTree> tree;
    QuartetScore score;
    std::string form;
    std::vector<TraceRow> trace;
  };
  std::vector<Run> runs(restarts);

  parallel_for(restarts, [&](std::size_t r) {
    Rng rng(derive_seed(params.seed, r));
    QuartetTree t = random_tree(scorer.labels(), rng.next());
    QuartetScore sc = scorer.score(t);
    std::vector<TraceRow> trace{{0, r, sc.s}};
    std::size_t rejections = 0, proposals = 0, step = 0;
    while (rejections < params.patience &&
           (params.max_proposals == 0 || proposals < params.max_proposals)) {
      ++proposals;
      Proposal prop = propose_move(t, rng);
      QuartetScore candidate;
      if (prop.swapped) {
        candidate = scorer.make_score(
            scorer.c_t_after_swap(t, sc, prop.swapped->first, prop.swapped->second));
      } else {
        candidate = scorer.score(prop.tree);
      }
      if (candidate.s > sc.s + kAcceptMargin) {
        t = std::move(prop.tree);
        sc = prop.swapped ? scorer.score(t) : candidate;
        trace.push_back({++step, r, sc.s});
        rejections = 0;
      } else {
        ++rejections;
      }
    }
    runs[r].form = t.canonical();
    runs[r].tree = std::move(t);
    runs[r].score = sc;
    runs[r].trace = std::move(trace);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    if (better(runs[r].score.s, runs[r].form, runs[best].score.s, runs[best].form)) best = r;
  }
  TreeResult out{*runs[best].tree, runs[best].score, {}};
  for (auto& run : runs) {
    out.trace.insert(out.trace.end(), run.trace.begin(), run.trace.end());
  }
  return out;
}

TreeResult brute_force(const DistanceMatrix& d) {
  const QuartetScorer scorer(d);
  if (scorer.size() > 8) {
    throw TooManyLeaves("brute force is limited to 8 leaves, got " + std::to_string(scorer.size()));
  }
  const auto trees = enumerate_trees(scorer.labels());
  std::size_t best = 0;
  QuartetScore best_score = scorer.score(trees[0]);
  std::string best_form = trees[0].canonical();
  for (std::size_t k = 1; k < trees.size(); ++k) {
    const QuartetScore sc = scorer.score(trees[k]);
    std::string form = trees[k].canonical();
    if (better(sc.s, form, best_score.s, best_form)) {
      best = k;
      best_score = sc;
      best_form = std::move(form);
    }
  }
  return {trees[best], best_score, {}};
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
  std::string out = "step,restart,s\n";
  char buf[64];
  for (const auto& row : trace) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%.10f\n", row.step, row.restart, row.s);
    out += buf;
  }
  return out;
}

}  // namespace infodist
