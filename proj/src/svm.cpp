#include "infodist/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "infodist/error.hpp"
#include "infodist/parallel.hpp"
#include "infodist/random.hpp"

namespace infodist {

namespace {

constexpr double kTau = 1e-12;
constexpr double kEps = 1e-3;
constexpr std::size_t kMaxIterations = 1'000'000;

double rbf(const FeatureVector& a, const FeatureVector& b, double gamma) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::exp(-gamma * s);
}

int majority(const std::vector<int>& y) {
  const auto pos = std::count(y.begin(), y.end(), 1);
  return 2 * pos >= static_cast<std::ptrdiff_t>(y.size()) ? 1 : -1;
}

bool all_identical(const std::vector<FeatureVector>& x) {
  return std::all_of(x.begin(), x.end(), [&](const FeatureVector& v) { return v == x[0]; });
}

}  // namespace

double SvmModel::decision(const FeatureVector& x) const {
  if (constant_label) return *constant_label;
  double f = -rho;
  for (std::size_t i = 0; i < support.size(); ++i) f += coef[i] * rbf(support[i], x, gamma);
  return f;
}

int SvmModel::predict(const FeatureVector& x) const { return decision(x) > 0.0 ? 1 : -1; }

SvmModel train_svm(const std::vector<FeatureVector>& x, const std::vector<int>& y, double gamma,
                   double cost) {
  if (x.size() != y.size() || x.empty()) throw DegenerateLabels("training set is empty or ragged");
  for (int label : y) {
    if (label != 1 && label != -1) throw DegenerateLabels("labels must be +1 or -1");
  }
  SvmModel model;
  model.gamma = gamma;
  model.cost = cost;
  const bool one_class = std::all_of(y.begin(), y.end(), [&](int v) { return v == y[0]; });
  if (one_class || all_identical(x)) {
    model.constant_label = majority(y);
    return model;
  }

  const std::size_t n = x.size();
  std::vector<double> k(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) k[i * n + j] = k[j * n + i] = rbf(x[i], x[j], gamma);
  }
  auto kk = [&](std::size_t i, std::size_t j) { return k[i * n + j]; };
  auto yf = [&](std::size_t i) { return static_cast<double>(y[i]); };
  auto q = [&](std::size_t i, std::size_t j) { return yf(i) * yf(j) * kk(i, j); };

  std::vector<double> alpha(n, 0.0), grad(n, -1.0);
  auto upper = [&](std::size_t t) { return alpha[t] >= cost; };
  auto lower = [&](std::size_t t) { return alpha[t] <= 0.0; };

  for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (y[t] == 1 ? !upper(t) : !lower(t)) {
        const double v = -yf(t) * grad[t];
        if (v >= gmax) {
          gmax = v;
          i = t;
        }
      }
    }
    if (i == n) break;
    double gmax2 = -std::numeric_limits<double>::infinity();
    double best_obj = std::numeric_limits<double>::infinity();
    std::size_t j = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (y[t] == 1 ? lower(t) : upper(t)) continue;
      const double v = yf(t) * grad[t];
      gmax2 = std::max(gmax2, v);
      const double diff = gmax + v;
      if (diff > 0.0) {
        double quad = kk(i, i) + kk(t, t) - 2.0 * kk(i, t);
        if (quad <= 0.0) quad = kTau;
        const double obj = -diff * diff / quad;
        if (obj <= best_obj) {
          best_obj = obj;
          j = t;
        }
      }
    }
    if (gmax + gmax2 < kEps || j == n) break;

    const double old_i = alpha[i], old_j = alpha[j];
    if (y[i] != y[j]) {
      const double quad = std::max(q(i, i) + q(j, j) + 2.0 * q(i, j), kTau);
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) {
          alpha[j] = 0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = -diff;
      }
      if (diff > 0) {
        if (alpha[i] > cost) {
          alpha[i] = cost;
          alpha[j] = cost - diff;
        }
      } else if (alpha[j] > cost) {
        alpha[j] = cost;
        alpha[i] = cost + diff;
      }
    } else {
      const double quad = std::max(q(i, i) + q(j, j) - 2.0 * q(i, j), kTau);
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > cost) {
        if (alpha[i] > cost) {
          alpha[i] = cost;
          alpha[j] = sum - cost;
        }
      } else if (alpha[j] < 0) {
        alpha[j] = 0;
        alpha[i] = sum;
      }
      if (sum > cost) {
        if (alpha[j] > cost) {
          alpha[j] = cost;
          alpha[i] = sum - cost;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = sum;
      }
    }
    const double di = alpha[i] - old_i, dj = alpha[j] - old_j;
    for (std::size_t t = 0; t < n; ++t) grad[t] += q(t, i) * di + q(t, j) * dj;
  }

  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = yf(t) * grad[t];
    if (upper(t)) {
      if (y[t] == -1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (lower(t)) {
      if (y[t] == 1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      free_sum += yg;
      ++free_count;
    }
  }
  model.rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : (ub + lb) / 2.0;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) {
      model.support.push_back(x[t]);
      model.coef.push_back(alpha[t] * yf(t));
    }
  }
  return model;
}

std::vector<std::size_t> stratified_folds(const std::vector<int>& y, std::size_t folds,
                                          std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> fold(y.size(), 0);
  for (int cls : {1, -1}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] == cls) members.push_back(i);
    }
    rng.shuffle(members.begin(), members.end());
    for (std::size_t k = 0; k < members.size(); ++k) fold[members[k]] = k % folds;
  }
  return fold;
}

GridChoice select_hyperparameters(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                                  std::size_t folds, std::uint64_t seed) {
  const auto assignment = stratified_folds(y, folds, seed);
  std::vector<GridChoice> grid;
  for (int c = -2; c <= 8; ++c) {
    for (int g = 4; g >= -6; --g) grid.push_back({std::ldexp(1.0, g), std::ldexp(1.0, c), 0.0});
  }
  parallel_for(grid.size(), [&](std::size_t k) {
    std::size_t correct = 0;
    for (std::size_t f = 0; f < folds; ++f) {
      std::vector<FeatureVector> train_x;
      std::vector<int> train_y;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (assignment[i] != f) {
          train_x.push_back(x[i]);
          train_y.push_back(y[i]);
        }
      }
      if (train_x.empty()) continue;
      const SvmModel m = train_svm(train_x, train_y, grid[k].gamma, grid[k].cost);
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (assignment[i] == f && m.predict(x[i]) == y[i]) ++correct;
      }
    }
    grid[k].cv_accuracy = static_cast<double>(correct) / static_cast<double>(x.size());
  });
  // Grid order is (C ascending, gamma descending), so the first maximum wins ties.
  GridChoice best = grid[0];
  for (const auto& g : grid) {
    if (g.cv_accuracy > best.cv_accuracy) best = g;
  }
  return best;
}

}  // namespace infodist
