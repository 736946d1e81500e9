#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "opr/error.hpp"
#include "opr/miner.hpp"
#include "opr/pattern.hpp"

namespace opr {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Per-sequence supports: one row per sequence, one column per pattern.
struct FeatureMatrix {
  DenseMatrix<std::int64_t> counts;
  std::vector<OppPattern> column_patterns;
  std::vector<std::string> row_labels;  // empty, or one per row

  Eigen::Index rows() const { return counts.rows(); }
  Eigen::Index cols() const { return counts.cols(); }

  friend bool operator==(const FeatureMatrix& a, const FeatureMatrix& b) {
    return a.column_patterns == b.column_patterns && a.row_labels == b.row_labels &&
           a.counts.rows() == b.counts.rows() && a.counts.cols() == b.counts.cols() &&
           a.counts == b.counts;
  }
};

/// One cluster / class id per sequence.
using Labeling = std::vector<int>;

/// Distinct antecedents and consequents in first-appearance order.
std::vector<OppPattern> rule_patterns(std::span<const OpRule> rules);

struct TopK {
  std::vector<OppPattern> patterns;
  bool truncated = false;  // fewer than k frequent patterns were available
};

/// Highest supports first; ties go to shorter patterns, then lexicographic.
TopK top_k_patterns(const MiningResult& result, std::size_t k);

/// cell(s, j) = support of patterns[j] in dataset[s].
FeatureMatrix feature_matrix(std::span<const TimeSeries> dataset,
                             std::span<const OppPattern> patterns);

/// Same matrix, reusing the mined occurrence lists where a pattern is frequent.
FeatureMatrix feature_matrix(const MiningResult& mined, std::span<const OppPattern> patterns);

struct Clustering {
  Labeling labels;
  Eigen::MatrixXd centroids;  // k x dims
  double inertia = 0.0;       // sum of squared distances to assigned centroids
  std::size_t iterations = 0;
};

namespace detail {

// Fisher-Yates over mt19937_64, spelled out so the order does not depend on
// the standard library's shuffle/distribution implementations.
inline std::vector<Eigen::Index> seeded_order(Eigen::Index n, std::uint64_t seed) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

}  // namespace detail

/// Lloyd's k-means under Euclidean distance. Centroids start at the first k
/// distinct rows in seed-shuffled order (duplicates fill in when fewer than k
/// distinct rows exist). Distance ties go to the lower cluster id; an empty
/// cluster keeps its previous centroid. Stops when assignments are stable or
/// after max_iters updates.
template <typename Derived>
Clustering kmeans(const Eigen::MatrixBase<Derived>& points, std::size_t k, std::uint64_t seed,
                  std::size_t max_iters = 100) {
  const Eigen::MatrixXd x = points.template cast<double>();
  const Eigen::Index n = x.rows();
  const auto kk = static_cast<Eigen::Index>(k);
  if (k < 1) throw Error(ErrorCode::InvalidConfig, "k-means needs k >= 1");
  if (n < kk) throw Error(ErrorCode::TooFewRows, "k-means needs at least k rows");

  Clustering out;
  out.centroids.resize(kk, x.cols());
  {
    const auto order = detail::seeded_order(n, seed);
    std::vector<Eigen::Index> chosen;
    for (Eigen::Index row : order) {
      if (static_cast<Eigen::Index>(chosen.size()) == kk) break;
      bool seen = false;
      for (Eigen::Index c : chosen) seen = seen || x.row(c) == x.row(row);
      if (!seen) chosen.push_back(row);
    }
    for (Eigen::Index row : order) {
      if (static_cast<Eigen::Index>(chosen.size()) == kk) break;
      if (std::find(chosen.begin(), chosen.end(), row) == chosen.end()) chosen.push_back(row);
    }
    for (Eigen::Index c = 0; c < kk; ++c) out.centroids.row(c) = x.row(chosen[c]);
  }

  out.labels.assign(static_cast<std::size_t>(n), -1);
  auto assign = [&] {
    bool changed = false;
    out.inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (Eigen::Index c = 0; c < kk; ++c) {
        const double d = (x.row(i) - out.centroids.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(c);
        }
      }
      out.inertia += best_d;
      auto& label = out.labels[static_cast<std::size_t>(i)];
      changed = changed || label != best;
      label = best;
    }
    return changed;
  };

  assign();
  while (out.iterations < max_iters) {
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(kk, x.cols());
    Eigen::VectorXd sizes = Eigen::VectorXd::Zero(kk);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto c = out.labels[static_cast<std::size_t>(i)];
      sums.row(c) += x.row(i);
      sizes(c) += 1.0;
    }
    for (Eigen::Index c = 0; c < kk; ++c) {
      if (sizes(c) > 0) out.centroids.row(c) = sums.row(c) / sizes(c);
    }
    ++out.iterations;
    if (!assign()) break;
  }
  return out;
}

inline Clustering kmeans(const FeatureMatrix& m, std::size_t k, std::uint64_t seed,
                         std::size_t max_iters = 100) {
  return kmeans(m.counts, k, seed, max_iters);
}

}  // namespace opr
