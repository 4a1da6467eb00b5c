#pragma once

#include <vector>

#include <Eigen/Dense>

#include "wstc/util.hpp"

namespace wstc {

/// Rows scaled to unit L2 norm; zero rows stay zero.
Eigen::MatrixXd normalize_rows(Eigen::MatrixXd m);

struct KMeansResult {
  Eigen::MatrixXd centroids;           // K x d, unit rows
  std::vector<std::size_t> assignment; // per point
  std::size_t iterations = 0;
  bool converged = false;
};

/// Index of the most cosine-similar centroid (rows assumed unit); ties go to the lower index.
std::size_t nearest_centroid(const Eigen::MatrixXd& centroids, const Eigen::VectorXd& x);

/// Spherical k-means from the given initial centroids. Centroid k keeps its identity
/// (index) throughout; an emptied cluster keeps its previous centroid.
KMeansResult spherical_kmeans(const Eigen::MatrixXd& points, Eigen::MatrixXd init, std::size_t max_iters);

/// k-means++ picks of `count` additional centroids under cosine distance, given the
/// centroids already chosen.
Eigen::MatrixXd kmeanspp_extend(const Eigen::MatrixXd& points, const Eigen::MatrixXd& existing,
                                std::size_t count, Rng& rng);

}  // namespace wstc
