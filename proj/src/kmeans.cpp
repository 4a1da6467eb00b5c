#include "wstc/kmeans.hpp"

#include <algorithm>

#include "wstc/error.hpp"

namespace wstc {

Eigen::MatrixXd normalize_rows(Eigen::MatrixXd m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double n = m.row(r).norm();
    if (n > 0.0) m.row(r) /= n;
  }
  return m;
}

std::size_t nearest_centroid(const Eigen::MatrixXd& centroids, const Eigen::VectorXd& x) {
  std::size_t best = 0;
  double best_sim = -2.0;
  for (Eigen::Index k = 0; k < centroids.rows(); ++k) {
    const double s = centroids.row(k).dot(x);
    if (s > best_sim) {
      best_sim = s;
      best = static_cast<std::size_t>(k);
    }
  }
  return best;
}

KMeansResult spherical_kmeans(const Eigen::MatrixXd& points, Eigen::MatrixXd init, std::size_t max_iters) {
  if (init.rows() == 0) throw EngineError("k-means: no initial centroids");
  if (points.rows() == 0) throw EngineError("k-means: no points");
  KMeansResult res;
  res.centroids = normalize_rows(std::move(init));
  const auto n = static_cast<std::size_t>(points.rows());
  const auto K = static_cast<std::size_t>(res.centroids.rows());
  res.assignment.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) res.assignment[i] = nearest_centroid(res.centroids, points.row(i).transpose());

  for (std::size_t it = 0; it < max_iters; ++it) {
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(res.centroids.rows(), res.centroids.cols());
    std::vector<std::size_t> counts(K, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sums.row(static_cast<Eigen::Index>(res.assignment[i])) += points.row(static_cast<Eigen::Index>(i));
      ++counts[res.assignment[i]];
    }
    for (std::size_t k = 0; k < K; ++k) {
      const auto kk = static_cast<Eigen::Index>(k);
      const double norm = sums.row(kk).norm();
      if (counts[k] > 0 && norm > 0.0) res.centroids.row(kk) = sums.row(kk) / norm;
    }
    ++res.iterations;
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = nearest_centroid(res.centroids, points.row(static_cast<Eigen::Index>(i)).transpose());
      if (a != res.assignment[i]) {
        res.assignment[i] = a;
        changed = true;
      }
    }
    if (!changed) {
      res.converged = true;
      break;
    }
  }
  return res;
}

Eigen::MatrixXd kmeanspp_extend(const Eigen::MatrixXd& points, const Eigen::MatrixXd& existing,
                                std::size_t count, Rng& rng) {
  const auto n = points.rows();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(count), points.cols());
  std::vector<double> dist(static_cast<std::size_t>(n), 2.0);
  auto absorb = [&](const Eigen::RowVectorXd& c) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d = std::max(0.0, 1.0 - points.row(i).dot(c));
      dist[static_cast<std::size_t>(i)] = std::min(dist[static_cast<std::size_t>(i)], d);
    }
  };
  for (Eigen::Index k = 0; k < existing.rows(); ++k) absorb(existing.row(k));
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> w(dist.size());
    double total = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
      w[i] = dist[i] * dist[i];
      total += w[i];
    }
    const std::size_t pick = total > 0.0 ? sample_categorical(rng, w) : uniform_index(rng, dist.size());
    out.row(static_cast<Eigen::Index>(k)) = points.row(static_cast<Eigen::Index>(pick));
    absorb(out.row(static_cast<Eigen::Index>(k)));
  }
  return out;
}

}  // namespace wstc
