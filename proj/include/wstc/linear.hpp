#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "wstc/corpus.hpp"
#include "wstc/labeling.hpp"

namespace wstc {

using SparseRow = std::vector<SparseEntry>;

struct LogisticParams {
  double l2 = 1e-4;
  std::size_t max_iter = 400;
  double grad_tol = 1e-6;
};

/// One-vs-rest L2-regularized logistic regression on sparse rows, fitted by full-batch
/// Nesterov-accelerated gradient descent with a fixed 1/L step.
class OvrLogistic {
 public:
  OvrLogistic() = default;

  /// labels[n][c] != 0 marks row n as positive for class c.
  static OvrLogistic train(std::span<const SparseRow> rows, const std::vector<std::vector<std::uint8_t>>& labels,
                           std::size_t num_classes, std::size_t num_features, const LogisticParams& params);

  /// Per-class probabilities in [0, 1].
  ScoreVector predict(const SparseRow& row) const;

  std::size_t num_classes() const { return weights_.size(); }
  const std::vector<std::vector<double>>& weights() const { return weights_; }
  const std::vector<double>& bias() const { return bias_; }
  nlohmann::ordered_json to_json() const;

 private:
  std::vector<std::vector<double>> weights_;  // class x feature
  std::vector<double> bias_;
};

}  // namespace wstc
