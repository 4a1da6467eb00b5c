#include "wstc/linear.hpp"

#include <algorithm>
#include <cmath>

#include "wstc/error.hpp"

namespace wstc {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double dot(const SparseRow& row, const std::vector<double>& w, double b) {
  double s = b;
  for (const auto& e : row) s += e.weight * w[e.term];
  return s;
}

}  // namespace

OvrLogistic OvrLogistic::train(std::span<const SparseRow> rows,
                               const std::vector<std::vector<std::uint8_t>>& labels, std::size_t num_classes,
                               std::size_t num_features, const LogisticParams& params) {
  if (rows.empty()) throw EngineError("logistic regression: no training rows");
  if (labels.size() != rows.size()) throw EngineError("logistic regression: label/row count mismatch");
  const double n = static_cast<double>(rows.size());

  // Lipschitz bound of the mean log-loss gradient: max ||[x, 1]||^2 / 4 plus the ridge.
  double max_sq = 0.0;
  for (const auto& row : rows) {
    double s = 1.0;
    for (const auto& e : row) s += e.weight * e.weight;
    max_sq = std::max(max_sq, s);
  }
  const double step = 1.0 / (0.25 * max_sq + params.l2);

  OvrLogistic model;
  model.weights_.assign(num_classes, std::vector<double>(num_features, 0.0));
  model.bias_.assign(num_classes, 0.0);

  std::vector<double> grad(num_features);
  std::vector<double> y(num_features);       // look-ahead point
  std::vector<double> w_prev(num_features);
  for (std::size_t c = 0; c < num_classes; ++c) {
    auto& w = model.weights_[c];
    double b = 0.0;
    double yb = 0.0;
    double b_prev = 0.0;
    std::fill(y.begin(), y.end(), 0.0);
    std::fill(w_prev.begin(), w_prev.end(), 0.0);
    double t = 1.0;
    for (std::size_t it = 0; it < params.max_iter; ++it) {
      std::fill(grad.begin(), grad.end(), 0.0);
      double gb = 0.0;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const double err = sigmoid(dot(rows[r], y, yb)) - (labels[r][c] ? 1.0 : 0.0);
        for (const auto& e : rows[r]) grad[e.term] += err * e.weight;
        gb += err;
      }
      double gnorm = gb * gb / (n * n);
      for (std::size_t f = 0; f < num_features; ++f) {
        grad[f] = grad[f] / n + params.l2 * y[f];
        gnorm += grad[f] * grad[f];
      }
      gb /= n;
      if (std::sqrt(gnorm) < params.grad_tol) {
        w = y;
        b = yb;
        break;
      }
      w_prev.swap(w);
      b_prev = b;
      for (std::size_t f = 0; f < num_features; ++f) w[f] = y[f] - step * grad[f];
      b = yb - step * gb;
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      const double mom = (t - 1.0) / t_next;
      for (std::size_t f = 0; f < num_features; ++f) y[f] = w[f] + mom * (w[f] - w_prev[f]);
      yb = b + mom * (b - b_prev);
      t = t_next;
    }
    model.bias_[c] = b;
  }
  return model;
}

ScoreVector OvrLogistic::predict(const SparseRow& row) const {
  ScoreVector out(weights_.size());
  for (std::size_t c = 0; c < weights_.size(); ++c) out[c] = sigmoid(dot(row, weights_[c], bias_[c]));
  return out;
}

nlohmann::ordered_json OvrLogistic::to_json() const {
  nlohmann::ordered_json j;
  j["bias"] = bias_;
  j["weights"] = weights_;
  return j;
}

}  // namespace wstc
