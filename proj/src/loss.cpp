#include "splinet/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace splinet {

LossKind loss_from_name(const std::string& name) {
  if (name == "averaged_mse") return LossKind::AveragedMSE;
  if (name == "softmax_cross_entropy") return LossKind::SoftmaxCrossEntropy;
  throw std::invalid_argument("unknown loss '" + name + "'");
}

const char* loss_name(LossKind kind) {
  return kind == LossKind::AveragedMSE ? "averaged_mse" : "softmax_cross_entropy";
}

double loss_averaged_mse(const Vector& x, double y) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  const double r = mean - y;
  return 0.5 * r * r;
}

Vector softmax(const Vector& x) {
  const double peak = *std::max_element(x.begin(), x.end());
  Vector p(x.size());
  double norm = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    p[i] = std::exp(x[i] - peak);
    norm += p[i];
  }
  for (std::size_t i = 0; i < x.size(); ++i) p[i] /= norm;
  return p;
}

double loss_softmax_xent(const Vector& x, const Vector& y_onehot) {
  if (x.size() != y_onehot.size())
    throw std::invalid_argument("loss_softmax_xent: logit/target length mismatch");
  const double peak = *std::max_element(x.begin(), x.end());
  double norm = 0.0;
  for (double v : x) norm += std::exp(v - peak);
  double loss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    loss += y_onehot[i] * (std::log(norm) - (x[i] - peak));
  return loss;
}

double loss_value(LossKind kind, const Vector& x, const Target& target) {
  if (kind == LossKind::AveragedMSE) {
    if (!std::holds_alternative<double>(target))
      throw std::invalid_argument("averaged MSE needs a scalar target");
    return loss_averaged_mse(x, std::get<double>(target));
  }
  if (!std::holds_alternative<Vector>(target))
    throw std::invalid_argument("softmax cross entropy needs a one-hot target");
  return loss_softmax_xent(x, std::get<Vector>(target));
}

}  // namespace splinet
