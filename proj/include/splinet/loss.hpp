#pragma once

#include <string>
#include <variant>

#include "splinet/linalg.hpp"

namespace splinet {

enum class LossKind { AveragedMSE, SoftmaxCrossEntropy };

LossKind loss_from_name(const std::string& name);
const char* loss_name(LossKind kind);

// scalar target for regression, one-hot vector for classification
using Target = std::variant<double, Vector>;

// 1/2 (mean(x) - y)^2
double loss_averaged_mse(const Vector& x, double y);
// -log softmax(x)_k for the one-hot class k, max-subtracted for stability
double loss_softmax_xent(const Vector& x, const Vector& y_onehot);

Vector softmax(const Vector& x);

double loss_value(LossKind kind, const Vector& x, const Target& target);

}  // namespace splinet
