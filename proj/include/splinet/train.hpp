#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splinet/adjoint.hpp"
#include "splinet/control.hpp"
#include "splinet/problems.hpp"

namespace splinet {

struct AdamConstants {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

enum class Optimizer { Adam, GradientDescent };

// Architecture-level settings: control parameterization plus discretization.
struct NetworkConfig {
  ControlKind kind = ControlKind::Spline;
  int degree = 1;        // spline only
  int intervals = 10;    // L, spline only
  int width = 4;         // m
  int steps = 100;       // N
  double step_size = 0.0;  // 0 -> reference grid h = 1/N; ResNet uses 1.0
  bool antisymmetric = false;
  double gamma_shift = 0.0;
  double lambda = 1.0;
  bool lambda_learnable = false;

  TimeGrid grid() const;
  ControlParams make_control() const;  // zero coefficients
};

struct TrainConfig {
  NetworkConfig network;
  double eta = 1e-2;
  double gamma = 1e-6;
  int epochs = 200;
  int batch_size = 0;  // 0 -> full batch
  std::uint64_t seed = 0;
  AdamConstants adam;
  double init_amplitude = 0.05;
  Optimizer optimizer = Optimizer::Adam;
};

// gamma * (sum ||omega_l||_F^2 + sum ||beta_l||^2); lambda excluded
double regularizer(const ControlParams& params, double gamma);

struct AdamState {
  Gradients first;
  Gradients second;
  long step = 0;
};

AdamState make_adam_state(const ControlParams& params);

// standard ADAM with bias correction; updates lambda only when learnable
void adam_step(ControlParams& params, const Gradients& g, AdamState& state,
               double eta, const AdamConstants& constants);
void gradient_descent_step(ControlParams& params, const Gradients& g, double eta);

// One training run's outcome. Wall time is kept out of the serialized data
// outputs so reruns stay byte-identical.
struct RunRecord {
  std::string problem;
  std::string architecture;
  TrainConfig config;
  std::vector<double> epoch_loss;      // mean regularized batch loss per epoch
  double final_train_metric = 0.0;
  double final_val_metric = 0.0;
  bool diverged = false;
  double learned_lambda = 1.0;
  double wall_seconds = 0.0;
};

struct TrainResult {
  RunRecord record;
  ControlParams params;
};

// Shuffled mini-batch training with the seeded generator; stops early with
// the diverged flag on non-finite loss (worst-possible metric recorded:
// +inf for error metrics, 0 for accuracy).
TrainResult train(const TrainConfig& config, const ProblemSpec& spec,
                  const Dataset& train_data, const Dataset& val_data);

// mean loss (regression) or argmax accuracy (classification)
double evaluate(const ControlParams& params, const TimeGrid& grid,
                const ProblemSpec& spec, const Dataset& data);

// mean of the final state per sample, the regression prediction
std::vector<double> predict_regression(const ControlParams& params, const TimeGrid& grid,
                                       const ProblemSpec& spec, const Dataset& data);

}  // namespace splinet
