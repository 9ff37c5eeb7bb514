#include "splinet/train.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "splinet/rng.hpp"

namespace splinet {

TimeGrid NetworkConfig::grid() const {
  return step_size > 0.0 ? TimeGrid::fixed_step(steps, step_size)
                         : TimeGrid::reference(steps);
}

ControlParams NetworkConfig::make_control() const {
  ControlParams p = kind == ControlKind::Spline
                        ? make_spline_control(degree, intervals, width)
                        : make_per_layer_control(steps, width);
  p.lambda = lambda;
  p.lambda_learnable = lambda_learnable;
  p.antisymmetric = antisymmetric;
  p.gamma_shift = gamma_shift;
  return p;
}

double regularizer(const ControlParams& params, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("regularizer: gamma must be >= 0");
  return gamma * param_sq_norm(params);
}

AdamState make_adam_state(const ControlParams& params) {
  return AdamState{zero_gradients(params), zero_gradients(params), 0};
}

void adam_step(ControlParams& params, const Gradients& g, AdamState& state,
               double eta, const AdamConstants& constants) {
  const double b1 = constants.beta1;
  const double b2 = constants.beta2;
  state.step += 1;
  const double corr1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double corr2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  auto update = [&](double& value, double& m, double& v, double grad) {
    m = b1 * m + (1.0 - b1) * grad;
    v = b2 * v + (1.0 - b2) * grad * grad;
    value -= eta * (m / corr1) / (std::sqrt(v / corr2) + constants.epsilon);
  };
  for (std::size_t l = 0; l < params.omega.size(); ++l) {
    auto& w = params.omega[l].raw();
    auto& m = state.first.omega[l].raw();
    auto& v = state.second.omega[l].raw();
    for (std::size_t k = 0; k < w.size(); ++k) update(w[k], m[k], v[k], g.omega[l].raw()[k]);
    auto& b = params.beta[l].raw();
    auto& mb = state.first.beta[l].raw();
    auto& vb = state.second.beta[l].raw();
    for (std::size_t k = 0; k < b.size(); ++k) update(b[k], mb[k], vb[k], g.beta[l].raw()[k]);
  }
  if (params.lambda_learnable)
    update(params.lambda, state.first.lambda, state.second.lambda, g.lambda);
}

void gradient_descent_step(ControlParams& params, const Gradients& g, double eta) {
  for (std::size_t l = 0; l < params.omega.size(); ++l) {
    axpy(-eta, g.omega[l], params.omega[l]);
    axpy(-eta, g.beta[l], params.beta[l]);
  }
  if (params.lambda_learnable) params.lambda -= eta * g.lambda;
}

namespace {

void validate(const TrainConfig& config, const ProblemSpec& spec,
              const Dataset& train_data, const Dataset& val_data) {
  if (!(config.eta > 0.0)) throw std::invalid_argument("train: eta must be positive");
  if (config.gamma < 0.0) throw std::invalid_argument("train: gamma must be >= 0");
  if (config.epochs < 1) throw std::invalid_argument("train: epochs must be >= 1");
  if (config.batch_size < 0) throw std::invalid_argument("train: batch_size must be >= 0");
  if (config.network.width != spec.width)
    throw std::invalid_argument("train: network width does not match the problem width");
  if (train_data.size() == 0 || val_data.size() == 0)
    throw std::invalid_argument("train: empty dataset");
  const bool classification = spec.loss == LossKind::SoftmaxCrossEntropy;
  if (classification != train_data.classification() ||
      classification != val_data.classification())
    throw std::invalid_argument("train: loss kind does not match the dataset targets");
}

double worst_metric(const ProblemSpec& spec) {
  return spec.loss == LossKind::SoftmaxCrossEntropy
             ? 0.0
             : std::numeric_limits<double>::infinity();
}

}  // namespace

TrainResult train(const TrainConfig& config, const ProblemSpec& spec,
                  const Dataset& train_data, const Dataset& val_data) {
  validate(config, spec, train_data, val_data);
  const auto t_start = std::chrono::steady_clock::now();

  const TimeGrid grid = config.network.grid();
  ControlParams params = config.network.make_control();
  init_random(params, derive_seed(config.seed, 0), config.init_amplitude);
  std::mt19937_64 shuffler(derive_seed(config.seed, 1));

  const std::size_t n = train_data.size();
  std::vector<Vector> mapped(n);
  std::vector<Target> targets(n);
  for (std::size_t i = 0; i < n; ++i) {
    mapped[i] = map_input(spec, train_data.inputs[i]);
    targets[i] = train_data.target(i);
  }

  const std::size_t batch =
      config.batch_size == 0 ? n : std::min<std::size_t>(config.batch_size, n);
  AdamState adam = make_adam_state(params);

  RunRecord record;
  record.problem = spec.name();
  record.config = config;
  record.epoch_loss.reserve(config.epochs);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<Vector> batch_inputs;
  std::vector<Target> batch_targets;

  for (int epoch = 0; epoch < config.epochs && !record.diverged; ++epoch) {
    shuffle_in_place(order, shuffler);
    double loss_sum = 0.0;
    int batches = 0;
    for (std::size_t start = 0; start < n && !record.diverged; start += batch) {
      const std::size_t stop = std::min(start + batch, n);
      batch_inputs.clear();
      batch_targets.clear();
      for (std::size_t i = start; i < stop; ++i) {
        batch_inputs.push_back(mapped[order[i]]);
        batch_targets.push_back(targets[order[i]]);
      }
      try {
        const ObjectiveEvaluation eval =
            objective_with_gradient(params, grid, spec.activation, spec.loss,
                                    batch_inputs, batch_targets, config.gamma);
        if (!std::isfinite(eval.value)) {
          record.diverged = true;
          break;
        }
        if (config.optimizer == Optimizer::Adam)
          adam_step(params, eval.gradient, adam, config.eta, config.adam);
        else
          gradient_descent_step(params, eval.gradient, config.eta);
        loss_sum += eval.value;
        ++batches;
      } catch (const divergence_error&) {
        record.diverged = true;
      }
    }
    if (batches > 0) record.epoch_loss.push_back(loss_sum / batches);
  }

  record.learned_lambda = params.lambda;
  if (record.diverged) {
    record.final_train_metric = worst_metric(spec);
    record.final_val_metric = worst_metric(spec);
  } else {
    record.final_train_metric = evaluate(params, grid, spec, train_data);
    record.final_val_metric = evaluate(params, grid, spec, val_data);
  }
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return TrainResult{std::move(record), std::move(params)};
}

double evaluate(const ControlParams& params, const TimeGrid& grid,
                const ProblemSpec& spec, const Dataset& data) {
  if (data.size() == 0) throw std::invalid_argument("evaluate: empty dataset");
  const PropagationPlan plan = make_plan(params, grid);
  const LayerControls layers = materialize_layers(params, plan);
  if (spec.loss == LossKind::SoftmaxCrossEntropy) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const Trajectory traj =
          propagate(map_input(spec, data.inputs[i]), layers, grid, params.lambda, spec.activation);
      const Vector& out = traj.output();
      const Vector& y = data.onehot_targets[i];
      std::size_t pred = 0, truth = 0;
      for (std::size_t j = 1; j < out.size(); ++j) {
        if (out[j] > out[pred]) pred = j;
        if (y[j] > y[truth]) truth = j;
      }
      if (pred == truth) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(data.size());
  }
  double loss_sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Trajectory traj =
        propagate(map_input(spec, data.inputs[i]), layers, grid, params.lambda, spec.activation);
    loss_sum += loss_averaged_mse(traj.output(), data.scalar_targets[i]);
  }
  return loss_sum / static_cast<double>(data.size());
}

std::vector<double> predict_regression(const ControlParams& params, const TimeGrid& grid,
                                       const ProblemSpec& spec, const Dataset& data) {
  const PropagationPlan plan = make_plan(params, grid);
  const LayerControls layers = materialize_layers(params, plan);
  std::vector<double> out;
  out.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Trajectory traj =
        propagate(map_input(spec, data.inputs[i]), layers, grid, params.lambda, spec.activation);
    double mean = 0.0;
    for (double v : traj.output()) mean += v;
    out.push_back(mean / static_cast<double>(traj.output().size()));
  }
  return out;
}

}  // namespace splinet
