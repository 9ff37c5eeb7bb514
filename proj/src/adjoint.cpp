#include "splinet/adjoint.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace splinet {

Gradients zero_gradients(const ControlParams& params) {
  Gradients g;
  g.omega.assign(params.omega.size(), Matrix(params.width, params.width));
  g.beta.assign(params.beta.size(), Vector(params.width));
  g.lambda = 0.0;
  return g;
}

void scale_gradients(Gradients& g, double s) {
  for (auto& w : g.omega)
    for (auto& v : w.raw()) v *= s;
  for (auto& b : g.beta)
    for (auto& v : b.raw()) v *= s;
  g.lambda *= s;
}

void add_gradients(Gradients& acc, const Gradients& g) {
  if (acc.omega.size() != g.omega.size())
    throw std::invalid_argument("add_gradients: shape mismatch");
  for (std::size_t i = 0; i < acc.omega.size(); ++i) {
    axpy(1.0, g.omega[i], acc.omega[i]);
    axpy(1.0, g.beta[i], acc.beta[i]);
  }
  acc.lambda += g.lambda;
}

Vector seed_adjoint(LossKind kind, const Vector& x_out, const Target& target) {
  if (kind == LossKind::AveragedMSE) {
    if (!std::holds_alternative<double>(target))
      throw std::invalid_argument("seed_adjoint: averaged MSE needs a scalar target");
    double mean = 0.0;
    for (double v : x_out) mean += v;
    const double m = static_cast<double>(x_out.size());
    mean /= m;
    const double r = mean - std::get<double>(target);
    return Vector(x_out.size(), r / m);
  }
  if (!std::holds_alternative<Vector>(target))
    throw std::invalid_argument("seed_adjoint: cross entropy needs a one-hot target");
  const Vector& y = std::get<Vector>(target);
  Vector z = softmax(x_out);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] -= y[i];
  return z;
}

Vector adjoint_step(const Vector& z_next, const Vector& x, const Matrix& w,
                    const Vector& b, double h, double lambda, Activation act) {
  Vector pre = matvec(w, x);
  for (std::size_t i = 0; i < pre.size(); ++i) pre[i] += b[i];
  const Vector u = hadamard(activate_deriv(act, pre), z_next);
  Vector z = z_next;
  const Vector wtu = matvec_transposed(w, u);
  axpy(h * lambda, wtu, z);
  return z;
}

namespace {

struct StepWork {
  Vector pre;        // W_i x_i + b_i
  Vector weighted;   // sigma'(pre) (.) z_{i+1}
};

StepWork step_work(const Vector& x, const Matrix& w, const Vector& b,
                   Activation act, const Vector& z_next) {
  StepWork sw;
  sw.pre = matvec(w, x);
  for (std::size_t i = 0; i < sw.pre.size(); ++i) sw.pre[i] += b[i];
  sw.weighted = hadamard(activate_deriv(act, sw.pre), z_next);
  return sw;
}

// distribute one step's contribution onto the active coefficients
void scatter_step(Gradients& g, const StepStencil& stencil, const ControlParams& params,
                  const Vector& x, const StepWork& sw, double h, double lambda) {
  Matrix dw = outer(sw.weighted, x);
  if (params.antisymmetric) dw = sub(dw, transpose(dw));
  const double scale = h * lambda;
  for (std::size_t j = 0; j < stencil.index.size(); ++j) {
    const double c = scale * stencil.value[j];
    axpy(c, dw, g.omega[stencil.index[j]]);
    axpy(c, sw.weighted, g.beta[stencil.index[j]]);
  }
}

void check_pass_inputs(const Trajectory& traj, const LayerControls& layers,
                       const PropagationPlan& plan, const ControlParams& params) {
  const std::size_t n = plan.stencils.size();
  if (traj.states.size() != n + 1 || layers.weight.size() != n)
    throw std::invalid_argument("adjoint: trajectory/layers do not match the plan");
  if (!traj.states.empty() &&
      static_cast<int>(traj.states.front().size()) != params.width)
    throw std::invalid_argument("adjoint: trajectory width does not match params");
}

}  // namespace

Gradients accumulate_gradients(const Trajectory& traj, const LayerControls& layers,
                               const PropagationPlan& plan, const ControlParams& params,
                               Activation act, const Vector& seed, double gamma) {
  check_pass_inputs(traj, layers, plan, params);
  const int n = static_cast<int>(plan.stencils.size());
  const double h = plan.grid.h;
  Gradients g = zero_gradients(params);
  Vector z = seed;
  for (int i = n - 1; i >= 0; --i) {
    const Vector& x = traj.states[i];
    const StepWork sw = step_work(x, layers.weight[i], layers.bias[i], act, z);
    scatter_step(g, plan.stencils[i], params, x, sw, h, params.lambda);
    if (params.lambda_learnable)
      g.lambda += h * dot(activate(act, sw.pre), z);
    const Vector wtu = matvec_transposed(layers.weight[i], sw.weighted);
    axpy(h * params.lambda, wtu, z);
  }
  add_regularization_gradient(g, params, gamma);
  return g;
}

Gradients accumulate_gradients_two_phase(const Trajectory& traj, const LayerControls& layers,
                                         const PropagationPlan& plan, const ControlParams& params,
                                         Activation act, const Vector& seed, double gamma) {
  check_pass_inputs(traj, layers, plan, params);
  const int n = static_cast<int>(plan.stencils.size());
  const double h = plan.grid.h;
  // full adjoint sweep first
  std::vector<Vector> adjoint(n + 1);
  adjoint[n] = seed;
  for (int i = n - 1; i >= 0; --i)
    adjoint[i] = adjoint_step(adjoint[i + 1], traj.states[i], layers.weight[i],
                              layers.bias[i], h, params.lambda, act);
  // then sum contributions in forward time order
  Gradients g = zero_gradients(params);
  for (int i = 0; i < n; ++i) {
    const Vector& x = traj.states[i];
    const StepWork sw = step_work(x, layers.weight[i], layers.bias[i], act, adjoint[i + 1]);
    scatter_step(g, plan.stencils[i], params, x, sw, h, params.lambda);
    if (params.lambda_learnable)
      g.lambda += h * dot(activate(act, sw.pre), adjoint[i + 1]);
  }
  add_regularization_gradient(g, params, gamma);
  return g;
}

void add_regularization_gradient(Gradients& g, const ControlParams& params, double gamma) {
  if (gamma == 0.0) return;
  for (std::size_t i = 0; i < params.omega.size(); ++i) {
    axpy(2.0 * gamma, params.omega[i], g.omega[i]);
    axpy(2.0 * gamma, params.beta[i], g.beta[i]);
  }
}

namespace {

double objective_value(const ControlParams& params, const TimeGrid& grid, Activation act,
                       LossKind loss, const std::vector<Vector>& inputs,
                       const std::vector<Target>& targets, double gamma) {
  const PropagationPlan plan = make_plan(params, grid);
  const LayerControls layers = materialize_layers(params, plan);
  double value = 0.0;
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    const Trajectory traj = propagate(inputs[s], layers, grid, params.lambda, act);
    value += loss_value(loss, traj.output(), targets[s]);
  }
  value /= static_cast<double>(inputs.size());
  return value + gamma * param_sq_norm(params);
}

}  // namespace

ObjectiveEvaluation objective_with_gradient(const ControlParams& params, const TimeGrid& grid,
                                            Activation act, LossKind loss,
                                            const std::vector<Vector>& inputs,
                                            const std::vector<Target>& targets, double gamma) {
  if (inputs.empty() || inputs.size() != targets.size())
    throw std::invalid_argument("objective_with_gradient: bad batch");
  const PropagationPlan plan = make_plan(params, grid);
  const LayerControls layers = materialize_layers(params, plan);
  ObjectiveEvaluation out;
  out.gradient = zero_gradients(params);
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    const Trajectory traj = propagate(inputs[s], layers, grid, params.lambda, act);
    out.value += loss_value(loss, traj.output(), targets[s]);
    const Vector seed = seed_adjoint(loss, traj.output(), targets[s]);
    add_gradients(out.gradient,
                  accumulate_gradients(traj, layers, plan, params, act, seed, 0.0));
  }
  const double inv_n = 1.0 / static_cast<double>(inputs.size());
  out.value *= inv_n;
  scale_gradients(out.gradient, inv_n);
  out.value += gamma * param_sq_norm(params);
  add_regularization_gradient(out.gradient, params, gamma);
  return out;
}

GradientCheckReport gradient_check(const ControlParams& params, const TimeGrid& grid,
                                   Activation act, LossKind loss,
                                   const std::vector<Vector>& inputs,
                                   const std::vector<Target>& targets, double gamma,
                                   double epsilon) {
  if (!(epsilon >= 1e-8 && epsilon <= 1e-4))
    throw std::invalid_argument("gradient_check: epsilon must lie in [1e-8, 1e-4]");
  const ObjectiveEvaluation eval =
      objective_with_gradient(params, grid, act, loss, inputs, targets, gamma);

  GradientCheckReport report;
  ControlParams probe = params;
  auto record = [&](double analytic, double* slot, const std::string& name) {
    const double backup = *slot;
    *slot = backup + epsilon;
    const double up = objective_value(probe, grid, act, loss, inputs, targets, gamma);
    *slot = backup - epsilon;
    const double down = objective_value(probe, grid, act, loss, inputs, targets, gamma);
    *slot = backup;
    const double fd = (up - down) / (2.0 * epsilon);
    const double rel = std::fabs(analytic - fd) / std::max(1.0, std::fabs(analytic));
    ++report.scalars_checked;
    if (rel > report.max_rel_error) {
      report.max_rel_error = rel;
      report.worst_entry = name;
    }
  };

  for (std::size_t l = 0; l < probe.omega.size(); ++l) {
    for (std::size_t k = 0; k < probe.omega[l].raw().size(); ++k) {
      std::ostringstream name;
      name << "omega[" << l << "][" << k << "]";
      record(eval.gradient.omega[l].raw()[k], &probe.omega[l].raw()[k], name.str());
    }
    for (std::size_t k = 0; k < probe.beta[l].raw().size(); ++k) {
      std::ostringstream name;
      name << "beta[" << l << "][" << k << "]";
      record(eval.gradient.beta[l].raw()[k], &probe.beta[l].raw()[k], name.str());
    }
  }
  if (probe.lambda_learnable)
    record(eval.gradient.lambda, &probe.lambda, "lambda");
  return report;
}

}  // namespace splinet
