#pragma once

#include <string>
#include <vector>

#include "splinet/control.hpp"
#include "splinet/dynamics.hpp"
#include "splinet/linalg.hpp"
#include "splinet/loss.hpp"

namespace splinet {

// Gradient of the objective with respect to every trainable scalar; shapes
// mirror ControlParams. d_lambda stays 0 when lambda is frozen.
struct Gradients {
  std::vector<Matrix> omega;
  std::vector<Vector> beta;
  double lambda = 0.0;
};

Gradients zero_gradients(const ControlParams& params);
void scale_gradients(Gradients& g, double s);
void add_gradients(Gradients& acc, const Gradients& g);

// z_N, the derivative of the loss at the network output
Vector seed_adjoint(LossKind kind, const Vector& x_out, const Target& target);

// one reverse step: z = z_next + h*lambda*W^T (sigma'(Wx+b) (.) z_next)
Vector adjoint_step(const Vector& z_next, const Vector& x, const Matrix& w,
                    const Vector& b, double h, double lambda, Activation act);

// Backpropagates the adjoint through a stored trajectory and accumulates
// coefficient gradients during the sweep. Each step's contribution,
// scaled by the active basis values, lands on the d+1 coefficients of the
// step's stencil; the regularizer contributes 2*gamma times the parameters.
Gradients accumulate_gradients(const Trajectory& traj, const LayerControls& layers,
                               const PropagationPlan& plan, const ControlParams& params,
                               Activation act, const Vector& seed, double gamma);

// Alternative route: run the full adjoint sweep first, then sum the
// per-step contributions per coefficient in forward time order. Agrees
// with accumulate_gradients up to summation order.
Gradients accumulate_gradients_two_phase(const Trajectory& traj, const LayerControls& layers,
                                         const PropagationPlan& plan, const ControlParams& params,
                                         Activation act, const Vector& seed, double gamma);

void add_regularization_gradient(Gradients& g, const ControlParams& params, double gamma);

// Regularized objective and its gradient averaged over a batch of samples.
struct ObjectiveEvaluation {
  double value = 0.0;
  Gradients gradient;
};

ObjectiveEvaluation objective_with_gradient(const ControlParams& params, const TimeGrid& grid,
                                            Activation act, LossKind loss,
                                            const std::vector<Vector>& inputs,
                                            const std::vector<Target>& targets, double gamma);

// Central-finite-difference verification of the analytic gradient over all
// trainable scalars, including lambda when learnable.
struct GradientCheckReport {
  double max_rel_error = 0.0;
  std::string worst_entry;
  long scalars_checked = 0;
};

GradientCheckReport gradient_check(const ControlParams& params, const TimeGrid& grid,
                                   Activation act, LossKind loss,
                                   const std::vector<Vector>& inputs,
                                   const std::vector<Target>& targets, double gamma,
                                   double epsilon);

}  // namespace splinet
