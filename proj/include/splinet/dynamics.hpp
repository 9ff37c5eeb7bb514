#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "splinet/control.hpp"
#include "splinet/linalg.hpp"

namespace splinet {

enum class Activation { Tanh, ReLU, Identity };

Activation activation_from_name(const std::string& name);
const char* activation_name(Activation act);

double activate(Activation act, double v);
// derivative of the activation; ReLU uses subgradient 0 at the origin
double activate_deriv(Activation act, double v);
Vector activate(Activation act, const Vector& v);
Vector activate_deriv(Activation act, const Vector& v);

// raised when forward propagation produces a non-finite state
struct divergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// one forward-Euler layer: x + h*lambda*sigma(W x + b)
Vector step(const Vector& x, const Matrix& w, const Vector& b, double h,
            double lambda, Activation act);

// per-layer states x_0..x_N of one forward propagation
struct Trajectory {
  std::vector<Vector> states;
  TimeGrid grid;

  const Vector& output() const { return states.back(); }
};

Trajectory propagate(const Vector& x0, const LayerControls& layers,
                     const TimeGrid& grid, double lambda, Activation act);

// convenience wrapper that materializes the layers internally
Trajectory propagate(const Vector& x0, const ControlParams& params,
                     const TimeGrid& grid, Activation act);

// input maps onto the network width
Vector input_replicate(double x, int width);
// copies the input into the leading components and zero-pads; throws if the
// input is wider than the network
Vector input_pad(const Vector& x, int width);
// cyclic repetition [x0, x1, x0, x1, x0]; alternative width map kept behind
// a config switch
Vector input_tile(const Vector& x, int width);

}  // namespace splinet
