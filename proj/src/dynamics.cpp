#include "splinet/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace splinet {

Activation activation_from_name(const std::string& name) {
  if (name == "tanh") return Activation::Tanh;
  if (name == "relu") return Activation::ReLU;
  if (name == "identity") return Activation::Identity;
  throw std::invalid_argument("unknown activation '" + name + "'");
}

const char* activation_name(Activation act) {
  switch (act) {
    case Activation::Tanh: return "tanh";
    case Activation::ReLU: return "relu";
    case Activation::Identity: return "identity";
  }
  return "?";
}

double activate(Activation act, double v) {
  switch (act) {
    case Activation::Tanh: return std::tanh(v);
    case Activation::ReLU: return v > 0.0 ? v : 0.0;
    case Activation::Identity: return v;
  }
  return 0.0;
}

double activate_deriv(Activation act, double v) {
  switch (act) {
    case Activation::Tanh: {
      const double t = std::tanh(v);
      return 1.0 - t * t;
    }
    case Activation::ReLU: return v > 0.0 ? 1.0 : 0.0;
    case Activation::Identity: return 1.0;
  }
  return 0.0;
}

Vector activate(Activation act, const Vector& v) {
  Vector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = activate(act, v[i]);
  return r;
}

Vector activate_deriv(Activation act, const Vector& v) {
  Vector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = activate_deriv(act, v[i]);
  return r;
}

Vector step(const Vector& x, const Matrix& w, const Vector& b, double h,
            double lambda, Activation act) {
  Vector pre = matvec(w, x);
  for (std::size_t i = 0; i < pre.size(); ++i) pre[i] += b[i];
  Vector out(x.size());
  bool finite = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = x[i] + h * lambda * activate(act, pre[i]);
    finite = finite && std::isfinite(out[i]);
  }
  if (!finite) throw divergence_error("step: non-finite state");
  return out;
}

Trajectory propagate(const Vector& x0, const LayerControls& layers,
                     const TimeGrid& grid, double lambda, Activation act) {
  if (static_cast<int>(layers.weight.size()) != grid.steps)
    throw std::invalid_argument("propagate: layer count does not match grid");
  Trajectory traj;
  traj.grid = grid;
  traj.states.reserve(grid.steps + 1);
  traj.states.push_back(x0);
  for (int i = 0; i < grid.steps; ++i)
    traj.states.push_back(
        step(traj.states.back(), layers.weight[i], layers.bias[i], grid.h, lambda, act));
  return traj;
}

Trajectory propagate(const Vector& x0, const ControlParams& params,
                     const TimeGrid& grid, Activation act) {
  if (static_cast<int>(x0.size()) != params.width)
    throw std::invalid_argument("propagate: input width does not match control width");
  const PropagationPlan plan = make_plan(params, grid);
  const LayerControls layers = materialize_layers(params, plan);
  return propagate(x0, layers, grid, params.lambda, act);
}

Vector input_replicate(double x, int width) {
  if (width < 1) throw std::invalid_argument("input_replicate: width must be >= 1");
  return Vector(static_cast<std::size_t>(width), x);
}

Vector input_pad(const Vector& x, int width) {
  if (static_cast<int>(x.size()) > width) {
    std::ostringstream msg;
    msg << "input_pad: input of length " << x.size() << " exceeds width " << width;
    throw std::invalid_argument(msg.str());
  }
  Vector out(static_cast<std::size_t>(width), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i];
  return out;
}

Vector input_tile(const Vector& x, int width) {
  if (x.size() == 0) throw std::invalid_argument("input_tile: empty input");
  Vector out(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) out[i] = x[i % x.size()];
  return out;
}

}  // namespace splinet
