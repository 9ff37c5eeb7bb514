#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "splinet/bspline.hpp"
#include "splinet/linalg.hpp"

namespace splinet {

// Uniform time discretization t_i = i*h of [0, T]. The reference grid has
// T = 1 and h = 1/N; a ResNet-style grid fixes h = 1 so T = N.
struct TimeGrid {
  int steps = 0;     // N
  double h = 0.0;    // step size
  double T = 0.0;    // final time

  static TimeGrid reference(int n);            // h = 1/N, T = 1
  static TimeGrid fixed_step(int n, double h); // e.g. ResNet h = 1, T = N

  double time(int i) const {
    // i/N * T rather than i*h, so reference-grid times are bit-identical to
    // aligned spline knots and t_N lands on T exactly
    return static_cast<double>(i) / static_cast<double>(steps) * T;
  }
  double final_time() const { return T; }
  std::vector<double> times() const;
};

enum class ControlKind { Spline, PerLayer };

// The trainable network control. Spline kind holds L+d coefficient sets
// (paper index l = -d..L-1 stored at l+d); PerLayer holds one set per step.
// When `antisymmetric` is set, the materialized weight is
// W - W^T - gamma_shift*I.
struct ControlParams {
  ControlKind kind = ControlKind::Spline;
  int degree = 1;      // d, spline kind only
  int intervals = 0;   // L, spline kind only
  int width = 0;       // m
  std::vector<Matrix> omega;
  std::vector<Vector> beta;
  double lambda = 1.0;
  bool lambda_learnable = false;
  bool antisymmetric = false;
  double gamma_shift = 0.0;

  int coeff_count() const { return static_cast<int>(omega.size()); }
  SplineBasis basis() const;  // spline kind only
};

// zero-initialized controls
ControlParams make_spline_control(int degree, int intervals, int width);
ControlParams make_per_layer_control(int layers, int width);

// Fills every omega/beta entry i.i.d. uniform on [-amplitude, amplitude]
// from a generator seeded with `seed`. Throws unless amplitude > 0.
void init_random(ControlParams& params, std::uint64_t seed, double amplitude);

// number of trainable scalars
long param_count(const ControlParams& params);

// sum of squared omega/beta entries (lambda excluded); the regularizer is
// gamma times this
double param_sq_norm(const ControlParams& params);

Matrix antisymmetrize(const Matrix& w, double gamma_shift);

// W(t), b(t) for a spline control at arbitrary t in [0, T].
std::pair<Matrix, Vector> materialize(const ControlParams& params,
                                      const SplineBasis& basis, double t);
// (omega_i, beta_i) for a per-layer control; t must coincide with a grid time.
std::pair<Matrix, Vector> materialize(const ControlParams& params,
                                      const TimeGrid& grid, double t);

// Which coefficients are active at each step time and with what basis
// weight; computed once per (control, grid) configuration. PerLayer
// stencils are the single pair (i, 1).
struct StepStencil {
  std::vector<int> index;    // storage indices into omega/beta
  std::vector<double> value; // basis values B^d_l(t_i)
};

struct PropagationPlan {
  TimeGrid grid;
  std::vector<StepStencil> stencils;  // one per step i = 0..N-1
};

PropagationPlan make_plan(const ControlParams& params, const TimeGrid& grid);

// The N per-layer (W_i, b_i) realized from the coefficients through the
// plan, with the antisymmetric transform applied. Rebuilt whenever the
// coefficients change; shared across samples of a batch.
struct LayerControls {
  std::vector<Matrix> weight;
  std::vector<Vector> bias;
};

LayerControls materialize_layers(const ControlParams& params, const PropagationPlan& plan);

// JSON round-trip of the full parameter set.
std::string params_to_json(const ControlParams& params);
ControlParams params_from_json(const std::string& text);
void save_params(const ControlParams& params, const std::string& path);
ControlParams load_params(const std::string& path);

}  // namespace splinet
