#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "splinet/control.hpp"
#include "splinet/dynamics.hpp"
#include "splinet/problems.hpp"
#include "splinet/train.hpp"

namespace splinet {

// error of the forward-Euler output at T=1 against a fine reference solution
// of the continuous dynamics, over a list of step sizes
struct ConvergenceReport {
  std::vector<double> step_sizes;  // strictly decreasing
  std::vector<double> errors;
  double slope = 0.0;              // least-squares fit of log(err) vs log(h)
  std::string reference;
};

// Classical RK4 solution of dx/dt = lambda*sigma(W(t)x + b(t)) on [0,1],
// evaluating the spline control at the substep times. Used as the
// reference inside convergence_study; exposed for testing.
Vector rk4_reference(const ControlParams& params, const Vector& x0, Activation act,
                     double step);

ConvergenceReport convergence_study(const ControlParams& params, const Vector& x0,
                                    Activation act, const std::vector<double>& step_sizes,
                                    double reference_step = 1e-4);

// spectrum of h*lambda*diag(sigma'(W_i x_i + b_i))*W_i along the trajectory
// of a probe input, with the forward-Euler disk membership |1+z| <= 1
struct SpectrumReport {
  std::vector<std::vector<std::complex<double>>> layer_eigenvalues;
  std::vector<std::vector<bool>> inside_disk;
  Vector probe_input;
};

SpectrumReport stability_spectrum(const ControlParams& params, const TimeGrid& grid,
                                  Activation act, const Vector& x0);

// hyperparameter sampling ranges of the robustness study
struct SweepRanges {
  double eta_min = 1e-3, eta_max = 1e-1;           // log-uniform
  double gamma_min = 1e-10, gamma_max = 1e-4;      // log-uniform
  double amplitude_min = 1e-3, amplitude_max = 1.0;  // log-uniform
  int intervals_min = 2, intervals_max = 15;       // uniform integer
};

// one architecture column of the comparison tables
struct Architecture {
  std::string label;
  ControlKind kind = ControlKind::Spline;
  int degree = 1;          // spline only
  double step_size = 0.0;  // per-layer: 0 -> h=1/N (ODEnet), 1.0 -> ResNet

  static Architecture splinet(int degree);
  static Architecture odenet();
  static Architecture resnet();
  static Architecture from_label(const std::string& label);
};

struct SweepRun {
  std::string architecture;
  int run_index = 0;
  double eta = 0.0, gamma = 0.0, amplitude = 0.0;
  int intervals = 0;
  RunRecord record;
};

// Trains n_runs seeded samples of (eta, gamma, amplitude, L) per
// architecture. When paired, every architecture reuses the same sampled
// sequence. Spline architectures keep base.network.steps and use the
// sampled L for the knots; per-layer architectures use L as the layer
// count. Diverged runs are recorded, not dropped. jobs > 1 distributes
// runs over threads; results are collected in run order.
std::vector<SweepRun> sweep(const SweepRanges& ranges, int n_runs,
                            const TrainConfig& base, const ProblemSpec& spec,
                            const std::vector<Architecture>& architectures,
                            bool paired, std::uint64_t seed, int jobs = 1);

struct SweepStats {
  std::string label;
  int count = 0;
  double mean = 0.0, stddev = 0.0;
  double min = 0.0, max = 0.0;
  double median = 0.0, q25 = 0.0, q75 = 0.0;
  double mean_ci_lo = 0.0, mean_ci_hi = 0.0;  // bootstrap 95%
  double std_ci_lo = 0.0, std_ci_hi = 0.0;
};

// mean/std/min/max/median/quartiles plus percentile-bootstrap confidence
// intervals (10000 resamples, seeded); throws with fewer than 2 values
SweepStats summarize(const std::vector<double>& values, std::uint64_t seed,
                     int n_resamples = 10000);

}  // namespace splinet
