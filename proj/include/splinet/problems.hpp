#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "splinet/dynamics.hpp"
#include "splinet/linalg.hpp"
#include "splinet/loss.hpp"

namespace splinet {

// Input-output pairs for one test problem. Raw inputs keep their native
// dimension (1 for the sine problems, 2 for peaks); map_input widens them
// to the network width.
struct Dataset {
  std::string name;
  std::vector<Vector> inputs;
  std::vector<double> scalar_targets;   // regression
  std::vector<Vector> onehot_targets;   // classification
  std::uint64_t seed = 0;

  bool classification() const { return !onehot_targets.empty(); }
  std::size_t size() const { return inputs.size(); }
  Target target(std::size_t i) const;
};

enum class ProblemKind { SinF, Peaks, ScaledSine };
enum class InputMap { Replicate, Pad, Tile };

InputMap input_map_from_name(const std::string& name);
const char* input_map_name(InputMap map);

struct ProblemSpec {
  ProblemKind kind = ProblemKind::SinF;
  double frequency = 1.0;   // sine problems
  double amplitude = 1.0;   // scaled sine
  int width = 4;
  InputMap input_map = InputMap::Replicate;
  LossKind loss = LossKind::AveragedMSE;
  Activation activation = Activation::Tanh;

  std::string name() const;

  static ProblemSpec sin_f(double frequency);
  static ProblemSpec peaks();
  static ProblemSpec scaled_sine(double amplitude, double frequency = 1.0);
};

Vector map_input(const ProblemSpec& spec, const Vector& raw);

// 20f points uniformly spaced on [-pi, pi] (endpoints included),
// y = sin(f x). n_override, when positive, replaces the point count.
Dataset make_sin_dataset(double frequency, int n_override = 0);

// same grid, targets amplitude*sin(frequency*x)
Dataset make_scaled_sine_dataset(double amplitude, double frequency = 1.0,
                                 int n_override = 0);

// classic peaks surface
double peaks_function(double x, double y);

// n uniform random points on [-3,3]^2; labels are the five bands of
// peaks_function split at the 20/40/60/80% quantiles over the fixed
// 101x101 reference grid (frozen below).
Dataset make_peaks_dataset(int n, std::uint64_t seed);

// quantile thresholds of peaks_function over the reference grid; the frozen
// constants are checked against compute_peaks_thresholds() in the tests
extern const std::array<double, 4> kPeaksClassThresholds;
std::array<double, 4> compute_peaks_thresholds();
int peaks_class(double value);

// held-out set matching the training construction: midpoint grid for the
// sine problems, fresh random points for peaks
Dataset make_validation(const ProblemSpec& spec, const Dataset& train_data,
                        std::uint64_t seed);

// 1 - RMSE / RMS(targets), clamped to [0, 1]
double regression_accuracy(const std::vector<double>& predictions,
                           const std::vector<double>& targets);

}  // namespace splinet
