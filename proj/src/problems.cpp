#include "splinet/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "splinet/rng.hpp"

namespace splinet {

Target Dataset::target(std::size_t i) const {
  if (classification()) return onehot_targets[i];
  return scalar_targets[i];
}

InputMap input_map_from_name(const std::string& name) {
  if (name == "replicate") return InputMap::Replicate;
  if (name == "pad") return InputMap::Pad;
  if (name == "tile") return InputMap::Tile;
  throw std::invalid_argument("unknown input map '" + name + "'");
}

const char* input_map_name(InputMap map) {
  switch (map) {
    case InputMap::Replicate: return "replicate";
    case InputMap::Pad: return "pad";
    case InputMap::Tile: return "tile";
  }
  return "?";
}

std::string ProblemSpec::name() const {
  switch (kind) {
    case ProblemKind::SinF: return "sin_f" + std::to_string(static_cast<int>(frequency));
    case ProblemKind::Peaks: return "peaks";
    case ProblemKind::ScaledSine: return "scaled_sine";
  }
  return "?";
}

ProblemSpec ProblemSpec::sin_f(double frequency) {
  ProblemSpec s;
  s.kind = ProblemKind::SinF;
  s.frequency = frequency;
  s.width = 4;
  s.input_map = InputMap::Replicate;
  s.loss = LossKind::AveragedMSE;
  s.activation = Activation::Tanh;
  return s;
}

ProblemSpec ProblemSpec::peaks() {
  ProblemSpec s;
  s.kind = ProblemKind::Peaks;
  s.width = 5;
  s.input_map = InputMap::Pad;
  s.loss = LossKind::SoftmaxCrossEntropy;
  s.activation = Activation::ReLU;
  return s;
}

ProblemSpec ProblemSpec::scaled_sine(double amplitude, double frequency) {
  ProblemSpec s;
  s.kind = ProblemKind::ScaledSine;
  s.frequency = frequency;
  s.amplitude = amplitude;
  s.width = 4;
  s.input_map = InputMap::Replicate;
  s.loss = LossKind::AveragedMSE;
  s.activation = Activation::Tanh;
  return s;
}

Vector map_input(const ProblemSpec& spec, const Vector& raw) {
  switch (spec.input_map) {
    case InputMap::Replicate:
      if (raw.size() != 1)
        throw std::invalid_argument("map_input: replicate expects a scalar input");
      return input_replicate(raw[0], spec.width);
    case InputMap::Pad: return input_pad(raw, spec.width);
    case InputMap::Tile: return input_tile(raw, spec.width);
  }
  throw std::logic_error("map_input: unreachable");
}

namespace {

Dataset sine_grid_dataset(const std::string& name, double frequency, double amplitude,
                          int n) {
  constexpr double pi = std::numbers::pi;
  Dataset d;
  d.name = name;
  d.inputs.reserve(n);
  d.scalar_targets.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double x = -pi + 2.0 * pi * k / (n - 1);
    d.inputs.push_back(Vector{x});
    d.scalar_targets.push_back(amplitude * std::sin(frequency * x));
  }
  return d;
}

}  // namespace

Dataset make_sin_dataset(double frequency, int n_override) {
  const int n = n_override > 0 ? n_override
                               : static_cast<int>(std::lround(20.0 * frequency));
  if (n < 2) throw std::invalid_argument("make_sin_dataset: need at least two points");
  return sine_grid_dataset("sin_f" + std::to_string(static_cast<int>(frequency)),
                           frequency, 1.0, n);
}

Dataset make_scaled_sine_dataset(double amplitude, double frequency, int n_override) {
  if (!(amplitude > 0.0))
    throw std::invalid_argument("make_scaled_sine_dataset: amplitude must be positive");
  const int n = n_override > 0 ? n_override
                               : static_cast<int>(std::lround(20.0 * frequency));
  if (n < 2) throw std::invalid_argument("make_scaled_sine_dataset: need at least two points");
  return sine_grid_dataset("scaled_sine", frequency, amplitude, n);
}

double peaks_function(double x, double y) {
  const double a = 3.0 * (1.0 - x) * (1.0 - x) * std::exp(-x * x - (y + 1.0) * (y + 1.0));
  const double b = 10.0 * (x / 5.0 - x * x * x - std::pow(y, 5)) * std::exp(-x * x - y * y);
  const double c = std::exp(-(x + 1.0) * (x + 1.0) - y * y) / 3.0;
  return a - b - c;
}

// frozen from compute_peaks_thresholds(); see the problems test
const std::array<double, 4> kPeaksClassThresholds = {
    -1.4349879542167643e-01,
    -9.3566500129029438e-03,
    1.4862188454448659e-02,
    3.1386928530404817e-01,
};

std::array<double, 4> compute_peaks_thresholds() {
  constexpr int kGrid = 101;
  std::vector<double> values;
  values.reserve(kGrid * kGrid);
  for (int i = 0; i < kGrid; ++i) {
    const double x = -3.0 + 6.0 * i / (kGrid - 1);
    for (int j = 0; j < kGrid; ++j) {
      const double y = -3.0 + 6.0 * j / (kGrid - 1);
      values.push_back(peaks_function(x, y));
    }
  }
  std::sort(values.begin(), values.end());
  std::array<double, 4> thresholds{};
  const double m = static_cast<double>(values.size());
  for (int q = 1; q <= 4; ++q) {
    const auto idx = static_cast<std::size_t>(std::ceil(0.2 * q * m)) - 1;
    thresholds[q - 1] = values[idx];
  }
  return thresholds;
}

int peaks_class(double value) {
  int c = 0;
  while (c < 4 && value > kPeaksClassThresholds[c]) ++c;
  return c;
}

Dataset make_peaks_dataset(int n, std::uint64_t seed) {
  if (n < 5) throw std::invalid_argument("make_peaks_dataset: need at least 5 points");
  std::mt19937_64 gen(seed);
  Dataset d;
  d.name = "peaks";
  d.seed = seed;
  d.inputs.reserve(n);
  d.onehot_targets.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double x = uniform_real(gen, -3.0, 3.0);
    const double y = uniform_real(gen, -3.0, 3.0);
    d.inputs.push_back(Vector{x, y});
    Vector onehot(5, 0.0);
    onehot[peaks_class(peaks_function(x, y))] = 1.0;
    d.onehot_targets.push_back(std::move(onehot));
  }
  return d;
}

Dataset make_validation(const ProblemSpec& spec, const Dataset& train_data,
                        std::uint64_t seed) {
  if (spec.kind == ProblemKind::Peaks)
    return make_peaks_dataset(1000, derive_seed(seed, 1));
  // midpoints of the training grid
  Dataset d;
  d.name = train_data.name + "_val";
  const std::size_t n = train_data.size();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double x = 0.5 * (train_data.inputs[k][0] + train_data.inputs[k + 1][0]);
    d.inputs.push_back(Vector{x});
    d.scalar_targets.push_back(spec.amplitude * std::sin(spec.frequency * x));
  }
  return d;
}

double regression_accuracy(const std::vector<double>& predictions,
                           const std::vector<double>& targets) {
  if (predictions.size() != targets.size() || targets.empty())
    throw std::invalid_argument("regression_accuracy: size mismatch");
  double mse = 0.0, ms_target = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double r = predictions[i] - targets[i];
    mse += r * r;
    ms_target += targets[i] * targets[i];
  }
  if (ms_target == 0.0) return mse == 0.0 ? 1.0 : 0.0;
  const double ratio = std::sqrt(mse / ms_target);
  return std::clamp(1.0 - ratio, 0.0, 1.0);
}

}  // namespace splinet
