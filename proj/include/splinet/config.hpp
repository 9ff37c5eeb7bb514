#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splinet/analysis.hpp"
#include "splinet/problems.hpp"
#include "splinet/train.hpp"

namespace splinet {

// raised for malformed configuration; messages name the offending key path
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProblemConfig {
  std::string kind = "sin";   // sin | peaks | scaled_sine
  double frequency = 1.0;
  double amplitude = 10.0;    // scaled_sine target magnitude
  int n_points = 0;           // 0 -> problem default (20f or 1000)
  std::uint64_t seed = 0;
  std::string input_map = ""; // "" -> problem default; peaks accepts pad|tile
};

struct SweepConfig {
  int n_runs = 20;
  bool paired = true;
  std::uint64_t seed = 0;
  int jobs = 1;
  SweepRanges ranges;
  std::vector<std::string> architectures = {"splinet_d1", "odenet", "resnet"};
};

struct OutputConfig {
  std::string directory = "out";
  std::vector<std::string> formats = {"csv", "json"};
};

// One experiment, as read from a JSON config file. Unknown keys anywhere in
// the document are rejected.
struct Config {
  ProblemConfig problem;
  NetworkConfig network;
  TrainConfig training;   // training.network mirrors `network` after loading
  SweepConfig sweep;
  OutputConfig output;
};

Config load_config(const std::string& path);
Config parse_config(const std::string& text);

ProblemSpec problem_spec(const Config& config);
Dataset make_train_dataset(const Config& config);

}  // namespace splinet
