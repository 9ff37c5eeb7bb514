#include "splinet/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace splinet {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw config_error(path + ": " + what);
}

void require_keys(const json& obj, const std::string& path,
                  const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) fail(path + "." + key, "unknown key");
}

template <typename T>
T get(const json& obj, const std::string& path, const std::string& key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail(path + "." + key, "wrong type");
  }
}

void parse_problem(const json& j, ProblemConfig& p) {
  require_keys(j, "problem",
               {"kind", "frequency", "amplitude", "n_points", "seed", "input_map"});
  p.kind = get<std::string>(j, "problem", "kind", p.kind);
  if (p.kind != "sin" && p.kind != "peaks" && p.kind != "scaled_sine")
    fail("problem.kind", "must be one of sin, peaks, scaled_sine");
  p.frequency = get<double>(j, "problem", "frequency", p.frequency);
  if (!(p.frequency > 0.0)) fail("problem.frequency", "must be positive");
  p.amplitude = get<double>(j, "problem", "amplitude", p.amplitude);
  if (!(p.amplitude > 0.0)) fail("problem.amplitude", "must be positive");
  p.n_points = get<int>(j, "problem", "n_points", p.n_points);
  if (p.n_points < 0) fail("problem.n_points", "must be >= 0");
  p.seed = get<std::uint64_t>(j, "problem", "seed", p.seed);
  p.input_map = get<std::string>(j, "problem", "input_map", p.input_map);
  if (!p.input_map.empty() && p.input_map != "replicate" && p.input_map != "pad" &&
      p.input_map != "tile")
    fail("problem.input_map", "must be one of replicate, pad, tile");
}

// `activation` is validated in parse_config against the problem's choice
void parse_network(const json& j, NetworkConfig& n) {
  require_keys(j, "network",
               {"width", "N", "activation", "control_kind", "degree", "L",
                "antisymmetric", "gamma_shift", "lambda"});
  n.width = get<int>(j, "network", "width", n.width);
  if (n.width < 1) fail("network.width", "must be >= 1");
  n.steps = get<int>(j, "network", "N", n.steps);
  if (n.steps < 1) fail("network.N", "must be >= 1");

  const std::string kind = get<std::string>(j, "network", "control_kind", "spline");
  if (kind == "spline") {
    n.kind = ControlKind::Spline;
    n.step_size = 0.0;
  } else if (kind == "odenet") {
    n.kind = ControlKind::PerLayer;
    n.step_size = 0.0;
  } else if (kind == "resnet") {
    n.kind = ControlKind::PerLayer;
    n.step_size = 1.0;
  } else {
    fail("network.control_kind", "must be one of spline, odenet, resnet");
  }

  n.degree = get<int>(j, "network", "degree", n.degree);
  if (n.kind == ControlKind::Spline && n.degree < 1)
    fail("network.degree", "must be >= 1 for spline controls");
  if (j.contains("L")) {
    const int intervals = get<int>(j, "network", "L", 0);
    if (n.kind == ControlKind::Spline) {
      if (intervals < 1) fail("network.L", "must be >= 1");
      n.intervals = intervals;
    } else if (intervals != n.steps) {
      fail("network.L", "per-layer controls have L = N; omit L or set it to N");
    }
  } else if (n.kind == ControlKind::Spline && n.intervals < 1) {
    fail("network.L", "required for spline controls");
  }
  if (n.kind == ControlKind::PerLayer) n.intervals = n.steps;

  n.antisymmetric = get<bool>(j, "network", "antisymmetric", n.antisymmetric);
  n.gamma_shift = get<double>(j, "network", "gamma_shift", n.gamma_shift);
  if (n.gamma_shift < 0.0) fail("network.gamma_shift", "must be >= 0");

  if (j.contains("lambda")) {
    const json& lj = j.at("lambda");
    if (!lj.is_object()) fail("network.lambda", "expected an object {value, learnable}");
    require_keys(lj, "network.lambda", {"value", "learnable"});
    n.lambda = get<double>(lj, "network.lambda", "value", n.lambda);
    if (!(n.lambda > 0.0)) fail("network.lambda.value", "must be positive");
    n.lambda_learnable = get<bool>(lj, "network.lambda", "learnable", n.lambda_learnable);
  }
  // activation is consumed by problem_spec (problem defaults may override)
}

void parse_training(const json& j, TrainConfig& t) {
  require_keys(j, "training",
               {"eta", "gamma", "epochs", "batch_size", "seed", "beta1", "beta2",
                "epsilon", "init_amplitude", "optimizer"});
  t.eta = get<double>(j, "training", "eta", t.eta);
  if (!(t.eta > 0.0)) fail("training.eta", "must be positive");
  t.gamma = get<double>(j, "training", "gamma", t.gamma);
  if (t.gamma < 0.0) fail("training.gamma", "must be >= 0");
  t.epochs = get<int>(j, "training", "epochs", t.epochs);
  if (t.epochs < 1) fail("training.epochs", "must be >= 1");
  t.batch_size = get<int>(j, "training", "batch_size", t.batch_size);
  if (t.batch_size < 0) fail("training.batch_size", "must be >= 0 (0 = full batch)");
  t.seed = get<std::uint64_t>(j, "training", "seed", t.seed);
  t.adam.beta1 = get<double>(j, "training", "beta1", t.adam.beta1);
  t.adam.beta2 = get<double>(j, "training", "beta2", t.adam.beta2);
  t.adam.epsilon = get<double>(j, "training", "epsilon", t.adam.epsilon);
  t.init_amplitude = get<double>(j, "training", "init_amplitude", t.init_amplitude);
  if (!(t.init_amplitude > 0.0)) fail("training.init_amplitude", "must be positive");
  const std::string opt = get<std::string>(j, "training", "optimizer", "adam");
  if (opt == "adam")
    t.optimizer = Optimizer::Adam;
  else if (opt == "gradient_descent")
    t.optimizer = Optimizer::GradientDescent;
  else
    fail("training.optimizer", "must be adam or gradient_descent");
}

void parse_sweep(const json& j, SweepConfig& s) {
  require_keys(j, "sweep", {"n_runs", "paired", "seed", "jobs", "ranges", "architectures"});
  s.n_runs = get<int>(j, "sweep", "n_runs", s.n_runs);
  if (s.n_runs < 1) fail("sweep.n_runs", "must be >= 1");
  s.paired = get<bool>(j, "sweep", "paired", s.paired);
  s.seed = get<std::uint64_t>(j, "sweep", "seed", s.seed);
  s.jobs = get<int>(j, "sweep", "jobs", s.jobs);
  if (s.jobs < 1) fail("sweep.jobs", "must be >= 1");
  if (j.contains("ranges")) {
    const json& rj = j.at("ranges");
    require_keys(rj, "sweep.ranges", {"eta", "gamma", "init_amplitude", "L"});
    auto read_pair = [&](const char* key, double& lo, double& hi) {
      if (!rj.contains(key)) return;
      const json& pj = rj.at(key);
      if (!pj.is_array() || pj.size() != 2)
        fail(std::string("sweep.ranges.") + key, "expected [lo, hi]");
      lo = pj[0].get<double>();
      hi = pj[1].get<double>();
      if (!(lo > 0.0) || !(hi >= lo))
        fail(std::string("sweep.ranges.") + key, "need 0 < lo <= hi");
    };
    read_pair("eta", s.ranges.eta_min, s.ranges.eta_max);
    read_pair("gamma", s.ranges.gamma_min, s.ranges.gamma_max);
    read_pair("init_amplitude", s.ranges.amplitude_min, s.ranges.amplitude_max);
    if (rj.contains("L")) {
      const json& pj = rj.at("L");
      if (!pj.is_array() || pj.size() != 2) fail("sweep.ranges.L", "expected [lo, hi]");
      s.ranges.intervals_min = pj[0].get<int>();
      s.ranges.intervals_max = pj[1].get<int>();
      if (s.ranges.intervals_min < 1 || s.ranges.intervals_max < s.ranges.intervals_min)
        fail("sweep.ranges.L", "need 1 <= lo <= hi");
    }
  }
  if (j.contains("architectures")) {
    s.architectures = j.at("architectures").get<std::vector<std::string>>();
    if (s.architectures.empty()) fail("sweep.architectures", "must not be empty");
    for (const auto& label : s.architectures) {
      try {
        Architecture::from_label(label);
      } catch (const std::invalid_argument& e) {
        fail("sweep.architectures", e.what());
      }
    }
  }
}

void parse_output(const json& j, OutputConfig& o) {
  require_keys(j, "output", {"directory", "formats"});
  o.directory = get<std::string>(j, "output", "directory", o.directory);
  if (o.directory.empty()) fail("output.directory", "must not be empty");
  if (j.contains("formats")) {
    o.formats = j.at("formats").get<std::vector<std::string>>();
    for (const auto& f : o.formats)
      if (f != "csv" && f != "json") fail("output.formats", "must be csv or json");
  }
}

}  // namespace

Config parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config root must be an object");
  require_keys(j, "config", {"problem", "network", "training", "sweep", "output"});

  Config cfg;
  std::string activation;
  if (j.contains("problem")) parse_problem(j.at("problem"), cfg.problem);
  if (j.contains("network")) {
    const json& nj = j.at("network");
    if (nj.contains("activation")) {
      activation = nj.at("activation").get<std::string>();
      if (activation != "tanh" && activation != "relu" && activation != "identity")
        fail("network.activation", "must be one of tanh, relu, identity");
    }
    parse_network(nj, cfg.network);
  }
  if (j.contains("training")) parse_training(j.at("training"), cfg.training);
  if (j.contains("sweep")) parse_sweep(j.at("sweep"), cfg.sweep);
  if (j.contains("output")) parse_output(j.at("output"), cfg.output);

  // problem defaults for width/activation; explicit settings must agree
  ProblemSpec spec = problem_spec(cfg);
  if (!j.contains("network") || !j.at("network").contains("width"))
    cfg.network.width = spec.width;
  else if (cfg.network.width != spec.width)
    fail("network.width", "problem '" + cfg.problem.kind + "' uses width " +
                              std::to_string(spec.width));
  if (!activation.empty() && activation != activation_name(spec.activation))
    fail("network.activation", "problem '" + cfg.problem.kind + "' uses " +
                                   std::string(activation_name(spec.activation)));

  cfg.training.network = cfg.network;
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ProblemSpec problem_spec(const Config& config) {
  ProblemSpec spec;
  if (config.problem.kind == "sin")
    spec = ProblemSpec::sin_f(config.problem.frequency);
  else if (config.problem.kind == "peaks")
    spec = ProblemSpec::peaks();
  else
    spec = ProblemSpec::scaled_sine(config.problem.amplitude, config.problem.frequency);
  if (!config.problem.input_map.empty())
    spec.input_map = input_map_from_name(config.problem.input_map);
  return spec;
}

Dataset make_train_dataset(const Config& config) {
  const ProblemConfig& p = config.problem;
  if (p.kind == "peaks")
    return make_peaks_dataset(p.n_points > 0 ? p.n_points : 1000, p.seed);
  if (p.kind == "sin") return make_sin_dataset(p.frequency, p.n_points);
  return make_scaled_sine_dataset(p.amplitude, p.frequency, p.n_points);
}

}  // namespace splinet
