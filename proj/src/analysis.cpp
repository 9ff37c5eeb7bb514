#include "splinet/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "splinet/rng.hpp"

namespace splinet {

namespace {

Vector ode_rhs(const ControlParams& params, const SplineBasis& basis, Activation act,
               double t, const Vector& x) {
  auto [w, b] = materialize(params, basis, t);
  Vector pre = matvec(w, x);
  for (std::size_t i = 0; i < pre.size(); ++i) pre[i] += b[i];
  Vector out = activate(act, pre);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= params.lambda;
  return out;
}

}  // namespace

Vector rk4_reference(const ControlParams& params, const Vector& x0, Activation act,
                     double step) {
  if (params.kind != ControlKind::Spline)
    throw std::invalid_argument("rk4_reference: needs a spline control");
  const SplineBasis basis = params.basis();
  const double T = basis.final_time();
  const int n = std::max(1, static_cast<int>(std::lround(T / step)));
  const double h = T / n;
  Vector x = x0;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / n * T;
    const double tm = t + 0.5 * h;
    const double tn = static_cast<double>(i + 1) / n * T;
    const Vector k1 = ode_rhs(params, basis, act, t, x);
    Vector xk = x;
    axpy(0.5 * h, k1, xk);
    const Vector k2 = ode_rhs(params, basis, act, tm, xk);
    xk = x;
    axpy(0.5 * h, k2, xk);
    const Vector k3 = ode_rhs(params, basis, act, tm, xk);
    xk = x;
    axpy(h, k3, xk);
    const Vector k4 = ode_rhs(params, basis, act, tn, xk);
    for (std::size_t j = 0; j < x.size(); ++j)
      x[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  return x;
}

ConvergenceReport convergence_study(const ControlParams& params, const Vector& x0,
                                    Activation act, const std::vector<double>& step_sizes,
                                    double reference_step) {
  if (params.kind != ControlKind::Spline)
    throw std::invalid_argument("convergence_study: per-layer controls cannot be re-discretized");
  if (step_sizes.size() < 2)
    throw std::invalid_argument("convergence_study: need at least two step sizes");
  for (std::size_t i = 1; i < step_sizes.size(); ++i)
    if (!(step_sizes[i] < step_sizes[i - 1]))
      throw std::invalid_argument("convergence_study: step sizes must be strictly decreasing");

  const Vector x_ref = rk4_reference(params, x0, act, reference_step);

  ConvergenceReport report;
  report.step_sizes = step_sizes;
  report.reference = "rk4 step " + std::to_string(reference_step);
  for (double h : step_sizes) {
    const int n = static_cast<int>(std::lround(1.0 / h));
    const Trajectory traj = propagate(x0, params, TimeGrid::reference(n), act);
    report.errors.push_back(norm2(sub(traj.output(), x_ref)));
  }

  // least-squares slope over points with positive error
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n_fit = 0;
  for (std::size_t i = 0; i < report.errors.size(); ++i) {
    if (!(report.errors[i] > 0.0)) continue;
    const double lx = std::log(report.step_sizes[i]);
    const double ly = std::log(report.errors[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n_fit;
  }
  report.slope = n_fit >= 2
                     ? (n_fit * sxy - sx * sy) / (n_fit * sxx - sx * sx)
                     : std::numeric_limits<double>::quiet_NaN();
  return report;
}

SpectrumReport stability_spectrum(const ControlParams& params, const TimeGrid& grid,
                                  Activation act, const Vector& x0) {
  const PropagationPlan plan = make_plan(params, grid);
  const LayerControls layers = materialize_layers(params, plan);
  const Trajectory traj = propagate(x0, layers, grid, params.lambda, act);

  SpectrumReport report;
  report.probe_input = x0;
  report.layer_eigenvalues.reserve(grid.steps);
  report.inside_disk.reserve(grid.steps);
  for (int i = 0; i < grid.steps; ++i) {
    const Matrix& w = layers.weight[i];
    Vector pre = matvec(w, traj.states[i]);
    for (std::size_t j = 0; j < pre.size(); ++j) pre[j] += layers.bias[i][j];
    const Vector d = activate_deriv(act, pre);
    Matrix jac(w.rows(), w.cols());
    for (std::size_t r = 0; r < w.rows(); ++r)
      for (std::size_t c = 0; c < w.cols(); ++c)
        jac(r, c) = grid.h * params.lambda * d[r] * w(r, c);
    auto eig = eigenvalues(jac);
    std::vector<bool> inside(eig.size());
    for (std::size_t k = 0; k < eig.size(); ++k)
      inside[k] = std::abs(std::complex<double>(1.0, 0.0) + eig[k]) <= 1.0;
    report.layer_eigenvalues.push_back(std::move(eig));
    report.inside_disk.push_back(std::move(inside));
  }
  return report;
}

Architecture Architecture::splinet(int degree) {
  return Architecture{"splinet_d" + std::to_string(degree), ControlKind::Spline, degree, 0.0};
}

Architecture Architecture::odenet() {
  return Architecture{"odenet", ControlKind::PerLayer, 0, 0.0};
}

Architecture Architecture::resnet() {
  return Architecture{"resnet", ControlKind::PerLayer, 0, 1.0};
}

Architecture Architecture::from_label(const std::string& label) {
  if (label == "odenet") return odenet();
  if (label == "resnet") return resnet();
  if (label.rfind("splinet_d", 0) == 0) {
    const int degree = std::stoi(label.substr(9));
    if (degree >= 1 && degree <= 9) return splinet(degree);
  }
  throw std::invalid_argument("unknown architecture '" + label + "'");
}

namespace {

struct SampledHypers {
  double eta, gamma, amplitude;
  int intervals;
};

std::vector<SampledHypers> sample_hypers(const SweepRanges& r, int n_runs,
                                         std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<SampledHypers> out;
  out.reserve(n_runs);
  for (int i = 0; i < n_runs; ++i) {
    SampledHypers s;
    s.eta = log_uniform(gen, r.eta_min, r.eta_max);
    s.gamma = log_uniform(gen, r.gamma_min, r.gamma_max);
    s.amplitude = log_uniform(gen, r.amplitude_min, r.amplitude_max);
    s.intervals = uniform_int(gen, r.intervals_min, r.intervals_max);
    out.push_back(s);
  }
  return out;
}

TrainConfig configure_run(const TrainConfig& base, const Architecture& arch,
                          const SampledHypers& hp, std::uint64_t run_seed) {
  TrainConfig cfg = base;
  cfg.eta = hp.eta;
  cfg.gamma = hp.gamma;
  cfg.init_amplitude = hp.amplitude;
  cfg.seed = run_seed;
  cfg.network.kind = arch.kind;
  if (arch.kind == ControlKind::Spline) {
    cfg.network.degree = arch.degree;
    cfg.network.intervals = hp.intervals;
    cfg.network.step_size = 0.0;  // keep base.network.steps on the reference grid
  } else {
    // per-layer nets own one parameter set per layer: L = N
    cfg.network.steps = hp.intervals;
    cfg.network.step_size = arch.step_size;
  }
  return cfg;
}

}  // namespace

std::vector<SweepRun> sweep(const SweepRanges& ranges, int n_runs,
                            const TrainConfig& base, const ProblemSpec& spec,
                            const std::vector<Architecture>& architectures,
                            bool paired, std::uint64_t seed, int jobs) {
  if (n_runs < 1) throw std::invalid_argument("sweep: n_runs must be >= 1");
  if (architectures.empty()) throw std::invalid_argument("sweep: no architectures");

  // build the full task list up front so runs are deterministic in index order
  std::vector<SweepRun> runs;
  std::vector<TrainConfig> configs;
  for (std::size_t a = 0; a < architectures.size(); ++a) {
    const auto hypers =
        sample_hypers(ranges, n_runs, paired ? seed : derive_seed(seed, 1000 + a));
    for (int i = 0; i < n_runs; ++i) {
      SweepRun run;
      run.architecture = architectures[a].label;
      run.run_index = i;
      run.eta = hypers[i].eta;
      run.gamma = hypers[i].gamma;
      run.amplitude = hypers[i].amplitude;
      run.intervals = hypers[i].intervals;
      runs.push_back(run);
      configs.push_back(configure_run(base, architectures[a], hypers[i],
                                      derive_seed(seed, 1 + i)));
    }
  }

  // the training data is shared; validation construction is per problem
  const Dataset train_data = spec.kind == ProblemKind::Peaks
                                 ? make_peaks_dataset(1000, derive_seed(seed, 0))
                                 : (spec.kind == ProblemKind::SinF
                                        ? make_sin_dataset(spec.frequency)
                                        : make_scaled_sine_dataset(spec.amplitude, spec.frequency));
  const Dataset val_data = make_validation(spec, train_data, derive_seed(seed, 0));

  const int n_workers = std::max(1, jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= runs.size()) break;
      runs[k].record = train(configs[k], spec, train_data, val_data).record;
      runs[k].record.architecture = runs[k].architecture;
    }
  };
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return runs;
}

SweepStats summarize(const std::vector<double>& values, std::uint64_t seed,
                     int n_resamples) {
  if (values.size() < 2)
    throw std::invalid_argument("summarize: need at least 2 records for std/CI");
  const std::size_t n = values.size();

  auto mean_of = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  auto std_of = [&](const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
  };
  // linear interpolation at position q*(n-1) of the sorted values
  auto quantile = [](const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
  };

  SweepStats stats;
  stats.count = static_cast<int>(n);
  stats.mean = mean_of(values);
  stats.stddev = std_of(values);

  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  stats.min = sorted.front();
  stats.max = sorted.back();
  stats.q25 = quantile(sorted, 0.25);
  stats.median = quantile(sorted, 0.5);
  stats.q75 = quantile(sorted, 0.75);

  std::mt19937_64 gen(seed);
  std::vector<double> boot_mean(n_resamples), boot_std(n_resamples), resample(n);
  for (int r = 0; r < n_resamples; ++r) {
    for (std::size_t i = 0; i < n; ++i) resample[i] = values[gen() % n];
    boot_mean[r] = mean_of(resample);
    boot_std[r] = std_of(resample);
  }
  std::sort(boot_mean.begin(), boot_mean.end());
  std::sort(boot_std.begin(), boot_std.end());
  auto pct = [&](const std::vector<double>& sorted_boot, double q) {
    return quantile(sorted_boot, q);
  };
  stats.mean_ci_lo = pct(boot_mean, 0.025);
  stats.mean_ci_hi = pct(boot_mean, 0.975);
  stats.std_ci_lo = pct(boot_std, 0.025);
  stats.std_ci_hi = pct(boot_std, 0.975);
  return stats;
}

}  // namespace splinet
