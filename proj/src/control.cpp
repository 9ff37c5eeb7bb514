#include "splinet/control.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "splinet/rng.hpp"

namespace splinet {

TimeGrid TimeGrid::reference(int n) {
  if (n < 1) throw std::invalid_argument("TimeGrid: need at least one step");
  return TimeGrid{n, 1.0 / n, 1.0};
}

TimeGrid TimeGrid::fixed_step(int n, double h) {
  if (n < 1) throw std::invalid_argument("TimeGrid: need at least one step");
  if (!(h > 0.0)) throw std::invalid_argument("TimeGrid: step size must be positive");
  return TimeGrid{n, h, n * h};
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(steps + 1);
  for (int i = 0; i <= steps; ++i) out[i] = time(i);
  return out;
}

SplineBasis ControlParams::basis() const {
  if (kind != ControlKind::Spline)
    throw std::logic_error("ControlParams::basis: per-layer controls have no spline basis");
  return SplineBasis(degree, intervals, 1.0);
}

ControlParams make_spline_control(int degree, int intervals, int width) {
  if (degree < 1) throw std::invalid_argument("spline control: degree must be >= 1");
  if (intervals < 1) throw std::invalid_argument("spline control: intervals must be >= 1");
  if (width < 1) throw std::invalid_argument("spline control: width must be >= 1");
  ControlParams p;
  p.kind = ControlKind::Spline;
  p.degree = degree;
  p.intervals = intervals;
  p.width = width;
  p.omega.assign(intervals + degree, Matrix(width, width));
  p.beta.assign(intervals + degree, Vector(width));
  return p;
}

ControlParams make_per_layer_control(int layers, int width) {
  if (layers < 1) throw std::invalid_argument("per-layer control: layers must be >= 1");
  if (width < 1) throw std::invalid_argument("per-layer control: width must be >= 1");
  ControlParams p;
  p.kind = ControlKind::PerLayer;
  p.degree = 0;
  p.intervals = layers;
  p.width = width;
  p.omega.assign(layers, Matrix(width, width));
  p.beta.assign(layers, Vector(width));
  return p;
}

void init_random(ControlParams& params, std::uint64_t seed, double amplitude) {
  if (!(amplitude > 0.0))
    throw std::invalid_argument("init_random: amplitude must be positive");
  std::mt19937_64 gen(seed);
  for (auto& w : params.omega)
    for (auto& v : w.raw()) v = uniform_real(gen, -amplitude, amplitude);
  for (auto& b : params.beta)
    for (auto& v : b.raw()) v = uniform_real(gen, -amplitude, amplitude);
}

long param_count(const ControlParams& params) {
  const long m = params.width;
  long n = static_cast<long>(params.omega.size()) * (m * m + m);
  if (params.lambda_learnable) n += 1;
  return n;
}

double param_sq_norm(const ControlParams& params) {
  double s = 0.0;
  for (const auto& w : params.omega) s += frobenius_sq(w);
  for (const auto& b : params.beta) s += dot(b, b);
  return s;
}

Matrix antisymmetrize(const Matrix& w, double gamma_shift) {
  Matrix out = sub(w, transpose(w));
  for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) -= gamma_shift;
  return out;
}

std::pair<Matrix, Vector> materialize(const ControlParams& params,
                                      const SplineBasis& basis, double t) {
  if (params.kind != ControlKind::Spline)
    throw std::invalid_argument("materialize: spline basis given for per-layer control");
  Matrix w(params.width, params.width);
  Vector b(params.width);
  for (const auto& [l, value] : basis.active(t)) {
    const std::size_t j = static_cast<std::size_t>(l + basis.degree());
    axpy(value, params.omega[j], w);
    axpy(value, params.beta[j], b);
  }
  if (params.antisymmetric) w = antisymmetrize(w, params.gamma_shift);
  return {std::move(w), std::move(b)};
}

std::pair<Matrix, Vector> materialize(const ControlParams& params,
                                      const TimeGrid& grid, double t) {
  if (params.kind != ControlKind::PerLayer)
    throw std::invalid_argument("materialize: time grid given for spline control");
  const double pos = t / grid.h;
  const int i = static_cast<int>(std::lround(pos));
  if (i < 0 || i >= static_cast<int>(params.omega.size()) ||
      std::fabs(pos - i) > 1e-9) {
    std::ostringstream msg;
    msg << "materialize: per-layer control queried off-grid at t=" << t;
    throw std::invalid_argument(msg.str());
  }
  Matrix w = params.omega[i];
  if (params.antisymmetric) w = antisymmetrize(w, params.gamma_shift);
  return {std::move(w), params.beta[i]};
}

PropagationPlan make_plan(const ControlParams& params, const TimeGrid& grid) {
  PropagationPlan plan;
  plan.grid = grid;
  plan.stencils.reserve(grid.steps);
  if (params.kind == ControlKind::Spline) {
    if (std::fabs(grid.final_time() - 1.0) > 1e-12)
      throw std::invalid_argument("make_plan: spline controls live on the reference domain [0,1]");
    SplineBasis basis = params.basis();
    for (int i = 0; i < grid.steps; ++i) {
      StepStencil st;
      for (const auto& [l, value] : basis.active(grid.time(i))) {
        st.index.push_back(l + basis.degree());
        st.value.push_back(value);
      }
      plan.stencils.push_back(std::move(st));
    }
  } else {
    if (static_cast<int>(params.omega.size()) != grid.steps)
      throw std::invalid_argument("make_plan: per-layer control count must equal step count");
    for (int i = 0; i < grid.steps; ++i)
      plan.stencils.push_back(StepStencil{{i}, {1.0}});
  }
  return plan;
}

LayerControls materialize_layers(const ControlParams& params, const PropagationPlan& plan) {
  LayerControls layers;
  layers.weight.reserve(plan.stencils.size());
  layers.bias.reserve(plan.stencils.size());
  for (const auto& st : plan.stencils) {
    Matrix w(params.width, params.width);
    Vector b(params.width);
    for (std::size_t j = 0; j < st.index.size(); ++j) {
      axpy(st.value[j], params.omega[st.index[j]], w);
      axpy(st.value[j], params.beta[st.index[j]], b);
    }
    if (params.antisymmetric) w = antisymmetrize(w, params.gamma_shift);
    layers.weight.push_back(std::move(w));
    layers.bias.push_back(std::move(b));
  }
  return layers;
}

namespace {

const char* kind_name(ControlKind kind) {
  return kind == ControlKind::Spline ? "spline" : "per_layer";
}

ControlKind kind_from_name(const std::string& name) {
  if (name == "spline") return ControlKind::Spline;
  if (name == "per_layer") return ControlKind::PerLayer;
  throw std::invalid_argument("unknown control kind '" + name + "'");
}

}  // namespace

std::string params_to_json(const ControlParams& params) {
  nlohmann::json j;
  j["kind"] = kind_name(params.kind);
  j["degree"] = params.degree;
  j["L"] = params.intervals;
  j["m"] = params.width;
  j["lambda"] = params.lambda;
  j["lambda_learnable"] = params.lambda_learnable;
  j["antisymmetric"] = params.antisymmetric;
  j["gamma_shift"] = params.gamma_shift;
  auto& om = j["omega"] = nlohmann::json::array();
  for (const auto& w : params.omega) om.push_back(w.raw());
  auto& be = j["beta"] = nlohmann::json::array();
  for (const auto& b : params.beta) be.push_back(b.raw());
  return j.dump(2) + "\n";
}

ControlParams params_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  const ControlKind kind = kind_from_name(j.at("kind").get<std::string>());
  const int width = j.at("m").get<int>();
  ControlParams p = kind == ControlKind::Spline
                        ? make_spline_control(j.at("degree").get<int>(),
                                              j.at("L").get<int>(), width)
                        : make_per_layer_control(j.at("L").get<int>(), width);
  p.lambda = j.at("lambda").get<double>();
  p.lambda_learnable = j.value("lambda_learnable", false);
  p.antisymmetric = j.at("antisymmetric").get<bool>();
  p.gamma_shift = j.at("gamma_shift").get<double>();
  const auto& om = j.at("omega");
  const auto& be = j.at("beta");
  if (om.size() != p.omega.size() || be.size() != p.beta.size())
    throw std::invalid_argument("params_from_json: coefficient count mismatch");
  for (std::size_t i = 0; i < p.omega.size(); ++i) {
    auto w = om[i].get<std::vector<double>>();
    if (w.size() != p.omega[i].raw().size())
      throw std::invalid_argument("params_from_json: omega entry size mismatch");
    p.omega[i].raw() = std::move(w);
    auto b = be[i].get<std::vector<double>>();
    if (b.size() != p.beta[i].raw().size())
      throw std::invalid_argument("params_from_json: beta entry size mismatch");
    p.beta[i].raw() = std::move(b);
  }
  return p;
}

void save_params(const ControlParams& params, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << params_to_json(params);
}

ControlParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return params_from_json(buf.str());
}

}  // namespace splinet
