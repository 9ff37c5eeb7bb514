#include "splinet/bspline.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace splinet {

SplineBasis::SplineBasis(int degree, int intervals, double final_time)
    : degree_(degree), intervals_(intervals), final_time_(final_time) {
  if (degree < 0) throw std::invalid_argument("SplineBasis: degree must be >= 0");
  if (intervals < 1) throw std::invalid_argument("SplineBasis: need at least one knot interval");
  if (!(final_time > 0.0)) throw std::invalid_argument("SplineBasis: final time must be positive");
}

double SplineBasis::knot(int l) const {
  // same expression as TimeGrid::time so that aligned knots and step times
  // are bit-identical
  return static_cast<double>(l) / static_cast<double>(intervals_) * final_time_;
}

int SplineBasis::find_interval(double t) const {
  const double T = final_time_;
  const double slack = 1e-12 * T;
  if (t < -slack || t > T + slack) {
    std::ostringstream msg;
    msg << "find_interval: t=" << t << " outside [0, " << T << "]";
    throw std::out_of_range(msg.str());
  }
  int k0 = static_cast<int>(std::floor(t / T * intervals_));
  if (k0 < 0) k0 = 0;
  if (k0 > intervals_ - 1) k0 = intervals_ - 1;
  // correct rounding against the stored knot values
  while (k0 > 0 && t < knot(k0)) --k0;
  while (k0 < intervals_ - 1 && t >= knot(k0 + 1)) ++k0;
  return k0;
}

double SplineBasis::eval_in_interval(int deg, int l, double t, int k0) const {
  if (deg == 0) return l == k0 ? 1.0 : 0.0;
  // zero outside the support [tau_l, tau_{l+deg+1})
  if (k0 < l || k0 > l + deg) return 0.0;
  double left = (t - knot(l)) / (knot(l + deg) - knot(l)) *
                eval_in_interval(deg - 1, l, t, k0);
  double right = (knot(l + deg + 1) - t) / (knot(l + deg + 1) - knot(l + 1)) *
                 eval_in_interval(deg - 1, l + 1, t, k0);
  return left + right;
}

double SplineBasis::eval(int l, double t) const {
  if (l < min_index() || l > max_index()) {
    std::ostringstream msg;
    msg << "eval: basis index " << l << " outside [" << min_index() << ", "
        << max_index() << "]";
    throw std::out_of_range(msg.str());
  }
  return eval_in_interval(degree_, l, t, find_interval(t));
}

std::vector<std::pair<int, double>> SplineBasis::active(double t) const {
  const int k0 = find_interval(t);
  std::vector<std::pair<int, double>> out;
  out.reserve(degree_ + 1);
  for (int l = k0 - degree_; l <= k0; ++l)
    out.emplace_back(l, eval_in_interval(degree_, l, t, k0));
  return out;
}

BasisTable tabulate(const SplineBasis& basis, const std::vector<double>& times) {
  BasisTable table;
  table.degree = basis.degree();
  table.interval.reserve(times.size());
  table.values.reserve(times.size());
  for (double t : times) {
    const int k0 = basis.find_interval(t);
    auto act = basis.active(t);
    std::vector<double> vals(act.size());
    for (std::size_t j = 0; j < act.size(); ++j) vals[j] = act[j].second;
    table.interval.push_back(k0);
    table.values.push_back(std::move(vals));
  }
  return table;
}

}  // namespace splinet
