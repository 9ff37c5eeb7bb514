#pragma once

#include <utility>
#include <vector>

namespace splinet {

// Uniform B-spline basis of degree d on [0, T], built on the L+1 knots
// tau_0 = 0 < tau_1 < ... < tau_L = T with spacing T/L. The knot grid is
// extended uniformly by d knots on each side, giving basis indices
// l in {-d, ..., L-1} (L+d functions in total). Degree 0 is the indicator
// on [tau_l, tau_{l+1}); higher degrees follow the Cox-de Boor recursion.
// t = T is evaluated as the left limit, so the final network layer is
// covered by the last interval.
class SplineBasis {
 public:
  SplineBasis(int degree, int intervals, double final_time = 1.0);

  int degree() const { return degree_; }
  int intervals() const { return intervals_; }
  double final_time() const { return final_time_; }

  // number of basis functions, L + d
  int count() const { return intervals_ + degree_; }
  int min_index() const { return -degree_; }
  int max_index() const { return intervals_ - 1; }

  // knot tau_l for l in [-d, L+d]
  double knot(int l) const;

  // interval index k0 in {0, ..., L-1} with tau_k0 <= t < tau_{k0+1};
  // t = T maps to L-1. Throws outside [0, T].
  int find_interval(double t) const;

  // B^d_l(t); throws if l is outside {-d, ..., L-1}.
  double eval(int l, double t) const;

  // the d+1 pairs (l, B^d_l(t)) that are non-zero at t, ascending l.
  std::vector<std::pair<int, double>> active(double t) const;

 private:
  double eval_in_interval(int deg, int l, double t, int k0) const;

  int degree_;
  int intervals_;
  double final_time_;
};

// Active basis values tabulated at a fixed list of times, reused across
// training iterations. Entry i holds the interval index of times[i] and the
// d+1 active values for l = k0-d, ..., k0.
struct BasisTable {
  int degree = 0;
  std::vector<int> interval;                 // k0 per time
  std::vector<std::vector<double>> values;   // d+1 values per time
};

BasisTable tabulate(const SplineBasis& basis, const std::vector<double>& times);

}  // namespace splinet
