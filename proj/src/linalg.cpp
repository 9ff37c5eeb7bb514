#include "splinet/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace splinet {

namespace {

void check_same_size(const Vector& a, const Vector& b, const char* op) {
  if (a.size() != b.size()) {
    std::ostringstream msg;
    msg << op << ": length mismatch " << a.size() << " vs " << b.size();
    throw std::invalid_argument(msg.str());
  }
}

void check_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs "
        << b.rows() << "x" << b.cols();
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

Vector add(const Vector& a, const Vector& b) {
  check_same_size(a, b, "add");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector sub(const Vector& a, const Vector& b) {
  check_same_size(a, b, "sub");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector scale(const Vector& a, double s) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

void axpy(double alpha, const Vector& x, Vector& y) {
  check_same_size(x, y, "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

double dot(const Vector& a, const Vector& b) {
  check_same_size(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

Matrix add(const Matrix& a, const Matrix& b) {
  check_same_shape(a, b, "add");
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.raw().size(); ++i) r.raw()[i] = a.raw()[i] + b.raw()[i];
  return r;
}

Matrix sub(const Matrix& a, const Matrix& b) {
  check_same_shape(a, b, "sub");
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.raw().size(); ++i) r.raw()[i] = a.raw()[i] - b.raw()[i];
  return r;
}

Matrix scale(const Matrix& a, double s) {
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.raw().size(); ++i) r.raw()[i] = a.raw()[i] * s;
  return r;
}

void axpy(double alpha, const Matrix& x, Matrix& y) {
  check_same_shape(x, y, "axpy");
  for (std::size_t i = 0; i < x.raw().size(); ++i) y.raw()[i] += alpha * x.raw()[i];
}

Matrix transpose(const Matrix& a) {
  Matrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

double frobenius_sq(const Matrix& a) {
  double s = 0.0;
  for (double v : a.raw()) s += v * v;
  return s;
}

double trace(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) s += a(i, i);
  return s;
}

Vector matvec(const Matrix& a, const Vector& v) {
  if (a.cols() != v.size()) {
    std::ostringstream msg;
    msg << "matvec: " << a.rows() << "x" << a.cols() << " with vector of length "
        << v.size();
    throw std::invalid_argument(msg.str());
  }
  Vector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

Vector matvec_transposed(const Matrix& a, const Vector& v) {
  if (a.rows() != v.size()) {
    std::ostringstream msg;
    msg << "matvec_transposed: " << a.rows() << "x" << a.cols()
        << " with vector of length " << v.size();
    throw std::invalid_argument(msg.str());
  }
  Vector r(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[j] += a(i, j) * v[i];
  return r;
}

Vector hadamard(const Vector& a, const Vector& b) {
  check_same_size(a, b, "hadamard");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

Matrix outer(const Vector& a, const Vector& b) {
  Matrix r(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r(i, j) = a[i] * b[j];
  return r;
}

namespace {

double sign_like(double magnitude, double carrier) {
  return carrier >= 0.0 ? std::fabs(magnitude) : -std::fabs(magnitude);
}

// Householder similarity reduction to upper Hessenberg form, in place.
void reduce_to_hessenberg(std::vector<double>& h, int n) {
  auto at = [&](int i, int j) -> double& { return h[i * n + j]; };
  std::vector<double> v(n), work(n);
  for (int k = 0; k + 2 < n; ++k) {
    double col_norm = 0.0;
    for (int i = k + 1; i < n; ++i) col_norm += at(i, k) * at(i, k);
    col_norm = std::sqrt(col_norm);
    if (col_norm == 0.0) continue;
    double alpha = -sign_like(col_norm, at(k + 1, k));
    double vnorm_sq = 0.0;
    for (int i = k + 1; i < n; ++i) {
      v[i] = at(i, k);
      if (i == k + 1) v[i] -= alpha;
      vnorm_sq += v[i] * v[i];
    }
    if (vnorm_sq == 0.0) continue;
    double beta = 2.0 / vnorm_sq;
    // left: rows k+1..n-1
    for (int j = k; j < n; ++j) {
      double s = 0.0;
      for (int i = k + 1; i < n; ++i) s += v[i] * at(i, j);
      s *= beta;
      for (int i = k + 1; i < n; ++i) at(i, j) -= s * v[i];
    }
    // right: columns k+1..n-1
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = k + 1; j < n; ++j) s += at(i, j) * v[j];
      s *= beta;
      for (int j = k + 1; j < n; ++j) at(i, j) -= s * v[j];
    }
  }
  // explicit zeros below the subdiagonal
  for (int i = 2; i < n; ++i)
    for (int j = 0; j + 1 < i; ++j) at(i, j) = 0.0;
}

std::string matrix_to_string(const Matrix& a) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    os << (i == 0 ? "[" : " [");
    for (std::size_t j = 0; j < a.cols(); ++j) os << a(i, j) << (j + 1 < a.cols() ? ", " : "");
    os << "]" << (i + 1 < a.rows() ? ";" : "");
  }
  os << "]";
  return os.str();
}

}  // namespace

std::vector<std::complex<double>> eigenvalues(const Matrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("eigenvalues: matrix must be square");
  const int n = static_cast<int>(a.rows());
  if (n == 0) return {};

  std::vector<double> hbuf(a.raw());
  reduce_to_hessenberg(hbuf, n);
  auto h = [&](int i, int j) -> double& { return hbuf[i * n + j]; };

  std::vector<std::complex<double>> eig(n);
  const double eps = std::numeric_limits<double>::epsilon();
  const int sweep_cap = 100 * n;
  int sweeps = 0;

  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::fabs(h(i, j));
  if (anorm == 0.0) anorm = 1.0;

  int nn = n - 1;
  double shift_total = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l;
    do {
      // find a negligible subdiagonal entry to split the active block
      for (l = nn; l >= 1; --l) {
        double s = std::fabs(h(l - 1, l - 1)) + std::fabs(h(l, l));
        if (s == 0.0) s = anorm;
        if (std::fabs(h(l, l - 1)) <= eps * s) {
          h(l, l - 1) = 0.0;
          break;
        }
      }
      double x = h(nn, nn);
      if (l == nn) {
        eig[nn] = {x + shift_total, 0.0};
        --nn;
      } else {
        double y = h(nn - 1, nn - 1);
        double w = h(nn, nn - 1) * h(nn - 1, nn);
        if (l == nn - 1) {
          // eigenvalues of the trailing 2x2 block
          double p = 0.5 * (y - x);
          double q = p * p + w;
          double z = std::sqrt(std::fabs(q));
          x += shift_total;
          if (q >= 0.0) {
            z = p + sign_like(z, p);
            double r1 = x + z;
            double r2 = (z != 0.0) ? x - w / z : r1;
            eig[nn - 1] = {r1, 0.0};
            eig[nn] = {r2, 0.0};
          } else {
            eig[nn - 1] = {x + p, z};
            eig[nn] = {x + p, -z};
          }
          nn -= 2;
        } else {
          if (++sweeps > sweep_cap) {
            throw eigensolver_error("eigenvalues: QR iteration did not converge within " +
                                    std::to_string(sweep_cap) + " sweeps for matrix " +
                                    matrix_to_string(a));
          }
          if (its == 10 || its == 20) {
            // exceptional shift to break symmetric stalls
            shift_total += x;
            for (int i = 0; i <= nn; ++i) h(i, i) -= x;
            double s = std::fabs(h(nn, nn - 1)) + std::fabs(h(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          // shift from the trailing 2x2 block (Francis double shift); locate
          // two consecutive small subdiagonals to start the bulge chase
          double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
          int m;
          for (m = nn - 2; m >= l; --m) {
            z = h(m, m);
            double rr = x - z;
            double ss = y - z;
            p = (rr * ss - w) / h(m + 1, m) + h(m, m + 1);
            q = h(m + 1, m + 1) - z - rr - ss;
            r = h(m + 2, m + 1);
            double norm = std::fabs(p) + std::fabs(q) + std::fabs(r);
            p /= norm;
            q /= norm;
            r /= norm;
            if (m == l) break;
            double u = std::fabs(h(m, m - 1)) * (std::fabs(q) + std::fabs(r));
            double v = std::fabs(p) * (std::fabs(h(m - 1, m - 1)) + std::fabs(z) +
                                       std::fabs(h(m + 1, m + 1)));
            if (u <= eps * v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            h(i, i - 2) = 0.0;
            if (i != m + 2) h(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = h(k, k - 1);
              q = h(k + 1, k - 1);
              r = (k != nn - 1) ? h(k + 2, k - 1) : 0.0;
              x = std::fabs(p) + std::fabs(q) + std::fabs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            double s = sign_like(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) h(k, k - 1) = -h(k, k - 1);
            } else {
              h(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              double pp = h(k, j) + q * h(k + 1, j);
              if (k != nn - 1) {
                pp += r * h(k + 2, j);
                h(k + 2, j) -= pp * z;
              }
              h(k + 1, j) -= pp * y;
              h(k, j) -= pp * x;
            }
            int mmin = std::min(nn, k + 3);
            for (int i = l; i <= mmin; ++i) {
              double pp = x * h(i, k) + y * h(i, k + 1);
              if (k != nn - 1) {
                pp += z * h(i, k + 2);
                h(i, k + 2) -= pp * r;
              }
              h(i, k + 1) -= pp * q;
              h(i, k) -= pp;
            }
          }
        }
      }
    } while (l < nn - 1);
  }
  return eig;
}

}  // namespace splinet
