// Independent reference computations used only by the tests. Nothing here
// calls into the transform, correlation or precoding code it checks.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

// O(N^2) unitary DFT, sign = -1 forward, +1 inverse.
inline Eigen::VectorXcd naive_dft(const Eigen::VectorXcd& v, int sign = -1) {
  const auto n = v.size();
  Eigen::VectorXcd out(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Complex acc(0.0, 0.0);
    for (Eigen::Index m = 0; m < n; ++m) {
      const double angle = sign * 2.0 * kPi * static_cast<double>((k * m) % n) / static_cast<double>(n);
      acc += v[m] * std::polar(1.0, angle);
    }
    out[k] = acc / std::sqrt(static_cast<double>(n));
  }
  return out;
}

// Direct O(N) evaluation of the correlation, energy and CP-averaged metric
// at one lag; y is indexed from `origin`.
struct DirectMetric {
  Complex corr;
  double energy;
};

inline DirectMetric direct_metric(const Eigen::RowVectorXcd& y, std::int64_t origin, std::int64_t t, int N) {
  DirectMetric m{{0.0, 0.0}, 0.0};
  for (int n = 0; n < N / 2; ++n) {
    m.corr += y[t + n - origin] * std::conj(y[t + n + N / 2 - origin]);
  }
  for (int n = 0; n < N; ++n) m.energy += 0.5 * std::norm(y[t + n - origin]);
  return m;
}

inline double direct_gamma(const Eigen::RowVectorXcd& y, std::int64_t origin, std::int64_t t, int N, int G) {
  double acc = 0.0;
  for (int n = -G; n <= 0; ++n) {
    const auto m = direct_metric(y, origin, t + n, N);
    acc += m.energy > 0.0 ? std::norm(m.corr) / (m.energy * m.energy) : 0.0;
  }
  return acc / (G + 1);
}

// Gaussian tail Q(x).
inline double qfunc(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace oracle
