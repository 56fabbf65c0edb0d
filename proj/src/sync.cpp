#include "onebit/sync.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "onebit/error.hpp"

namespace onebit {
namespace {

// Sliding updates are re-anchored with a direct sum at this period.
constexpr std::int64_t kRefreshPeriod = 512;

Complex direct_corr(const Complex* y, int half) {
  Complex acc(0.0, 0.0);
  for (int n = 0; n < half; ++n) acc += y[n] * std::conj(y[n + half]);
  return acc;
}

double direct_energy(const Complex* y, int N) {
  double acc = 0.0;
  for (int n = 0; n < N; ++n) acc += std::norm(y[n]);
  return 0.5 * acc;
}

}  // namespace

Complex SyncMetrics::corr_at(std::int64_t t) const {
  const std::int64_t idx = t - (lag_first - G);
  if (idx < 0 || idx >= static_cast<std::int64_t>(corr.size())) {
    throw RangeError("SyncMetrics: lag " + std::to_string(t) + " outside the evaluated range");
  }
  return corr[static_cast<std::size_t>(idx)];
}

double SyncMetrics::energy_at(std::int64_t t) const {
  const std::int64_t idx = t - (lag_first - G);
  if (idx < 0 || idx >= static_cast<std::int64_t>(energy.size())) {
    throw RangeError("SyncMetrics: lag " + std::to_string(t) + " outside the evaluated range");
  }
  return energy[static_cast<std::size_t>(idx)];
}

double SyncMetrics::gamma_at(std::int64_t t) const {
  const std::int64_t idx = t - lag_first;
  if (idx < 0 || idx >= static_cast<std::int64_t>(gamma.size())) {
    throw RangeError("SyncMetrics: lag " + std::to_string(t) + " outside the search window");
  }
  return gamma[static_cast<std::size_t>(idx)];
}

std::pair<std::int64_t, std::int64_t> default_search_window(const SystemConfig& cfg) {
  const std::int64_t span = cfg.N + cfg.G / 2;
  return {-span, span};
}

SyncMetrics correlate(const SampleStream& y, std::int64_t lag_first, std::int64_t lag_last,
                      const SystemConfig& cfg) {
  if (y.samples.rows() != 1) throw DimensionError("correlate: expected a single-row stream");
  if (lag_last < lag_first) throw RangeError("correlate: empty search window");
  const int N = cfg.N;
  const int half = N / 2;
  const int G = cfg.G;
  const std::int64_t t0 = lag_first - G;
  if (!y.covers(t0, lag_last + N)) {
    throw RangeError("correlate: window [" + std::to_string(lag_first) + ", " +
                     std::to_string(lag_last) + "] needs samples [" + std::to_string(t0) + ", " +
                     std::to_string(lag_last + N) + "), stream holds [" +
                     std::to_string(y.begin()) + ", " + std::to_string(y.end()) + ")");
  }

  SyncMetrics m;
  m.lag_first = lag_first;
  m.G = G;
  const std::int64_t count = lag_last - t0 + 1;
  m.corr.resize(static_cast<std::size_t>(count));
  m.energy.resize(static_cast<std::size_t>(count));

  const Complex* base = y.samples.data() + (t0 - y.origin);
  Complex p(0.0, 0.0);
  double r = 0.0;
  for (std::int64_t i = 0; i < count; ++i) {
    const Complex* s = base + i;
    if (i % kRefreshPeriod == 0) {
      p = direct_corr(s, half);
      r = direct_energy(s, N);
    } else {
      const Complex* prev = s - 1;
      p += s[half - 1] * std::conj(s[N - 1]) - prev[0] * std::conj(prev[half]);
      r += 0.5 * (std::norm(s[N - 1]) - std::norm(prev[0]));
    }
    m.corr[static_cast<std::size_t>(i)] = p;
    m.energy[static_cast<std::size_t>(i)] = r;
  }

  std::vector<double> ratio(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < ratio.size(); ++i) {
    const double e = m.energy[i];
    ratio[i] = e > 0.0 ? std::norm(m.corr[i]) / (e * e) : 0.0;
  }
  m.gamma.resize(static_cast<std::size_t>(lag_last - lag_first + 1));
  for (std::size_t j = 0; j < m.gamma.size(); ++j) {
    double acc = 0.0;
    for (int n = 0; n <= G; ++n) acc += ratio[j + static_cast<std::size_t>(n)];
    m.gamma[j] = acc / (G + 1);
  }
  return m;
}

std::int64_t estimate_sto(const SyncMetrics& m) {
  if (m.gamma.empty()) throw RangeError("estimate_sto: empty search window");
  std::size_t best = 0;
  for (std::size_t j = 1; j < m.gamma.size(); ++j) {
    if (m.gamma[j] > m.gamma[best]) best = j;
  }
  return m.lag_first + static_cast<std::int64_t>(best);
}

double estimate_cfo(const SyncMetrics& m, std::int64_t tau_est) {
  double angle = std::arg(m.corr_at(tau_est));
  if (angle <= -kPi) angle = kPi;
  return angle / kPi;
}

SampleStream compensate(const SampleStream& y, std::int64_t tau_est, double eps_est,
                        const SystemConfig& cfg) {
  return compensate(y, tau_est, eps_est, cfg, y.begin() - tau_est, y.end() - tau_est);
}

SampleStream compensate(const SampleStream& y, std::int64_t tau_est, double eps_est,
                        const SystemConfig& cfg, std::int64_t first, std::int64_t last) {
  if (y.samples.rows() != 1) throw DimensionError("compensate: expected a single-row stream");
  if (first > last || !y.covers(first + tau_est, last + tau_est)) {
    throw RangeError("compensate: range [" + std::to_string(first) + ", " + std::to_string(last) +
                     ") shifted by " + std::to_string(tau_est) + " is not covered by the stream");
  }
  SampleStream r;
  r.origin = first;
  r.samples = y.samples.middleCols(first + tau_est - y.origin, last - first);
  if (eps_est != 0.0) {
    for (Eigen::Index c = 0; c < r.samples.cols(); ++c) {
      const double n = static_cast<double>(first + c);
      r.samples(0, c) *= std::polar(1.0, 2.0 * kPi * eps_est * n / cfg.N);
    }
  }
  return r;
}

void write_metric_csv(std::ostream& out, const SyncMetrics& m) {
  out << "tau,gamma\n";
  char buf[64];
  for (std::size_t j = 0; j < m.gamma.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%lld,%.9g\n",
                  static_cast<long long>(m.lag_first + static_cast<std::int64_t>(j)), m.gamma[j]);
    out << buf;
  }
}

}  // namespace onebit
