#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "onebit/config.hpp"
#include "onebit/frame.hpp"

namespace onebit {

/// Schmidl-Cox correlation, energy and CP-averaged timing metric.
///
/// corr/energy are sampled on [lag_first - G, lag_last]; gamma on
/// [lag_first, lag_last]:
///   P(t)     = sum_{n=0}^{N/2-1} y[n+t] conj(y[n+N/2+t])
///   R(t)     = 1/2 sum_{n=0}^{N-1} |y[n+t]|^2
///   Gamma(t) = 1/(G+1) sum_{n=-G}^{0} |P(n+t)|^2 / R(n+t)^2
/// A lag with R = 0 contributes 0 to the average.
struct SyncMetrics {
  std::int64_t lag_first = 0;
  int G = 0;
  std::vector<Complex> corr;
  std::vector<double> energy;
  std::vector<double> gamma;

  std::int64_t lag_last() const { return lag_first + static_cast<std::int64_t>(gamma.size()) - 1; }
  Complex corr_at(std::int64_t t) const;
  double energy_at(std::int64_t t) const;
  double gamma_at(std::int64_t t) const;
};

/// Search lags [-(N+G/2), N+G/2], matching the STO prior.
std::pair<std::int64_t, std::int64_t> default_search_window(const SystemConfig& cfg);

/// Evaluates the metrics with O(1) sliding updates per lag. Throws RangeError
/// when `y` does not hold samples [lag_first - G, lag_last + N).
SyncMetrics correlate(const SampleStream& y, std::int64_t lag_first, std::int64_t lag_last,
                      const SystemConfig& cfg);

/// argmax_t Gamma(t), smallest lag on ties.
std::int64_t estimate_sto(const SyncMetrics& m);

/// (1/pi) arg P(tau_est), in (-1, 1].
double estimate_cfo(const SyncMetrics& m, std::int64_t tau_est);

/// r[n] = exp(+j 2 pi eps_est n / N) y[n + tau_est] over every n the input covers.
SampleStream compensate(const SampleStream& y, std::int64_t tau_est, double eps_est,
                        const SystemConfig& cfg);

/// Same, restricted to [first, last); throws RangeError when not covered.
SampleStream compensate(const SampleStream& y, std::int64_t tau_est, double eps_est,
                        const SystemConfig& cfg, std::int64_t first, std::int64_t last);

/// "tau,gamma" CSV trace of the timing metric.
void write_metric_csv(std::ostream& out, const SyncMetrics& m);

}  // namespace onebit
