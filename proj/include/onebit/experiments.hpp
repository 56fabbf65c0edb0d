#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "onebit/air.hpp"
#include "onebit/config.hpp"
#include "onebit/sync.hpp"

namespace onebit {

enum class ExperimentKind { kSindrSweep, kSyncRmse, kBerCurve };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kSindrSweep;
  // SINDR sweep: full grid delta_tau x delta_eps, then eps_sweep_values at
  // each eps_sweep_tau. Points appearing twice are evaluated once.
  std::vector<std::int64_t> delta_tau;
  std::vector<double> delta_eps;
  std::vector<std::int64_t> eps_sweep_tau;
  std::vector<double> eps_sweep_values;
  // RMSE and BER curves.
  std::vector<double> snr_db;
  std::vector<DacMode> dac_modes{DacMode::kOneBit, DacMode::kInfinite};
  std::vector<SyncMode> sync_modes{SyncMode::kSchmidlCox, SyncMode::kPerfect};
  std::string output;
  int threads = 1;

  /// Throws ConfigError for empty axes or a config the experiment cannot use.
  void validate(const SystemConfig& cfg) const;
};

struct SindrRow {
  std::int64_t delta_tau;
  double delta_eps;
  double analytical_sindr_db;
  double simulated_sindr_db;
  DacMode dac_mode;
};

struct RmseRow {
  double snr_db;
  DacMode dac_mode;
  double sto_rmse_samples;
  double cfo_rmse;
  // Not part of the CSV: RMSE of eps_est - eps without aliasing into (-1, 1].
  double cfo_rmse_unwrapped;
  // Not part of the CSV: share of (trial, UE) pairs whose residual STO falls
  // in the ISI-free window [-G/2 + L - 1, G/2].
  double isi_free_fraction;
};

struct BerRow {
  double snr_db;
  DacMode dac_mode;
  SyncMode sync_mode;
  double ber;
  double bit_errors;
  std::int64_t bits;
};

/// Analytical vs simulated SINDR with forced residual offsets (no
/// synchronization, genie effective gain). Needs L = 1 and S = {0..N-1};
/// cfg.D symbols per realization are measured, cfg.N0 is the noise level.
std::vector<SindrRow> run_sindr_sweep(const ExperimentSpec& spec, const SystemConfig& cfg);

/// STO/CFO estimation RMSE over trials x UEs per SNR point and DAC mode.
std::vector<RmseRow> run_sync_rmse(const ExperimentSpec& spec, const SystemConfig& cfg);

/// Uncoded QPSK BER: preamble -> sync -> P training -> gain -> D data symbols.
std::vector<BerRow> run_ber_curve(const ExperimentSpec& spec, const SystemConfig& cfg);

/// Timing metric of one (trial, UE) pair with the draws run_sync_rmse uses.
struct MetricTrace {
  SyncMetrics metrics;
  OffsetState offset;  // true offsets plus the Schmidl-Cox estimates
};
MetricTrace trace_sync_metric(const SystemConfig& cfg, int trial, int ue, double snr_db,
                              DacMode dac_mode);

// CSV with a header row, 9 significant digits, LF line endings.
void write_csv(std::ostream& out, const std::vector<SindrRow>& rows);
void write_csv(std::ostream& out, const std::vector<RmseRow>& rows);
void write_csv(std::ostream& out, const std::vector<BerRow>& rows);

/// SNR (dB) at which a curve sampled at increasing `snr_db` first drops to
/// `level`, by linear interpolation of log10(value) between neighbours.
/// Returns NaN if the curve never reaches the level.
double snr_at_level(const std::vector<double>& snr_db, const std::vector<double>& values,
                    double level);

/// Runs fn(i) for i in [0, count) on up to `threads` workers. fn must only
/// write to storage owned by index i.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace onebit
