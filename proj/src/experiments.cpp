#include "onebit/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "onebit/air.hpp"
#include "onebit/bussgang.hpp"
#include "onebit/channel.hpp"
#include "onebit/error.hpp"
#include "onebit/frame.hpp"
#include "onebit/precoder.hpp"
#include "onebit/receiver.hpp"
#include "onebit/sindr.hpp"
#include "onebit/sync.hpp"

namespace onebit {
namespace {

// Sub-stream tags inside one trial.
constexpr std::uint64_t kChannelStream = 1;
constexpr std::uint64_t kOffsetStream = 2;
constexpr std::uint64_t kFrameStream = 3;
constexpr std::uint64_t kPaddingStream = 4;
constexpr std::uint64_t kNoiseStreamBase = 100;

struct Point {
  std::int64_t dtau;
  double deps;
};

std::vector<Point> sweep_points(const ExperimentSpec& spec) {
  std::vector<Point> pts;
  auto add = [&](std::int64_t t, double e) {
    for (const auto& p : pts) {
      if (p.dtau == t && p.deps == e) return;
    }
    pts.push_back({t, e});
  };
  for (double e : spec.delta_eps) {
    for (std::int64_t t : spec.delta_tau) add(t, e);
  }
  for (std::int64_t t : spec.eps_sweep_tau) {
    for (double e : spec.eps_sweep_values) add(t, e);
  }
  return pts;
}

SymbolGrid grid_rows(const SymbolGrid& g, int first_symbol, int count) {
  SymbolGrid out;
  out.first_symbol = first_symbol;
  out.subcarriers = g.subcarriers;
  out.values = g.values.middleRows(first_symbol - g.first_symbol, count);
  return out;
}

SampleStream add_scaled_noise(const SampleStream& clean, const CVector& unit_noise, double N0) {
  SampleStream y = clean;
  if (N0 > 0.0) y.samples.row(0) += std::sqrt(N0) * unit_noise.transpose();
  return y;
}

double noise_level(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kSindrSweep: return "sindr-sweep";
    case ExperimentKind::kSyncRmse: return "sync-rmse";
    case ExperimentKind::kBerCurve: return "ber-curve";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  if (text == "sindr-sweep" || text == "sindr_sweep") return ExperimentKind::kSindrSweep;
  if (text == "sync-rmse" || text == "sync_rmse") return ExperimentKind::kSyncRmse;
  if (text == "ber-curve" || text == "ber_curve") return ExperimentKind::kBerCurve;
  throw ConfigError("unknown experiment '" + std::string(text) +
                    "' (expected sindr-sweep, sync-rmse or ber-curve)");
}

void ExperimentSpec::validate(const SystemConfig& cfg) const {
  cfg.validate();
  if (dac_modes.empty()) throw ConfigError("experiment: dac_modes must be nonempty");
  if (threads < 1) throw ConfigError("experiment: threads must be at least 1");
  switch (kind) {
    case ExperimentKind::kSindrSweep: {
      if (cfg.L != 1) throw ConfigError("sindr-sweep: requires a frequency-flat channel (L = 1)");
      if (!cfg.full_band()) throw ConfigError("sindr-sweep: requires S = {0, ..., N-1}");
      if (cfg.D < 1) throw ConfigError("sindr-sweep: D (measured symbols) must be at least 1");
      const bool grid = !delta_tau.empty() && !delta_eps.empty();
      const bool sweep = !eps_sweep_tau.empty() && !eps_sweep_values.empty();
      if (!grid && !sweep) throw ConfigError("sindr-sweep: delta_tau/delta_eps axes are empty");
      const std::int64_t limit = cfg.N + cfg.G / 2;
      for (const auto& p : sweep_points(*this)) {
        if (std::llabs(p.dtau) > limit) {
          throw ConfigError("sindr-sweep: |delta_tau| must not exceed N + G/2 = " + std::to_string(limit));
        }
        if (!(std::abs(p.deps) < 1.0)) throw ConfigError("sindr-sweep: |delta_eps| must be below 1");
      }
      break;
    }
    case ExperimentKind::kSyncRmse:
      if (snr_db.empty()) throw ConfigError("sync-rmse: snr_db axis is empty");
      break;
    case ExperimentKind::kBerCurve:
      if (snr_db.empty()) throw ConfigError("ber-curve: snr_db axis is empty");
      if (sync_modes.empty()) throw ConfigError("ber-curve: sync_modes must be nonempty");
      if (cfg.D < 1) throw ConfigError("ber-curve: D must be at least 1");
      if (cfg.P < 1 && cfg.gain_mode == GainMode::kLeastSquares) {
        throw ConfigError("ber-curve: LS gain estimation needs P >= 1");
      }
      break;
  }
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  const int workers = std::max(1, std::min(threads, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<SindrRow> run_sindr_sweep(const ExperimentSpec& spec, const SystemConfig& cfg) {
  spec.validate(cfg);
  const auto points = sweep_points(spec);
  const auto& modes = spec.dac_modes;
  const std::size_t cells = modes.size() * points.size();
  const int N = cfg.N;
  const int G = cfg.G;
  const int D = cfg.D;

  // Per realization: [mode][point] sums over UEs of linear analytical and simulated SINDR.
  std::vector<std::vector<double>> analytical(static_cast<std::size_t>(cfg.trials));
  std::vector<std::vector<double>> simulated(static_cast<std::size_t>(cfg.trials));

  parallel_for(cfg.trials, spec.threads, [&](int trial) {
    RngStream rng(cfg.master_seed, static_cast<std::uint64_t>(trial));
    RngStream ch_rng = rng.child(kChannelStream);
    const ChannelRealization ch = draw_channel(cfg, ch_rng);
    const PrecoderSet ps = zf_precode(ch, cfg);
    const CMatrix C_x = flat_covariance(ps);

    // Symbols 0 and D+1 are guards; windows 1..D are measured.
    RngStream frame_rng = rng.child(kFrameStream);
    FramePlan plan;
    plan.D = D;
    for (int i = 0; i < D + 2; ++i) plan.symbols.push_back(random_symbol(cfg, frame_rng));

    const std::int64_t first = (N + G) - G / 2;
    const std::int64_t last = static_cast<std::int64_t>(D) * (N + G) - G / 2 + N;
    std::vector<SymbolGrid> truth;
    std::vector<CVector> noise;
    for (int u = 0; u < cfg.U; ++u) truth.push_back(truth_grid(plan, u, cfg.used_subcarriers, 1, D));

    auto& a_sum = analytical[static_cast<std::size_t>(trial)];
    auto& s_sum = simulated[static_cast<std::size_t>(trial)];
    a_sum.assign(cells, 0.0);
    s_sum.assign(cells, 0.0);

    for (std::size_t m = 0; m < modes.size(); ++m) {
      const BussgangModel bm =
          modes[m] == DacMode::kOneBit ? BussgangModel::one_bit(C_x) : BussgangModel::identity(C_x);
      const SampleStream tx = modulate_frame(plan, ps, cfg, modes[m]);
      for (int u = 0; u < cfg.U; ++u) {
        const auto [lo, hi] = valid_receive_range(tx, 1, 0);
        const SampleStream clean = propagate_ue(tx, ch, u, OffsetState{}, cfg, lo, hi);
        if (noise.size() <= static_cast<std::size_t>(u)) {
          RngStream noise_rng = rng.child(kNoiseStreamBase + static_cast<std::uint64_t>(u));
          noise.push_back(sample_cn(noise_rng, 1.0, clean.samples.cols()));
        }
        const SampleStream y = add_scaled_noise(clean, noise[static_cast<std::size_t>(u)], cfg.N0);
        const CVector h = ch.taps.front().row(u).transpose();
        const auto& sent = truth[static_cast<std::size_t>(u)];
        const double sent_power = sent.values.squaredNorm();

        for (std::size_t p = 0; p < points.size(); ++p) {
          const auto& pt = points[p];
          const SindrReport rep = sindr(h, bm, ps, u, pt.dtau, pt.deps, cfg.N0, cfg);
          const SampleStream r = compensate(y, pt.dtau, pt.deps, cfg, first, last);
          const SymbolGrid got = extract_windows(r, cfg, 1, D);
          const Complex c = rep.beta * rep.desired_gain;
          double err = 0.0;
          for (int i = 1; i <= D; ++i) {
            for (std::size_t j = 0; j < got.subcarriers.size(); ++j) {
              const int k = got.subcarriers[j];
              const Complex coeff = c * std::polar(1.0, phi(pt.dtau, pt.deps, k, i, N, G));
              err += std::norm(got.at(i, j) - coeff * sent.at(i, j));
            }
          }
          const std::size_t cell = m * points.size() + p;
          a_sum[cell] += rep.sindr;
          s_sum[cell] += std::norm(c) * sent_power / err;
        }
      }
    }
  });

  std::vector<SindrRow> rows;
  rows.reserve(cells);
  const double samples = static_cast<double>(cfg.trials) * cfg.U;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    for (std::size_t p = 0; p < points.size(); ++p) {
      const std::size_t cell = m * points.size() + p;
      double a = 0.0;
      double s = 0.0;
      for (int t = 0; t < cfg.trials; ++t) {
        a += analytical[static_cast<std::size_t>(t)][cell];
        s += simulated[static_cast<std::size_t>(t)][cell];
      }
      rows.push_back({points[p].dtau, points[p].deps, linear_to_db(a / samples),
                      linear_to_db(s / samples), modes[m]});
    }
  }
  return rows;
}

std::vector<RmseRow> run_sync_rmse(const ExperimentSpec& spec, const SystemConfig& cfg) {
  spec.validate(cfg);
  const auto& modes = spec.dac_modes;
  const std::size_t n_snr = spec.snr_db.size();
  const std::size_t cells = modes.size() * n_snr;
  const auto [lag_lo, lag_hi] = default_search_window(cfg);
  const std::int64_t isi_lo = -cfg.G / 2 + cfg.L - 1;
  const std::int64_t isi_hi = cfg.G / 2;

  struct TrialStats {
    std::vector<double> sto_sq, cfo_sq, cfo_raw_sq, in_window;
  };
  std::vector<TrialStats> stats(static_cast<std::size_t>(cfg.trials));

  SystemConfig preamble_cfg = cfg;
  preamble_cfg.P = 0;
  preamble_cfg.D = 0;

  parallel_for(cfg.trials, spec.threads, [&](int trial) {
    RngStream rng(cfg.master_seed, static_cast<std::uint64_t>(trial));
    RngStream ch_rng = rng.child(kChannelStream);
    RngStream off_rng = rng.child(kOffsetStream);
    RngStream frame_rng = rng.child(kFrameStream);
    const ChannelRealization ch = draw_channel(cfg, ch_rng);
    const PrecoderSet ps = zf_precode(ch, cfg);
    const auto offsets = draw_offsets(cfg, off_rng);
    const FramePlan plan = build_frame(preamble_cfg, frame_rng);

    auto& st = stats[static_cast<std::size_t>(trial)];
    st.sto_sq.assign(cells, 0.0);
    st.cfo_sq.assign(cells, 0.0);
    st.cfo_raw_sq.assign(cells, 0.0);
    st.in_window.assign(cells, 0.0);
    std::vector<CVector> noise;

    for (std::size_t m = 0; m < modes.size(); ++m) {
      RngStream pad_rng = rng.child(kPaddingStream);
      const SampleStream tx = guarded_frame(plan, ps, preamble_cfg, modes[m], pad_rng);
      for (int u = 0; u < cfg.U; ++u) {
        const auto& off = offsets[static_cast<std::size_t>(u)];
        const SampleStream clean =
            propagate_ue(tx, ch, u, off, cfg, lag_lo - cfg.G, lag_hi + cfg.N);
        if (noise.size() <= static_cast<std::size_t>(u)) {
          RngStream noise_rng = rng.child(kNoiseStreamBase + static_cast<std::uint64_t>(u));
          noise.push_back(sample_cn(noise_rng, 1.0, clean.samples.cols()));
        }
        for (std::size_t s = 0; s < n_snr; ++s) {
          const SampleStream y =
              add_scaled_noise(clean, noise[static_cast<std::size_t>(u)], noise_level(spec.snr_db[s]));
          const SyncMetrics metrics = correlate(y, lag_lo, lag_hi, cfg);
          const std::int64_t tau_est = estimate_sto(metrics);
          const double eps_est = estimate_cfo(metrics, tau_est);
          const double dtau = static_cast<double>(tau_est - off.tau);
          // The estimator only resolves eps modulo 2; an estimate that lands
          // across the +-1 boundary is scored by its aliased distance.
          const double raw = eps_est - off.eps;
          const double deps = std::remainder(raw, 2.0);
          const std::size_t cell = m * n_snr + s;
          st.sto_sq[cell] += dtau * dtau;
          st.cfo_sq[cell] += deps * deps;
          st.cfo_raw_sq[cell] += raw * raw;
          const std::int64_t residual = tau_est - off.tau;
          if (residual >= isi_lo && residual <= isi_hi) st.in_window[cell] += 1.0;
        }
      }
    }
  });

  std::vector<RmseRow> rows;
  const double count = static_cast<double>(cfg.trials) * cfg.U;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    for (std::size_t s = 0; s < n_snr; ++s) {
      const std::size_t cell = m * n_snr + s;
      double sto = 0.0, cfo = 0.0, cfo_raw = 0.0, inside = 0.0;
      for (const auto& st : stats) {
        sto += st.sto_sq[cell];
        cfo += st.cfo_sq[cell];
        cfo_raw += st.cfo_raw_sq[cell];
        inside += st.in_window[cell];
      }
      rows.push_back({spec.snr_db[s], modes[m], std::sqrt(sto / count), std::sqrt(cfo / count),
                      std::sqrt(cfo_raw / count), inside / count});
    }
  }
  return rows;
}

MetricTrace trace_sync_metric(const SystemConfig& cfg, int trial, int ue, double snr_db,
                              DacMode dac_mode) {
  cfg.validate();
  if (ue < 0 || ue >= cfg.U) throw ConfigError("trace_sync_metric: UE index out of range");
  if (trial < 0) throw ConfigError("trace_sync_metric: trial index must be non-negative");
  const auto [lag_lo, lag_hi] = default_search_window(cfg);
  SystemConfig preamble_cfg = cfg;
  preamble_cfg.P = 0;
  preamble_cfg.D = 0;

  RngStream rng(cfg.master_seed, static_cast<std::uint64_t>(trial));
  RngStream ch_rng = rng.child(kChannelStream);
  RngStream off_rng = rng.child(kOffsetStream);
  RngStream frame_rng = rng.child(kFrameStream);
  RngStream pad_rng = rng.child(kPaddingStream);
  const ChannelRealization ch = draw_channel(cfg, ch_rng);
  const PrecoderSet ps = zf_precode(ch, cfg);
  const auto offsets = draw_offsets(cfg, off_rng);
  const FramePlan plan = build_frame(preamble_cfg, frame_rng);
  const SampleStream tx = guarded_frame(plan, ps, preamble_cfg, dac_mode, pad_rng);

  MetricTrace out;
  out.offset = offsets[static_cast<std::size_t>(ue)];
  const SampleStream clean = propagate_ue(tx, ch, ue, out.offset, cfg, lag_lo - cfg.G, lag_hi + cfg.N);
  RngStream noise_rng = rng.child(kNoiseStreamBase + static_cast<std::uint64_t>(ue));
  const CVector noise = sample_cn(noise_rng, 1.0, clean.samples.cols());
  const SampleStream y = add_scaled_noise(clean, noise, noise_level(snr_db));
  out.metrics = correlate(y, lag_lo, lag_hi, cfg);
  out.offset.tau_est = estimate_sto(out.metrics);
  out.offset.eps_est = estimate_cfo(out.metrics, out.offset.tau_est);
  return out;
}

std::vector<BerRow> run_ber_curve(const ExperimentSpec& spec, const SystemConfig& cfg) {
  spec.validate(cfg);
  const auto& modes = spec.dac_modes;
  const auto& syncs = spec.sync_modes;
  const std::size_t n_snr = spec.snr_db.size();
  const std::size_t cells = modes.size() * n_snr * syncs.size();
  const auto [lag_lo, lag_hi] = default_search_window(cfg);
  const int N = cfg.N;
  const int G = cfg.G;
  const int P = cfg.P;
  const int D = cfg.D;
  const int frame_symbols = P + D;

  // Compensated samples needed by windows 1..P+D.
  const std::int64_t win_first = (N + G) - G / 2;
  const std::int64_t win_last = static_cast<std::int64_t>(frame_symbols) * (N + G) - G / 2 + N;
  const std::int64_t y_first = std::min(lag_lo - G, lag_lo + win_first);
  const std::int64_t y_last = std::max(lag_hi + N, lag_hi + win_last);

  std::vector<std::vector<BitErrorStats>> stats(static_cast<std::size_t>(cfg.trials));

  parallel_for(cfg.trials, spec.threads, [&](int trial) {
    RngStream rng(cfg.master_seed, static_cast<std::uint64_t>(trial));
    RngStream ch_rng = rng.child(kChannelStream);
    RngStream off_rng = rng.child(kOffsetStream);
    RngStream frame_rng = rng.child(kFrameStream);
    const ChannelRealization ch = draw_channel(cfg, ch_rng);
    const PrecoderSet ps = zf_precode(ch, cfg);
    const auto offsets = draw_offsets(cfg, off_rng);
    const FramePlan plan = build_frame(cfg, frame_rng);

    auto& st = stats[static_cast<std::size_t>(trial)];
    st.assign(cells, BitErrorStats{});
    std::vector<CVector> noise;

    for (std::size_t m = 0; m < modes.size(); ++m) {
      RngStream pad_rng = rng.child(kPaddingStream);
      const SampleStream tx = guarded_frame(plan, ps, cfg, modes[m], pad_rng);
      for (int u = 0; u < cfg.U; ++u) {
        const auto& off = offsets[static_cast<std::size_t>(u)];
        const SampleStream clean = propagate_ue(tx, ch, u, off, cfg, y_first, y_last);
        if (noise.size() <= static_cast<std::size_t>(u)) {
          RngStream noise_rng = rng.child(kNoiseStreamBase + static_cast<std::uint64_t>(u));
          noise.push_back(sample_cn(noise_rng, 1.0, clean.samples.cols()));
        }
        const SymbolGrid truth = truth_grid(plan, u, cfg.used_subcarriers, 1, frame_symbols);
        const SymbolGrid training = grid_rows(truth, 1, P);
        const SymbolGrid data_truth = grid_rows(truth, 1 + P, D);

        for (std::size_t s = 0; s < n_snr; ++s) {
          const SampleStream y =
              add_scaled_noise(clean, noise[static_cast<std::size_t>(u)], noise_level(spec.snr_db[s]));
          SyncMetrics metrics;
          bool have_metrics = false;
          for (std::size_t q = 0; q < syncs.size(); ++q) {
            std::int64_t tau_est = off.tau;
            double eps_est = off.eps;
            if (syncs[q] == SyncMode::kSchmidlCox) {
              if (!have_metrics) {
                metrics = correlate(y, lag_lo, lag_hi, cfg);
                have_metrics = true;
              }
              tau_est = estimate_sto(metrics);
              eps_est = estimate_cfo(metrics, tau_est);
            }
            const SampleStream r = compensate(y, tau_est, eps_est, cfg, win_first, win_last);
            const SymbolGrid received = extract_windows(r, cfg, 1, frame_symbols);
            EffectiveGain gain;
            if (cfg.gain_mode == GainMode::kLeastSquares) {
              gain = estimate_gain(grid_rows(received, 1, P), training);
            } else {
              // Genie: LS fit of the noiseless received frame over all its symbols.
              const SampleStream r_clean = compensate(clean, tau_est, eps_est, cfg, win_first, win_last);
              gain = estimate_gain(extract_windows(r_clean, cfg, 1, frame_symbols), truth);
            }
            const SymbolGrid estimate = equalize(grid_rows(received, 1 + P, D), gain);
            st[(m * n_snr + s) * syncs.size() + q] += demap_and_count(estimate, data_truth);
          }
        }
      }
    }
  });

  std::vector<BerRow> rows;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    for (std::size_t q = 0; q < syncs.size(); ++q) {
      for (std::size_t s = 0; s < n_snr; ++s) {
        BitErrorStats total;
        for (const auto& st : stats) total += st[(m * n_snr + s) * syncs.size() + q];
        rows.push_back({spec.snr_db[s], modes[m], syncs[q], total.ber(), total.errors, total.bits});
      }
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<SindrRow>& rows) {
  out << "delta_tau,delta_eps,analytical_sindr_db,simulated_sindr_db,dac_mode\n";
  for (const auto& r : rows) {
    out << r.delta_tau << ',' << fmt9(r.delta_eps) << ',' << fmt9(r.analytical_sindr_db) << ','
        << fmt9(r.simulated_sindr_db) << ',' << to_string(r.dac_mode) << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<RmseRow>& rows) {
  out << "snr_db,dac_mode,sto_rmse_samples,cfo_rmse\n";
  for (const auto& r : rows) {
    out << fmt9(r.snr_db) << ',' << to_string(r.dac_mode) << ',' << fmt9(r.sto_rmse_samples) << ','
        << fmt9(r.cfo_rmse) << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<BerRow>& rows) {
  out << "snr_db,dac_mode,sync_mode,ber\n";
  for (const auto& r : rows) {
    out << fmt9(r.snr_db) << ',' << to_string(r.dac_mode) << ',' << to_string(r.sync_mode) << ','
        << fmt9(r.ber) << '\n';
  }
}

double snr_at_level(const std::vector<double>& snr_db, const std::vector<double>& values,
                    double level) {
  if (snr_db.size() != values.size()) throw DimensionError("snr_at_level: size mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= level) {
      if (i == 0) return snr_db[0];
      const double y0 = std::log10(values[i - 1]);
      const double y1 = std::log10(std::max(values[i], 1e-300));
      const double t = (y0 - std::log10(level)) / (y0 - y1);
      return snr_db[i - 1] + t * (snr_db[i] - snr_db[i - 1]);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace onebit
