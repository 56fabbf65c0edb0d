#pragma once

#include <cstdint>
#include <vector>

#include "onebit/config.hpp"
#include "onebit/numerics.hpp"
#include "onebit/precoder.hpp"

namespace onebit {

/// Gray-mapped QPSK: (b0, b1) -> ((1 - 2 b0) + j (1 - 2 b1)) / sqrt(2).
Complex qpsk(bool b0, bool b1);
Complex random_qpsk(RngStream& rng);

/// Time-domain samples on a global clock. Column c holds time index origin + c;
/// rows are antennas at the transmitter or a single row at a UE.
struct SampleStream {
  CMatrix samples;
  std::int64_t origin = 0;

  std::int64_t begin() const { return origin; }
  std::int64_t end() const { return origin + samples.cols(); }
  bool covers(std::int64_t first, std::int64_t last_exclusive) const {
    return first >= begin() && last_exclusive <= end();
  }
  Complex at(std::int64_t n, Eigen::Index row = 0) const { return samples(row, n - origin); }
};

/// Frequency-domain content of one frame. symbols[i] is U x N:
///   i = 0            Schmidl-Cox preamble
///   i = 1..P         training
///   i = P+1..P+D     data
/// Entries outside the used subcarrier set are zero.
struct FramePlan {
  std::vector<CMatrix> symbols;
  int P = 0;
  int D = 0;

  int num_symbols() const { return static_cast<int>(symbols.size()); }
};

/// QPSK on the even subcarriers of S, zero elsewhere; U x N. The even bins are
/// scaled by sqrt(|S| / #even) so the mean power over S is one. The time-domain
/// symbol then repeats with period N/2. Throws ConfigError if S has no even bin.
CMatrix build_preamble(const SystemConfig& cfg, RngStream& rng);

/// Random QPSK on S for every UE; U x N.
CMatrix random_symbol(const SystemConfig& cfg, RngStream& rng);

/// Preamble followed by cfg.P training and cfg.D data symbols.
FramePlan build_frame(const SystemConfig& cfg, RngStream& rng);

/// Precode, IDFT per antenna, prepend the CP and (in one-bit mode) quantize
/// each time instant. Symbol i occupies global indices [i(N+G) - G, i(N+G) + N).
/// A symbol whose spectrum is supported on even bins only has its second half
/// set to an exact copy of the first.
SampleStream modulate_frame(const FramePlan& plan, const PrecoderSet& ps, const SystemConfig& cfg,
                            DacMode dac_mode);

/// Zero guard samples on either side; origin moves by -left.
SampleStream pad_stream(const SampleStream& s, std::int64_t left, std::int64_t right);

/// Guard samples cut from freshly modulated random-QPSK OFDM symbols, so the
/// filler has the same statistics as payload in the chosen DAC mode. A pad of
/// exactly N+G samples is one whole symbol aligned with the frame grid.
SampleStream pad_stream(const SampleStream& s, std::int64_t left, std::int64_t right,
                        const PrecoderSet& ps, const SystemConfig& cfg, DacMode dac_mode,
                        RngStream& rng);

/// Default transmit stream: one random-data symbol on each side of the frame,
/// then N+G zeros beyond. Long enough for any STO in [-(N+G/2), N+G/2] and any
/// search lag in the same range.
SampleStream guarded_frame(const FramePlan& plan, const PrecoderSet& ps, const SystemConfig& cfg,
                           DacMode dac_mode, RngStream& rng);

}  // namespace onebit
