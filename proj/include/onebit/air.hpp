#pragma once

#include <cstdint>
#include <vector>

#include "onebit/channel.hpp"
#include "onebit/config.hpp"
#include "onebit/frame.hpp"

namespace onebit {

/// True and estimated timing/frequency offsets of one UE. The residuals are
/// always derived, never stored.
struct OffsetState {
  std::int64_t tau = 0;      // STO in samples
  double eps = 0.0;          // CFO normalized to the subcarrier spacing
  std::int64_t tau_est = 0;
  double eps_est = 0.0;

  std::int64_t dtau() const { return tau_est - tau; }
  double deps() const { return eps_est - eps; }
};

/// tau uniform on the integers of [-(N+G/2), N+G/2] (both ends included),
/// eps uniform on (-1, 1); independent across UEs.
std::vector<OffsetState> draw_offsets(const SystemConfig& cfg, RngStream& rng);

/// Global indices n for which every lookup x[n - l - tau] of UE `u` is inside `tx`.
std::pair<std::int64_t, std::int64_t> valid_receive_range(const SampleStream& tx, int num_taps,
                                                          std::int64_t tau);

/// Noiseless received stream of UE `u` over [first, last):
///   y[n] = exp(-j 2 pi eps n / N) sum_l h_u^T[l] x[n - l - tau].
/// Throws RangeError if the transmit stream does not cover the lookups.
SampleStream propagate_ue(const SampleStream& tx, const ChannelRealization& ch, int u,
                          const OffsetState& off, const SystemConfig& cfg, std::int64_t first,
                          std::int64_t last);

/// Adds CN(0, N0) noise sample by sample, in time order.
void add_noise(SampleStream& y, double N0, RngStream& rng);

/// Per-UE received streams over each UE's full valid range, with AWGN drawn
/// from `rng.child(u)`.
std::vector<SampleStream> propagate(const SampleStream& tx, const ChannelRealization& ch,
                                    const std::vector<OffsetState>& offsets, double N0,
                                    const SystemConfig& cfg, RngStream& rng);

}  // namespace onebit
