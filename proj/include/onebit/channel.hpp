#pragma once

#include <iosfwd>
#include <vector>

#include "onebit/config.hpp"
#include "onebit/numerics.hpp"

namespace onebit {

/// Block-constant multipath channel. taps[l] is U x B; row u is h_u^T[l].
struct ChannelRealization {
  std::vector<CMatrix> taps;

  int num_taps() const { return static_cast<int>(taps.size()); }
  int num_ues() const { return taps.empty() ? 0 : static_cast<int>(taps.front().rows()); }
  int num_antennas() const { return taps.empty() ? 0 : static_cast<int>(taps.front().cols()); }
};

/// Rayleigh fading, uniform power delay profile: every entry i.i.d. CN(0, 1/L).
ChannelRealization draw_channel(const SystemConfig& cfg, RngStream& rng);

/// H[k] = sum_l h[l] exp(-j 2 pi k l / N), returned as U x B.
CMatrix freq_response(const ChannelRealization& ch, int k, int N);

// Binary dump: one record per (u, l) in (u-major, l-minor) order, each record
// B complex values as little-endian float64 (re, im) pairs. No header.
void write_channel_dump(std::ostream& out, const ChannelRealization& ch);
ChannelRealization read_channel_dump(std::istream& in, int U, int B, int L);

}  // namespace onebit
