#include "onebit/air.hpp"

#include <cmath>

#include "onebit/error.hpp"

namespace onebit {

std::vector<OffsetState> draw_offsets(const SystemConfig& cfg, RngStream& rng) {
  const std::int64_t span = cfg.N + cfg.G / 2;
  std::vector<OffsetState> out(static_cast<std::size_t>(cfg.U));
  for (auto& off : out) {
    off.tau = rng.uniform_int(-span, span);
    double eps = rng.uniform(-1.0, 1.0);
    // uniform_real_distribution is half-open; keep the interval open on both sides.
    while (eps == -1.0) eps = rng.uniform(-1.0, 1.0);
    off.eps = eps;
  }
  return out;
}

std::pair<std::int64_t, std::int64_t> valid_receive_range(const SampleStream& tx, int num_taps,
                                                          std::int64_t tau) {
  return {tx.begin() + tau + num_taps - 1, tx.end() + tau};
}

SampleStream propagate_ue(const SampleStream& tx, const ChannelRealization& ch, int u,
                          const OffsetState& off, const SystemConfig& cfg, std::int64_t first,
                          std::int64_t last) {
  if (tx.samples.rows() != ch.num_antennas()) {
    throw DimensionError("propagate: transmit stream has " + std::to_string(tx.samples.rows()) +
                         " rows but the channel has " + std::to_string(ch.num_antennas()) +
                         " antennas");
  }
  if (u < 0 || u >= ch.num_ues()) throw DimensionError("propagate: UE index out of range");
  const int L = ch.num_taps();
  const auto [lo, hi] = valid_receive_range(tx, L, off.tau);
  if (first < lo || last > hi || first > last) {
    throw RangeError("propagate: padding insufficient for UE " + std::to_string(u) +
                     ": requested [" + std::to_string(first) + ", " + std::to_string(last) +
                     "), transmit stream supports [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + ")");
  }
  const Eigen::Index count = last - first;
  SampleStream y;
  y.origin = first;
  y.samples = CMatrix::Zero(1, count);
  // Tap l reads transmit columns starting at (first - l - tau) - tx.origin.
  for (int l = 0; l < L; ++l) {
    const Eigen::Index col = first - l - off.tau - tx.origin;
    y.samples.noalias() += ch.taps[static_cast<std::size_t>(l)].row(u) * tx.samples.middleCols(col, count);
  }
  if (off.eps != 0.0) {
    for (Eigen::Index c = 0; c < count; ++c) {
      const double n = static_cast<double>(first + c);
      y.samples(0, c) *= std::polar(1.0, -2.0 * kPi * off.eps * n / cfg.N);
    }
  }
  return y;
}

void add_noise(SampleStream& y, double N0, RngStream& rng) {
  if (N0 == 0.0) return;
  const CVector w = sample_cn(rng, N0, y.samples.cols());
  y.samples.row(0) += w.transpose();
}

std::vector<SampleStream> propagate(const SampleStream& tx, const ChannelRealization& ch,
                                    const std::vector<OffsetState>& offsets, double N0,
                                    const SystemConfig& cfg, RngStream& rng) {
  if (static_cast<int>(offsets.size()) != ch.num_ues()) {
    throw DimensionError("propagate: need one OffsetState per UE");
  }
  std::vector<SampleStream> out;
  out.reserve(offsets.size());
  for (int u = 0; u < ch.num_ues(); ++u) {
    const auto& off = offsets[static_cast<std::size_t>(u)];
    const auto [lo, hi] = valid_receive_range(tx, ch.num_taps(), off.tau);
    SampleStream y = propagate_ue(tx, ch, u, off, cfg, lo, hi);
    RngStream noise = rng.child(static_cast<std::uint64_t>(u));
    add_noise(y, N0, noise);
    out.push_back(std::move(y));
  }
  return out;
}

}  // namespace onebit
