#include "onebit/channel.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include "onebit/error.hpp"

namespace onebit {
namespace {

static_assert(std::endian::native == std::endian::little,
              "channel dump I/O assumes a little-endian host");

void put_f64(std::ostream& out, double v) {
  char bytes[sizeof(double)];
  std::memcpy(bytes, &v, sizeof v);
  out.write(bytes, sizeof bytes);
}

double get_f64(std::istream& in) {
  char bytes[sizeof(double)];
  if (!in.read(bytes, sizeof bytes)) throw RangeError("channel dump: truncated record");
  double v;
  std::memcpy(&v, bytes, sizeof v);
  return v;
}

}  // namespace

ChannelRealization draw_channel(const SystemConfig& cfg, RngStream& rng) {
  if (cfg.L < 1 || cfg.U < 1 || cfg.B < cfg.U) {
    throw ConfigError("draw_channel: need L >= 1 and B >= U >= 1");
  }
  ChannelRealization ch;
  ch.taps.reserve(static_cast<std::size_t>(cfg.L));
  const double sigma = std::sqrt(0.5 / cfg.L);
  for (int l = 0; l < cfg.L; ++l) {
    CMatrix tap(cfg.U, cfg.B);
    for (int b = 0; b < cfg.B; ++b) {
      for (int u = 0; u < cfg.U; ++u) {
        const double re = rng.normal();
        const double im = rng.normal();
        tap(u, b) = Complex(sigma * re, sigma * im);
      }
    }
    ch.taps.push_back(std::move(tap));
  }
  return ch;
}

CMatrix freq_response(const ChannelRealization& ch, int k, int N) {
  if (N < 1 || k < 0 || k >= N) {
    throw RangeError("freq_response: subcarrier " + std::to_string(k) + " outside [0, " +
                     std::to_string(N) + ")");
  }
  CMatrix h = CMatrix::Zero(ch.num_ues(), ch.num_antennas());
  for (int l = 0; l < ch.num_taps(); ++l) {
    // Reduce k*l modulo N before forming the angle to keep it small.
    const long long kl = (static_cast<long long>(k) * l) % N;
    const double angle = -2.0 * kPi * static_cast<double>(kl) / N;
    h += ch.taps[static_cast<std::size_t>(l)] * std::polar(1.0, angle);
  }
  return h;
}

void write_channel_dump(std::ostream& out, const ChannelRealization& ch) {
  for (int u = 0; u < ch.num_ues(); ++u) {
    for (int l = 0; l < ch.num_taps(); ++l) {
      const auto& tap = ch.taps[static_cast<std::size_t>(l)];
      for (int b = 0; b < ch.num_antennas(); ++b) {
        put_f64(out, tap(u, b).real());
        put_f64(out, tap(u, b).imag());
      }
    }
  }
}

ChannelRealization read_channel_dump(std::istream& in, int U, int B, int L) {
  if (U < 1 || B < 1 || L < 1) throw DimensionError("read_channel_dump: bad dimensions");
  ChannelRealization ch;
  ch.taps.assign(static_cast<std::size_t>(L), CMatrix(U, B));
  for (int u = 0; u < U; ++u) {
    for (int l = 0; l < L; ++l) {
      for (int b = 0; b < B; ++b) {
        const double re = get_f64(in);
        const double im = get_f64(in);
        ch.taps[static_cast<std::size_t>(l)](u, b) = Complex(re, im);
      }
    }
  }
  return ch;
}

}  // namespace onebit
