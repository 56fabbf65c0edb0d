#include "onebit/frame.hpp"

#include <cmath>

#include "onebit/bussgang.hpp"
#include "onebit/error.hpp"

namespace onebit {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

bool even_bins_only(const CMatrix& s) {
  for (Eigen::Index k = 1; k < s.cols(); k += 2) {
    if (!s.col(k).isZero(0.0)) return false;
  }
  return true;
}

// Returns the N x B time-domain block (column b = antenna b) of one symbol.
CMatrix symbol_time_block(const CMatrix& s, const PrecoderSet& ps, const SystemConfig& cfg) {
  const int N = cfg.N;
  CMatrix block = CMatrix::Zero(N, cfg.B);
  for (int k : cfg.used_subcarriers) {
    block.row(k) = (ps.at(k) * s.col(k)).transpose();
  }
  for (int b = 0; b < cfg.B; ++b) {
    idft_inplace({block.col(b).data(), static_cast<std::size_t>(N)});
  }
  if (even_bins_only(s)) {
    block.bottomRows(N / 2) = block.topRows(N / 2);
  }
  return block;
}

// Writes symbol samples (CP first) into columns [col, col + N + G) of `out`.
void emit_symbol(const CMatrix& block, int G, CMatrix& out, Eigen::Index col) {
  const Eigen::Index N = block.rows();
  out.middleCols(col, G) = block.bottomRows(G).transpose();
  out.middleCols(col + G, N) = block.transpose();
}

void quantize_columns(CMatrix& x) {
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    quantize_inplace({x.col(c).data(), static_cast<std::size_t>(x.rows())});
  }
}

void check_dimensions(const CMatrix& s, const PrecoderSet& ps, const SystemConfig& cfg) {
  if (s.rows() != cfg.U || s.cols() != cfg.N) {
    throw DimensionError("modulate_frame: symbol is " + std::to_string(s.rows()) + "x" +
                         std::to_string(s.cols()) + ", expected U x N = " + std::to_string(cfg.U) +
                         "x" + std::to_string(cfg.N));
  }
  if (ps.N() != cfg.N || ps.num_antennas() != cfg.B || ps.num_ues() != cfg.U) {
    throw DimensionError("modulate_frame: precoder does not match the configuration");
  }
}

// Random-data symbols modulated back to back, starting at a symbol boundary.
CMatrix random_symbols(int count, const PrecoderSet& ps, const SystemConfig& cfg, DacMode dac_mode,
                       RngStream& rng) {
  const int len = cfg.N + cfg.G;
  CMatrix out(cfg.B, static_cast<Eigen::Index>(count) * len);
  for (int i = 0; i < count; ++i) {
    emit_symbol(symbol_time_block(random_symbol(cfg, rng), ps, cfg), cfg.G, out,
                static_cast<Eigen::Index>(i) * len);
  }
  if (dac_mode == DacMode::kOneBit) quantize_columns(out);
  return out;
}

}  // namespace

Complex qpsk(bool b0, bool b1) {
  return {(b0 ? -1.0 : 1.0) * kInvSqrt2, (b1 ? -1.0 : 1.0) * kInvSqrt2};
}

Complex random_qpsk(RngStream& rng) {
  const bool b0 = rng.bit();
  const bool b1 = rng.bit();
  return qpsk(b0, b1);
}

CMatrix build_preamble(const SystemConfig& cfg, RngStream& rng) {
  if (cfg.N % 2 != 0) throw ConfigError("build_preamble: N must be even");
  std::size_t even = 0;
  for (int k : cfg.used_subcarriers) even += (k % 2 == 0) ? 1 : 0;
  if (even == 0) throw ConfigError("build_preamble: used subcarrier set has no even subcarrier");
  // Odd bins stay empty, so the even ones are boosted to keep the average
  // power over the used set at one, as for data symbols.
  const double boost =
      std::sqrt(static_cast<double>(cfg.used_subcarriers.size()) / static_cast<double>(even));
  CMatrix s = CMatrix::Zero(cfg.U, cfg.N);
  for (int u = 0; u < cfg.U; ++u) {
    for (int k : cfg.used_subcarriers) {
      if (k % 2 == 0) s(u, k) = boost * random_qpsk(rng);
    }
  }
  return s;
}

CMatrix random_symbol(const SystemConfig& cfg, RngStream& rng) {
  CMatrix s = CMatrix::Zero(cfg.U, cfg.N);
  for (int u = 0; u < cfg.U; ++u) {
    for (int k : cfg.used_subcarriers) s(u, k) = random_qpsk(rng);
  }
  return s;
}

FramePlan build_frame(const SystemConfig& cfg, RngStream& rng) {
  FramePlan plan;
  plan.P = cfg.P;
  plan.D = cfg.D;
  plan.symbols.reserve(static_cast<std::size_t>(1 + cfg.P + cfg.D));
  plan.symbols.push_back(build_preamble(cfg, rng));
  for (int i = 0; i < cfg.P + cfg.D; ++i) plan.symbols.push_back(random_symbol(cfg, rng));
  return plan;
}

SampleStream modulate_frame(const FramePlan& plan, const PrecoderSet& ps, const SystemConfig& cfg,
                            DacMode dac_mode) {
  if (plan.symbols.empty()) throw DimensionError("modulate_frame: empty frame");
  const int len = cfg.N + cfg.G;
  SampleStream out;
  out.origin = -cfg.G;
  out.samples.resize(cfg.B, static_cast<Eigen::Index>(plan.num_symbols()) * len);
  for (int i = 0; i < plan.num_symbols(); ++i) {
    const auto& s = plan.symbols[static_cast<std::size_t>(i)];
    check_dimensions(s, ps, cfg);
    emit_symbol(symbol_time_block(s, ps, cfg), cfg.G, out.samples,
                static_cast<Eigen::Index>(i) * len);
  }
  if (dac_mode == DacMode::kOneBit) quantize_columns(out.samples);
  return out;
}

SampleStream pad_stream(const SampleStream& s, std::int64_t left, std::int64_t right) {
  if (left < 0 || right < 0) throw ConfigError("pad_stream: counts must be non-negative");
  SampleStream out;
  out.origin = s.origin - left;
  out.samples = CMatrix::Zero(s.samples.rows(), s.samples.cols() + left + right);
  out.samples.middleCols(left, s.samples.cols()) = s.samples;
  return out;
}

SampleStream pad_stream(const SampleStream& s, std::int64_t left, std::int64_t right,
                        const PrecoderSet& ps, const SystemConfig& cfg, DacMode dac_mode,
                        RngStream& rng) {
  SampleStream out = pad_stream(s, left, right);
  const std::int64_t len = cfg.N + cfg.G;
  if (left > 0) {
    const int count = static_cast<int>((left + len - 1) / len);
    const CMatrix fill = random_symbols(count, ps, cfg, dac_mode, rng);
    out.samples.leftCols(left) = fill.rightCols(left);
  }
  if (right > 0) {
    const int count = static_cast<int>((right + len - 1) / len);
    const CMatrix fill = random_symbols(count, ps, cfg, dac_mode, rng);
    out.samples.rightCols(right) = fill.leftCols(right);
  }
  return out;
}

SampleStream guarded_frame(const FramePlan& plan, const PrecoderSet& ps, const SystemConfig& cfg,
                           DacMode dac_mode, RngStream& rng) {
  const std::int64_t len = cfg.N + cfg.G;
  const SampleStream framed = pad_stream(modulate_frame(plan, ps, cfg, dac_mode), len, len, ps, cfg,
                                         dac_mode, rng);
  return pad_stream(framed, len, len);
}

}  // namespace onebit
