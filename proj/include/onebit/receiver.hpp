#pragma once

#include <cstdint>
#include <vector>

#include "onebit/config.hpp"
#include "onebit/frame.hpp"

namespace onebit {

/// Frequency-domain symbols on consecutive OFDM symbols
/// first_symbol .. first_symbol + rows - 1 and the used subcarriers only.
struct SymbolGrid {
  int first_symbol = 0;
  std::vector<int> subcarriers;
  CMatrix values;  // (symbol count) x |S|

  int num_symbols() const { return static_cast<int>(values.rows()); }
  bool has_symbol(int i) const { return i >= first_symbol && i < first_symbol + num_symbols(); }
  Complex at(int i, std::size_t slot) const { return values(i - first_symbol, static_cast<Eigen::Index>(slot)); }
};

/// The transmitted symbols of UE `u` arranged as a grid, for comparison.
SymbolGrid truth_grid(const FramePlan& plan, int u, const std::vector<int>& subcarriers,
                      int first_symbol, int count);

/// DFT windows r[n + i(N+G) - G/2], n = 0..N-1, each bin k multiplied by
/// exp(j pi G k / N); keeps S. Throws RangeError if a window is not covered.
SymbolGrid extract_windows(const SampleStream& r, const SystemConfig& cfg, int first_symbol,
                           int count);

struct EffectiveGain {
  std::vector<int> subcarriers;
  CVector alpha;
};

/// alpha[k] = (1/P) sum_{i=1}^{P} r[i][k] conj(s[i][k]) with P = training.num_symbols().
/// Both grids must hold the same subcarriers and the training symbols' indices.
EffectiveGain estimate_gain(const SymbolGrid& received, const SymbolGrid& training);

/// s_est = conj(alpha) r / |alpha|^2. Bins with alpha = 0 are erased (set to 0).
SymbolGrid equalize(const SymbolGrid& received, const EffectiveGain& gain);

struct BitErrorStats {
  double errors = 0.0;  // erased bits count 1/2
  std::int64_t bits = 0;

  double ber() const { return bits == 0 ? 0.0 : errors / static_cast<double>(bits); }
  BitErrorStats& operator+=(const BitErrorStats& o) {
    errors += o.errors;
    bits += o.bits;
    return *this;
  }
};

/// Hard sign decisions on both rails against the transmitted grid. An estimate
/// of exactly zero (an erased bin) scores half an error per bit.
BitErrorStats demap_and_count(const SymbolGrid& estimate, const SymbolGrid& truth);

}  // namespace onebit
