#include "onebit/receiver.hpp"

#include <cmath>

#include "onebit/error.hpp"

namespace onebit {
namespace {

void require_same_layout(const SymbolGrid& a, const SymbolGrid& b, const char* who) {
  if (a.subcarriers != b.subcarriers || a.first_symbol != b.first_symbol ||
      a.values.rows() != b.values.rows() || a.values.cols() != b.values.cols()) {
    throw DimensionError(std::string(who) + ": grids are not aligned on (symbol, subcarrier)");
  }
}

double rail_errors(double estimate, double truth) {
  if (estimate == 0.0) return 0.5;
  return (estimate > 0.0) != (truth > 0.0) ? 1.0 : 0.0;
}

}  // namespace

SymbolGrid truth_grid(const FramePlan& plan, int u, const std::vector<int>& subcarriers,
                      int first_symbol, int count) {
  if (first_symbol < 0 || first_symbol + count > plan.num_symbols()) {
    throw RangeError("truth_grid: symbol range outside the frame");
  }
  SymbolGrid g;
  g.first_symbol = first_symbol;
  g.subcarriers = subcarriers;
  g.values.resize(count, static_cast<Eigen::Index>(subcarriers.size()));
  for (int i = 0; i < count; ++i) {
    const auto& s = plan.symbols[static_cast<std::size_t>(first_symbol + i)];
    for (std::size_t j = 0; j < subcarriers.size(); ++j) {
      g.values(i, static_cast<Eigen::Index>(j)) = s(u, subcarriers[j]);
    }
  }
  return g;
}

SymbolGrid extract_windows(const SampleStream& r, const SystemConfig& cfg, int first_symbol,
                           int count) {
  if (r.samples.rows() != 1) throw DimensionError("extract_windows: expected a single-row stream");
  const int N = cfg.N;
  const int G = cfg.G;
  const auto& S = cfg.used_subcarriers;
  SymbolGrid g;
  g.first_symbol = first_symbol;
  g.subcarriers = S;
  g.values.resize(count, static_cast<Eigen::Index>(S.size()));

  CVector tilt(static_cast<Eigen::Index>(S.size()));
  for (std::size_t j = 0; j < S.size(); ++j) {
    const long long gk = (static_cast<long long>(G) * S[j]) % (2LL * N);
    tilt[static_cast<Eigen::Index>(j)] = std::polar(1.0, kPi * static_cast<double>(gk) / N);
  }

  CVector window(N);
  for (int w = 0; w < count; ++w) {
    const int i = first_symbol + w;
    const std::int64_t start = static_cast<std::int64_t>(i) * (N + G) - G / 2;
    if (!r.covers(start, start + N)) {
      throw RangeError("extract_windows: window " + std::to_string(i) + " needs samples [" +
                       std::to_string(start) + ", " + std::to_string(start + N) +
                       "), stream holds [" + std::to_string(r.begin()) + ", " +
                       std::to_string(r.end()) + ")");
    }
    window = r.samples.row(0).segment(start - r.origin, N).transpose();
    dft_inplace({window.data(), static_cast<std::size_t>(N)});
    for (std::size_t j = 0; j < S.size(); ++j) {
      g.values(w, static_cast<Eigen::Index>(j)) = window[S[j]] * tilt[static_cast<Eigen::Index>(j)];
    }
  }
  return g;
}

EffectiveGain estimate_gain(const SymbolGrid& received, const SymbolGrid& training) {
  const int P = training.num_symbols();
  if (P < 1) throw ConfigError("estimate_gain: at least one training symbol is required");
  if (received.subcarriers != training.subcarriers) {
    throw DimensionError("estimate_gain: received grid does not cover the training subcarriers");
  }
  EffectiveGain g;
  g.subcarriers = training.subcarriers;
  g.alpha = CVector::Zero(static_cast<Eigen::Index>(g.subcarriers.size()));
  for (int i = training.first_symbol; i < training.first_symbol + P; ++i) {
    if (!received.has_symbol(i)) {
      throw DimensionError("estimate_gain: received grid is missing training symbol " +
                           std::to_string(i));
    }
    for (std::size_t j = 0; j < g.subcarriers.size(); ++j) {
      g.alpha[static_cast<Eigen::Index>(j)] += received.at(i, j) * std::conj(training.at(i, j));
    }
  }
  g.alpha /= static_cast<double>(P);
  return g;
}

SymbolGrid equalize(const SymbolGrid& received, const EffectiveGain& gain) {
  if (received.subcarriers != gain.subcarriers) {
    throw DimensionError("equalize: gain and grid cover different subcarriers");
  }
  SymbolGrid out = received;
  for (Eigen::Index j = 0; j < gain.alpha.size(); ++j) {
    const Complex a = gain.alpha[j];
    const double p = std::norm(a);
    if (p == 0.0) {
      out.values.col(j).setZero();
    } else {
      out.values.col(j) = received.values.col(j) * (std::conj(a) / p);
    }
  }
  return out;
}

BitErrorStats demap_and_count(const SymbolGrid& estimate, const SymbolGrid& truth) {
  require_same_layout(estimate, truth, "demap_and_count");
  BitErrorStats stats;
  for (Eigen::Index c = 0; c < estimate.values.cols(); ++c) {
    for (Eigen::Index r = 0; r < estimate.values.rows(); ++r) {
      const Complex e = estimate.values(r, c);
      const Complex t = truth.values(r, c);
      if (e == Complex(0.0, 0.0)) {
        stats.errors += 1.0;  // two bits, half an error each
      } else {
        stats.errors += rail_errors(e.real(), t.real()) + rail_errors(e.imag(), t.imag());
      }
      stats.bits += 2;
    }
  }
  return stats;
}

}  // namespace onebit
