#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace onebit {

enum class DacMode { kOneBit, kInfinite };
enum class GainMode { kGenie, kLeastSquares };
enum class SyncMode { kSchmidlCox, kPerfect };

std::string_view to_string(DacMode mode);
std::string_view to_string(GainMode mode);
std::string_view to_string(SyncMode mode);
DacMode parse_dac_mode(std::string_view text);
GainMode parse_gain_mode(std::string_view text);
SyncMode parse_sync_mode(std::string_view text);

/// Scenario parameters shared by every stage of the chain.
struct SystemConfig {
  int B = 32;   // BS antennas
  int U = 4;    // single-antenna UEs
  int N = 512;  // DFT size
  int G = 36;   // cyclic-prefix length
  int L = 10;   // channel taps
  int P = 1;    // training symbols
  int D = 10;   // data symbols
  std::vector<int> used_subcarriers;  // S, sorted ascending
  double N0 = 1.0;
  std::vector<double> snr_db;         // optional sweep; SNR = 1 / N0
  DacMode dac_mode = DacMode::kOneBit;
  GainMode gain_mode = GainMode::kLeastSquares;
  int trials = 100;
  std::uint64_t master_seed = 1;

  double osr() const;
  bool full_band() const { return static_cast<int>(used_subcarriers.size()) == N; }

  /// Throws ConfigError naming the violated constraint.
  void validate() const;
};

/// S = {0, ..., N-1}.
std::vector<int> all_subcarriers(int N);

/// S/2 bins on each side of DC, DC excluded: {1..S/2, N-S/2..N-1}.
std::vector<int> dc_centered_subcarriers(int N, int S);

/// B=128, U=8, N=S=32, G=16, L=1, N0 = 0 dB.
SystemConfig sindr_reference_config();

/// Desk-scale sync/BER scenario: B=32, U=4, N=512, S=300, G=36, L=10.
SystemConfig desk_scale_config();

/// Full-size sync/BER scenario: B=128, U=8, N=2048, S=1200, G=144, L=10.
SystemConfig paper_scale_config();

double db_to_linear(double db);
double linear_to_db(double x);

}  // namespace onebit
