#include "onebit/config.hpp"

#include <algorithm>
#include <cmath>

#include "onebit/error.hpp"

namespace onebit {

std::string_view to_string(DacMode mode) {
  return mode == DacMode::kOneBit ? "one_bit" : "infinite";
}

std::string_view to_string(GainMode mode) {
  return mode == GainMode::kGenie ? "genie" : "ls";
}

std::string_view to_string(SyncMode mode) {
  return mode == SyncMode::kSchmidlCox ? "schmidl_cox" : "perfect";
}

DacMode parse_dac_mode(std::string_view text) {
  if (text == "one_bit" || text == "1bit" || text == "one-bit") return DacMode::kOneBit;
  if (text == "infinite" || text == "inf") return DacMode::kInfinite;
  throw ConfigError("unknown dac_mode '" + std::string(text) + "' (expected one_bit or infinite)");
}

GainMode parse_gain_mode(std::string_view text) {
  if (text == "genie") return GainMode::kGenie;
  if (text == "ls") return GainMode::kLeastSquares;
  throw ConfigError("unknown gain_mode '" + std::string(text) + "' (expected genie or ls)");
}

SyncMode parse_sync_mode(std::string_view text) {
  if (text == "schmidl_cox" || text == "schmidl-cox") return SyncMode::kSchmidlCox;
  if (text == "perfect") return SyncMode::kPerfect;
  throw ConfigError("unknown sync_mode '" + std::string(text) + "' (expected schmidl_cox or perfect)");
}

double SystemConfig::osr() const {
  return used_subcarriers.empty() ? 0.0
                                  : static_cast<double>(N) / static_cast<double>(used_subcarriers.size());
}

void SystemConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (U < 1) fail("U must be at least 1");
  if (B < U) fail("B must be at least U (B >= U >= 1)");
  if (N < 2) fail("N must be at least 2");
  if (N % 2 != 0) fail("N must be even (the preamble repeats with period N/2)");
  if (L < 1) fail("L must be at least 1");
  if (G < 0 || G % 2 != 0) fail("G must be a non-negative even integer (the DFT window is shifted by G/2)");
  if (G < L - 1) {
    fail("cyclic prefix too short: G = " + std::to_string(G) + " but G >= L-1 = " +
         std::to_string(L - 1) + " is required");
  }
  if (P < 0 || D < 0) fail("P and D must be non-negative");
  if (used_subcarriers.empty()) fail("used subcarrier set S must be nonempty");
  if (!std::is_sorted(used_subcarriers.begin(), used_subcarriers.end()) ||
      std::adjacent_find(used_subcarriers.begin(), used_subcarriers.end()) != used_subcarriers.end()) {
    fail("used subcarrier set S must be strictly increasing");
  }
  if (used_subcarriers.front() < 0 || used_subcarriers.back() >= N) {
    fail("used subcarrier set S must lie in {0, ..., N-1}");
  }
  if (!(N0 >= 0.0)) fail("N0 must be non-negative");
  if (trials < 1) fail("trials must be at least 1");
}

std::vector<int> all_subcarriers(int N) {
  std::vector<int> s(static_cast<std::size_t>(std::max(N, 0)));
  for (int k = 0; k < N; ++k) s[static_cast<std::size_t>(k)] = k;
  return s;
}

std::vector<int> dc_centered_subcarriers(int N, int S) {
  if (S % 2 != 0 || S < 2 || S > N - 1) {
    throw ConfigError("DC-centered subcarrier set needs an even S with 2 <= S <= N-1");
  }
  std::vector<int> s;
  s.reserve(static_cast<std::size_t>(S));
  for (int k = 1; k <= S / 2; ++k) s.push_back(k);
  for (int k = N - S / 2; k < N; ++k) s.push_back(k);
  return s;
}

SystemConfig sindr_reference_config() {
  SystemConfig cfg;
  cfg.B = 128;
  cfg.U = 8;
  cfg.N = 32;
  cfg.G = 16;
  cfg.L = 1;
  cfg.P = 0;
  cfg.D = 20;
  cfg.used_subcarriers = all_subcarriers(32);
  cfg.N0 = 1.0;
  cfg.gain_mode = GainMode::kGenie;
  cfg.trials = 100;
  return cfg;
}

SystemConfig desk_scale_config() {
  SystemConfig cfg;
  cfg.B = 32;
  cfg.U = 4;
  cfg.N = 512;
  cfg.G = 36;
  cfg.L = 10;
  cfg.P = 1;
  cfg.D = 10;
  cfg.used_subcarriers = dc_centered_subcarriers(512, 300);
  cfg.N0 = 1.0;
  cfg.trials = 500;
  return cfg;
}

SystemConfig paper_scale_config() {
  SystemConfig cfg = desk_scale_config();
  cfg.B = 128;
  cfg.U = 8;
  cfg.N = 2048;
  cfg.G = 144;
  cfg.used_subcarriers = dc_centered_subcarriers(2048, 1200);
  cfg.trials = 100;
  return cfg;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace onebit
