#pragma once

#include <cstdint>

#include "onebit/bussgang.hpp"
#include "onebit/config.hpp"
#include "onebit/precoder.hpp"

namespace onebit {

/// Number of samples from an adjacent OFDM symbol inside the DFT window.
int psi(std::int64_t dtau, int G);

/// Attenuation of the desired symbol:
///   sin(pi deps (N - psi) / N) / (N sin(pi deps / N)),  (N - psi)/N at deps = 0.
double beta(std::int64_t dtau, double deps, int N, int G);

/// Phase rotation of the desired symbol on subcarrier k of OFDM symbol i.
double phi(std::int64_t dtau, double deps, int k, int i, int N, int G);

/// Per-UE SINDR decomposition for a flat channel and full-band transmission.
struct SindrReport {
  int psi = 0;
  double beta = 1.0;
  Complex desired_gain;  // h^T A p_u
  double signal_power = 0.0;
  double I_isi = 0.0;
  double I_ici = 0.0;
  double I_mui = 0.0;
  double distortion_power = 0.0;
  double noise_power = 0.0;
  double sindr = 0.0;

  double interference_plus_noise() const {
    return I_isi + I_ici + I_mui + distortion_power + noise_power;
  }
};

/// SINDR of UE `u` with channel row h (h_u^T, length B) under residual
/// offsets (dtau, deps). Requires a frequency-flat precoder, S = {0..N-1},
/// |dtau| <= N + G/2 and |deps| < 1; otherwise throws DomainError.
SindrReport sindr(const CVector& h, const BussgangModel& bm, const PrecoderSet& ps, int u,
                  std::int64_t dtau, double deps, double N0, const SystemConfig& cfg);

}  // namespace onebit
