#include "onebit/sindr.hpp"

#include <cmath>

#include "onebit/error.hpp"

namespace onebit {

int psi(std::int64_t dtau, int G) {
  const std::int64_t half = G / 2;
  if (dtau < -half) return static_cast<int>(-dtau - half);
  if (dtau > half) return static_cast<int>(dtau - half);
  return 0;
}

double beta(std::int64_t dtau, double deps, int N, int G) {
  const double kept = static_cast<double>(N - psi(dtau, G));
  if (deps == 0.0) return kept / N;
  return std::sin(kPi * deps * kept / N) / (N * std::sin(kPi * deps / N));
}

double phi(std::int64_t dtau, double deps, int k, int i, int N, int G) {
  const double p = psi(dtau, G);
  const double sgn = (2 * dtau - G) >= 0 ? 1.0 : -1.0;  // sign(dtau - G/2), sign(0) = +1
  return 2.0 * kPi * (static_cast<double>(dtau) * k + deps * (N + G) * i) / N -
         kPi * deps * p * sgn / N + kPi * deps * (N - G - 1) / N;
}

SindrReport sindr(const CVector& h, const BussgangModel& bm, const PrecoderSet& ps, int u,
                  std::int64_t dtau, double deps, double N0, const SystemConfig& cfg) {
  if (!ps.is_flat()) throw DomainError("sindr: analysis requires a frequency-flat precoder (L = 1)");
  if (!cfg.full_band()) throw DomainError("sindr: analysis requires S = {0, ..., N-1}");
  if (std::llabs(dtau) > cfg.N + cfg.G / 2) {
    throw DomainError("sindr: |dtau| = " + std::to_string(std::llabs(dtau)) +
                      " exceeds N + G/2 = " + std::to_string(cfg.N + cfg.G / 2));
  }
  if (!(std::abs(deps) < 1.0)) throw DomainError("sindr: |deps| must be below 1");
  if (h.size() != bm.size() || h.size() != ps.num_antennas()) {
    throw DimensionError("sindr: channel, Bussgang model and precoder disagree on B");
  }
  if (u < 0 || u >= ps.num_ues()) throw DimensionError("sindr: UE index out of range");

  const CMatrix& P = ps.at(0);
  // h^T A P, one entry per stream
  const Eigen::RowVectorXcd gains =
      (h.transpose().array() * bm.gain.transpose().cast<Complex>().array()).matrix() * P;

  SindrReport rep;
  rep.psi = psi(dtau, cfg.G);
  rep.beta = beta(dtau, deps, cfg.N, cfg.G);
  rep.desired_gain = gains[u];
  const double g2 = std::norm(rep.desired_gain);
  const double isi_fraction = static_cast<double>(rep.psi) / cfg.N;
  const double b2 = rep.beta * rep.beta;
  rep.signal_power = b2 * g2;
  rep.I_isi = isi_fraction * g2;
  rep.I_ici = (1.0 - b2 - isi_fraction) * g2;
  for (Eigen::Index v = 0; v < gains.size(); ++v) {
    if (v != u) rep.I_mui += std::norm(gains[v]);
  }
  // h^T C_e h^*
  rep.distortion_power = std::max(0.0, (h.transpose() * bm.C_e * h.conjugate())(0, 0).real());
  rep.noise_power = N0;
  rep.sindr = rep.signal_power / rep.interference_plus_noise();
  return rep;
}

}  // namespace onebit
