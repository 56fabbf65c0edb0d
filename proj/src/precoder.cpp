#include "onebit/precoder.hpp"

#include <cmath>

#include "onebit/error.hpp"

namespace onebit {
namespace {

constexpr double kSingularRcond = 1e-12;

CMatrix zero_forcing(const CMatrix& H, int k) {
  const CMatrix gram = H * H.adjoint();
  Eigen::LDLT<CMatrix> ldlt(gram);
  // rcond() alone misses exact zero pivots, which the solver silently skips.
  const RVector pivots = ldlt.vectorD().real().cwiseAbs();
  const bool degenerate = !(pivots.minCoeff() > kSingularRcond * pivots.maxCoeff());
  if (ldlt.info() != Eigen::Success || degenerate || !(ldlt.rcond() > kSingularRcond)) {
    throw SingularChannelError(k, "zf_precode: channel matrix is rank deficient on subcarrier " +
                                      std::to_string(k));
  }
  // P = H^H (H H^H)^{-1}  <=>  P^H = (H H^H)^{-1} H
  return ldlt.solve(H).adjoint();
}

}  // namespace

PrecoderSet::PrecoderSet(int N, std::vector<int> subcarriers, std::vector<CMatrix> matrices,
                         double norm_constant, bool flat)
    : N_(N),
      subcarriers_(std::move(subcarriers)),
      matrices_(std::move(matrices)),
      slot_(static_cast<std::size_t>(N), -1),
      norm_constant_(norm_constant),
      flat_(flat) {
  if (matrices_.empty()) throw DimensionError("PrecoderSet: no matrices");
  if (!flat_ && matrices_.size() != subcarriers_.size()) {
    throw DimensionError("PrecoderSet: one matrix per used subcarrier required");
  }
  for (std::size_t i = 0; i < subcarriers_.size(); ++i) {
    const int k = subcarriers_[i];
    if (k < 0 || k >= N_) throw DimensionError("PrecoderSet: subcarrier out of range");
    slot_[static_cast<std::size_t>(k)] = flat_ ? 0 : static_cast<int>(i);
  }
}

const CMatrix& PrecoderSet::at(int k) const {
  if (!used(k)) throw RangeError("PrecoderSet: subcarrier " + std::to_string(k) + " is not used");
  return matrices_[static_cast<std::size_t>(slot_[static_cast<std::size_t>(k)])];
}

PrecoderSet zf_precode(const ChannelRealization& ch, const SystemConfig& cfg) {
  if (ch.num_ues() != cfg.U || ch.num_antennas() != cfg.B) {
    throw DimensionError("zf_precode: channel is " + std::to_string(ch.num_ues()) + "x" +
                         std::to_string(ch.num_antennas()) + ", config expects U x B = " +
                         std::to_string(cfg.U) + "x" + std::to_string(cfg.B));
  }
  const auto& S = cfg.used_subcarriers;
  const bool flat = ch.num_taps() == 1;
  std::vector<CMatrix> matrices;
  double power = 0.0;
  if (flat) {
    matrices.push_back(zero_forcing(ch.taps.front(), S.front()));
    power = matrices.front().squaredNorm() * static_cast<double>(S.size());
  } else {
    matrices.reserve(S.size());
    for (int k : S) {
      matrices.push_back(zero_forcing(freq_response(ch, k, cfg.N), k));
      power += matrices.back().squaredNorm();
    }
  }
  power /= cfg.N;
  const double c = 1.0 / std::sqrt(power);
  for (auto& m : matrices) m *= c;
  return PrecoderSet(cfg.N, S, std::move(matrices), c, flat);
}

CMatrix flat_covariance(const PrecoderSet& ps) {
  if (!ps.is_flat()) throw ConfigError("flat_covariance: precoder is not frequency-flat");
  const CMatrix& P = ps.at(ps.subcarriers().front());
  const double fill = static_cast<double>(ps.subcarriers().size()) / ps.N();
  return fill * (P * P.adjoint());
}

}  // namespace onebit
