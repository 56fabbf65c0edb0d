#pragma once

#include <vector>

#include "onebit/channel.hpp"
#include "onebit/config.hpp"
#include "onebit/numerics.hpp"

namespace onebit {

/// Per-subcarrier B x U precoding matrices; column u is p_u[k].
///
/// Unused subcarriers carry no matrix. The set is scaled by one global
/// constant so that (1/N) sum_{k in S} sum_u |p_u[k]|^2 = 1.
class PrecoderSet {
 public:
  PrecoderSet(int N, std::vector<int> subcarriers, std::vector<CMatrix> matrices,
              double norm_constant, bool flat);

  int N() const { return N_; }
  int num_antennas() const { return static_cast<int>(matrices_.front().rows()); }
  int num_ues() const { return static_cast<int>(matrices_.front().cols()); }
  const std::vector<int>& subcarriers() const { return subcarriers_; }
  double norm_constant() const { return norm_constant_; }
  bool is_flat() const { return flat_; }

  bool used(int k) const { return k >= 0 && k < N_ && slot_[static_cast<std::size_t>(k)] >= 0; }

  /// Throws RangeError for k outside S.
  const CMatrix& at(int k) const;

 private:
  int N_;
  std::vector<int> subcarriers_;
  std::vector<CMatrix> matrices_;
  std::vector<int> slot_;
  double norm_constant_;
  bool flat_;
};

/// Zero-forcing P[k] = c * H[k]^H (H[k] H[k]^H)^{-1} on every used subcarrier.
/// A single-tap channel yields a frequency-flat set (one shared matrix).
/// Throws SingularChannelError naming the first rank-deficient subcarrier.
PrecoderSet zf_precode(const ChannelRealization& ch, const SystemConfig& cfg);

/// Time-domain input covariance of a frequency-flat set, (|S|/N) P P^H.
/// For S = {0..N-1} this is sum_u p_u p_u^H. Trace is 1 by normalization.
CMatrix flat_covariance(const PrecoderSet& ps);

}  // namespace onebit
