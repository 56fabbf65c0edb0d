#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>

#include <Eigen/Dense>

namespace onebit {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;

// Unitary DFT pair:
//   dft:  X[k] = N^{-1/2} sum_n x[n] exp(-j 2 pi k n / N)
//   idft: x[n] = N^{-1/2} sum_k X[k] exp(+j 2 pi k n / N)
// Any N >= 1 is accepted; an empty input throws DimensionError.
CVector dft(const CVector& v);
CVector idft(const CVector& v);

// In-place variants on contiguous storage; used on the hot paths.
void dft_inplace(std::span<Complex> v);
void idft_inplace(std::span<Complex> v);

/// Reproducible random stream keyed by (master_seed, stream_id).
///
/// Two streams with the same key produce identical sequences regardless of
/// which thread consumes them. `child(tag)` derives an independent sub-stream
/// from the key alone, never from the generator state, so the order in which
/// children are created does not matter.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  RngStream child(std::uint64_t tag) const;

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  double uniform();                                  // [0, 1)
  double uniform(double lo, double hi);              // [lo, hi)
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);  // closed
  bool bit();
  double normal();                                   // N(0, 1)

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// SplitMix64 finalizer, exposed for seed derivation in the harness.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// i.i.d. CN(0, variance) samples. Negative variance throws ConfigError.
CVector sample_cn(RngStream& rng, double variance, Eigen::Index count);

}  // namespace onebit
