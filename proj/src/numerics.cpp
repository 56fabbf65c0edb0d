#include "onebit/numerics.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "onebit/error.hpp"

namespace onebit {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
// Plans are in-place and unaligned so they can run on any caller buffer.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    auto* scratch = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    fftw_plan plan = fftw_plan_dft_1d(n, scratch, scratch, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

void transform(std::span<Complex> v, int sign) {
  if (v.empty()) throw DimensionError("dft: input length must be at least 1");
  const int n = static_cast<int>(v.size());
  auto* data = reinterpret_cast<fftw_complex*>(v.data());
  fftw_execute_dft(PlanCache::instance().get(n, sign), data, data);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& x : v) x *= scale;
}

}  // namespace

void dft_inplace(std::span<Complex> v) { transform(v, FFTW_FORWARD); }
void idft_inplace(std::span<Complex> v) { transform(v, FFTW_BACKWARD); }

CVector dft(const CVector& v) {
  CVector out = v;
  dft_inplace({out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

CVector idft(const CVector& v) {
  CVector out = v;
  idft_inplace({out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      engine_(mix64(mix64(master_seed) ^ mix64(stream_id + 0x632be59bd9b4e019ULL))) {}

RngStream RngStream::child(std::uint64_t tag) const {
  return RngStream(master_seed_, mix64(stream_id_ * 0x9e3779b97f4a7c15ULL ^ mix64(tag)));
}

double RngStream::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double RngStream::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
}

bool RngStream::bit() { return (engine_() >> 63) != 0; }

double RngStream::normal() { return normal_(engine_); }

CVector sample_cn(RngStream& rng, double variance, Eigen::Index count) {
  if (!(variance >= 0.0)) throw ConfigError("sample_cn: variance must be non-negative");
  CVector out(count);
  const double sigma = std::sqrt(variance / 2.0);
  for (Eigen::Index i = 0; i < count; ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    out[i] = Complex(sigma * re, sigma * im);
  }
  return out;
}

}  // namespace onebit
