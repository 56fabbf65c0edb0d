#include <algorithm>

#include "doctest.h"
#include "onebit/channel.hpp"
#include "onebit/config.hpp"
#include "onebit/error.hpp"
#include "onebit/frame.hpp"
#include "onebit/precoder.hpp"
#include "oracles.hpp"

using namespace onebit;

namespace {

SystemConfig frame_config() {
  SystemConfig cfg;
  cfg.B = 8;
  cfg.U = 2;
  cfg.N = 32;
  cfg.G = 8;
  cfg.L = 3;
  cfg.P = 1;
  cfg.D = 3;
  cfg.used_subcarriers = dc_centered_subcarriers(32, 20);
  return cfg;
}

PrecoderSet precoder_for(const SystemConfig& cfg, std::uint64_t seed) {
  RngStream rng(seed, 0);
  return zf_precode(draw_channel(cfg, rng), cfg);
}

// Time-domain columns [first, first + count) of antenna row b.
CVector segment(const SampleStream& s, int b, std::int64_t first, int count) {
  return s.samples.row(b).segment(first - s.origin, count).transpose();
}

}  // namespace

TEST_CASE("Gray-mapped QPSK") {
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(qpsk(false, false) == Complex(r, r));
  CHECK(qpsk(true, false) == Complex(-r, r));
  CHECK(qpsk(false, true) == Complex(r, -r));
  CHECK(qpsk(true, true) == Complex(-r, -r));
}

TEST_CASE("preamble loads even bins and repeats every N/2 samples") {
  SystemConfig cfg = frame_config();
  cfg.used_subcarriers = all_subcarriers(32);
  RngStream rng(1, 0);
  const CMatrix s = build_preamble(cfg, rng);
  for (int u = 0; u < cfg.U; ++u) {
    double power = 0.0;
    for (int k = 0; k < cfg.N; ++k) {
      if (k % 2 == 1) {
        CHECK(s(u, k) == Complex(0.0, 0.0));
      } else {
        CHECK(std::abs(std::norm(s(u, k)) - 2.0) < 1e-14);
      }
      power += std::norm(s(u, k));
    }
    CHECK(std::abs(power / cfg.N - 1.0) < 1e-14);
    const CVector x = oracle::naive_dft(s.row(u).transpose(), +1);
    for (int n = 0; n < cfg.N / 2; ++n) CHECK(std::abs(x[n + cfg.N / 2] - x[n]) < 1e-12);
  }
  CHECK(s.row(0) != s.row(1));
}

TEST_CASE("preamble needs an even subcarrier") {
  SystemConfig cfg = frame_config();
  cfg.used_subcarriers = {1, 3, 5, 7};
  RngStream rng(2, 0);
  CHECK_THROWS_AS(build_preamble(cfg, rng), ConfigError);
}

TEST_CASE("data symbols are unit-modulus QPSK on S only") {
  const SystemConfig cfg = frame_config();
  RngStream rng(3, 0);
  const FramePlan plan = build_frame(cfg, rng);
  CHECK(plan.num_symbols() == 1 + cfg.P + cfg.D);
  for (int i = 1; i < plan.num_symbols(); ++i) {
    const CMatrix& s = plan.symbols[static_cast<std::size_t>(i)];
    for (int k = 0; k < cfg.N; ++k) {
      const bool used = std::binary_search(cfg.used_subcarriers.begin(), cfg.used_subcarriers.end(), k);
      for (int u = 0; u < cfg.U; ++u) CHECK(std::abs(std::abs(s(u, k)) - (used ? 1.0 : 0.0)) < 1e-15);
    }
  }
}

TEST_CASE("single-antenna infinite-resolution round trip") {
  SystemConfig cfg = frame_config();
  cfg.B = 1;
  cfg.U = 1;
  cfg.used_subcarriers = all_subcarriers(cfg.N);
  const PrecoderSet ps(cfg.N, cfg.used_subcarriers, {CMatrix::Ones(1, 1)}, 1.0, true);
  RngStream rng(4, 0);
  const FramePlan plan = build_frame(cfg, rng);
  const SampleStream tx = modulate_frame(plan, ps, cfg, DacMode::kInfinite);
  CHECK(tx.origin == -cfg.G);
  CHECK(tx.samples.cols() == static_cast<Eigen::Index>(plan.num_symbols()) * (cfg.N + cfg.G));
  for (int i = 0; i < plan.num_symbols(); ++i) {
    const CVector body = segment(tx, 0, static_cast<std::int64_t>(i) * (cfg.N + cfg.G), cfg.N);
    const CVector X = oracle::naive_dft(body, -1);
    CHECK((X - plan.symbols[static_cast<std::size_t>(i)].row(0).transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("cyclic prefix and exact preamble symmetry in both DAC modes") {
  const SystemConfig cfg = frame_config();
  const PrecoderSet ps = precoder_for(cfg, 5);
  RngStream rng(5, 1);
  const FramePlan plan = build_frame(cfg, rng);
  for (DacMode mode : {DacMode::kInfinite, DacMode::kOneBit}) {
    CAPTURE(to_string(mode));
    const SampleStream tx = modulate_frame(plan, ps, cfg, mode);
    for (int b = 0; b < cfg.B; ++b) {
      for (int i = 0; i < plan.num_symbols(); ++i) {
        const std::int64_t start = static_cast<std::int64_t>(i) * (cfg.N + cfg.G);
        const CVector cp = segment(tx, b, start - cfg.G, cfg.G);
        const CVector tail = segment(tx, b, start + cfg.N - cfg.G, cfg.G);
        CHECK((cp - tail).cwiseAbs().maxCoeff() <= (mode == DacMode::kOneBit ? 0.0 : 1e-12));
      }
      const CVector first = segment(tx, b, 0, cfg.N / 2);
      const CVector second = segment(tx, b, cfg.N / 2, cfg.N / 2);
      CHECK((first - second).cwiseAbs().maxCoeff() == 0.0);
    }
    if (mode == DacMode::kOneBit) {
      for (Eigen::Index c = 0; c < tx.samples.cols(); ++c) {
        CHECK(std::abs(tx.samples.col(c).squaredNorm() - 1.0) < 1e-14);
      }
    }
  }
}

TEST_CASE("infinite-resolution transmit power is one per sample on average") {
  const SystemConfig cfg = frame_config();
  const PrecoderSet ps = precoder_for(cfg, 6);
  double power = 0.0;
  double samples = 0.0;
  for (int t = 0; t < 200; ++t) {
    RngStream rng(6, static_cast<std::uint64_t>(t));
    const FramePlan plan = build_frame(cfg, rng);
    const SampleStream tx = modulate_frame(plan, ps, cfg, DacMode::kInfinite);
    power += tx.samples.squaredNorm();
    samples += static_cast<double>(tx.samples.cols());
  }
  CHECK(std::abs(power / samples - 1.0) < 0.03);
}

TEST_CASE("padding") {
  const SystemConfig cfg = frame_config();
  const PrecoderSet ps = precoder_for(cfg, 7);
  RngStream rng(7, 0);
  const FramePlan plan = build_frame(cfg, rng);
  const SampleStream tx = modulate_frame(plan, ps, cfg, DacMode::kOneBit);

  const SampleStream same = pad_stream(tx, 0, 0);
  CHECK(same.origin == tx.origin);
  CHECK(same.samples == tx.samples);

  const SampleStream zeros = pad_stream(tx, 7, 3);
  CHECK(zeros.origin == tx.origin - 7);
  CHECK(zeros.samples.cols() == tx.samples.cols() + 10);
  CHECK(zeros.samples.leftCols(7).isZero(0.0));
  CHECK(zeros.samples.rightCols(3).isZero(0.0));
  CHECK(zeros.at(0, 2) == tx.at(0, 2));

  RngStream pad_rng(7, 1);
  const SampleStream filled = pad_stream(tx, 50, 45, ps, cfg, DacMode::kOneBit, pad_rng);
  CHECK(filled.origin == tx.origin - 50);
  for (Eigen::Index c = 0; c < filled.samples.cols(); ++c) {
    CHECK(std::abs(filled.samples.col(c).squaredNorm() - 1.0) < 1e-14);
  }
  CHECK(filled.at(5, 3) == tx.at(5, 3));

  RngStream guard_rng(7, 2);
  const SampleStream guarded = guarded_frame(plan, ps, cfg, DacMode::kInfinite, guard_rng);
  const std::int64_t reach = cfg.N + cfg.G / 2;
  CHECK(guarded.begin() <= tx.begin() - reach - (cfg.N + cfg.G));
  CHECK(guarded.end() >= tx.end() + reach + (cfg.N + cfg.G));
}
