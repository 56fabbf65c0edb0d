#include "doctest.h"
#include "onebit/bussgang.hpp"
#include "onebit/channel.hpp"
#include "onebit/config.hpp"
#include "onebit/error.hpp"
#include "onebit/frame.hpp"
#include "onebit/precoder.hpp"
#include "onebit/receiver.hpp"
#include "onebit/sindr.hpp"
#include "onebit/sync.hpp"

using namespace onebit;

TEST_CASE("ISI sample count") {
  CHECK(psi(0, 16) == 0);
  CHECK(psi(8, 16) == 0);
  CHECK(psi(-8, 16) == 0);
  CHECK(psi(10, 16) == 2);
  CHECK(psi(-9, 16) == 1);
  CHECK(psi(-40, 16) == 32);
}

TEST_CASE("attenuation factor") {
  CHECK(beta(0, 0.0, 32, 16) == 1.0);
  CHECK(beta(10, 0.0, 32, 16) == doctest::Approx(0.9375).epsilon(1e-15));
  CHECK(beta(0, 0.5, 32, 16) == doctest::Approx(0.63688).epsilon(1e-5));
  CHECK(beta(0, 0.5, 32, 16) == doctest::Approx(beta(0, -0.5, 32, 16)).epsilon(1e-15));
  // Continuous at deps = 0.
  CHECK(beta(12, 1e-9, 32, 16) == doctest::Approx(beta(12, 0.0, 32, 16)).epsilon(1e-12));
}

TEST_CASE("phase term") {
  CHECK(phi(0, 0.0, 5, 3, 32, 16) == 0.0);
  CHECK(phi(2, 0.0, 3, 0, 32, 16) == doctest::Approx(2.0 * kPi * 6.0 / 32.0));
  CHECK(phi(0, 0.25, 0, 1, 32, 16) == doctest::Approx(kPi * 0.25 * (2.0 * 48.0 + 15.0) / 32.0));
  // Beyond the prefix on the late side the ISI term enters with a negative sign.
  CHECK(phi(10, 0.25, 0, 0, 32, 16) == doctest::Approx(kPi * 0.25 * (-2.0 + 15.0) / 32.0));
  CHECK(phi(-10, 0.25, 0, 0, 32, 16) == doctest::Approx(kPi * 0.25 * (2.0 + 15.0) / 32.0));
}

TEST_CASE("beta and phi describe a lone subcarrier after residual offsets") {
  SystemConfig cfg;
  cfg.B = 1;
  cfg.U = 1;
  cfg.N = 32;
  cfg.G = 16;
  cfg.L = 1;
  cfg.used_subcarriers = all_subcarriers(32);
  const PrecoderSet ps(cfg.N, cfg.used_subcarriers, {CMatrix::Ones(1, 1)}, 1.0, true);
  const int i = 2;
  const std::int64_t first = static_cast<std::int64_t>(i) * (cfg.N + cfg.G) - cfg.G / 2;
  double worst = 0.0;
  for (int k : {0, 3, 17, 31}) {
    FramePlan plan;
    for (int s = 0; s < 5; ++s) plan.symbols.push_back(CMatrix::Zero(1, cfg.N));
    const Complex x(0.6, -0.8);
    plan.symbols[i](0, k) = x;
    const SampleStream tx = modulate_frame(plan, ps, cfg, DacMode::kInfinite);
    for (std::int64_t dtau : {-24, -9, -8, -3, 0, 5, 8, 9, 20}) {
      for (double deps : {0.0, 0.013, -0.4, 0.77}) {
        const SampleStream r = compensate(tx, dtau, deps, cfg, first, first + cfg.N);
        const SymbolGrid got = extract_windows(r, cfg, i, 1);
        const Complex expected = beta(dtau, deps, cfg.N, cfg.G) *
                                 std::polar(1.0, phi(dtau, deps, k, i, cfg.N, cfg.G)) * x;
        worst = std::max(worst, std::abs(got.at(i, static_cast<std::size_t>(k)) - expected));
      }
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("SINDR decomposition") {
  const SystemConfig cfg = sindr_reference_config();
  RngStream rng(1, 0);
  const ChannelRealization ch = draw_channel(cfg, rng);
  const PrecoderSet ps = zf_precode(ch, cfg);
  const CMatrix C_x = flat_covariance(ps);
  const BussgangModel one = BussgangModel::one_bit(C_x);
  const BussgangModel ideal = BussgangModel::identity(C_x);
  const CVector h = ch.taps[0].row(2).transpose();

  SUBCASE("signal, ISI and ICI partition the desired power") {
    for (std::int64_t dtau : {-30, -8, 0, 3, 12, 40}) {
      for (double deps : {0.0, 0.01, -0.3}) {
        const SindrReport r = sindr(h, one, ps, 2, dtau, deps, 1.0, cfg);
        const double g2 = std::norm(r.desired_gain);
        CHECK(std::abs(r.signal_power + r.I_isi + r.I_ici - g2) < 1e-12 * g2);
        CHECK(r.I_ici >= -1e-12 * g2);
        CHECK(r.sindr == doctest::Approx(r.signal_power / r.interference_plus_noise()));
      }
    }
  }

  SUBCASE("aligned infinite-resolution ZF leaves only noise") {
    const SindrReport r = sindr(h, ideal, ps, 2, 0, 0.0, 0.5, cfg);
    CHECK(r.I_isi == 0.0);
    CHECK(std::abs(r.I_ici) < 1e-15);
    CHECK(r.I_mui < 1e-20);
    CHECK(r.distortion_power == 0.0);
    CHECK(std::abs(r.desired_gain - Complex(ps.norm_constant(), 0.0)) < 1e-12);
    CHECK(r.sindr == doctest::Approx(ps.norm_constant() * ps.norm_constant() / 0.5));
  }

  SUBCASE("one-bit distortion lowers the aligned SINDR") {
    const SindrReport a = sindr(h, one, ps, 2, 0, 0.0, 1.0, cfg);
    const SindrReport b = sindr(h, ideal, ps, 2, 0, 0.0, 1.0, cfg);
    CHECK(a.distortion_power > 0.0);
    CHECK(a.sindr < b.sindr);
  }

  SUBCASE("symmetric in the sign of the CFO residual") {
    for (std::int64_t dtau : {-20, 0, 15}) {
      const double a = sindr(h, one, ps, 2, dtau, 0.2, 1.0, cfg).sindr;
      const double b = sindr(h, one, ps, 2, dtau, -0.2, 1.0, cfg).sindr;
      CHECK(a == doctest::Approx(b).epsilon(1e-14));
    }
  }

  SUBCASE("domain checks") {
    CHECK_THROWS_AS(sindr(h, one, ps, 2, cfg.N + cfg.G / 2 + 1, 0.0, 1.0, cfg), DomainError);
    CHECK_NOTHROW(sindr(h, one, ps, 2, -(cfg.N + cfg.G / 2), 0.0, 1.0, cfg));
    CHECK_THROWS_AS(sindr(h, one, ps, 2, 0, 1.0, 1.0, cfg), DomainError);
    CHECK_THROWS_AS(sindr(h, one, ps, cfg.U, 0, 0.0, 1.0, cfg), DimensionError);
    SystemConfig partial = cfg;
    partial.used_subcarriers = dc_centered_subcarriers(32, 20);
    CHECK_THROWS_AS(sindr(h, one, ps, 2, 0, 0.0, 1.0, partial), DomainError);
  }
}
