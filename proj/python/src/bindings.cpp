#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "onebit/bussgang.hpp"
#include "onebit/channel.hpp"
#include "onebit/config.hpp"
#include "onebit/error.hpp"
#include "onebit/experiments.hpp"
#include "onebit/numerics.hpp"
#include "onebit/precoder.hpp"
#include "onebit/scenario.hpp"
#include "onebit/sindr.hpp"

namespace py = pybind11;
using namespace onebit;

namespace {

template <typename Row>
std::string csv_text(const std::vector<Row>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

// Experiments release the GIL; they never touch Python objects.
template <typename Row>
std::vector<Row> run_released(std::vector<Row> (*fn)(const ExperimentSpec&, const SystemConfig&),
                              const ExperimentSpec& spec, const SystemConfig& cfg) {
  py::gil_scoped_release release;
  return fn(spec, cfg);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "1-bit massive MU-MIMO-OFDM downlink simulator";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", PyExc_IndexError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SingularChannelError>(m, "SingularChannelError", base.ptr());

  py::enum_<DacMode>(m, "DacMode")
      .value("ONE_BIT", DacMode::kOneBit)
      .value("INFINITE", DacMode::kInfinite);
  py::enum_<GainMode>(m, "GainMode")
      .value("GENIE", GainMode::kGenie)
      .value("LS", GainMode::kLeastSquares);
  py::enum_<SyncMode>(m, "SyncMode")
      .value("SCHMIDL_COX", SyncMode::kSchmidlCox)
      .value("PERFECT", SyncMode::kPerfect);
  py::enum_<ExperimentKind>(m, "ExperimentKind")
      .value("SINDR_SWEEP", ExperimentKind::kSindrSweep)
      .value("SYNC_RMSE", ExperimentKind::kSyncRmse)
      .value("BER_CURVE", ExperimentKind::kBerCurve);

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def_readwrite("B", &SystemConfig::B)
      .def_readwrite("U", &SystemConfig::U)
      .def_readwrite("N", &SystemConfig::N)
      .def_readwrite("G", &SystemConfig::G)
      .def_readwrite("L", &SystemConfig::L)
      .def_readwrite("P", &SystemConfig::P)
      .def_readwrite("D", &SystemConfig::D)
      .def_readwrite("used_subcarriers", &SystemConfig::used_subcarriers)
      .def_readwrite("N0", &SystemConfig::N0)
      .def_readwrite("dac_mode", &SystemConfig::dac_mode)
      .def_readwrite("gain_mode", &SystemConfig::gain_mode)
      .def_readwrite("trials", &SystemConfig::trials)
      .def_readwrite("master_seed", &SystemConfig::master_seed)
      .def_property_readonly("osr", &SystemConfig::osr)
      .def("validate", &SystemConfig::validate);

  py::class_<ExperimentSpec>(m, "ExperimentSpec")
      .def(py::init<>())
      .def_readwrite("kind", &ExperimentSpec::kind)
      .def_readwrite("delta_tau", &ExperimentSpec::delta_tau)
      .def_readwrite("delta_eps", &ExperimentSpec::delta_eps)
      .def_readwrite("eps_sweep_tau", &ExperimentSpec::eps_sweep_tau)
      .def_readwrite("eps_sweep_values", &ExperimentSpec::eps_sweep_values)
      .def_readwrite("snr_db", &ExperimentSpec::snr_db)
      .def_readwrite("dac_modes", &ExperimentSpec::dac_modes)
      .def_readwrite("sync_modes", &ExperimentSpec::sync_modes)
      .def_readwrite("output", &ExperimentSpec::output)
      .def_readwrite("threads", &ExperimentSpec::threads)
      .def("validate", &ExperimentSpec::validate, py::arg("cfg"));

  py::class_<Scenario>(m, "Scenario")
      .def_readwrite("cfg", &Scenario::cfg)
      .def_readwrite("spec", &Scenario::spec);

  py::class_<SindrRow>(m, "SindrRow")
      .def_readonly("delta_tau", &SindrRow::delta_tau)
      .def_readonly("delta_eps", &SindrRow::delta_eps)
      .def_readonly("analytical_sindr_db", &SindrRow::analytical_sindr_db)
      .def_readonly("simulated_sindr_db", &SindrRow::simulated_sindr_db)
      .def_readonly("dac_mode", &SindrRow::dac_mode);
  py::class_<RmseRow>(m, "RmseRow")
      .def_readonly("snr_db", &RmseRow::snr_db)
      .def_readonly("dac_mode", &RmseRow::dac_mode)
      .def_readonly("sto_rmse_samples", &RmseRow::sto_rmse_samples)
      .def_readonly("cfo_rmse", &RmseRow::cfo_rmse)
      .def_readonly("cfo_rmse_unwrapped", &RmseRow::cfo_rmse_unwrapped)
      .def_readonly("isi_free_fraction", &RmseRow::isi_free_fraction);
  py::class_<BerRow>(m, "BerRow")
      .def_readonly("snr_db", &BerRow::snr_db)
      .def_readonly("dac_mode", &BerRow::dac_mode)
      .def_readonly("sync_mode", &BerRow::sync_mode)
      .def_readonly("ber", &BerRow::ber)
      .def_readonly("bit_errors", &BerRow::bit_errors)
      .def_readonly("bits", &BerRow::bits);

  m.def("all_subcarriers", &all_subcarriers, py::arg("N"));
  m.def("dc_centered_subcarriers", &dc_centered_subcarriers, py::arg("N"), py::arg("S"));
  m.def("sindr_reference_config", &sindr_reference_config);
  m.def("desk_scale_config", &desk_scale_config);
  m.def("paper_scale_config", &paper_scale_config);
  m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text); }, py::arg("text"));
  m.def("load_scenario", &load_scenario, py::arg("path"));

  m.def("dft", &dft, py::arg("x"), "Unitary DFT.");
  m.def("idft", &idft, py::arg("X"), "Unitary inverse DFT.");
  m.def("quantize", &quantize, py::arg("x"), "1-bit quantizer with unit output norm.");
  m.def("bussgang_gain", &bussgang_gain, py::arg("C_x"), "Diagonal of the Bussgang gain A.");
  m.def("error_covariance", &error_covariance, py::arg("C_x"), "Quantization error covariance.");

  m.def(
      "draw_channel",
      [](const SystemConfig& cfg, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        return draw_channel(cfg, rng).taps;
      },
      py::arg("cfg"), py::arg("seed"), py::arg("stream") = 0,
      "Rayleigh taps, one U x B matrix per delay.");
  m.def(
      "zf_precode",
      [](const std::vector<CMatrix>& taps, const SystemConfig& cfg) {
        ChannelRealization ch;
        ch.taps = taps;
        const PrecoderSet ps = zf_precode(ch, cfg);
        py::dict matrices;
        for (int k : ps.subcarriers()) matrices[py::int_(k)] = ps.at(k);
        return py::make_tuple(matrices, ps.norm_constant());
      },
      py::arg("taps"), py::arg("cfg"),
      "Returns ({subcarrier: B x U precoder}, norm constant).");

  m.def("psi", &psi, py::arg("dtau"), py::arg("G"));
  m.def("beta", &beta, py::arg("dtau"), py::arg("deps"), py::arg("N"), py::arg("G"));
  m.def("phi", &phi, py::arg("dtau"), py::arg("deps"), py::arg("k"), py::arg("i"), py::arg("N"),
        py::arg("G"));

  m.def("run_sindr_sweep", [](const ExperimentSpec& s, const SystemConfig& c) {
    return run_released(&run_sindr_sweep, s, c);
  }, py::arg("spec"), py::arg("cfg"));
  m.def("run_sync_rmse", [](const ExperimentSpec& s, const SystemConfig& c) {
    return run_released(&run_sync_rmse, s, c);
  }, py::arg("spec"), py::arg("cfg"));
  m.def("run_ber_curve", [](const ExperimentSpec& s, const SystemConfig& c) {
    return run_released(&run_ber_curve, s, c);
  }, py::arg("spec"), py::arg("cfg"));

  m.def("to_csv", &csv_text<SindrRow>, py::arg("rows"));
  m.def("to_csv", &csv_text<RmseRow>, py::arg("rows"));
  m.def("to_csv", &csv_text<BerRow>, py::arg("rows"));
}
