// onebit-sim: command-line front end for the link-level experiments.
//
//   onebit-sim run --experiment sindr-sweep --scenario fig1.toml --out fig1.csv --seed 42
//   onebit-sim validate --scenario bad.toml
//   onebit-sim dump-metric --scenario sync.toml --ue 0 --snr-db 10 --out gamma.csv

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "onebit/error.hpp"
#include "onebit/experiments.hpp"
#include "onebit/scenario.hpp"

namespace {

struct CommonOptions {
  std::string experiment;
  std::string scenario;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool paper_scale = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw onebit::ConfigError("cannot open scenario file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

bool has_key(const std::vector<std::string>& keys, const std::string& key) {
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

// Command-line flags fill in the experiment kind and scale when the scenario
// leaves them open; a contradiction is an error.
onebit::Scenario resolve(const CommonOptions& opt) {
  onebit::Scenario sc;
  if (opt.scenario.empty()) {
    if (opt.experiment.empty()) {
      throw onebit::ConfigError("either --scenario or --experiment is required");
    }
    sc = onebit::default_scenario(onebit::parse_experiment_kind(opt.experiment), opt.paper_scale);
  } else {
    std::string text = read_file(opt.scenario);
    const auto keys = onebit::scenario_keys(text);
    if (!opt.experiment.empty()) {
      if (has_key(keys, "experiment")) {
        const auto file_kind = onebit::parse_scenario(text).spec.kind;
        if (file_kind != onebit::parse_experiment_kind(opt.experiment)) {
          throw onebit::ConfigError("--experiment " + opt.experiment +
                                    " contradicts the scenario's experiment = " +
                                    std::string(onebit::to_string(file_kind)));
        }
      } else {
        text += "\nexperiment = " + opt.experiment + "\n";
      }
    }
    if (opt.paper_scale) {
      if (has_key(keys, "scale")) {
        throw onebit::ConfigError("--paper-scale given but the scenario already sets 'scale'");
      }
      text += "\nscale = paper\n";
    }
    sc = onebit::parse_scenario(text);
  }
  if (opt.seed) sc.cfg.master_seed = *opt.seed;
  if (opt.threads) sc.spec.threads = *opt.threads;
  if (!opt.out.empty()) sc.spec.output = opt.out;
  return sc;
}

template <typename Rows>
void emit(const Rows& rows, const std::string& path) {
  if (path.empty() || path == "-") {
    onebit::write_csv(std::cout, rows);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw onebit::ConfigError("cannot write '" + path + "'");
  onebit::write_csv(out, rows);
}

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--experiment", opt.experiment, "sindr-sweep | sync-rmse | ber-curve");
  cmd->add_option("--scenario", opt.scenario, "scenario file (key = value)");
  cmd->add_option("--seed", opt.seed, "master seed (overrides the scenario)");
  cmd->add_option("--threads", opt.threads, "worker threads (results do not depend on it)");
  cmd->add_flag("--paper-scale", opt.paper_scale, "B=128, N=2048, S=1200, G=144 sync/BER presets");
}

int run(const CommonOptions& opt) {
  const onebit::Scenario sc = resolve(opt);
  sc.spec.validate(sc.cfg);
  switch (sc.spec.kind) {
    case onebit::ExperimentKind::kSindrSweep:
      emit(onebit::run_sindr_sweep(sc.spec, sc.cfg), sc.spec.output);
      break;
    case onebit::ExperimentKind::kSyncRmse:
      emit(onebit::run_sync_rmse(sc.spec, sc.cfg), sc.spec.output);
      break;
    case onebit::ExperimentKind::kBerCurve:
      emit(onebit::run_ber_curve(sc.spec, sc.cfg), sc.spec.output);
      break;
  }
  return 0;
}

int validate(const CommonOptions& opt) {
  const onebit::Scenario sc = resolve(opt);
  sc.spec.validate(sc.cfg);
  const auto& c = sc.cfg;
  std::cout << "ok: " << onebit::to_string(sc.spec.kind) << " B=" << c.B << " U=" << c.U
            << " N=" << c.N << " S=" << c.used_subcarriers.size() << " G=" << c.G << " L=" << c.L
            << " OSR=" << c.osr() << " trials=" << c.trials << "\n";
  return 0;
}

int dump_metric(const CommonOptions& opt, int trial, int ue, double snr_db,
                const std::string& dac) {
  CommonOptions o = opt;
  if (o.scenario.empty() && o.experiment.empty()) o.experiment = "sync-rmse";
  const onebit::Scenario sc = resolve(o);
  const auto trace =
      onebit::trace_sync_metric(sc.cfg, trial, ue, snr_db, onebit::parse_dac_mode(dac));
  std::cerr << "tau=" << trace.offset.tau << " tau_est=" << trace.offset.tau_est
            << " eps=" << trace.offset.eps << " eps_est=" << trace.offset.eps_est << "\n";
  if (sc.spec.output.empty() || sc.spec.output == "-") {
    onebit::write_metric_csv(std::cout, trace.metrics);
  } else {
    std::ofstream out(sc.spec.output, std::ios::binary);
    if (!out) throw onebit::ConfigError("cannot write '" + sc.spec.output + "'");
    onebit::write_metric_csv(out, trace.metrics);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-bit massive MU-MIMO-OFDM downlink link-level simulator"};
  app.require_subcommand(1);

  CommonOptions run_opt;
  auto* run_cmd = app.add_subcommand("run", "run an experiment and write its CSV");
  add_common(run_cmd, run_opt);
  run_cmd->add_option("--out", run_opt.out, "output CSV path (default: stdout)");

  CommonOptions validate_opt;
  auto* validate_cmd = app.add_subcommand("validate", "check a scenario without running it");
  add_common(validate_cmd, validate_opt);

  CommonOptions dump_opt;
  int trial = 0;
  int ue = 0;
  double snr_db = 20.0;
  std::string dac = "one_bit";
  auto* dump_cmd = app.add_subcommand("dump-metric", "write the timing metric trace as CSV");
  add_common(dump_cmd, dump_opt);
  dump_cmd->add_option("--out", dump_opt.out, "output CSV path (default: stdout)");
  dump_cmd->add_option("--trial", trial, "trial (channel realization) index");
  dump_cmd->add_option("--ue", ue, "UE index");
  dump_cmd->add_option("--snr-db", snr_db, "SNR in dB");
  dump_cmd->add_option("--dac-mode", dac, "one_bit | infinite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(run_opt);
    if (*validate_cmd) return validate(validate_opt);
    if (*dump_cmd) return dump_metric(dump_opt, trial, ue, snr_db, dac);
  } catch (const onebit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
