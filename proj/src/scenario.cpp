#include "onebit/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "onebit/error.hpp"

namespace onebit {
namespace {

struct Entry {
  std::string value;
  int line;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    s = s.substr(1, s.size() - 2);
  }
  return std::string(s);
}

[[noreturn]] void fail(const Entry& e, const std::string& key, const std::string& msg) {
  throw ConfigError("scenario line " + std::to_string(e.line) + " (" + key + "): " + msg);
}

double to_double(const Entry& e, const std::string& key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    fail(e, key, "expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

long long to_int(const Entry& e, const std::string& key, std::string_view text) {
  text = trim(text);
  long long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    fail(e, key, "expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

// Splits "[a, b, c]" (brackets optional) into trimmed, unquoted items.
std::vector<std::string> list_items(const Entry& e, const std::string& key) {
  std::string_view s = trim(e.value);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') fail(e, key, "unterminated list");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<std::string> items;
  while (!trim(s).empty()) {
    const auto comma = s.find(',');
    const std::string item = unquote(s.substr(0, comma));
    if (item.empty()) fail(e, key, "empty list item");
    items.push_back(item);
    if (comma == std::string_view::npos) break;
    s = s.substr(comma + 1);
  }
  if (items.empty()) fail(e, key, "list is empty");
  return items;
}

// Items may be ranges "a:b" or "a:step:b", inclusive of b (within 1e-9 step).
std::vector<double> real_list(const Entry& e, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : list_items(e, key)) {
    std::vector<std::string_view> parts;
    std::string_view rest = item;
    for (auto colon = rest.find(':'); colon != std::string_view::npos; colon = rest.find(':')) {
      parts.push_back(rest.substr(0, colon));
      rest = rest.substr(colon + 1);
    }
    parts.push_back(rest);
    if (parts.size() == 1) {
      out.push_back(to_double(e, key, parts[0]));
      continue;
    }
    if (parts.size() > 3) fail(e, key, "range must be a:b or a:step:b");
    const double a = to_double(e, key, parts[0]);
    const double step = parts.size() == 3 ? to_double(e, key, parts[1]) : 1.0;
    const double b = to_double(e, key, parts.back());
    if (!(step > 0.0) || b < a) fail(e, key, "range needs a positive step and a <= b");
    const auto n = static_cast<long long>(std::floor((b - a) / step + 1e-9));
    for (long long i = 0; i <= n; ++i) {
      // Snap values like 0.1*3 onto the printed decimal grid.
      const double v = a + static_cast<double>(i) * step;
      out.push_back(std::round(v * 1e12) / 1e12);
    }
  }
  return out;
}

std::vector<std::int64_t> int_list(const Entry& e, const std::string& key) {
  std::vector<std::int64_t> out;
  for (double v : real_list(e, key)) {
    if (v != std::floor(v)) fail(e, key, "expected integers");
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

std::vector<int> subcarrier_list(const Entry& e, const std::string& key, int N) {
  const std::string v = unquote(e.value);
  if (v == "all") return all_subcarriers(N);
  if (v.rfind("dc:", 0) == 0) {
    return dc_centered_subcarriers(N, static_cast<int>(to_int(e, key, std::string_view(v).substr(3))));
  }
  std::vector<int> out;
  for (auto k : int_list(e, key)) out.push_back(static_cast<int>(k));
  return out;
}

std::map<std::string, Entry> tokenize(std::string_view text) {
  std::map<std::string, Entry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("scenario line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      throw ConfigError("scenario line " + std::to_string(line_no) + ": empty key or value");
    }
    if (!entries.emplace(key, Entry{value, line_no}).second) {
      throw ConfigError("scenario line " + std::to_string(line_no) + ": key '" + key +
                        "' given more than once");
    }
  }
  return entries;
}

}  // namespace

Scenario default_scenario(ExperimentKind kind, bool paper_scale) {
  Scenario sc;
  sc.spec.kind = kind;
  switch (kind) {
    case ExperimentKind::kSindrSweep:
      sc.cfg = sindr_reference_config();
      for (std::int64_t t = -32; t <= 32; ++t) sc.spec.delta_tau.push_back(t);
      sc.spec.delta_eps = {0.0, 0.001, 0.01};
      sc.spec.eps_sweep_tau = {0, 4, 12};
      for (int i = 0; i <= 10; ++i) sc.spec.eps_sweep_values.push_back(0.05 * i);
      break;
    case ExperimentKind::kSyncRmse:
      sc.cfg = paper_scale ? paper_scale_config() : desk_scale_config();
      for (int i = 0; i <= 16; ++i) sc.spec.snr_db.push_back(-10.0 + 2.5 * i);
      break;
    case ExperimentKind::kBerCurve:
      sc.cfg = paper_scale ? paper_scale_config() : desk_scale_config();
      for (int i = 0; i <= 20; ++i) sc.spec.snr_db.push_back(-10.0 + 2.5 * i);
      break;
  }
  return sc;
}

Scenario parse_scenario(std::string_view text) {
  auto entries = tokenize(text);
  auto take = [&](const std::string& key) -> const Entry* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };

  ExperimentKind kind = ExperimentKind::kSindrSweep;
  if (const Entry* e = take("experiment")) {
    try {
      kind = parse_experiment_kind(unquote(e->value));
    } catch (const ConfigError& err) {
      fail(*e, "experiment", err.what());
    }
  } else {
    throw ConfigError("scenario: missing required key 'experiment'");
  }
  bool paper = false;
  if (const Entry* e = take("scale")) {
    const std::string v = unquote(e->value);
    if (v != "desk" && v != "paper") fail(*e, "scale", "expected desk or paper");
    paper = v == "paper";
  }
  Scenario sc = default_scenario(kind, paper);
  SystemConfig& cfg = sc.cfg;
  ExperimentSpec& spec = sc.spec;

  auto int_key = [&](const char* key, int& target) {
    if (const Entry* e = take(key)) target = static_cast<int>(to_int(*e, key, e->value));
  };
  int_key("B", cfg.B);
  int_key("U", cfg.U);
  const int preset_N = cfg.N;
  int_key("N", cfg.N);
  int_key("G", cfg.G);
  int_key("L", cfg.L);
  int_key("P", cfg.P);
  int_key("D", cfg.D);
  int_key("trials", cfg.trials);
  int_key("threads", spec.threads);
  if (const Entry* e = take("seed")) {
    const long long seed = to_int(*e, "seed", e->value);
    cfg.master_seed = static_cast<std::uint64_t>(seed);
  }
  if (const Entry* e = take("n0_db")) cfg.N0 = db_to_linear(to_double(*e, "n0_db", e->value));
  if (const Entry* e = take("N0")) cfg.N0 = to_double(*e, "N0", e->value);
  if (const Entry* e = take("snr_db")) spec.snr_db = real_list(*e, "snr_db");
  if (const Entry* e = take("subcarriers")) {
    cfg.used_subcarriers = subcarrier_list(*e, "subcarriers", cfg.N);
  } else if (cfg.N != preset_N) {
    if (kind == ExperimentKind::kSindrSweep) {
      cfg.used_subcarriers = all_subcarriers(cfg.N);
    } else {
      throw ConfigError("scenario: 'subcarriers' must be given when N differs from the preset");
    }
  }
  if (const Entry* e = take("dac_modes")) {
    spec.dac_modes.clear();
    for (const auto& v : list_items(*e, "dac_modes")) {
      try {
        spec.dac_modes.push_back(parse_dac_mode(v));
      } catch (const ConfigError& err) {
        fail(*e, "dac_modes", err.what());
      }
    }
  }
  if (const Entry* e = take("sync_modes")) {
    spec.sync_modes.clear();
    for (const auto& v : list_items(*e, "sync_modes")) {
      try {
        spec.sync_modes.push_back(parse_sync_mode(v));
      } catch (const ConfigError& err) {
        fail(*e, "sync_modes", err.what());
      }
    }
  }
  if (const Entry* e = take("gain_mode")) {
    try {
      cfg.gain_mode = parse_gain_mode(unquote(e->value));
    } catch (const ConfigError& err) {
      fail(*e, "gain_mode", err.what());
    }
  }
  if (const Entry* e = take("delta_tau")) spec.delta_tau = int_list(*e, "delta_tau");
  if (const Entry* e = take("delta_eps")) spec.delta_eps = real_list(*e, "delta_eps");
  if (const Entry* e = take("eps_sweep_tau")) spec.eps_sweep_tau = int_list(*e, "eps_sweep_tau");
  if (const Entry* e = take("eps_sweep_values")) spec.eps_sweep_values = real_list(*e, "eps_sweep_values");
  if (const Entry* e = take("output")) spec.output = unquote(e->value);

  static const char* kKnown[] = {"experiment", "scale", "B", "U", "N", "G", "L", "P", "D",
                                 "trials", "threads", "seed", "n0_db", "N0", "snr_db",
                                 "subcarriers", "dac_modes", "sync_modes", "gain_mode",
                                 "delta_tau", "delta_eps", "eps_sweep_tau", "eps_sweep_values",
                                 "output"};
  for (const auto& [key, e] : entries) {
    bool known = false;
    for (const char* k : kKnown) known = known || key == k;
    if (!known) fail(e, key, "unknown key");
  }
  return sc;
}

std::vector<std::string> scenario_keys(std::string_view text) {
  std::vector<std::string> keys;
  for (const auto& [key, e] : tokenize(text)) keys.push_back(key);
  return keys;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

}  // namespace onebit
