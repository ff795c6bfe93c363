#include "notdm/config.hpp"

#include <fstream>
#include <set>

namespace notdm {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw InvalidArgument("config field " + path + ": expected an object");
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw InvalidArgument("config field " + path + "." + item.key() + ": unknown key");
}

template <class T>
T get_req(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key))
    throw InvalidArgument("config field " + path + "." + key + ": missing");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidArgument("config field " + path + "." + key + ": " + e.what());
  }
}

template <class T>
T get_opt(const json& j, const std::string& path, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  return get_req<T>(j, path, key);
}

}  // namespace

std::string to_string(SweepMode m) {
  switch (m) {
    case SweepMode::otdm: return "otdm";
    case SweepMode::notdm: return "notdm";
    case SweepMode::notdm_resolved: return "notdm_resolved";
  }
  return "?";
}

SweepMode sweep_mode_from_string(const std::string& s) {
  if (s == "otdm") return SweepMode::otdm;
  if (s == "notdm") return SweepMode::notdm;
  if (s == "notdm_resolved") return SweepMode::notdm_resolved;
  throw InvalidArgument("config: unknown mode \"" + s +
                        "\" (expected otdm, notdm or notdm_resolved)");
}

ExperimentConfig ExperimentConfig::paper_preset() {
  ExperimentConfig c;
  c.n_lines = 4;
  c.line_spacing_hz = 10e9;
  c.tau = 0.8;
  c.n_branches = 5;
  c.response = "identity";
  c.uncertainty_halfwidth = 0.5;
  c.ebn0_db = {0, 2, 4, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16};
  c.master_seed = 424242;
  c.n_symbols = 1ULL << 18;
  c.samples_per_period = 64;
  c.symbols_per_frame = 128;
  c.modes = {SweepMode::otdm, SweepMode::notdm, SweepMode::notdm_resolved};
  c.bits_per_symbol = 1;
  c.p_signal = 1.0;
  c.p_noise = 1.0;
  c.estimate_isi = true;
  c.dmin_tau_grid = {1.0, 0.9, 0.8};
  c.dmin_periods = 2;
  return c;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  check_keys(j, "config",
             {"sequence", "mux", "receiver", "channel", "run", "power", "generate", "dmin"});
  ExperimentConfig c;

  const json& seq = j.contains("sequence") ? j.at("sequence") : json::object();
  check_keys(seq, "sequence", {"n_lines", "line_spacing_hz"});
  c.n_lines = get_req<int>(seq, "sequence", "n_lines");
  c.line_spacing_hz = get_req<double>(seq, "sequence", "line_spacing_hz");

  const json& mux = j.contains("mux") ? j.at("mux") : json::object();
  check_keys(mux, "mux", {"tau", "n_branches"});
  c.tau = get_req<double>(mux, "mux", "tau");
  c.n_branches = get_req<int>(mux, "mux", "n_branches");

  if (j.contains("receiver")) {
    const json& rx = j.at("receiver");
    check_keys(rx, "receiver",
               {"response", "cutoff_hz", "uncertainty_halfwidth", "window_length_s"});
    c.response = get_opt<std::string>(rx, "receiver", "response", "identity");
    c.cutoff_hz = get_opt<double>(rx, "receiver", "cutoff_hz", 0.0);
    c.uncertainty_halfwidth = get_opt<double>(rx, "receiver", "uncertainty_halfwidth", 0.0);
    c.window_length_s = get_opt<double>(rx, "receiver", "window_length_s", 0.0);
  }

  const json& ch = j.contains("channel") ? j.at("channel") : json::object();
  check_keys(ch, "channel", {"ebn0_db", "master_seed"});
  c.ebn0_db = get_opt<std::vector<double>>(ch, "channel", "ebn0_db", {});
  c.master_seed = get_opt<std::uint64_t>(ch, "channel", "master_seed", 1);

  if (j.contains("run")) {
    const json& run = j.at("run");
    check_keys(run, "run",
               {"n_symbols", "samples_per_period", "symbols_per_frame", "modes",
                "bits_per_symbol"});
    c.n_symbols = get_opt<std::uint64_t>(run, "run", "n_symbols", c.n_symbols);
    c.samples_per_period = get_opt<int>(run, "run", "samples_per_period", c.samples_per_period);
    c.symbols_per_frame = get_opt<int>(run, "run", "symbols_per_frame", c.symbols_per_frame);
    c.bits_per_symbol = get_opt<int>(run, "run", "bits_per_symbol", c.bits_per_symbol);
    if (run.contains("modes")) {
      c.modes.clear();
      for (const auto& s : get_req<std::vector<std::string>>(run, "run", "modes"))
        c.modes.push_back(sweep_mode_from_string(s));
    }
  }

  if (j.contains("power")) {
    const json& pw = j.at("power");
    check_keys(pw, "power", {"signal", "noise", "isi", "estimate_isi"});
    c.p_signal = get_opt<double>(pw, "power", "signal", c.p_signal);
    c.p_noise = get_opt<double>(pw, "power", "noise", c.p_noise);
    c.p_isi = get_opt<double>(pw, "power", "isi", c.p_isi);
    c.estimate_isi = get_opt<bool>(pw, "power", "estimate_isi", false);
    if (!std::isnan(c.p_isi) && c.estimate_isi)
      throw InvalidArgument("config field power: isi and estimate_isi are mutually exclusive");
  }

  if (j.contains("generate")) {
    const json& gen = j.at("generate");
    check_keys(gen, "generate", {"n_periods", "spectrum"});
    c.generate_periods = get_opt<int>(gen, "generate", "n_periods", c.generate_periods);
    c.generate_spectrum = get_opt<bool>(gen, "generate", "spectrum", c.generate_spectrum);
  }

  if (j.contains("dmin")) {
    const json& dm = j.at("dmin");
    check_keys(dm, "dmin", {"tau_grid", "n_periods"});
    c.dmin_tau_grid = get_opt<std::vector<double>>(dm, "dmin", "tau_grid", c.dmin_tau_grid);
    c.dmin_periods = get_opt<int>(dm, "dmin", "n_periods", c.dmin_periods);
  }

  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RuntimeError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("config parse error in " + path + ": " + e.what());
  }
  return from_json(j);
}

json ExperimentConfig::to_json() const {
  json j;
  j["sequence"] = {{"n_lines", n_lines}, {"line_spacing_hz", line_spacing_hz}};
  j["mux"] = {{"tau", tau}, {"n_branches", n_branches}};
  json rx = {{"response", response},
             {"uncertainty_halfwidth", uncertainty_halfwidth}};
  if (cutoff_hz > 0.0) rx["cutoff_hz"] = cutoff_hz;
  if (window_length_s > 0.0) rx["window_length_s"] = window_length_s;
  j["receiver"] = rx;
  j["channel"] = {{"ebn0_db", ebn0_db}, {"master_seed", master_seed}};
  std::vector<std::string> mode_names;
  for (SweepMode m : modes) mode_names.push_back(to_string(m));
  j["run"] = {{"n_symbols", n_symbols},
              {"samples_per_period", samples_per_period},
              {"symbols_per_frame", symbols_per_frame},
              {"modes", mode_names},
              {"bits_per_symbol", bits_per_symbol}};
  if (has_power() || estimate_isi || !std::isnan(p_isi)) {
    json pw;
    if (!std::isnan(p_signal)) pw["signal"] = p_signal;
    if (!std::isnan(p_noise)) pw["noise"] = p_noise;
    if (!std::isnan(p_isi)) pw["isi"] = p_isi;
    if (estimate_isi) pw["estimate_isi"] = true;
    j["power"] = pw;
  }
  j["generate"] = {{"n_periods", generate_periods}, {"spectrum", generate_spectrum}};
  j["dmin"] = {{"tau_grid", dmin_tau_grid}, {"n_periods", dmin_periods}};
  return j;
}

void ExperimentConfig::validate() const {
  sequence().validate();
  make_mux(sequence(), tau, n_branches);  // rejects invalid geometry
  receiver().validate();
  for (size_t k = 0; k < ebn0_db.size(); ++k) {
    require(std::isfinite(ebn0_db[k]), "config field channel.ebn0_db: entries must be finite");
    if (k > 0)
      require(ebn0_db[k] > ebn0_db[k - 1],
              "config field channel.ebn0_db: entries must be strictly ascending");
  }
  require(n_symbols >= 1, "config field run.n_symbols: must be >= 1");
  require(samples_per_period >= n_lines,
          "config field run.samples_per_period: must be >= sequence.n_lines");
  require(symbols_per_frame >= 3, "config field run.symbols_per_frame: must be >= 3");
  require(bits_per_symbol >= 1, "config field run.bits_per_symbol: must be >= 1");
  require(!modes.empty(), "config field run.modes: must not be empty");
  if (!std::isnan(p_signal)) require(p_signal >= 0.0, "config field power.signal: must be >= 0");
  if (!std::isnan(p_noise)) require(p_noise > 0.0, "config field power.noise: must be > 0");
  if (!std::isnan(p_isi)) require(p_isi >= 0.0, "config field power.isi: must be >= 0");
  require(generate_periods >= 1, "config field generate.n_periods: must be >= 1");
  require(!dmin_tau_grid.empty(), "config field dmin.tau_grid: must not be empty");
  for (double t : dmin_tau_grid)
    require(std::isfinite(t) && t > 0.0 && t <= 1.0,
            "config field dmin.tau_grid: entries must be in (0, 1]");
  require(dmin_periods >= 1, "config field dmin.n_periods: must be >= 1");
}

MuxConfig ExperimentConfig::mux() const { return make_mux(sequence(), tau, n_branches); }

MuxConfig ExperimentConfig::mux_for(SweepMode mode) const {
  if (mode == SweepMode::otdm) return make_mux(sequence(), 1.0, n_lines);
  return mux();
}

ReceiverConfig ExperimentConfig::receiver() const {
  ReceiverConfig rx;
  if (response == "identity") {
    rx.response = ReceiverResponse::identity;
  } else if (response == "ideal_lowpass") {
    rx.response = ReceiverResponse::ideal_lowpass;
    rx.cutoff_hz = cutoff_hz;
  } else {
    throw InvalidArgument("config field receiver.response: unknown value \"" + response + "\"");
  }
  rx.window_length = window_length_s;
  rx.uncertainty_halfwidth = uncertainty_halfwidth;
  return rx;
}

}  // namespace notdm
