#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "notdm/analysis.hpp"
#include "notdm/framing.hpp"
#include "notdm/receiver.hpp"
#include "notdm/types.hpp"

namespace notdm {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Sweep curve labels: plain OTDM, plain NOTDM, and NOTDM with symbols
/// flagged uncertain scored as resolved by a downstream detector.
enum class SweepMode { otdm, notdm, notdm_resolved };

std::string to_string(SweepMode m);
SweepMode sweep_mode_from_string(const std::string& s);

/// Full experiment description. Loaded from a strict JSON schema: unknown
/// keys anywhere are errors, and every referenced module invariant is
/// revalidated on load.
struct ExperimentConfig {
  // sequence
  int n_lines = 4;
  double line_spacing_hz = 10e9;
  // mux (the NOTDM geometry; OTDM runs derive tau=1 with N branches)
  double tau = 0.8;
  int n_branches = 5;
  // receiver
  std::string response = "identity";  // or "ideal_lowpass"
  double cutoff_hz = 0.0;
  double uncertainty_halfwidth = 0.0;
  double window_length_s = 0.0;  // 0 selects the default 1/df
  // channel
  std::vector<double> ebn0_db;
  std::uint64_t master_seed = 1;
  // run
  std::uint64_t n_symbols = 100000;
  int samples_per_period = 64;
  int symbols_per_frame = 128;
  std::vector<SweepMode> modes = {SweepMode::otdm, SweepMode::notdm};
  int bits_per_symbol = 1;
  // power (rate-capacity inputs; NaN marks an absent value)
  double p_signal = std::numeric_limits<double>::quiet_NaN();
  double p_noise = std::numeric_limits<double>::quiet_NaN();
  double p_isi = std::numeric_limits<double>::quiet_NaN();
  bool estimate_isi = false;
  // generate
  int generate_periods = 4;
  bool generate_spectrum = true;
  // dmin
  std::vector<double> dmin_tau_grid = {1.0, 0.9, 0.8};
  int dmin_periods = 2;

  static ExperimentConfig paper_preset();
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load_file(const std::string& path);
  nlohmann::json to_json() const;  // canonical form
  void validate() const;

  SequenceSpec sequence() const { return SequenceSpec{n_lines, line_spacing_hz}; }
  MuxConfig mux() const;
  MuxConfig mux_for(SweepMode mode) const;
  ReceiverConfig receiver() const;
  bool has_power() const { return !std::isnan(p_signal) && !std::isnan(p_noise); }
};

inline bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.to_json() == b.to_json();
}

}  // namespace notdm
