#pragma once

#include <Eigen/Core>

#include "notdm/framing.hpp"
#include "notdm/types.hpp"

namespace notdm {

enum class ReceiverResponse { identity, ideal_lowpass };

struct ReceiverConfig {
  ReceiverResponse response = ReceiverResponse::identity;
  double cutoff_hz = 0.0;              // used by ideal_lowpass
  double window_length = 0.0;          // s; 0 selects the default 1/df
  double uncertainty_halfwidth = 0.0;  // epsilon, fraction of the nominal amplitude

  void validate() const {
    if (response == ReceiverResponse::ideal_lowpass)
      require(std::isfinite(cutoff_hz) && cutoff_hz > 0.0,
              "ReceiverConfig: lowpass cutoff must be > 0");
    require(window_length >= 0.0 && std::isfinite(window_length),
            "ReceiverConfig: window_length must be >= 0");
    require(uncertainty_halfwidth >= 0.0 && uncertainty_halfwidth < 1.0,
            "ReceiverConfig: uncertainty_halfwidth must be in [0, 1)");
  }
};

struct DecisionResult {
  double value = 0.0;
  int symbol = 1;        // -1 or +1
  bool certain = true;
};

/// Unmodulated sequence delayed by the branch delay; identical to
/// sample_sequence(spec, grid, mux.delays[branch]).
SampledWaveform reference_waveform(const SequenceSpec& spec, const MuxConfig& mux, int branch,
                                   const TimeGrid& grid);

/// Coherent correlator output for one (branch, symbol): the received frame
/// is multiplied by the branch reference, the receiver response is applied,
/// and the result is integrated over the symbol's period window (cyclic
/// wrap). Output is normalized so a noiseless ISI-free symbol reads +/-1.
double correlate_symbol(const FrameWaveform& rx, const ReceiverConfig& cfg, int branch,
                        int symbol_index);

/// Hard 2-PAM decision; ties decide +1. The decision is flagged uncertain
/// when |value| falls inside the uncertainty interval (epsilon = 0 makes
/// every decision certain).
DecisionResult decide_2pam(double value, const ReceiverConfig& cfg);

struct DemodResult {
  SymbolFrame decided;
  Eigen::ArrayXXd values;  // normalized correlator outputs, branch x symbol
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> certain;
};

/// Full-frame demodulation: correlate_symbol + decide_2pam for every
/// (branch, symbol).
DemodResult demodulate_frame(const FrameWaveform& rx, const ReceiverConfig& cfg);

}  // namespace notdm
