#pragma once

#include <Eigen/Core>

#include "notdm/types.hpp"

namespace notdm {

/// Number of extra TDM branches gained at acceleration 0.8: floor(N/4).
int n_extra_channels(int n_lines);

/// TDM geometry: acceleration factor tau in (0, 1], branch count and the
/// per-branch delays i * tau / (N df). All branch peaks must fit within
/// one repetition period.
struct MuxConfig {
  double tau = 1.0;
  int n_branches = 0;
  double base_slot = 0.0;  // 1/(N df), s
  Eigen::ArrayXd delays;   // s

  void validate() const {
    require(std::isfinite(tau) && tau > 0.0 && tau <= 1.0, "MuxConfig: tau must be in (0, 1]");
    require(n_branches >= 1, "MuxConfig: n_branches must be >= 1");
    require(base_slot > 0.0, "MuxConfig: base_slot must be > 0");
    require(delays.size() == n_branches, "MuxConfig: delays/n_branches mismatch");
  }
};

MuxConfig make_mux(const SequenceSpec& spec, double tau, int n_branches);

/// Per-branch antipodal symbol streams; symbols(i, m) is the m-th symbol
/// of branch i, every entry exactly -1 or +1.
struct SymbolFrame {
  Eigen::ArrayXXd symbols;  // n_branches x n_symbols

  int n_branches() const { return static_cast<int>(symbols.rows()); }
  int n_symbols() const { return static_cast<int>(symbols.cols()); }

  void validate() const {
    require(symbols.rows() >= 1 && symbols.cols() >= 1, "SymbolFrame: empty");
    require(((symbols == 1.0) || (symbols == -1.0)).all(),
            "SymbolFrame: symbols must be exactly -1 or +1");
  }
};

/// Geometry of a cyclic frame: n_symbols periods sampled at
/// samples_per_period points each, starting at t = 0.
struct FrameLayout {
  SequenceSpec spec;
  MuxConfig mux;
  int n_symbols = 0;
  int samples_per_period = 0;

  double dt() const { return spec.period() / samples_per_period; }
  Eigen::Index total_samples() const {
    return static_cast<Eigen::Index>(n_symbols) * samples_per_period;
  }
  TimeGrid grid() const { return TimeGrid{0.0, dt(), total_samples()}; }

  void validate() const {
    spec.validate();
    mux.validate();
    require(n_symbols >= 1, "FrameLayout: n_symbols must be >= 1");
    require(samples_per_period >= spec.n_lines,
            "FrameLayout: samples_per_period must be >= n_lines");
  }
};

struct FrameWaveform {
  SampledWaveform waveform;
  FrameLayout layout;
};

/// One period of the delayed sequence, f(k dt - delays[branch]) for
/// k = 0 .. samples_per_period-1. The sequence over the whole frame is this
/// template tiled period by period (negated on odd periods for even N).
Eigen::ArrayXd branch_period(const SequenceSpec& spec, const MuxConfig& mux, int branch,
                             int samples_per_period);

/// Sign of period m of the sequence: +1 for odd N, (-1)^m for even N.
inline double period_sign(const SequenceSpec& spec, int m) {
  return (spec.n_lines % 2 == 0 && (m & 1)) ? -1.0 : 1.0;
}

/// Rectangular-gated 2-PAM modulation of one delayed branch. The gate is
/// constant over each period window [m T, (m+1) T) and takes the value
/// symbols[m]; the carrier is the true delayed sequence.
SampledWaveform modulate_branch(const SequenceSpec& spec, const MuxConfig& mux, int branch,
                                const Eigen::ArrayXd& symbols, const TimeGrid& grid);

/// Sum of all modulated branches: the composite (N)OTDM transmit frame.
FrameWaveform multiplex(const SequenceSpec& spec, const MuxConfig& mux, const SymbolFrame& frame,
                        const TimeGrid& grid);

/// Convenience overload building the grid from the layout.
FrameWaveform multiplex(const FrameLayout& layout, const SymbolFrame& frame);

}  // namespace notdm
