#include "notdm/framing.hpp"

#include <cmath>

#include "notdm/signal.hpp"

namespace notdm {

int n_extra_channels(int n_lines) {
  require(n_lines >= 1, "n_extra_channels: N must be >= 1");
  return n_lines / 4;
}

MuxConfig make_mux(const SequenceSpec& spec, double tau, int n_branches) {
  spec.validate();
  require(std::isfinite(tau) && tau > 0.0 && tau <= 1.0, "make_mux: tau must be in (0, 1]");
  require(n_branches >= 1, "make_mux: n_branches must be >= 1");
  // All branch peaks must fit within one period: n tau / (N df) <= 1/df.
  if (double(n_branches) * tau > double(spec.n_lines) * (1.0 + 1e-12))
    throw InvalidArgument("make_mux: branch overflow, " + std::to_string(n_branches) +
                          " branches at tau=" + std::to_string(tau) +
                          " exceed one period (max " +
                          std::to_string(int(std::floor(spec.n_lines / tau + 1e-12))) + ")");
  MuxConfig mux;
  mux.tau = tau;
  mux.n_branches = n_branches;
  mux.base_slot = spec.slot();
  mux.delays = tau * mux.base_slot *
               Eigen::ArrayXd::LinSpaced(n_branches, 0.0, double(n_branches - 1));
  return mux;
}

Eigen::ArrayXd branch_period(const SequenceSpec& spec, const MuxConfig& mux, int branch,
                             int samples_per_period) {
  require(branch >= 0 && branch < mux.n_branches, "branch_period: branch index out of range");
  require(samples_per_period >= spec.n_lines, "branch_period: samples_per_period too small");
  const double dt = spec.period() / samples_per_period;
  const Eigen::ArrayXd times =
      dt * Eigen::ArrayXd::LinSpaced(samples_per_period, 0.0, double(samples_per_period - 1));
  return sequence_samples(spec, times - mux.delays(branch));
}

namespace {

// Frames start at t = 0 and span whole periods; dt must divide the period.
int check_frame_grid(const SequenceSpec& spec, const TimeGrid& grid, int n_symbols) {
  grid.validate();
  require(std::abs(grid.t0) <= 1e-15 * spec.period(), "frame grid must start at t = 0");
  const double per = spec.period() / grid.dt;
  const int spp = int(std::llround(per));
  require(std::abs(per - double(spp)) <= 1e-6 && spp >= spec.n_lines,
          "frame grid: dt must divide the period with >= N samples per period");
  require(grid.n_samples == Eigen::Index(n_symbols) * spp,
          "frame grid must span exactly n_symbols whole periods");
  return spp;
}

}  // namespace

SampledWaveform modulate_branch(const SequenceSpec& spec, const MuxConfig& mux, int branch,
                                const Eigen::ArrayXd& symbols, const TimeGrid& grid) {
  spec.validate();
  mux.validate();
  require(branch >= 0 && branch < mux.n_branches, "modulate_branch: branch index out of range");
  require(symbols.size() >= 1, "modulate_branch: empty symbol list");
  require(((symbols == 1.0) || (symbols == -1.0)).all(),
          "modulate_branch: symbols must be exactly -1 or +1");
  const int M = static_cast<int>(symbols.size());
  const int spp = check_frame_grid(spec, grid, M);

  const Eigen::ArrayXd period = branch_period(spec, mux, branch, spp);
  SampledWaveform w;
  w.sample_rate = 1.0 / grid.dt;
  w.start_time = 0.0;
  w.samples.resize(grid.n_samples);
  for (int m = 0; m < M; ++m)
    w.samples.segment(Eigen::Index(m) * spp, spp) = (symbols(m) * period_sign(spec, m)) * period;
  return w;
}

FrameWaveform multiplex(const SequenceSpec& spec, const MuxConfig& mux, const SymbolFrame& frame,
                        const TimeGrid& grid) {
  spec.validate();
  mux.validate();
  frame.validate();
  require(frame.n_branches() == mux.n_branches,
          "multiplex: frame/mux branch count mismatch");
  const int M = frame.n_symbols();
  const int spp = check_frame_grid(spec, grid, M);

  FrameWaveform out;
  out.layout = FrameLayout{spec, mux, M, spp};
  out.waveform.sample_rate = 1.0 / grid.dt;
  out.waveform.start_time = 0.0;
  out.waveform.samples = Eigen::ArrayXd::Zero(grid.n_samples);
  for (int i = 0; i < mux.n_branches; ++i) {
    const Eigen::ArrayXd period = branch_period(spec, mux, i, spp);
    for (int m = 0; m < M; ++m)
      out.waveform.samples.segment(Eigen::Index(m) * spp, spp) +=
          (frame.symbols(i, m) * period_sign(spec, m)) * period;
  }
  return out;
}

FrameWaveform multiplex(const FrameLayout& layout, const SymbolFrame& frame) {
  layout.validate();
  return multiplex(layout.spec, layout.mux, frame, layout.grid());
}

}  // namespace notdm
