#include "notdm/receiver.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <vector>

#include "notdm/signal.hpp"

namespace notdm {

SampledWaveform reference_waveform(const SequenceSpec& spec, const MuxConfig& mux, int branch,
                                   const TimeGrid& grid) {
  mux.validate();
  require(branch >= 0 && branch < mux.n_branches,
          "reference_waveform: branch index out of range");
  return sample_sequence(spec, grid, mux.delays(branch));
}

namespace {

// Reference over the whole frame, tiled from the one-period template.
Eigen::ArrayXd tiled_reference(const FrameLayout& layout, int branch) {
  const int spp = layout.samples_per_period;
  const Eigen::ArrayXd period = branch_period(layout.spec, layout.mux, branch, spp);
  Eigen::ArrayXd ref(layout.total_samples());
  for (int m = 0; m < layout.n_symbols; ++m)
    ref.segment(Eigen::Index(m) * spp, spp) = period_sign(layout.spec, m) * period;
  return ref;
}

void apply_ideal_lowpass(Eigen::ArrayXd& x, double sample_rate, double cutoff_hz) {
  const Eigen::Index n = x.size();
  Eigen::FFT<double> fft;
  std::vector<double> in(x.data(), x.data() + n);
  std::vector<std::complex<double>> spec;
  fft.fwd(spec, in);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double bin = double(k <= n / 2 ? k : k - n);
    if (std::abs(bin) * sample_rate / double(n) > cutoff_hz) spec[size_t(k)] = 0.0;
  }
  std::vector<double> out;
  fft.inv(out, spec);
  for (Eigen::Index k = 0; k < n; ++k) x(k) = out[size_t(k)];
}

// Cyclic left-Riemann integral over [start_sample, start_sample + len).
double window_sum(const Eigen::ArrayXd& x, Eigen::Index start, Eigen::Index len) {
  const Eigen::Index n = x.size();
  double acc = 0.0;
  Eigen::Index k = ((start % n) + n) % n;
  for (Eigen::Index c = 0; c < len; ++c) {
    acc += x(k);
    if (++k == n) k = 0;
  }
  return acc;
}

struct WindowGeometry {
  Eigen::Index start;  // sample offset of the window within period m = 0
  Eigen::Index len;
};

WindowGeometry window_geometry(const FrameLayout& layout, const ReceiverConfig& cfg) {
  const double period = layout.spec.period();
  const double w = cfg.window_length > 0.0 ? cfg.window_length : period;
  require(w <= double(layout.n_symbols) * period * (1.0 + 1e-12),
          "correlate_symbol: window exceeds frame coverage");
  const double dt = layout.dt();
  const auto len = static_cast<Eigen::Index>(std::llround(w / dt));
  require(len >= 1, "correlate_symbol: window shorter than one sample");
  // Window centered within the period window [mT, (m+1)T).
  const auto off = static_cast<Eigen::Index>(std::llround(0.5 * (period - w) / dt));
  return {off, len};
}

}  // namespace

double correlate_symbol(const FrameWaveform& rx, const ReceiverConfig& cfg, int branch,
                        int symbol_index) {
  cfg.validate();
  const FrameLayout& layout = rx.layout;
  layout.validate();
  require(rx.waveform.size() == layout.total_samples(),
          "correlate_symbol: waveform/layout size mismatch");
  require(branch >= 0 && branch < layout.mux.n_branches,
          "correlate_symbol: branch index out of range");
  require(symbol_index >= 0 && symbol_index < layout.n_symbols,
          "correlate_symbol: symbol index out of range");

  const Eigen::ArrayXd ref = tiled_reference(layout, branch);
  Eigen::ArrayXd prod = rx.waveform.samples * ref;
  Eigen::ArrayXd norm_prod = ref * ref;
  if (cfg.response == ReceiverResponse::ideal_lowpass) {
    apply_ideal_lowpass(prod, rx.waveform.sample_rate, cfg.cutoff_hz);
    apply_ideal_lowpass(norm_prod, rx.waveform.sample_rate, cfg.cutoff_hz);
  }
  const WindowGeometry geo = window_geometry(layout, cfg);
  const Eigen::Index base = Eigen::Index(symbol_index) * layout.samples_per_period + geo.start;
  const double dt = layout.dt();
  const double norm = window_sum(norm_prod, base, geo.len) * dt;
  require(norm > 0.0, "correlate_symbol: degenerate reference window");
  return window_sum(prod, base, geo.len) * dt / norm;
}

DecisionResult decide_2pam(double value, const ReceiverConfig& cfg) {
  require(std::isfinite(value), "decide_2pam: value must be finite");
  DecisionResult r;
  r.value = value;
  r.symbol = value >= 0.0 ? 1 : -1;
  const double eps = cfg.uncertainty_halfwidth;
  r.certain = (eps == 0.0) || (std::abs(value) > eps);
  return r;
}

DemodResult demodulate_frame(const FrameWaveform& rx, const ReceiverConfig& cfg) {
  cfg.validate();
  const FrameLayout& layout = rx.layout;
  layout.validate();
  require(rx.waveform.size() == layout.total_samples(),
          "demodulate_frame: waveform/layout size mismatch");

  const int nb = layout.mux.n_branches;
  const int M = layout.n_symbols;
  const int spp = layout.samples_per_period;
  const double dt = layout.dt();

  DemodResult out;
  out.values.resize(nb, M);

  const bool fast = cfg.response == ReceiverResponse::identity &&
                    (cfg.window_length == 0.0 ||
                     std::abs(cfg.window_length - layout.spec.period()) <=
                         1e-12 * layout.spec.period());
  if (fast) {
    // One matched-filter dot product per period window per branch.
    const Eigen::Map<const Eigen::MatrixXd> rx_mat(rx.waveform.samples.data(), spp, M);
    for (int i = 0; i < nb; ++i) {
      const Eigen::ArrayXd period = branch_period(layout.spec, layout.mux, i, spp);
      const double norm = period.square().sum() * dt;
      Eigen::RowVectorXd v = period.matrix().transpose() * rx_mat;
      for (int m = 0; m < M; ++m)
        out.values(i, m) = period_sign(layout.spec, m) * v(m) * dt / norm;
    }
  } else {
    const WindowGeometry geo = window_geometry(layout, cfg);
    for (int i = 0; i < nb; ++i) {
      const Eigen::ArrayXd ref = tiled_reference(layout, i);
      Eigen::ArrayXd prod = rx.waveform.samples * ref;
      Eigen::ArrayXd norm_prod = ref * ref;
      if (cfg.response == ReceiverResponse::ideal_lowpass) {
        apply_ideal_lowpass(prod, rx.waveform.sample_rate, cfg.cutoff_hz);
        apply_ideal_lowpass(norm_prod, rx.waveform.sample_rate, cfg.cutoff_hz);
      }
      for (int m = 0; m < M; ++m) {
        const Eigen::Index base = Eigen::Index(m) * spp + geo.start;
        const double norm = window_sum(norm_prod, base, geo.len) * dt;
        require(norm > 0.0, "demodulate_frame: degenerate reference window");
        out.values(i, m) = window_sum(prod, base, geo.len) * dt / norm;
      }
    }
  }

  out.decided.symbols.resize(nb, M);
  out.certain.resize(nb, M);
  for (int i = 0; i < nb; ++i)
    for (int m = 0; m < M; ++m) {
      const DecisionResult d = decide_2pam(out.values(i, m), cfg);
      out.decided.symbols(i, m) = d.symbol;
      out.certain(i, m) = d.certain;
    }
  return out;
}

}  // namespace notdm
