#include "notdm/channel.hpp"

#include <cmath>

namespace notdm {

double measure_bit_energy(const FrameWaveform& w) {
  w.layout.validate();
  require(w.waveform.size() == w.layout.total_samples(),
          "measure_bit_energy: waveform/layout size mismatch");
  require(w.layout.n_symbols >= 1, "measure_bit_energy: empty frame");
  // Cyclic frame: the Riemann sum over [0, M T) is the exact wrapped trapezoid.
  const double energy = w.waveform.samples.square().sum() * w.waveform.dt();
  const double n_bits = double(w.layout.mux.n_branches) * double(w.layout.n_symbols);
  return energy / n_bits;
}

void add_awgn_inplace(FrameWaveform& w, double ebn0_db, GaussianRng& rng) {
  const double eb = measure_bit_energy(w);
  const double n0 = eb / std::pow(10.0, ebn0_db / 10.0);
  const double sigma = std::sqrt(0.5 * n0 * w.waveform.sample_rate);
  for (Eigen::Index k = 0; k < w.waveform.size(); ++k)
    w.waveform.samples(k) += sigma * rng.next_gaussian();
}

FrameWaveform add_awgn(const FrameWaveform& w, const ChannelConfig& cfg) {
  cfg.validate();
  FrameWaveform out = w;
  if (!cfg.enabled) return out;
  GaussianRng rng(cfg.seed);
  add_awgn_inplace(out, cfg.ebn0_db, rng);
  return out;
}

}  // namespace notdm
