#include "notdm/signal.hpp"

#include <cmath>

namespace notdm {

SampledWaveform sample_sequence(const SequenceSpec& spec, const TimeGrid& grid, double delay) {
  spec.validate();
  grid.validate();
  require(std::isfinite(delay), "sample_sequence: delay must be finite");
  const double max_dt = spec.slot();
  if (grid.dt > max_dt * (1.0 + 1e-12))
    throw InvalidArgument("sample_sequence: grid too coarse, dt must be <= 1/(N df) = " +
                          std::to_string(max_dt) + " s");
  SampledWaveform w;
  w.sample_rate = 1.0 / grid.dt;
  w.start_time = grid.t0;
  w.samples = sequence_samples(spec, grid.times() - delay);
  return w;
}

double inner_product(const SampledWaveform& a, const SampledWaveform& b, double t_start,
                     double t_end) {
  require(a.size() > 1 && b.size() > 1, "inner_product: empty waveform");
  const double fs = a.sample_rate;
  require(std::abs(fs - b.sample_rate) <= 1e-9 * fs,
          "inner_product: sample rates differ");
  require(t_end > t_start, "inner_product: window must have positive length");

  // Offset between the two waveforms' grids must be a whole number of samples.
  const double shift = (b.start_time - a.start_time) * fs;
  const auto shift_k = static_cast<Eigen::Index>(std::llround(shift));
  require(std::abs(shift - double(shift_k)) <= 1e-6, "inner_product: sample grids misaligned");

  const double ka_f = (t_start - a.start_time) * fs;
  const double kb_f = (t_end - a.start_time) * fs;
  const auto ka = static_cast<Eigen::Index>(std::llround(ka_f));
  const auto kb = static_cast<Eigen::Index>(std::llround(kb_f));
  require(std::abs(ka_f - double(ka)) <= 1e-6 && std::abs(kb_f - double(kb)) <= 1e-6,
          "inner_product: window endpoints must lie on the sample grid");
  require(ka >= 0 && kb < a.size(), "inner_product: window not covered by first waveform");
  require(ka - shift_k >= 0 && kb - shift_k < b.size(),
          "inner_product: window not covered by second waveform");
  require(kb > ka, "inner_product: window shorter than one sample step");

  const Eigen::Index n = kb - ka + 1;
  const Eigen::ArrayXd prod =
      a.samples.segment(ka, n) * b.samples.segment(ka - shift_k, n);
  const double sum = prod.sum() - 0.5 * (prod(0) + prod(n - 1));
  return sum / fs;
}

}  // namespace notdm
