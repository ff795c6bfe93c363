#pragma once

#include <cmath>

#include "notdm/types.hpp"

namespace notdm {

/// Unit-peak sinc pulse of bandwidth B centered at `center`:
/// sin(pi B (t - c)) / (pi B (t - c)), with value 1 at t = c.
template <class Scalar>
Scalar sinc_pulse(Scalar t, Scalar bandwidth, Scalar center = Scalar(0)) {
  if (!(std::isfinite(t) && std::isfinite(bandwidth) && std::isfinite(center)))
    throw InvalidArgument("sinc_pulse: non-finite input");
  if (!(bandwidth > Scalar(0))) throw InvalidArgument("sinc_pulse: bandwidth must be > 0");
  const Scalar x = static_cast<Scalar>(kPi) * bandwidth * (t - center);
  if (std::abs(x) < Scalar(1e-8)) {
    const Scalar x2 = x * x;
    return Scalar(1) - x2 / Scalar(6);  // series around the removable singularity
  }
  return std::sin(x) / x;
}

/// Sinc-sequence sample via its cosine series. Odd N:
///   1/N + (2/N) sum_{n=1}^{(N-1)/2} cos(2 pi n df t)
/// Even N:
///   (2/N) sum_{n=1}^{N/2} cos(2 pi (n - 1/2) df t)
/// Smooth everywhere; this is the canonical evaluator.
template <class Scalar>
Scalar sequence_value_fourier(int n_lines, Scalar line_spacing, Scalar t) {
  const Scalar w = static_cast<Scalar>(kTwoPi) * line_spacing * t;
  Scalar acc = Scalar(0);
  if (n_lines % 2 == 1) {
    const int half = (n_lines - 1) / 2;
    for (int n = 1; n <= half; ++n) acc += std::cos(static_cast<Scalar>(n) * w);
    return (Scalar(1) + Scalar(2) * acc) / static_cast<Scalar>(n_lines);
  }
  const int half = n_lines / 2;
  for (int n = 1; n <= half; ++n) acc += std::cos((static_cast<Scalar>(n) - Scalar(0.5)) * w);
  return Scalar(2) * acc / static_cast<Scalar>(n_lines);
}

template <class Scalar>
Scalar sequence_value_fourier(const SequenceSpec& spec, Scalar t) {
  return sequence_value_fourier(spec.n_lines, static_cast<Scalar>(spec.line_spacing), t);
}

/// Closed form sin(N pi df t) / (N sin(pi df t)). Where the denominator
/// vanishes the series value is returned (the analytic limit: +1 at even
/// multiples of 1/df or odd N, -1 at odd multiples for even N).
template <class Scalar>
Scalar sequence_value_closed(int n_lines, Scalar line_spacing, Scalar t) {
  const Scalar u = static_cast<Scalar>(kPi) * line_spacing * t;
  const Scalar den = std::sin(u);
  if (std::abs(den) < Scalar(1e-7))
    return sequence_value_fourier(n_lines, line_spacing, t);
  return std::sin(static_cast<Scalar>(n_lines) * u) / (static_cast<Scalar>(n_lines) * den);
}

template <class Scalar>
Scalar sequence_value_closed(const SequenceSpec& spec, Scalar t) {
  return sequence_value_closed(spec.n_lines, static_cast<Scalar>(spec.line_spacing), t);
}

/// Vectorized cosine-series evaluation over an array of times.
template <class Derived>
Eigen::ArrayXd sequence_samples(const SequenceSpec& spec, const Eigen::ArrayBase<Derived>& times) {
  const Eigen::ArrayXd w = kTwoPi * spec.line_spacing * times;
  Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(times.size());
  if (spec.n_lines % 2 == 1) {
    for (int n = 1; n <= (spec.n_lines - 1) / 2; ++n) acc += (double(n) * w).cos();
    return (1.0 + 2.0 * acc) / double(spec.n_lines);
  }
  for (int n = 1; n <= spec.n_lines / 2; ++n) acc += ((double(n) - 0.5) * w).cos();
  return 2.0 * acc / double(spec.n_lines);
}

/// Batch evaluation of the (optionally delayed) sequence on a grid:
/// samples[k] = f(t0 + k dt - delay). Rejects grids coarser than the
/// slot width 1/(N df).
SampledWaveform sample_sequence(const SequenceSpec& spec, const TimeGrid& grid, double delay = 0.0);

/// Trapezoidal approximation of the integral of a(t) b(t) over
/// [t_start, t_end]. Window endpoints must land on the shared grid.
double inner_product(const SampledWaveform& a, const SampledWaveform& b, double t_start,
                     double t_end);

}  // namespace notdm
