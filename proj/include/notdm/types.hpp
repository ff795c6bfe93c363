#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>

namespace notdm {

/// Thrown when an input violates a documented precondition or invariant.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown on I/O and other non-configuration runtime failures.
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InvalidArgument(msg);
}

/// Parameters of a Nyquist sinc pulse sequence: an N-line rectangular
/// frequency comb with line spacing `line_spacing` (Hz). Total bandwidth
/// is n_lines * line_spacing; the repetition period is 1 / line_spacing.
struct SequenceSpec {
  int n_lines = 0;
  double line_spacing = 0.0;  // Hz

  double bandwidth() const { return n_lines * line_spacing; }
  double period() const { return 1.0 / line_spacing; }
  /// Peak-to-zero slot width 1/(N df): the orthogonal branch spacing.
  double slot() const { return 1.0 / (n_lines * line_spacing); }

  void validate() const {
    require(n_lines >= 2, "SequenceSpec: n_lines must be >= 2");
    require(std::isfinite(line_spacing) && line_spacing > 0.0,
            "SequenceSpec: line_spacing must be positive and finite");
  }
};

/// Uniform sampling grid.
struct TimeGrid {
  double t0 = 0.0;       // s
  double dt = 0.0;       // s
  Eigen::Index n_samples = 0;

  double sample_rate() const { return 1.0 / dt; }
  double time_at(Eigen::Index k) const { return t0 + static_cast<double>(k) * dt; }
  double span() const { return static_cast<double>(n_samples) * dt; }

  /// Grid times as an Eigen array expression.
  Eigen::ArrayXd times() const {
    return t0 + dt * Eigen::ArrayXd::LinSpaced(n_samples, 0.0, static_cast<double>(n_samples - 1));
  }

  void validate() const {
    require(std::isfinite(t0), "TimeGrid: t0 must be finite");
    require(std::isfinite(dt) && dt > 0.0, "TimeGrid: dt must be positive");
    require(n_samples >= 2, "TimeGrid: n_samples must be >= 2");
  }
};

/// Uniformly sampled real waveform.
template <class Scalar>
struct WaveformT {
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  Scalar sample_rate = Scalar(0);  // Hz
  Scalar start_time = Scalar(0);   // s
  Array samples;

  Eigen::Index size() const { return samples.size(); }
  Scalar dt() const { return Scalar(1) / sample_rate; }
  Scalar time_at(Eigen::Index k) const { return start_time + static_cast<Scalar>(k) / sample_rate; }

  TimeGrid grid() const {
    return TimeGrid{static_cast<double>(start_time), static_cast<double>(dt()), size()};
  }

  bool all_finite() const { return samples.allFinite(); }
};

using SampledWaveform = WaveformT<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

}  // namespace notdm
