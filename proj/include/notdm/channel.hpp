#pragma once

#include <cstdint>

#include "notdm/framing.hpp"
#include "notdm/types.hpp"

namespace notdm {

/// Deterministic Gaussian stream: splitmix64 driving a Box-Muller
/// transform. Output depends only on the seed, never on the platform's
/// distribution internals, so sweeps stay reproducible across runs and
/// worker counts.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : state_(seed) {}

  /// Child stream for sweep point / substream `index`; independent of the
  /// order in which siblings are created or consumed.
  GaussianRng fork(std::uint64_t index) const {
    GaussianRng child(mix(state_ + 0x9E3779B97F4A7C15ULL * (index + 1)));
    return child;
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform in (0, 1].
  double next_uniform_open() {
    return (double(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = next_uniform_open();
    const double u2 = next_uniform_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = kTwoPi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  /// Antipodal +/-1 symbol.
  double next_symbol() { return (next_u64() >> 63) ? 1.0 : -1.0; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct ChannelConfig {
  double ebn0_db = 0.0;
  std::uint64_t seed = 0;
  bool enabled = true;

  void validate() const {
    require(std::isfinite(ebn0_db), "ChannelConfig: ebn0_db must be finite");
  }
};

/// Energy per bit of a frame: total waveform energy divided by the number
/// of transmitted bits (branches x symbols; 2-PAM carries 1 bit/symbol).
double measure_bit_energy(const FrameWaveform& w);

/// White Gaussian noise at the prescribed Eb/N0. Per-sample variance is
/// (N0/2) * sample_rate with N0 = Eb / 10^(ebn0_db/10), so windowed
/// correlation against a reference reproduces the continuous-time
/// correlator noise statistics.
FrameWaveform add_awgn(const FrameWaveform& w, const ChannelConfig& cfg);

/// In-place variant drawing from an existing stream (used by sweeps).
void add_awgn_inplace(FrameWaveform& w, double ebn0_db, GaussianRng& rng);

}  // namespace notdm
