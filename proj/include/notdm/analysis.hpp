#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "notdm/channel.hpp"
#include "notdm/framing.hpp"
#include "notdm/receiver.hpp"
#include "notdm/types.hpp"

namespace notdm {

enum class MuxMode { otdm, notdm };

struct RateInput {
  int n_lines = 0;
  double line_spacing = 0.0;  // Hz
  MuxMode mode = MuxMode::otdm;
  int bits_per_symbol = 1;
};

struct RateResult {
  double symbol_rate = 0.0;  // Bd
  double data_rate = 0.0;    // bit/s
};

/// OTDM: N df. NOTDM: (N + floor(N/4)) df. Data rate is K times that.
RateResult symbol_rate(const RateInput& inp);

/// N df log2(1 + Ps/Pn).
double shannon_capacity(double p_signal, double p_noise, int n_lines, double line_spacing);

/// ((Ps + Pn)/Pn)^(N + floor(N/4)).
double distinguishable_signals(double p_signal, double p_noise, int n_lines);

/// df log2(M).
double capacity_from_m(double m, double line_spacing);

struct CapacityInput {
  double p_signal = 0.0;
  double p_noise = 0.0;
  double p_isi = 0.0;
  int n_lines = 0;
  double line_spacing = 0.0;
};

/// (N + floor(N/4)) df log2(1 + Ps/(Pn + Pisi)).
double notdm_capacity(const CapacityInput& inp);

/// Gaussian tail probability Q(x) = P(Z > x).
double q_function(double x);

/// Inverse of q_function on (0, 0.5].
double q_function_inv(double p);

struct TheoreticalBer {
  double as_printed = 0.0;          // Q(d^2 Eb/N0)
  double min_distance_form = 0.0;   // Q(sqrt(d^2 Eb/N0))
  double antipodal_baseline = 0.0;  // Q(sqrt(2 Eb/N0))
};

TheoreticalBer ber_theoretical(double dmin_squared, double ebn0_linear);

/// Empirical ISI power: variance of (correlator output - transmitted
/// symbol) over interior symbols of noiseless random frames, in the
/// normalized units where the signal power is 1.
double estimate_isi_power(const SequenceSpec& spec, const MuxConfig& mux,
                          const ReceiverConfig& rx_cfg, std::uint64_t n_symbols,
                          std::uint64_t seed, int samples_per_period = 64,
                          int symbols_per_frame = 64);

/// Result of the exhaustive minimum-distance search. dmin_squared is
/// normalized as integral(|dS|^2 dt) / (2 Eb), so the single-symbol
/// antipodal baseline equals 2.
struct DminResult {
  double dmin_squared = 0.0;
  std::vector<int> argmin;     // entries in {-2, 0, +2}; slot = period * n_branches + branch
  double tau = 0.0;
  int n_lines = 0;
  int search_length = 0;       // L = n_branches * n_periods
  int n_periods = 0;
  double baseline_squared = 0.0;  // single-symbol difference value
};

/// Exhaustive search over all nonzero difference sequences in
/// {-2, 0, +2}^L, L = n_branches * n_periods <= 12.
DminResult min_distance(const SequenceSpec& spec, const MuxConfig& mux, int n_periods,
                        int samples_per_period = 64);

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval (99% by default); zero-error points return the
/// rule-of-three upper bound.
ConfidenceInterval wilson_interval(std::uint64_t n_errors, std::uint64_t n_bits,
                                   double z = 2.5758293035489004);

struct BerPoint {
  double ebn0_db = 0.0;
  double ber = 0.0;
  std::uint64_t n_errors = 0;
  std::uint64_t n_bits = 0;
  double ci_low = 0.0;
  double ci_high = 1.0;
};

struct BerCurve {
  std::vector<BerPoint> rows;
};

/// How undecidable correlator outputs (inside the uncertainty interval)
/// are scored: `count` applies the hard decision as-is; `assume_resolved`
/// scores them as correct, modeling an ideal downstream detector for the
/// flagged symbols.
enum class UncertainPolicy { count, assume_resolved };

struct MonteCarloOptions {
  int samples_per_period = 64;
  int symbols_per_frame = 128;
  UncertainPolicy uncertain_policy = UncertainPolicy::count;
  bool noise_enabled = true;
  int n_threads = 1;
  std::uint64_t stream_salt = 0;  // distinguishes curves sharing one master seed
};

/// Monte Carlo BER sweep. Each Eb/N0 point derives its own Gaussian
/// stream from (master_seed, stream_salt, point index); the first and
/// last symbol of every branch per frame are excluded from counting.
/// Results are independent of n_threads.
BerCurve ber_monte_carlo(const SequenceSpec& spec, const MuxConfig& mux,
                         const ReceiverConfig& rx_cfg, const std::vector<double>& ebn0_db,
                         std::uint64_t n_symbols, std::uint64_t master_seed,
                         const MonteCarloOptions& opts = {});

/// Single sweep point (used by the resumable CLI path).
BerPoint ber_monte_carlo_point(const SequenceSpec& spec, const MuxConfig& mux,
                               const ReceiverConfig& rx_cfg, double ebn0_db,
                               std::uint64_t n_symbols, std::uint64_t master_seed,
                               std::uint64_t point_index, const MonteCarloOptions& opts = {});

}  // namespace notdm
