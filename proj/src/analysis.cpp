#include "notdm/analysis.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace notdm {

RateResult symbol_rate(const RateInput& inp) {
  require(inp.n_lines >= 1, "symbol_rate: N must be >= 1");
  require(inp.line_spacing > 0.0, "symbol_rate: line spacing must be > 0");
  require(inp.bits_per_symbol >= 1, "symbol_rate: bits_per_symbol must be >= 1");
  const int channels = inp.mode == MuxMode::otdm
                           ? inp.n_lines
                           : inp.n_lines + n_extra_channels(inp.n_lines);
  RateResult r;
  r.symbol_rate = double(channels) * inp.line_spacing;
  r.data_rate = double(inp.bits_per_symbol) * r.symbol_rate;
  return r;
}

double shannon_capacity(double p_signal, double p_noise, int n_lines, double line_spacing) {
  require(p_noise > 0.0, "shannon_capacity: noise power must be > 0");
  require(p_signal >= 0.0, "shannon_capacity: signal power must be >= 0");
  return double(n_lines) * line_spacing * std::log2(1.0 + p_signal / p_noise);
}

double distinguishable_signals(double p_signal, double p_noise, int n_lines) {
  require(p_noise > 0.0, "distinguishable_signals: noise power must be > 0");
  require(p_signal >= 0.0, "distinguishable_signals: signal power must be >= 0");
  const int dims = n_lines + n_extra_channels(n_lines);
  return std::pow((p_signal + p_noise) / p_noise, double(dims));
}

double capacity_from_m(double m, double line_spacing) {
  require(m >= 1.0, "capacity_from_m: M must be >= 1");
  return line_spacing * std::log2(m);
}

double notdm_capacity(const CapacityInput& inp) {
  require(inp.p_noise > 0.0, "notdm_capacity: noise power must be > 0");
  require(inp.p_signal >= 0.0 && inp.p_isi >= 0.0,
          "notdm_capacity: powers must be >= 0");
  const int channels = inp.n_lines + n_extra_channels(inp.n_lines);
  return double(channels) * inp.line_spacing *
         std::log2(1.0 + inp.p_signal / (inp.p_noise + inp.p_isi));
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double q_function_inv(double p) {
  require(p > 0.0 && p <= 0.5, "q_function_inv: p must be in (0, 0.5]");
  double lo = 0.0, hi = 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (q_function(mid) > p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TheoreticalBer ber_theoretical(double dmin_squared, double ebn0_linear) {
  require(dmin_squared >= 0.0 && ebn0_linear >= 0.0,
          "ber_theoretical: inputs must be >= 0");
  TheoreticalBer r;
  r.as_printed = q_function(dmin_squared * ebn0_linear);
  r.min_distance_form = q_function(std::sqrt(dmin_squared * ebn0_linear));
  r.antipodal_baseline = q_function(std::sqrt(2.0 * ebn0_linear));
  return r;
}

double estimate_isi_power(const SequenceSpec& spec, const MuxConfig& mux,
                          const ReceiverConfig& rx_cfg, std::uint64_t n_symbols,
                          std::uint64_t seed, int samples_per_period, int symbols_per_frame) {
  require(n_symbols >= 1000, "estimate_isi_power: need at least 1e3 symbols");
  require(symbols_per_frame >= 3, "estimate_isi_power: need >= 3 symbols per frame");
  const FrameLayout layout{spec, mux, symbols_per_frame, samples_per_period};
  layout.validate();

  GaussianRng rng(seed);
  const int nb = mux.n_branches;
  const int M = symbols_per_frame;
  double sum = 0.0, sumsq = 0.0;
  std::uint64_t count = 0;
  SymbolFrame frame;
  frame.symbols.resize(nb, M);
  while (count < n_symbols) {
    for (int i = 0; i < nb; ++i)
      for (int m = 0; m < M; ++m) frame.symbols(i, m) = rng.next_symbol();
    const FrameWaveform tx = multiplex(layout, frame);
    const DemodResult demod = demodulate_frame(tx, rx_cfg);
    for (int i = 0; i < nb; ++i)
      for (int m = 1; m < M - 1; ++m) {
        const double e = demod.values(i, m) - frame.symbols(i, m);
        sum += e;
        sumsq += e * e;
        ++count;
      }
  }
  const double mean = sum / double(count);
  return sumsq / double(count) - mean * mean;
}

namespace {

// Single-symbol pulse waveforms for all L = n_branches * n_periods slots,
// and their Gram matrix of pairwise overlap integrals.
Eigen::MatrixXd slot_gram(const FrameLayout& layout) {
  const int nb = layout.mux.n_branches;
  const int M = layout.n_symbols;
  const int spp = layout.samples_per_period;
  const int L = nb * M;
  const double dt = layout.dt();
  Eigen::MatrixXd pulses(Eigen::Index(M) * spp, L);
  for (int m = 0; m < M; ++m)
    for (int i = 0; i < nb; ++i) {
      Eigen::VectorXd w = Eigen::VectorXd::Zero(Eigen::Index(M) * spp);
      w.segment(Eigen::Index(m) * spp, spp) =
          period_sign(layout.spec, m) * branch_period(layout.spec, layout.mux, i, spp).matrix();
      pulses.col(m * nb + i) = w;
    }
  return dt * (pulses.transpose() * pulses);
}

}  // namespace

DminResult min_distance(const SequenceSpec& spec, const MuxConfig& mux, int n_periods,
                        int samples_per_period) {
  spec.validate();
  mux.validate();
  require(n_periods >= 1, "min_distance: n_periods must be >= 1");
  const int L = mux.n_branches * n_periods;
  require(L <= 12, "min_distance: search length " + std::to_string(L) +
                       " exceeds the exhaustive limit of 12 slots");
  const FrameLayout layout{spec, mux, n_periods, samples_per_period};
  layout.validate();

  const Eigen::MatrixXd gram = slot_gram(layout);
  const double eb = gram(0, 0);  // single-pulse energy = bit energy
  require(eb > 0.0, "min_distance: degenerate pulse energy");

  DminResult out;
  out.tau = mux.tau;
  out.n_lines = spec.n_lines;
  out.search_length = L;
  out.n_periods = n_periods;
  out.baseline_squared = 4.0 * eb / (2.0 * eb);

  std::vector<int> e(size_t(L), 0);
  std::vector<int> best(size_t(L), 0);
  double best_d2 = std::numeric_limits<double>::infinity();
  std::uint64_t total = 1;
  for (int k = 0; k < L; ++k) total *= 3;
  // code 0 is the excluded all-zero sequence; digit 0 -> 0, 1 -> +2, 2 -> -2
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    for (int k = 0; k < L; ++k) {
      const int digit = int(c % 3);
      e[size_t(k)] = digit == 0 ? 0 : (digit == 1 ? 2 : -2);
      c /= 3;
    }
    double acc = 0.0;
    for (int a = 0; a < L; ++a) {
      if (e[size_t(a)] == 0) continue;
      for (int b = 0; b < L; ++b) {
        if (e[size_t(b)] == 0) continue;
        acc += double(e[size_t(a)]) * double(e[size_t(b)]) * gram(a, b);
      }
    }
    // acc is a quadratic form of a PSD Gram matrix; tiny negatives are roundoff
    const double d2 = std::max(0.0, acc / (2.0 * eb));
    if (d2 < best_d2) {
      best_d2 = d2;
      best = e;
    }
  }
  out.dmin_squared = best_d2;
  out.argmin = best;
  return out;
}

ConfidenceInterval wilson_interval(std::uint64_t n_errors, std::uint64_t n_bits, double z) {
  require(n_bits > 0, "wilson_interval: n_bits must be > 0");
  require(n_errors <= n_bits, "wilson_interval: n_errors > n_bits");
  const double n = double(n_bits);
  if (n_errors == 0) return {0.0, 3.0 / n};  // rule of three
  const double p = double(n_errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

BerPoint ber_monte_carlo_point(const SequenceSpec& spec, const MuxConfig& mux,
                               const ReceiverConfig& rx_cfg, double ebn0_db,
                               std::uint64_t n_symbols, std::uint64_t master_seed,
                               std::uint64_t point_index, const MonteCarloOptions& opts) {
  require(n_symbols >= 1, "ber_monte_carlo: n_symbols must be >= 1");
  require(opts.symbols_per_frame >= 3, "ber_monte_carlo: need >= 3 symbols per frame");
  const FrameLayout layout{spec, mux, opts.symbols_per_frame, opts.samples_per_period};
  layout.validate();
  rx_cfg.validate();

  GaussianRng rng =
      GaussianRng(master_seed).fork(opts.stream_salt * 0x10000ULL + point_index);
  const int nb = mux.n_branches;
  const int M = opts.symbols_per_frame;

  SymbolFrame frame;
  frame.symbols.resize(nb, M);
  std::uint64_t errors = 0, counted = 0;
  while (counted < n_symbols) {
    for (int i = 0; i < nb; ++i)
      for (int m = 0; m < M; ++m) frame.symbols(i, m) = rng.next_symbol();
    FrameWaveform tx = multiplex(layout, frame);
    if (opts.noise_enabled) add_awgn_inplace(tx, ebn0_db, rng);
    const DemodResult demod = demodulate_frame(tx, rx_cfg);
    for (int i = 0; i < nb; ++i)
      for (int m = 1; m < M - 1; ++m) {
        bool err = demod.decided.symbols(i, m) != frame.symbols(i, m);
        if (err && opts.uncertain_policy == UncertainPolicy::assume_resolved &&
            !demod.certain(i, m))
          err = false;
        errors += err ? 1 : 0;
        ++counted;
      }
  }

  BerPoint pt;
  pt.ebn0_db = ebn0_db;
  pt.n_errors = errors;
  pt.n_bits = counted;
  pt.ber = double(errors) / double(counted);
  const ConfidenceInterval ci = wilson_interval(errors, counted);
  pt.ci_low = ci.lo;
  pt.ci_high = ci.hi;
  return pt;
}

BerCurve ber_monte_carlo(const SequenceSpec& spec, const MuxConfig& mux,
                         const ReceiverConfig& rx_cfg, const std::vector<double>& ebn0_db,
                         std::uint64_t n_symbols, std::uint64_t master_seed,
                         const MonteCarloOptions& opts) {
  require(!ebn0_db.empty(), "ber_monte_carlo: empty Eb/N0 list");
  for (size_t k = 1; k < ebn0_db.size(); ++k)
    require(ebn0_db[k] > ebn0_db[k - 1], "ber_monte_carlo: Eb/N0 list must be ascending");

  BerCurve curve;
  curve.rows.resize(ebn0_db.size());
  const int n_workers = std::max(1, std::min<int>(opts.n_threads, int(ebn0_db.size())));
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (;;) {
      const size_t idx = next.fetch_add(1);
      if (idx >= ebn0_db.size()) return;
      curve.rows[idx] = ber_monte_carlo_point(spec, mux, rx_cfg, ebn0_db[idx], n_symbols,
                                              master_seed, idx, opts);
    }
  };
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(size_t(n_workers));
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return curve;
}

}  // namespace notdm
