#include <doctest.h>

#include <cmath>

#include "notdm/channel.hpp"
#include "notdm/receiver.hpp"
#include "notdm/signal.hpp"

using namespace notdm;

namespace {

const SequenceSpec kN4{4, 10e9};

SymbolFrame random_frame(int branches, int symbols, std::uint64_t seed) {
  GaussianRng rng(seed);
  SymbolFrame f;
  f.symbols.resize(branches, symbols);
  for (int i = 0; i < branches; ++i)
    for (int m = 0; m < symbols; ++m) f.symbols(i, m) = rng.next_symbol();
  return f;
}

FrameWaveform make_tx(const SequenceSpec& spec, double tau, int branches, int M,
                      std::uint64_t seed, int spp = 64) {
  const MuxConfig mux = make_mux(spec, tau, branches);
  const FrameLayout layout{spec, mux, M, spp};
  return multiplex(layout, random_frame(branches, M, seed));
}

}  // namespace

TEST_CASE("reference waveform: branch 0 is the undelayed sequence") {
  const MuxConfig mux = make_mux(kN4, 1.0, 4);
  const TimeGrid grid{0.0, kN4.period() / 64, 2 * 64};
  const SampledWaveform r0 = reference_waveform(kN4, mux, 0, grid);
  const SampledWaveform f = sample_sequence(kN4, grid);
  CHECK((r0.samples - f.samples).abs().maxCoeff() == 0.0);
}

TEST_CASE("reference waveform: peaks sit at the branch delays") {
  const MuxConfig mux = make_mux(kN4, 0.8, 5);
  const TimeGrid grid{0.0, kN4.period() / 100, 100};
  const SampledWaveform r3 = reference_waveform(kN4, mux, 3, grid);
  Eigen::Index argmax = 0;
  r3.samples.maxCoeff(&argmax);
  CHECK(grid.time_at(argmax) == doctest::Approx(60e-12).epsilon(1e-9));

  const MuxConfig ot = make_mux(kN4, 1.0, 4);
  const SampledWaveform r2 = reference_waveform(kN4, ot, 2, grid);
  r2.samples.maxCoeff(&argmax);
  CHECK(grid.time_at(argmax) == doctest::Approx(2.0 * kN4.slot()).epsilon(1e-9));
}

TEST_CASE("correlator: noiseless OTDM all +1 reads +1 everywhere") {
  const MuxConfig mux = make_mux(kN4, 1.0, 4);
  const FrameLayout layout{kN4, mux, 4, 64};
  SymbolFrame frame;
  frame.symbols = Eigen::ArrayXXd::Constant(4, 4, 1.0);
  const FrameWaveform tx = multiplex(layout, frame);
  const ReceiverConfig cfg;
  for (int i = 0; i < 4; ++i)
    for (int m = 0; m < 4; ++m)
      CHECK(correlate_symbol(tx, cfg, i, m) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("correlator: one branch at -1 flips only that branch") {
  const MuxConfig mux = make_mux(kN4, 1.0, 4);
  const FrameLayout layout{kN4, mux, 4, 64};
  SymbolFrame frame;
  frame.symbols = Eigen::ArrayXXd::Constant(4, 4, 1.0);
  frame.symbols.row(2) = -1.0;
  const FrameWaveform tx = multiplex(layout, frame);
  const ReceiverConfig cfg;
  for (int i = 0; i < 4; ++i)
    for (int m = 0; m < 4; ++m)
      CHECK(correlate_symbol(tx, cfg, i, m) ==
            doctest::Approx(i == 2 ? -1.0 : 1.0).epsilon(1e-3));
}

TEST_CASE("correlator: a single flipped symbol stays confined to its slot") {
  const MuxConfig mux = make_mux(kN4, 1.0, 4);
  const FrameLayout layout{kN4, mux, 5, 64};
  SymbolFrame frame;
  frame.symbols = Eigen::ArrayXXd::Constant(4, 5, 1.0);
  frame.symbols(1, 2) = -1.0;
  const FrameWaveform tx = multiplex(layout, frame);
  const ReceiverConfig cfg;
  const DemodResult d = demodulate_frame(tx, cfg);
  for (int i = 0; i < 4; ++i)
    for (int m = 0; m < 5; ++m)
      CHECK(d.values(i, m) ==
            doctest::Approx(i == 1 && m == 2 ? -1.0 : 1.0).epsilon(1e-6));
}

TEST_CASE("correlator: NOTDM outputs deviate from +/-1") {
  const FrameWaveform tx = make_tx(kN4, 0.8, 5, 32, 2027);
  const ReceiverConfig cfg;
  const DemodResult d = demodulate_frame(tx, cfg);
  double max_dev = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int m = 0; m < 32; ++m)
      max_dev = std::max(max_dev, std::abs(std::abs(d.values(i, m)) - 1.0));
  CHECK(max_dev > 0.1);
}

TEST_CASE("decide_2pam: examples and symmetry") {
  ReceiverConfig cfg;
  const DecisionResult a = decide_2pam(0.7, cfg);
  CHECK(a.symbol == 1);
  CHECK(a.certain);

  cfg.uncertainty_halfwidth = 0.1;
  const DecisionResult b = decide_2pam(-0.05, cfg);
  CHECK(b.symbol == -1);
  CHECK_FALSE(b.certain);

  cfg.uncertainty_halfwidth = 0.0;
  const DecisionResult c = decide_2pam(0.0, cfg);
  CHECK(c.symbol == 1);  // tie-break
  CHECK(c.certain);

  for (double v : {0.3, 1.4, 0.02}) {
    CHECK(decide_2pam(v, cfg).symbol == -decide_2pam(-v, cfg).symbol);
  }
  CHECK_THROWS_AS(decide_2pam(std::nan(""), cfg), InvalidArgument);
}

TEST_CASE("demodulation: noiseless OTDM round-trip is exact for N in {4, 5, 8}") {
  const ReceiverConfig cfg;
  for (int n : {4, 5, 8}) {
    const SequenceSpec spec{n, 10e9};
    const MuxConfig mux = make_mux(spec, 1.0, n);
    const int M = 64;
    const FrameLayout layout{spec, mux, M, 64};
    const SymbolFrame frame = random_frame(n, M, 1000 + std::uint64_t(n));
    const FrameWaveform tx = multiplex(layout, frame);
    const DemodResult d = demodulate_frame(tx, cfg);
    CHECK((d.decided.symbols == frame.symbols).all());
  }
}

TEST_CASE("demodulation: noiseless NOTDM is mostly but not always right") {
  const ReceiverConfig cfg;
  const SequenceSpec spec = kN4;
  const MuxConfig mux = make_mux(spec, 0.8, 5);
  const int M = 256;
  const FrameLayout layout{spec, mux, M, 64};
  const SymbolFrame frame = random_frame(5, M, 99);
  const FrameWaveform tx = multiplex(layout, frame);
  const DemodResult d = demodulate_frame(tx, cfg);
  int errors = 0;
  for (int i = 0; i < 5; ++i)
    for (int m = 0; m < M; ++m)
      if (d.decided.symbols(i, m) != frame.symbols(i, m)) ++errors;
  const double frac = double(errors) / (5.0 * M);
  CHECK(frac > 0.0);
  CHECK(frac < 0.10);
  // wrong decisions only happen when the ISI reaches the symbol amplitude
  for (int i = 0; i < 5; ++i)
    for (int m = 0; m < M; ++m)
      if (d.decided.symbols(i, m) != frame.symbols(i, m))
        CHECK(std::abs(d.values(i, m) - frame.symbols(i, m)) >= 1.0 - 1e-9);
}

TEST_CASE("demodulation: all-zero waveform decides +1 and flags per epsilon") {
  const MuxConfig mux = make_mux(kN4, 1.0, 4);
  const FrameLayout layout{kN4, mux, 3, 64};
  FrameWaveform zero;
  zero.layout = layout;
  zero.waveform.sample_rate = 1.0 / layout.dt();
  zero.waveform.start_time = 0.0;
  zero.waveform.samples = Eigen::ArrayXd::Zero(layout.total_samples());

  ReceiverConfig cfg;
  DemodResult d = demodulate_frame(zero, cfg);
  CHECK((d.decided.symbols == 1.0).all());
  CHECK(d.certain.all());  // epsilon = 0: every decision certain

  cfg.uncertainty_halfwidth = 0.2;
  d = demodulate_frame(zero, cfg);
  CHECK((d.decided.symbols == 1.0).all());
  CHECK_FALSE(d.certain.any());
}

TEST_CASE("correlator linearity in the received waveform") {
  const FrameWaveform a = make_tx(kN4, 0.8, 5, 8, 5);
  const FrameWaveform b = make_tx(kN4, 0.8, 5, 8, 6);
  FrameWaveform mix = a;
  mix.waveform.samples = 0.75 * a.waveform.samples - 1.5 * b.waveform.samples;
  const ReceiverConfig cfg;
  for (int i = 0; i < 5; ++i)
    for (int m = 0; m < 8; m += 3) {
      const double va = correlate_symbol(a, cfg, i, m);
      const double vb = correlate_symbol(b, cfg, i, m);
      const double vm = correlate_symbol(mix, cfg, i, m);
      CHECK(vm == doctest::Approx(0.75 * va - 1.5 * vb).epsilon(1e-9));
    }
}

TEST_CASE("ISI depends only on the symbol column (stationarity)") {
  const MuxConfig mux = make_mux(kN4, 0.8, 5);
  const int M = 8;
  const FrameLayout layout{kN4, mux, M, 64};
  SymbolFrame f1 = random_frame(5, M, 314);
  SymbolFrame f2 = random_frame(5, M, 315);
  f2.symbols.col(6) = f1.symbols.col(2);  // plant the same column elsewhere
  const DemodResult d1 = demodulate_frame(multiplex(layout, f1), {});
  const DemodResult d2 = demodulate_frame(multiplex(layout, f2), {});
  for (int i = 0; i < 5; ++i)
    CHECK(d1.values(i, 2) == doctest::Approx(d2.values(i, 6)).epsilon(1e-12));
}

TEST_CASE("general window path agrees with the fast path at full window") {
  const FrameWaveform tx = make_tx(kN4, 0.8, 5, 8, 21);
  ReceiverConfig fast;
  ReceiverConfig general;
  general.window_length = kN4.period();  // exercises the generic window code
  const DemodResult df = demodulate_frame(tx, fast);
  const DemodResult dg = demodulate_frame(tx, general);
  CHECK((df.values - dg.values).abs().maxCoeff() < 1e-9);
}

TEST_CASE("ideal lowpass above the comb bandwidth equals identity (no transitions)") {
  const MuxConfig mux = make_mux(kN4, 1.0, 4);
  const FrameLayout layout{kN4, mux, 4, 64};
  SymbolFrame frame;
  frame.symbols = Eigen::ArrayXXd::Constant(4, 4, 1.0);
  const FrameWaveform tx = multiplex(layout, frame);

  ReceiverConfig lp;
  lp.response = ReceiverResponse::ideal_lowpass;
  lp.cutoff_hz = kN4.bandwidth();  // passes every product line
  const DemodResult a = demodulate_frame(tx, lp);
  const DemodResult b = demodulate_frame(tx, {});
  CHECK((a.values - b.values).abs().maxCoeff() < 1e-6);
}

TEST_CASE("ideal lowpass with a tight cutoff still decodes a clean OTDM frame") {
  const MuxConfig mux = make_mux(kN4, 1.0, 4);
  const int M = 8;
  const FrameLayout layout{kN4, mux, M, 64};
  const SymbolFrame frame = random_frame(4, M, 3);
  const FrameWaveform tx = multiplex(layout, frame);
  ReceiverConfig lp;
  lp.response = ReceiverResponse::ideal_lowpass;
  lp.cutoff_hz = 0.5 * kN4.bandwidth();
  const DemodResult d = demodulate_frame(tx, lp);
  int errors = 0;
  for (int i = 0; i < 4; ++i)
    for (int m = 1; m < M - 1; ++m)
      if (d.decided.symbols(i, m) != frame.symbols(i, m)) ++errors;
  CHECK(errors == 0);
}

TEST_CASE("windows longer than the frame are rejected") {
  const FrameWaveform tx = make_tx(kN4, 1.0, 4, 3, 17);
  ReceiverConfig cfg;
  cfg.window_length = 4.0 * kN4.period();  // frame only has 3 periods
  CHECK_THROWS_AS(correlate_symbol(tx, cfg, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(correlate_symbol(tx, {}, 0, 17), InvalidArgument);  // bad symbol index
  CHECK_THROWS_AS(correlate_symbol(tx, {}, 9, 0), InvalidArgument);   // bad branch
}
