#include <doctest.h>

#include <cmath>

#include "notdm/channel.hpp"
#include "notdm/framing.hpp"
#include "notdm/signal.hpp"

using namespace notdm;

namespace {

const SequenceSpec kN4{4, 10e9};
const SequenceSpec kN5{5, 10e9};

SymbolFrame random_frame(int branches, int symbols, std::uint64_t seed) {
  GaussianRng rng(seed);
  SymbolFrame f;
  f.symbols.resize(branches, symbols);
  for (int i = 0; i < branches; ++i)
    for (int m = 0; m < symbols; ++m) f.symbols(i, m) = rng.next_symbol();
  return f;
}

}  // namespace

TEST_CASE("extra channel count floor(N/4)") {
  CHECK(n_extra_channels(4) == 1);
  CHECK(n_extra_channels(8) == 2);
  CHECK(n_extra_channels(3) == 0);
  CHECK(n_extra_channels(12) == 3);
  CHECK_THROWS_AS(n_extra_channels(0), InvalidArgument);
}

TEST_CASE("make_mux: OTDM delays on the 25 ps grid") {
  const MuxConfig mux = make_mux(kN4, 1.0, 4);
  REQUIRE(mux.delays.size() == 4);
  for (int i = 0; i < 4; ++i)
    CHECK(mux.delays(i) == doctest::Approx(i * 25e-12).epsilon(1e-12));
}

TEST_CASE("make_mux: NOTDM delays tile the period at 20 ps") {
  const MuxConfig mux = make_mux(kN4, 0.8, 5);
  REQUIRE(mux.delays.size() == 5);
  for (int i = 0; i < 5; ++i)
    CHECK(mux.delays(i) == doctest::Approx(i * 20e-12).epsilon(1e-12));
}

TEST_CASE("make_mux: branch overflow rejected") {
  CHECK_THROWS_AS(make_mux(kN4, 0.8, 6), InvalidArgument);
  CHECK_THROWS_AS(make_mux(kN4, 1.0, 5), InvalidArgument);
  CHECK_THROWS_AS(make_mux(kN4, 0.0, 4), InvalidArgument);
  CHECK_THROWS_AS(make_mux(kN4, 1.5, 2), InvalidArgument);
}

TEST_CASE("modulate_branch: all +1 reproduces the delayed sequence (odd N)") {
  const MuxConfig mux = make_mux(kN5, 1.0, 5);
  const int spp = 64, M = 4;
  const TimeGrid grid{0.0, kN5.period() / spp, Eigen::Index(M) * spp};
  const Eigen::ArrayXd ones = Eigen::ArrayXd::Constant(M, 1.0);
  const SampledWaveform w = modulate_branch(kN5, mux, 2, ones, grid);
  const SampledWaveform ref = sample_sequence(kN5, grid, mux.delays(2));
  for (Eigen::Index k = 0; k < w.size(); ++k)
    CHECK(w.samples(k) == doctest::Approx(ref.samples(k)).epsilon(1e-9));
}

TEST_CASE("modulate_branch: all -1 negates the delayed sequence") {
  const MuxConfig mux = make_mux(kN5, 1.0, 5);
  const int spp = 64, M = 3;
  const TimeGrid grid{0.0, kN5.period() / spp, Eigen::Index(M) * spp};
  const Eigen::ArrayXd minus = Eigen::ArrayXd::Constant(M, -1.0);
  const SampledWaveform w = modulate_branch(kN5, mux, 1, minus, grid);
  const SampledWaveform ref = sample_sequence(kN5, grid, mux.delays(1));
  for (Eigen::Index k = 0; k < w.size(); ++k)
    CHECK(w.samples(k) == doctest::Approx(-ref.samples(k)).epsilon(1e-9));
}

TEST_CASE("modulate_branch: [+1, -1] peak samples carry the symbols") {
  // Even N: the carrier flips sign each period, so the raw sample at the
  // later peak is the symbol times (-1)^m; demodulation undoes this.
  const int M = 2;
  for (const SequenceSpec& spec : {kN4, kN5}) {
    const int spp = 16 * spec.n_lines;  // puts every branch peak on the grid
    const MuxConfig mux = make_mux(spec, 1.0, spec.n_lines);
    const TimeGrid grid{0.0, spec.period() / spp, Eigen::Index(M) * spp};
    Eigen::ArrayXd sym(M);
    sym << 1.0, -1.0;
    for (int i = 0; i < mux.n_branches; ++i) {
      const SampledWaveform w = modulate_branch(spec, mux, i, sym, grid);
      const auto k0 = Eigen::Index(std::llround(mux.delays(i) / grid.dt));
      const auto k1 = Eigen::Index(std::llround((spec.period() + mux.delays(i)) / grid.dt));
      CHECK(w.samples(k0) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(w.samples(k1) == doctest::Approx(-1.0 * period_sign(spec, 1)).epsilon(1e-9));
    }
  }
}

TEST_CASE("modulate_branch: rejects non-antipodal symbols and bad grids") {
  const MuxConfig mux = make_mux(kN4, 1.0, 4);
  const TimeGrid grid{0.0, kN4.period() / 64, 2 * 64};
  Eigen::ArrayXd bad(2);
  bad << 1.0, 0.5;
  CHECK_THROWS_AS(modulate_branch(kN4, mux, 0, bad, grid), InvalidArgument);
  Eigen::ArrayXd ok(2);
  ok << 1.0, -1.0;
  const TimeGrid off{1e-12, kN4.period() / 64, 2 * 64};
  CHECK_THROWS_AS(modulate_branch(kN4, mux, 0, ok, off), InvalidArgument);
  const TimeGrid partial{0.0, kN4.period() / 64, 2 * 64 + 3};
  CHECK_THROWS_AS(modulate_branch(kN4, mux, 0, ok, partial), InvalidArgument);
}

TEST_CASE("multiplex: single branch equals modulate_branch") {
  const MuxConfig mux = make_mux(kN4, 1.0, 1);
  const int spp = 64, M = 3;
  const TimeGrid grid{0.0, kN4.period() / spp, Eigen::Index(M) * spp};
  SymbolFrame frame = random_frame(1, M, 5);
  const FrameWaveform fw = multiplex(kN4, mux, frame, grid);
  const SampledWaveform w = modulate_branch(kN4, mux, 0, frame.symbols.row(0).transpose(), grid);
  for (Eigen::Index k = 0; k < w.size(); ++k)
    CHECK(fw.waveform.samples(k) == doctest::Approx(w.samples(k)).epsilon(1e-12));
}

TEST_CASE("multiplex: OTDM all +1 gives 1 at every branch peak slot") {
  const MuxConfig mux = make_mux(kN4, 1.0, 4);
  const int spp = 64, M = 2;
  const TimeGrid grid{0.0, kN4.period() / spp, Eigen::Index(M) * spp};
  SymbolFrame frame;
  frame.symbols = Eigen::ArrayXXd::Constant(4, M, 1.0);
  const FrameWaveform fw = multiplex(kN4, mux, frame, grid);
  for (int k = 0; k < 4; ++k) {
    const auto idx = Eigen::Index(std::llround(double(k) * kN4.slot() / grid.dt));
    CHECK(fw.waveform.samples(idx) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("multiplex: NOTDM value at 20 ps shows ISI") {
  const MuxConfig mux = make_mux(kN4, 0.8, 5);
  const int spp = 100, M = 2;
  const TimeGrid grid{0.0, kN4.period() / spp, Eigen::Index(M) * spp};
  SymbolFrame frame;
  frame.symbols = Eigen::ArrayXXd::Constant(5, M, 1.0);
  const FrameWaveform fw = multiplex(kN4, mux, frame, grid);
  const auto idx = Eigen::Index(std::llround(20e-12 / grid.dt));
  CHECK(std::abs(fw.waveform.samples(idx) - 1.0) > 1e-3);
}

TEST_CASE("multiplex: OTDM peak sampling recovers the symbols") {
  for (const SequenceSpec& spec : {kN4, kN5}) {
    const MuxConfig mux = make_mux(spec, 1.0, spec.n_lines);
    const int spp = 16 * spec.n_lines, M = 6;
    const TimeGrid grid{0.0, spec.period() / spp, Eigen::Index(M) * spp};
    SymbolFrame frame = random_frame(spec.n_lines, M, 77);
    const FrameWaveform fw = multiplex(spec, mux, frame, grid);
    for (int i = 0; i < spec.n_lines; ++i)
      for (int m = 0; m < M; ++m) {
        const double t = double(m) * spec.period() + mux.delays(i);
        const auto k = Eigen::Index(std::llround(t / grid.dt));
        // even N: raw samples alternate sign with the carrier period
        const double expected = frame.symbols(i, m) * period_sign(spec, m);
        CHECK(fw.waveform.samples(k) == doctest::Approx(expected).epsilon(1e-9));
      }
  }
}

TEST_CASE("multiplex: linearity, opposite frames sum to zero") {
  const MuxConfig mux = make_mux(kN4, 0.8, 5);
  const int spp = 64, M = 4;
  const TimeGrid grid{0.0, kN4.period() / spp, Eigen::Index(M) * spp};
  SymbolFrame a = random_frame(5, M, 31);
  SymbolFrame b;
  b.symbols = -a.symbols;
  const FrameWaveform wa = multiplex(kN4, mux, a, grid);
  const FrameWaveform wb = multiplex(kN4, mux, b, grid);
  CHECK((wa.waveform.samples + wb.waveform.samples).abs().maxCoeff() < 1e-12);
}

TEST_CASE("NOTDM branch pair loses orthogonality") {
  const MuxConfig mux = make_mux(kN4, 0.8, 5);
  const TimeGrid grid{0.0, kN4.period() / 64, 64 + 1};
  const SampledWaveform f0 = sample_sequence(kN4, grid, mux.delays(0));
  double max_cross = 0.0;
  for (int j = 1; j < 5; ++j) {
    const SampledWaveform fj = sample_sequence(kN4, grid, mux.delays(j));
    const double c = kN4.bandwidth() * inner_product(f0, fj, 0.0, kN4.period());
    max_cross = std::max(max_cross, std::abs(c));
  }
  CHECK(max_cross > 1e-3);
}

TEST_CASE("multiplex: frame length matches the layout and wraps at index M*spp") {
  const MuxConfig mux = make_mux(kN5, 1.0, 5);
  const int spp = 64, M = 4;
  const TimeGrid grid{0.0, kN5.period() / spp, Eigen::Index(M) * spp};
  SymbolFrame frame = random_frame(5, M, 8);
  const FrameWaveform fw = multiplex(kN5, mux, frame, grid);
  const Eigen::Index n = fw.waveform.size();
  CHECK(n == fw.layout.total_samples());
  CHECK(fw.waveform.samples(n % n) == fw.waveform.samples(0));
}

TEST_CASE("multiplex: dimension mismatch rejected") {
  const MuxConfig mux = make_mux(kN4, 1.0, 4);
  const TimeGrid grid{0.0, kN4.period() / 64, 3 * 64};
  SymbolFrame frame = random_frame(3, 3, 1);  // wrong branch count
  CHECK_THROWS_AS(multiplex(kN4, mux, frame, grid), InvalidArgument);
}
