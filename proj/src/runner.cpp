#include "notdm/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "notdm/report.hpp"
#include "notdm/signal.hpp"

namespace notdm {

namespace fs = std::filesystem;

namespace {

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw RuntimeError("cannot create output directory " + dir + ": " + ec.message());
}

void write_manifest(const std::string& out_dir, const std::string& command,
                    const ExperimentConfig& cfg, const std::vector<std::string>& outputs,
                    std::ostream& log) {
  const nlohmann::json m = make_manifest(command, cfg, outputs);
  const std::string text = m.dump(2) + "\n";
  write_text_file(join(out_dir, command + "_manifest.json"), text);
  log << text;
}

MonteCarloOptions sweep_options(const ExperimentConfig& cfg, SweepMode mode) {
  MonteCarloOptions opts;
  opts.samples_per_period = cfg.samples_per_period;
  opts.symbols_per_frame = cfg.symbols_per_frame;
  opts.uncertain_policy = mode == SweepMode::notdm_resolved ? UncertainPolicy::assume_resolved
                                                            : UncertainPolicy::count;
  opts.stream_salt = std::uint64_t(mode);
  return opts;
}

}  // namespace

SweepOutput run_ber_sweep(const ExperimentConfig& cfg, const std::string& out_dir,
                          int n_threads, std::ostream& log) {
  cfg.validate();
  require(!cfg.ebn0_db.empty(), "ber-sweep: channel.ebn0_db must not be empty");
  ensure_dir(out_dir);

  const std::string sweep_id =
      std::to_string(fnv1a(cfg.to_json().dump() + "|ber-sweep|" + kArtifactVersion));
  const std::string partial_path = join(out_dir, "ber_sweep.partial");

  // key = "<mode>:<point index>" -> finished CSV row text
  std::map<std::string, std::string> done;
  {
    std::ifstream in(partial_path);
    std::string line;
    if (in && std::getline(in, line) && line == "#" + sweep_id) {
      while (std::getline(in, line)) {
        const auto tab = line.find('\t');
        if (tab != std::string::npos) done[line.substr(0, tab)] = line.substr(tab + 1) + "\n";
      }
      if (!done.empty())
        log << "resuming sweep: " << done.size() << " completed point(s) found\n";
    }
  }

  struct Task {
    SweepMode mode;
    size_t point;
    std::string key;
  };
  std::vector<Task> pending;
  for (SweepMode mode : cfg.modes)
    for (size_t p = 0; p < cfg.ebn0_db.size(); ++p) {
      const std::string key = to_string(mode) + ":" + std::to_string(p);
      if (!done.count(key)) pending.push_back({mode, p, key});
    }

  std::mutex io_mutex;
  std::ofstream partial;
  if (!pending.empty()) {
    const bool fresh = done.empty();
    partial.open(partial_path, fresh ? std::ios::trunc : std::ios::app);
    if (!partial) throw RuntimeError("cannot open checkpoint file: " + partial_path);
    if (fresh) partial << "#" << sweep_id << "\n" << std::flush;
  }

  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  auto work = [&] {
    for (;;) {
      const size_t idx = next.fetch_add(1);
      if (idx >= pending.size() || failed.load()) return;
      const Task& task = pending[idx];
      try {
        const BerPoint pt = ber_monte_carlo_point(
            cfg.sequence(), cfg.mux_for(task.mode), cfg.receiver(), cfg.ebn0_db[task.point],
            cfg.n_symbols, cfg.master_seed, task.point, sweep_options(cfg, task.mode));
        const std::string row = ber_point_row(to_string(task.mode), pt);
        std::lock_guard<std::mutex> lock(io_mutex);
        done[task.key] = row;
        partial << task.key << '\t' << row.substr(0, row.size() - 1) << "\n" << std::flush;
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(io_mutex);
        failure = e.what();
        failed.store(true);
      }
    }
  };
  const int workers = std::max(1, std::min<int>(n_threads, int(pending.size())));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw RuntimeError("ber-sweep failed: " + failure);

  SweepOutput out;
  std::string csv = ber_csv_header();
  for (SweepMode mode : cfg.modes) {
    BerCurve curve;
    for (size_t p = 0; p < cfg.ebn0_db.size(); ++p) {
      const std::string& row = done.at(to_string(mode) + ":" + std::to_string(p));
      csv += row;
      // parse back the numeric fields we know we wrote
      BerPoint pt;
      unsigned long long errors = 0, bits = 0;
      std::sscanf(row.c_str(), "%*[^,],%lf,%lf,%llu,%llu,%lf,%lf", &pt.ebn0_db, &pt.ber,
                  &errors, &bits, &pt.ci_low, &pt.ci_high);
      pt.n_errors = errors;
      pt.n_bits = bits;
      curve.rows.push_back(pt);
    }
    out.curves.emplace_back(mode, std::move(curve));
  }
  out.csv_path = join(out_dir, "ber_sweep.csv");
  write_text_file(out.csv_path, csv);
  write_manifest(out_dir, "ber_sweep", cfg, {"ber_sweep.csv"}, log);
  std::error_code ec;
  fs::remove(partial_path, ec);
  return out;
}

void run_generate(const ExperimentConfig& cfg, const std::string& out_dir, std::ostream& log) {
  cfg.validate();
  ensure_dir(out_dir);
  const SequenceSpec spec = cfg.sequence();
  const int spp = cfg.samples_per_period;
  const int periods = cfg.generate_periods;
  TimeGrid grid;
  grid.dt = spec.period() / spp;
  grid.t0 = -double(periods / 2) * spec.period();
  grid.n_samples = Eigen::Index(periods) * spp;
  const SampledWaveform w = sample_sequence(spec, grid);

  std::vector<std::string> outputs = {"sequence_time.csv"};
  write_text_file(join(out_dir, "sequence_time.csv"), waveform_csv(w));
  if (cfg.generate_spectrum) {
    std::vector<double> freq, amp;
    magnitude_spectrum(w, freq, amp);
    write_text_file(join(out_dir, "sequence_spectrum.csv"), spectrum_csv(freq, amp));
    outputs.push_back("sequence_spectrum.csv");
  }
  write_manifest(out_dir, "generate", cfg, outputs, log);
}

void run_rate_capacity(const ExperimentConfig& cfg, const std::string& out_dir,
                       std::ostream& log) {
  cfg.validate();
  if (!cfg.has_power())
    throw InvalidArgument("rate-capacity: config power.signal and power.noise are required");
  ensure_dir(out_dir);

  const int n = cfg.n_lines;
  const double df = cfg.line_spacing_hz;
  const RateResult otdm =
      symbol_rate({n, df, MuxMode::otdm, cfg.bits_per_symbol});
  const RateResult notdm =
      symbol_rate({n, df, MuxMode::notdm, cfg.bits_per_symbol});
  const double gain_pct = 100.0 * double(n_extra_channels(n)) / double(n);

  double p_isi = cfg.p_isi;
  std::string isi_note;
  if (cfg.estimate_isi) {
    p_isi = estimate_isi_power(cfg.sequence(), cfg.mux(), cfg.receiver(),
                               std::max<std::uint64_t>(cfg.n_symbols, 1000), cfg.master_seed,
                               cfg.samples_per_period);
    isi_note = "estimated from noiseless frames";
  }

  std::vector<ReportRow> rows;
  rows.push_back({"symbol_rate_otdm", format_compact(otdm.symbol_rate), "Bd", ""});
  rows.push_back({"symbol_rate_notdm", format_compact(notdm.symbol_rate), "Bd", ""});
  rows.push_back({"symbol_rate_gain", format_compact(gain_pct), "percent", ""});
  rows.push_back({"data_rate_otdm", format_compact(otdm.data_rate), "bit/s", ""});
  rows.push_back({"data_rate_notdm", format_compact(notdm.data_rate), "bit/s", ""});
  rows.push_back({"shannon_capacity_otdm", format_compact(shannon_capacity(cfg.p_signal, cfg.p_noise, n, df)), "bit/s", ""});
  const double m_signals = distinguishable_signals(cfg.p_signal, cfg.p_noise, n);
  rows.push_back({"distinguishable_signals", format_compact(m_signals), "", ""});
  rows.push_back({"capacity_from_m", format_compact(capacity_from_m(m_signals, df)), "bit/s", ""});
  if (std::isnan(p_isi)) {
    rows.push_back({"capacity_isi_adjusted", "", "bit/s", "requires ISI estimate"});
  } else {
    rows.push_back({"isi_power", format_sci(p_isi), "", isi_note});
    rows.push_back({"capacity_isi_adjusted",
                    format_compact(notdm_capacity({cfg.p_signal, cfg.p_noise, p_isi, n, df})),
                    "bit/s", ""});
  }

  const std::string csv = report_csv(rows);
  write_text_file(join(out_dir, "rate_capacity.csv"), csv);
  log << csv;
  write_manifest(out_dir, "rate_capacity", cfg, {"rate_capacity.csv"}, log);
}

std::vector<DminResult> run_dmin(const ExperimentConfig& cfg, const std::string& out_dir,
                                 std::ostream& log) {
  cfg.validate();
  ensure_dir(out_dir);
  const SequenceSpec spec = cfg.sequence();
  std::vector<DminResult> results;
  for (double tau : cfg.dmin_tau_grid) {
    const int branches = int(std::floor(double(spec.n_lines) / tau + 1e-9));
    const MuxConfig mux = make_mux(spec, tau, branches);
    results.push_back(min_distance(spec, mux, cfg.dmin_periods, cfg.samples_per_period));
  }
  const std::string csv = dmin_csv(results);
  write_text_file(join(out_dir, "dmin.csv"), csv);
  log << csv;
  write_manifest(out_dir, "dmin", cfg, {"dmin.csv"}, log);
  return results;
}

}  // namespace notdm
