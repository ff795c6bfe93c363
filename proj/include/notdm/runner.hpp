#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "notdm/analysis.hpp"
#include "notdm/config.hpp"

namespace notdm {

/// Experiment drivers behind the CLI subcommands. Each writes its result
/// CSV plus a JSON manifest into `out_dir` and returns what it computed.

struct SweepOutput {
  std::vector<std::pair<SweepMode, BerCurve>> curves;
  std::string csv_path;
};

/// Monte Carlo BER sweep over all configured modes. Completed points are
/// checkpointed in a partial file, so an interrupted sweep resumes instead
/// of recomputing; finished output is byte-identical either way.
SweepOutput run_ber_sweep(const ExperimentConfig& cfg, const std::string& out_dir,
                          int n_threads, std::ostream& log);

void run_generate(const ExperimentConfig& cfg, const std::string& out_dir, std::ostream& log);

void run_rate_capacity(const ExperimentConfig& cfg, const std::string& out_dir,
                       std::ostream& log);

std::vector<DminResult> run_dmin(const ExperimentConfig& cfg, const std::string& out_dir,
                                 std::ostream& log);

}  // namespace notdm
