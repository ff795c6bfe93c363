// Command-line experiment runner for the NOTDM sinc-sequence simulator.
//
//   notdm <generate|ber-sweep|rate-capacity|dmin>
//         (--config FILE | --preset paper) [--output DIR] [--threads N]
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <string>

#include "notdm/config.hpp"
#include "notdm/runner.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string preset;
  std::string output_dir = ".";
  int threads = 1;
};

void add_common(CLI::App* sub, CommonOpts& opts) {
  auto* cfg = sub->add_option("--config", opts.config_path, "Experiment config (JSON)")
                  ->check(CLI::ExistingFile);
  auto* preset = sub->add_option("--preset", opts.preset, "Named preset")
                     ->check(CLI::IsMember({"paper"}));
  cfg->excludes(preset);
  sub->add_option("--output", opts.output_dir, "Output directory");
  sub->add_option("--threads", opts.threads, "Worker thread cap")
      ->check(CLI::PositiveNumber);
}

notdm::ExperimentConfig resolve_config(const CommonOpts& opts) {
  if (!opts.config_path.empty()) return notdm::ExperimentConfig::load_file(opts.config_path);
  if (opts.preset == "paper") return notdm::ExperimentConfig::paper_preset();
  throw notdm::InvalidArgument("either --config or --preset is required");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Faster-than-Nyquist NOTDM sinc-sequence simulator"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::function<void(const notdm::ExperimentConfig&)> action;

  auto* generate = app.add_subcommand("generate", "Write the sampled sequence (and spectrum)");
  add_common(generate, opts);
  generate->callback([&] {
    action = [&](const notdm::ExperimentConfig& cfg) {
      notdm::run_generate(cfg, opts.output_dir, std::cout);
    };
  });

  auto* sweep = app.add_subcommand("ber-sweep", "Monte Carlo BER versus Eb/N0");
  add_common(sweep, opts);
  sweep->callback([&] {
    action = [&](const notdm::ExperimentConfig& cfg) {
      notdm::run_ber_sweep(cfg, opts.output_dir, opts.threads, std::cout);
    };
  });

  auto* rate = app.add_subcommand("rate-capacity", "Symbol rates and capacity limits");
  add_common(rate, opts);
  rate->callback([&] {
    action = [&](const notdm::ExperimentConfig& cfg) {
      notdm::run_rate_capacity(cfg, opts.output_dir, std::cout);
    };
  });

  auto* dmin = app.add_subcommand("dmin", "Minimum-distance search over an acceleration grid");
  add_common(dmin, opts);
  dmin->callback([&] {
    action = [&](const notdm::ExperimentConfig& cfg) {
      notdm::run_dmin(cfg, opts.output_dir, std::cout);
    };
  });

  CLI11_PARSE(app, argc, argv);

  try {
    action(resolve_config(opts));
  } catch (const notdm::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
