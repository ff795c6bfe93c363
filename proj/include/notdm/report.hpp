#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "notdm/analysis.hpp"
#include "notdm/config.hpp"
#include "notdm/types.hpp"

namespace notdm {

// Fixed numeric formats keep result files byte-identical across reruns.
std::string format_sci(double v);      // %.10e
std::string format_compact(double v);  // %.6g

std::string ber_point_row(const std::string& mode, const BerPoint& pt);
std::string ber_csv_header();

std::string waveform_csv(const SampledWaveform& w);
std::string spectrum_csv(const std::vector<double>& freq_hz, const std::vector<double>& amp);

/// Two-sided magnitude spectrum of a sampled waveform, |X_k| / n, sorted
/// by frequency.
void magnitude_spectrum(const SampledWaveform& w, std::vector<double>& freq_hz,
                        std::vector<double>& amp);

struct ReportRow {
  std::string quantity;
  std::string value;  // empty when unavailable
  std::string unit;
  std::string note;
};
std::string report_csv(const std::vector<ReportRow>& rows);

std::string dmin_csv(const std::vector<DminResult>& rows);
std::string encode_diff_sequence(const std::vector<int>& e);

nlohmann::json make_manifest(const std::string& command, const ExperimentConfig& config,
                             const std::vector<std::string>& outputs);

void write_text_file(const std::string& path, const std::string& content);

std::uint64_t fnv1a(const std::string& s);

}  // namespace notdm
