#include "notdm/report.hpp"

#include <unsupported/Eigen/FFT>

#include <complex>
#include <cstdio>
#include <fstream>

namespace notdm {

std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

std::string format_compact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string ber_csv_header() { return "mode,ebn0_db,ber,n_errors,n_bits,ci_low,ci_high\n"; }

std::string ber_point_row(const std::string& mode, const BerPoint& pt) {
  std::string row = mode;
  row += ',';
  row += format_compact(pt.ebn0_db);
  row += ',';
  row += format_sci(pt.ber);
  row += ',';
  row += std::to_string(pt.n_errors);
  row += ',';
  row += std::to_string(pt.n_bits);
  row += ',';
  row += format_sci(pt.ci_low);
  row += ',';
  row += format_sci(pt.ci_high);
  row += '\n';
  return row;
}

std::string waveform_csv(const SampledWaveform& w) {
  std::string out = "time_s,amplitude\n";
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    out += format_sci(w.time_at(k));
    out += ',';
    out += format_sci(w.samples(k));
    out += '\n';
  }
  return out;
}

std::string spectrum_csv(const std::vector<double>& freq_hz, const std::vector<double>& amp) {
  std::string out = "freq_hz,amplitude\n";
  for (size_t k = 0; k < freq_hz.size(); ++k) {
    out += format_sci(freq_hz[k]);
    out += ',';
    out += format_sci(amp[k]);
    out += '\n';
  }
  return out;
}

void magnitude_spectrum(const SampledWaveform& w, std::vector<double>& freq_hz,
                        std::vector<double>& amp) {
  const Eigen::Index n = w.size();
  require(n >= 2, "magnitude_spectrum: empty waveform");
  Eigen::FFT<double> fft;
  std::vector<double> in(w.samples.data(), w.samples.data() + n);
  std::vector<std::complex<double>> spec;
  fft.fwd(spec, in);
  freq_hz.clear();
  amp.clear();
  freq_hz.reserve(size_t(n));
  amp.reserve(size_t(n));
  const double bin = w.sample_rate / double(n);
  for (Eigen::Index k = n / 2 + 1; k < n; ++k) {
    freq_hz.push_back(double(k - n) * bin);
    amp.push_back(std::abs(spec[size_t(k)]) / double(n));
  }
  for (Eigen::Index k = 0; k <= n / 2; ++k) {
    freq_hz.push_back(double(k) * bin);
    amp.push_back(std::abs(spec[size_t(k)]) / double(n));
  }
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::string out = "quantity,value,unit,note\n";
  for (const auto& r : rows)
    out += r.quantity + ',' + r.value + ',' + r.unit + ',' + r.note + '\n';
  return out;
}

std::string encode_diff_sequence(const std::vector<int>& e) {
  std::string s;
  s.reserve(e.size());
  for (int v : e) s += (v > 0 ? '+' : v < 0 ? '-' : '0');
  return s;
}

std::string dmin_csv(const std::vector<DminResult>& rows) {
  std::string out = "tau,dmin_squared,baseline_squared,search_length,argmin\n";
  for (const auto& r : rows) {
    out += format_compact(r.tau);
    out += ',';
    out += format_sci(r.dmin_squared);
    out += ',';
    out += format_sci(r.baseline_squared);
    out += ',';
    out += std::to_string(r.search_length);
    out += ',';
    out += encode_diff_sequence(r.argmin);
    out += '\n';
  }
  return out;
}

nlohmann::json make_manifest(const std::string& command, const ExperimentConfig& config,
                             const std::vector<std::string>& outputs) {
  nlohmann::json m;
  m["command"] = command;
  m["artifact_version"] = kArtifactVersion;
  m["config"] = config.to_json();
  m["outputs"] = outputs;
  return m;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RuntimeError("cannot open output file: " + path);
  out << content;
  if (!out) throw RuntimeError("failed writing output file: " + path);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace notdm
