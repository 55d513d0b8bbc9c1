#include "gsvdlink/config.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace gsvdlink {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
  if (pos != value.size()) {
    throw ConfigError(key + ": trailing characters in '" + value + "'");
  }
  return v;
}

long long parse_int(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
  if (pos != value.size()) {
    throw ConfigError(key + ": trailing characters in '" + value + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& key,
                               const std::string& value) {
  // Either a comma list "0,2,4" or a range "start:step:stop" (inclusive).
  std::vector<double> out;
  if (value.find(':') != std::string::npos) {
    std::stringstream ss(value);
    std::string part;
    std::vector<double> parts;
    while (std::getline(ss, part, ':')) {
      parts.push_back(parse_double(key, trim(part)));
    }
    if (parts.size() != 3) {
      throw ConfigError(key + ": range must be start:step:stop");
    }
    const double start = parts[0], step = parts[1], stop = parts[2];
    if (!(step > 0)) {
      throw ConfigError(key + ": range step must be positive");
    }
    for (double v = start; v <= stop + 1e-9 * step; v += step) {
      out.push_back(v);
    }
    return out;
  }
  std::stringstream ss(value);
  std::string part;
  while (std::getline(ss, part, ',')) {
    out.push_back(parse_double(key, trim(part)));
  }
  if (out.empty()) {
    throw ConfigError(key + ": empty list");
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": empty key or value");
    }
    if (kv.count(key)) {
      throw ConfigError(key + ": duplicate key");
    }
    kv[key] = value;
  }

  static const char* known[] = {
      "scheme", "M", "N", "delta_f_hz", "fc_hz", "C", "G",
      "snr_db", "frames", "seed", "csi_rho", "v_max_kmh",
      "doppler_model", "delay_unit", "tap_delays", "tap_powers_db", "threads"};
  for (const auto& [key, value] : kv) {
    bool ok = false;
    for (const char* k : known) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ConfigError(key + ": unknown key");
    }
  }

  auto required = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw ConfigError(std::string(key) + ": required key is missing");
    }
    return it->second;
  };
  auto optional = [&](const char* key,
                      const std::string& fallback) -> std::string {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  };

  ExperimentConfig cfg;

  const std::string scheme = required("scheme");
  if (scheme == "gsvd") {
    cfg.scheme = SchemeChoice::gsvd;
  } else if (scheme == "bd_mmse") {
    cfg.scheme = SchemeChoice::bd_mmse;
  } else if (scheme == "mmse_eq") {
    cfg.scheme = SchemeChoice::mmse_eq;
  } else if (scheme == "mmse_prec") {
    cfg.scheme = SchemeChoice::mmse_prec;
  } else if (scheme == "awgn") {
    cfg.scheme = SchemeChoice::awgn;
  } else {
    throw ConfigError("scheme: unknown scheme '" + scheme + "'");
  }

  const long long m = parse_int("M", required("M"));
  const long long n = parse_int("N", required("N"));
  if (m < 1 || n < 1) {
    throw ConfigError("M, N: must be >= 1");
  }
  const double delta_f = parse_double("delta_f_hz", required("delta_f_hz"));
  const double fc = parse_double("fc_hz", required("fc_hz"));
  if (!(delta_f > 0) || !(fc > 0)) {
    throw ConfigError("delta_f_hz, fc_hz: must be positive");
  }
  cfg.frame = FrameParams(static_cast<int>(m), static_cast<int>(n), delta_f,
                          fc);

  if (cfg.scheme != SchemeChoice::awgn) {
    cfg.bs_antennas = static_cast<int>(parse_int("C", required("C")));
    cfg.user_antennas = static_cast<int>(parse_int("G", required("G")));
  } else {
    cfg.bs_antennas = static_cast<int>(parse_int("C", optional("C", "1")));
    cfg.user_antennas = static_cast<int>(parse_int("G", optional("G", "1")));
  }

  cfg.snr_db = parse_list("snr_db", required("snr_db"));
  cfg.frames_per_snr =
      static_cast<int>(parse_int("frames", required("frames")));
  cfg.seed = static_cast<std::uint64_t>(parse_int("seed", optional("seed", "1")));
  cfg.csi_rho = parse_double("csi_rho", optional("csi_rho", "1"));
  if (!(cfg.csi_rho >= 0.0 && cfg.csi_rho <= 1.0)) {
    throw ConfigError("csi_rho: must be in [0, 1]");
  }
  cfg.threads = static_cast<int>(parse_int("threads", optional("threads", "0")));

  cfg.profile.max_speed_kmh =
      parse_double("v_max_kmh", optional("v_max_kmh", "0"));
  const std::string doppler = optional("doppler_model", "jakes");
  if (doppler == "jakes") {
    cfg.profile.doppler_model = DopplerModel::jakes;
  } else if (doppler == "uniform") {
    cfg.profile.doppler_model = DopplerModel::uniform;
  } else {
    throw ConfigError("doppler_model: must be jakes or uniform");
  }
  const std::string unit = optional("delay_unit", "bins");
  if (unit == "bins") {
    cfg.profile.delay_unit = DelayUnit::bins;
  } else if (unit == "seconds") {
    cfg.profile.delay_unit = DelayUnit::seconds;
  } else {
    throw ConfigError("delay_unit: must be bins or seconds");
  }
  cfg.profile.tap_delays = parse_list("tap_delays", optional("tap_delays", "0"));
  cfg.profile.tap_powers_db =
      parse_list("tap_powers_db", optional("tap_powers_db", "0"));

  cfg.validate();
  return cfg;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) {
      out += ",";
    }
    out += fmt_double(values[i]);
  }
  return out;
}

}  // namespace

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "scheme = " << scheme_name(cfg.scheme) << "\n";
  out << "M = " << cfg.frame.delay_bins << "\n";
  out << "N = " << cfg.frame.doppler_bins << "\n";
  out << "delta_f_hz = " << fmt_double(cfg.frame.subcarrier_spacing_hz) << "\n";
  out << "fc_hz = " << fmt_double(cfg.frame.carrier_hz) << "\n";
  out << "C = " << cfg.bs_antennas << "\n";
  out << "G = " << cfg.user_antennas << "\n";
  out << "snr_db = " << fmt_list(cfg.snr_db) << "\n";
  out << "frames = " << cfg.frames_per_snr << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "csi_rho = " << fmt_double(cfg.csi_rho) << "\n";
  out << "threads = " << cfg.threads << "\n";
  out << "v_max_kmh = " << fmt_double(cfg.profile.max_speed_kmh) << "\n";
  out << "doppler_model = "
      << (cfg.profile.doppler_model == DopplerModel::jakes ? "jakes"
                                                           : "uniform")
      << "\n";
  out << "delay_unit = "
      << (cfg.profile.delay_unit == DelayUnit::bins ? "bins" : "seconds")
      << "\n";
  out << "tap_delays = " << fmt_list(cfg.profile.tap_delays) << "\n";
  out << "tap_powers_db = " << fmt_list(cfg.profile.tap_powers_db) << "\n";
  return out.str();
}

}  // namespace gsvdlink
