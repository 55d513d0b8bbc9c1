// gsvdlink: link-level BER simulator for a two-user downlink MIMO-OTFS
// system with GSVD-based precoding/detection and MMSE/BD baselines.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gsvdlink/config.hpp"
#include "gsvdlink/output.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitDegenerate = 4;

std::string iso8601_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw gsvdlink::IoError("cannot read config file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-user MIMO-OTFS downlink BER simulator (GSVD precoding "
               "and MMSE/BD baselines)"};
  app.set_version_flag("--version", kVersion);

  auto* run = app.add_subcommand("run", "Run a BER sweep from a config file");
  std::string config_path;
  std::string out_dir = ".";
  std::string scheme_override, snr_override;
  int frames_override = -1;
  long long seed_override = -1;
  int threads_override = -1;
  double csi_rho_override = -1;
  bool plot = false;
  run->add_option("--config", config_path, "Experiment config file")
      ->required();
  run->add_option("--scheme", scheme_override,
                  "Override scheme (gsvd|bd_mmse|mmse_eq|mmse_prec|awgn)");
  run->add_option("--snr", snr_override,
                  "Override SNR grid, a:step:b or comma list (dB)");
  run->add_option("--frames", frames_override, "Override frames per SNR point");
  run->add_option("--seed", seed_override, "Override master seed");
  run->add_option("--threads", threads_override, "Override worker count");
  run->add_option("--csi-rho", csi_rho_override,
                  "Override channel-estimate quality rho in [0,1]");
  run->add_option("--out", out_dir, "Output directory (default: .)");
  run->add_flag("--plot", plot, "Also write a BER-vs-SNR SVG plot");
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  using namespace gsvdlink;
  try {
    std::string text = read_file(config_path);
    // Flag overrides are applied by editing the key-value document and
    // reparsing, so validation sees the final values.
    auto override_key = [&text](const std::string& key,
                                const std::string& value) {
      std::ostringstream patched;
      std::istringstream in(text);
      std::string line;
      while (std::getline(in, line)) {
        const auto eq = line.find('=');
        std::string k = eq == std::string::npos ? "" : line.substr(0, eq);
        const auto b = k.find_first_not_of(" \t");
        const auto e = k.find_last_not_of(" \t");
        k = b == std::string::npos ? "" : k.substr(b, e - b + 1);
        if (k != key) {
          patched << line << "\n";
        }
      }
      patched << key << " = " << value << "\n";
      text = patched.str();
    };
    if (!scheme_override.empty()) override_key("scheme", scheme_override);
    if (!snr_override.empty()) override_key("snr_db", snr_override);
    if (frames_override >= 0)
      override_key("frames", std::to_string(frames_override));
    if (seed_override >= 0)
      override_key("seed", std::to_string(seed_override));
    if (threads_override >= 0)
      override_key("threads", std::to_string(threads_override));
    if (csi_rho_override >= 0) {
      std::ostringstream v;
      v.precision(17);
      v << csi_rho_override;
      override_key("csi_rho", v.str());
    }

    const ExperimentConfig cfg = parse_config(text);

    RunManifest manifest;
    manifest.tool_version = kVersion;
    manifest.seed = cfg.seed;
    manifest.config_text = serialize_config(cfg);
    manifest.started_at = iso8601_now();

    const std::vector<BerRecord> records = run_ber_sweep(cfg);

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    const std::string csv_path =
        (std::filesystem::path(out_dir) / "ber.csv").string();
    write_text_file(csv_path, render_csv(records));
    manifest.output_files.push_back(csv_path);

    if (plot) {
      const std::string svg_path =
          (std::filesystem::path(out_dir) / "ber.svg").string();
      const std::string title =
          std::string("BER vs SNR — ") + scheme_name(cfg.scheme);
      write_text_file(svg_path, render_plot_svg(records, title));
      manifest.output_files.push_back(svg_path);
    }

    manifest.finished_at = iso8601_now();
    const std::string manifest_path =
        (std::filesystem::path(out_dir) / "manifest.json").string();
    write_text_file(manifest_path, render_manifest_json(manifest));

    std::cout << "wrote " << csv_path << " (" << records.size() << " rows)\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UnsupportedConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const DegenerateChannelError& e) {
    std::cerr << "numerical degeneracy: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
