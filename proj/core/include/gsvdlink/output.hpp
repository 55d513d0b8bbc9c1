#pragma once

#include <string>
#include <vector>

#include "gsvdlink/sim.hpp"

namespace gsvdlink {

struct RunManifest {
  std::string tool_version;
  std::uint64_t seed = 0;
  std::string config_text;  ///< canonical resolved config (reparses equal)
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> output_files;
};

/// CSV with the fixed header
/// scheme,user,stream_class,stream_idx,snr_db,bits,errors,ber,ci_low,ci_high
/// rows sorted by (scheme, user, stream_class, snr_db, stream_idx).
/// Byte-deterministic for a given record list.
std::string render_csv(std::vector<BerRecord> records);

/// Static BER-vs-SNR plot (log-y) as a standalone SVG document, one series
/// per (user, stream_class, stream_idx).
std::string render_plot_svg(const std::vector<BerRecord>& records,
                            const std::string& title);

std::string render_manifest_json(const RunManifest& manifest);

/// Writes content to path, throwing IoError on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace gsvdlink
