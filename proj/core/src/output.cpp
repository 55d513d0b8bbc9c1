#include "gsvdlink/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace gsvdlink {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::string render_csv(std::vector<BerRecord> records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const BerRecord& a, const BerRecord& b) {
                     return std::tie(a.scheme, a.user, a.stream_class,
                                     a.snr_db, a.stream_idx) <
                            std::tie(b.scheme, b.user, b.stream_class,
                                     b.snr_db, b.stream_idx);
                   });
  std::ostringstream out;
  out << "scheme,user,stream_class,stream_idx,snr_db,bits,errors,ber,"
         "ci_low,ci_high\n";
  for (const BerRecord& r : records) {
    out << r.scheme << ',' << r.user << ',' << r.stream_class << ','
        << r.stream_idx << ',' << fmt(r.snr_db) << ',' << r.bits << ','
        << r.errors << ',' << fmt(r.ber) << ',' << fmt(r.ci_low) << ','
        << fmt(r.ci_high) << '\n';
  }
  return out.str();
}

std::string render_plot_svg(const std::vector<BerRecord>& records,
                            const std::string& title) {
  constexpr int kWidth = 640, kHeight = 480;
  constexpr int kLeft = 70, kRight = 180, kTop = 40, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  constexpr double kFloor = 1e-7;  // zero-error points clamp here

  double x_min = 1e300, x_max = -1e300;
  for (const BerRecord& r : records) {
    x_min = std::min(x_min, r.snr_db);
    x_max = std::max(x_max, r.snr_db);
  }
  if (!(x_max > x_min)) {
    x_max = x_min + 1;
  }
  const double y_log_min = std::log10(kFloor), y_log_max = 0.0;

  auto px = [&](double snr) {
    return kLeft + plot_w * (snr - x_min) / (x_max - x_min);
  };
  auto py = [&](double ber) {
    const double v = std::log10(std::max(ber, kFloor));
    return kTop + plot_h * (y_log_max - v) / (y_log_max - y_log_min);
  };

  std::map<std::tuple<int, std::string, int>, std::vector<const BerRecord*>>
      series;
  for (const BerRecord& r : records) {
    series[{r.user, r.stream_class, r.stream_idx}].push_back(&r);
  }

  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                  "#bcbd22", "#17becf"};

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kLeft << "\" y=\"24\" font-family=\"sans-serif\" "
         "font-size=\"15\">"
      << title << "</text>\n";

  // decade gridlines + y labels
  for (int d = 0; d >= static_cast<int>(y_log_min); --d) {
    const double y = py(std::pow(10.0, d));
    out << "<line x1=\"" << kLeft << "\" y1=\"" << fmt(y) << "\" x2=\""
        << kLeft + plot_w << "\" y2=\"" << fmt(y)
        << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"8\" y=\"" << fmt(y + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">1e" << d
        << "</text>\n";
  }
  // x ticks
  const int n_ticks = 6;
  for (int t = 0; t <= n_ticks; ++t) {
    const double snr = x_min + (x_max - x_min) * t / n_ticks;
    out << "<text x=\"" << fmt(px(snr) - 8) << "\" y=\""
        << kHeight - kBottom + 20
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(snr)
        << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 - 30 << "\" y=\"" << kHeight - 12
      << "\" font-family=\"sans-serif\" font-size=\"12\">SNR (dB)</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
      << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  int idx = 0;
  for (auto& [key, points] : series) {
    std::vector<const BerRecord*> pts = points;
    std::sort(pts.begin(), pts.end(),
              [](const BerRecord* a, const BerRecord* b) {
                return a->snr_db < b->snr_db;
              });
    const char* color = kColors[idx % 10];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const BerRecord* p : pts) {
      out << fmt(px(p->snr_db)) << ',' << fmt(py(p->ber)) << ' ';
    }
    out << "\"/>\n";
    const double ly = kTop + 16 + 16 * idx;
    out << "<line x1=\"" << kLeft + plot_w + 10 << "\" y1=\"" << fmt(ly - 4)
        << "\" x2=\"" << kLeft + plot_w + 30 << "\" y2=\"" << fmt(ly - 4)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kLeft + plot_w + 34 << "\" y=\"" << fmt(ly)
        << "\" font-family=\"sans-serif\" font-size=\"11\">u" << std::get<0>(key)
        << ' ' << std::get<1>(key) << " s" << std::get<2>(key) << "</text>\n";
    ++idx;
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_manifest_json(const RunManifest& manifest) {
  nlohmann::json j;
  j["tool_version"] = manifest.tool_version;
  j["seed"] = manifest.seed;
  j["config"] = manifest.config_text;
  j["started_at"] = manifest.started_at;
  j["finished_at"] = manifest.finished_at;
  j["outputs"] = manifest.output_files;
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path);
  }
  out << content;
  out.flush();
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

}  // namespace gsvdlink
