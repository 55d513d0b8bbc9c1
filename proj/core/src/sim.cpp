#include "gsvdlink/sim.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

#include "gsvdlink/qam.hpp"

namespace gsvdlink {

const char* scheme_name(SchemeChoice scheme) {
  switch (scheme) {
    case SchemeChoice::gsvd: return "gsvd";
    case SchemeChoice::bd_mmse: return "bd_mmse";
    case SchemeChoice::mmse_eq: return "mmse_eq";
    case SchemeChoice::mmse_prec: return "mmse_prec";
    case SchemeChoice::awgn: return "awgn";
  }
  return "?";
}

const char* stream_class_name(StreamClass cls) {
  switch (cls) {
    case StreamClass::private1: return "private-1";
    case StreamClass::common: return "common";
    case StreamClass::private2: return "private-2";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (frames_per_snr < 1) {
    throw ConfigError("frames: must be >= 1");
  }
  if (snr_db.empty()) {
    throw ConfigError("snr_db: list must be non-empty");
  }
  if (!(csi_rho >= 0.0 && csi_rho <= 1.0)) {
    throw ConfigError("csi_rho: must be in [0, 1]");
  }
  if (threads < 0) {
    throw ConfigError("threads: must be >= 0");
  }
  if (scheme == SchemeChoice::awgn) {
    return;
  }
  if (bs_antennas < 1 || user_antennas < 1) {
    throw ConfigError("C, G: antenna counts must be >= 1");
  }
  profile.validate();
  if (scheme == SchemeChoice::bd_mmse && bs_antennas <= user_antennas) {
    throw ConfigError("scheme bd_mmse requires C > G");
  }
  if (scheme == SchemeChoice::mmse_eq && bs_antennas > user_antennas) {
    throw ConfigError("scheme mmse_eq requires C <= G");
  }
  if (scheme == SchemeChoice::mmse_prec &&
      bs_antennas < 2 * user_antennas) {
    throw ConfigError("scheme mmse_prec requires C >= 2G");
  }
}

Interval wilson_interval(std::uint64_t errors, std::uint64_t bits) {
  if (errors > bits) {
    throw ArgumentError("wilson_interval: errors exceed bits");
  }
  if (bits == 0) {
    return {0.0, 1.0};
  }
  const double z = 1.959963984540054;  // 95%
  const double n = static_cast<double>(bits);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // the analytic bounds are exactly 0 / 1 at the extremes; avoid roundoff
  const double low = errors == 0 ? 0.0 : std::max(0.0, center - half);
  const double high = errors == bits ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

StreamLayout stream_layout(SchemeChoice scheme, int bs_antennas,
                           int user_antennas, Index grid_size) {
  const Index mn = grid_size;
  const Index mg = mn * user_antennas;
  StreamLayout layout;
  auto add = [&](Index count, StreamClass cls, bool r1, bool r2) {
    for (Index i = 0; i < count; ++i) {
      layout.cls.push_back(cls);
      layout.reach1.push_back(r1);
      layout.reach2.push_back(r2);
    }
  };
  switch (scheme) {
    case SchemeChoice::gsvd: {
      const Index q =
          std::min<Index>(mn * bs_antennas, 2 * mg);
      const Index p = std::max<Index>(0, q - mg);  // private block per user
      add(p, StreamClass::private1, true, false);
      add(q - 2 * p, StreamClass::common, true, true);
      add(p, StreamClass::private2, false, true);
      break;
    }
    case SchemeChoice::bd_mmse: {
      const Index k = mn * (bs_antennas - user_antennas);
      add(k, StreamClass::private1, true, false);
      add(k, StreamClass::private2, false, true);
      break;
    }
    case SchemeChoice::mmse_eq:
      add(mn * bs_antennas, StreamClass::common, true, true);
      break;
    case SchemeChoice::mmse_prec:
      add(mg, StreamClass::private1, true, false);
      add(mg, StreamClass::private2, false, true);
      break;
    case SchemeChoice::awgn:
      add(mn, StreamClass::common, true, false);
      break;
  }
  return layout;
}

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

VectorXc draw_noise(Index size, double noise_var, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double sigma = std::sqrt(noise_var / 2.0);
  VectorXc n(size);
  for (Index i = 0; i < size; ++i) {
    const double re = sigma * gauss(rng);
    const double im = sigma * gauss(rng);
    n(i) = Complex(re, im);
  }
  return n;
}

std::vector<std::uint8_t> draw_bits(std::size_t count, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> bit(0, 1);
  std::vector<std::uint8_t> bits(count);
  for (auto& b : bits) {
    b = static_cast<std::uint8_t>(bit(rng));
  }
  return bits;
}

}  // namespace

std::uint64_t derive_substream_seed(std::uint64_t master, std::uint64_t snr_idx,
                                    std::uint64_t frame_idx) {
  std::uint64_t s = mix64(master);
  s = mix64(s ^ (snr_idx * 0xC2B2AE3D27D4EB4FULL + 1));
  s = mix64(s ^ (frame_idx * 0x165667B19E3779F9ULL + 1));
  return s;
}

FrameErrorCounts simulate_frame(const TransceiverPlan& plan,
                                const MatrixXc& h1, const MatrixXc& h2,
                                double noise_var, std::mt19937_64& rng) {
  const Index q = plan.total_streams();
  if (plan.precoder.cols() != q || h1.cols() != plan.precoder.rows() ||
      h2.cols() != plan.precoder.rows()) {
    throw ShapeError("simulate_frame: plan and channel are not conformable");
  }

  const std::vector<std::uint8_t> bits =
      draw_bits(2 * static_cast<std::size_t>(q), rng);
  const VectorXc s = qam_map(bits);
  const VectorXc x = (1.0 / plan.rho) * (plan.precoder * s);

  const VectorXc y1 = h1 * x + draw_noise(h1.rows(), noise_var, rng);
  const VectorXc y2 = h2 * x + draw_noise(h2.rows(), noise_var, rng);

  FrameErrorCounts counts;
  counts.user1.assign(static_cast<std::size_t>(q), 0);
  counts.user2.assign(static_cast<std::size_t>(q), 0);
  for (int user = 1; user <= 2; ++user) {
    const VectorXc est =
        detect_symbols(plan, user, user == 1 ? y1 : y2, noise_var);
    const std::vector<std::uint8_t> decided = qam_demap_hard(est);
    auto& errs = user == 1 ? counts.user1 : counts.user2;
    for (Index i = 0; i < q; ++i) {
      const StreamInfo& info = plan.stream_map[static_cast<std::size_t>(i)];
      const Index row = user == 1 ? info.row1 : info.row2;
      if (row < 0) {
        continue;
      }
      errs[static_cast<std::size_t>(i)] +=
          (decided[2 * i] != bits[2 * i]) +
          (decided[2 * i + 1] != bits[2 * i + 1]);
    }
  }
  return counts;
}

namespace {

// One Monte Carlo frame at a fixed SNR point: draw the channel (with a small
// redraw budget for degenerate draws), build the scheme's plan from the
// estimated channel and run the chain through the true one.
FrameErrorCounts run_channel_frame(const ExperimentConfig& cfg,
                                   double noise_var, std::mt19937_64& rng) {
  const int c_ant = cfg.bs_antennas;
  const int g_ant = cfg.user_antennas;
  constexpr int kRetryBudget = 5;
  for (int attempt = 0;; ++attempt) {
    try {
      std::vector<PathRealization> grid;
      grid.reserve(static_cast<std::size_t>(g_ant) * 2 * c_ant);
      for (int i = 0; i < g_ant * 2 * c_ant; ++i) {
        grid.push_back(draw_channel_realization(cfg.profile, cfg.frame, rng));
      }
      MimoDdChannel truth =
          assemble_mimo_channel(grid, cfg.frame, c_ant, g_ant);

      const MatrixXc* plan_h1 = &truth.h1;
      const MatrixXc* plan_h2 = &truth.h2;
      MimoDdChannel estimated;
      if (cfg.csi_rho < 1.0) {
        std::vector<PathRealization> corrupted;
        corrupted.reserve(grid.size());
        for (const PathRealization& r : grid) {
          corrupted.push_back(corrupt_csi(r, cfg.profile, cfg.csi_rho, rng));
        }
        estimated = assemble_mimo_channel(corrupted, cfg.frame, c_ant, g_ant);
        plan_h1 = &estimated.h1;
        plan_h2 = &estimated.h2;
      }

      TransceiverPlan plan;
      switch (cfg.scheme) {
        case SchemeChoice::gsvd:
          plan = build_gsvd_plan(*plan_h1, *plan_h2, c_ant, g_ant, cfg.frame);
          break;
        case SchemeChoice::bd_mmse:
          plan = bd_mmse_plan(*plan_h1, *plan_h2, c_ant, g_ant, cfg.frame,
                              noise_var);
          break;
        case SchemeChoice::mmse_eq:
          plan = mmse_eq_plan(*plan_h1, *plan_h2, c_ant, g_ant, cfg.frame,
                              noise_var);
          break;
        case SchemeChoice::mmse_prec:
          plan = mmse_precoder_plan(*plan_h1, *plan_h2, c_ant, g_ant,
                                    cfg.frame, noise_var);
          break;
        case SchemeChoice::awgn:
          throw ArgumentError("run_channel_frame: awgn has no channel");
      }
      return simulate_frame(plan, truth.h1, truth.h2, noise_var, rng);
    } catch (const DegenerateChannelError&) {
      if (attempt >= kRetryBudget) {
        throw;
      }
    }
  }
}

FrameErrorCounts run_awgn_frame(const ExperimentConfig& cfg, double noise_var,
                                std::mt19937_64& rng) {
  const Index mn = cfg.frame.grid_size();
  const std::vector<std::uint8_t> bits =
      draw_bits(2 * static_cast<std::size_t>(mn), rng);
  const VectorXc s = qam_map(bits);
  const VectorXc r = s + draw_noise(mn, noise_var, rng);
  const VectorXc est = single_tap_mmse_detect(
      r, VectorXc::Constant(mn, Complex(1, 0)), noise_var);
  const std::vector<std::uint8_t> decided = qam_demap_hard(est);

  FrameErrorCounts counts;
  counts.user1.assign(static_cast<std::size_t>(mn), 0);
  counts.user2.assign(static_cast<std::size_t>(mn), 0);
  for (Index i = 0; i < mn; ++i) {
    counts.user1[static_cast<std::size_t>(i)] +=
        (decided[2 * i] != bits[2 * i]) +
        (decided[2 * i + 1] != bits[2 * i + 1]);
  }
  return counts;
}

}  // namespace

std::vector<BerRecord> run_ber_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const Index mn = cfg.frame.grid_size();
  const StreamLayout layout = stream_layout(cfg.scheme, cfg.bs_antennas,
                                            cfg.user_antennas, mn);
  const Index q = layout.total();
  const std::uint64_t frames = static_cast<std::uint64_t>(cfg.frames_per_snr);

  int num_threads = cfg.threads > 0
                        ? cfg.threads
                        : static_cast<int>(std::thread::hardware_concurrency());
  num_threads = std::max(1, std::min<int>(num_threads,
                                          static_cast<int>(frames)));

  std::vector<BerRecord> records;
  for (std::size_t si = 0; si < cfg.snr_db.size(); ++si) {
    const double noise_var = std::pow(10.0, -cfg.snr_db[si] / 10.0);

    std::vector<std::uint64_t> err1(static_cast<std::size_t>(q), 0);
    std::vector<std::uint64_t> err2(static_cast<std::size_t>(q), 0);
    std::mutex merge_mutex;
    std::exception_ptr failure;

    auto worker = [&](int tid) {
      std::vector<std::uint64_t> local1(static_cast<std::size_t>(q), 0);
      std::vector<std::uint64_t> local2(static_cast<std::size_t>(q), 0);
      try {
        for (std::uint64_t f = static_cast<std::uint64_t>(tid); f < frames;
             f += static_cast<std::uint64_t>(num_threads)) {
          std::mt19937_64 rng(derive_substream_seed(cfg.seed, si, f));
          const FrameErrorCounts counts =
              cfg.scheme == SchemeChoice::awgn
                  ? run_awgn_frame(cfg, noise_var, rng)
                  : run_channel_frame(cfg, noise_var, rng);
          for (Index i = 0; i < q; ++i) {
            local1[static_cast<std::size_t>(i)] +=
                counts.user1[static_cast<std::size_t>(i)];
            local2[static_cast<std::size_t>(i)] +=
                counts.user2[static_cast<std::size_t>(i)];
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(merge_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        return;
      }
      std::lock_guard<std::mutex> lock(merge_mutex);
      for (Index i = 0; i < q; ++i) {
        err1[static_cast<std::size_t>(i)] += local1[static_cast<std::size_t>(i)];
        err2[static_cast<std::size_t>(i)] += local2[static_cast<std::size_t>(i)];
      }
    };

    if (num_threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(num_threads));
      for (int t = 0; t < num_threads; ++t) {
        pool.emplace_back(worker, t);
      }
      for (auto& th : pool) {
        th.join();
      }
    }
    if (failure) {
      std::rethrow_exception(failure);
    }

    // Collapse global streams into per-DD-bin stream indices.
    const Index bins = q / mn;
    for (int user = 1; user <= 2; ++user) {
      const auto& reach = user == 1 ? layout.reach1 : layout.reach2;
      const auto& errs = user == 1 ? err1 : err2;
      for (Index j = 0; j < bins; ++j) {
        const std::size_t start = static_cast<std::size_t>(j * mn);
        if (!reach[start]) {
          continue;
        }
        std::uint64_t errors = 0;
        for (Index i = 0; i < mn; ++i) {
          errors += errs[start + static_cast<std::size_t>(i)];
        }
        const std::uint64_t bit_count =
            frames * 2 * static_cast<std::uint64_t>(mn);
        BerRecord rec;
        rec.scheme = scheme_name(cfg.scheme);
        rec.user = user;
        rec.stream_class = stream_class_name(layout.cls[start]);
        rec.stream_idx = static_cast<int>(j);
        rec.snr_db = cfg.snr_db[si];
        rec.bits = bit_count;
        rec.errors = errors;
        rec.ber = static_cast<double>(errors) / static_cast<double>(bit_count);
        const Interval ci = wilson_interval(errors, bit_count);
        rec.ci_low = ci.low;
        rec.ci_high = ci.high;
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

}  // namespace gsvdlink
