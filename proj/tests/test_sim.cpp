#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gsvdlink/sim.hpp"
#include "test_helpers.hpp"

using namespace gsvdlink;
using gsvdlink::testing::random_matrix;

namespace {

PathProfile two_tap_profile() {
  PathProfile p;
  p.tap_delays = {0, 1};
  p.tap_powers_db = {0, -3};
  p.max_speed_kmh = 120;
  return p;
}

ExperimentConfig small_config(SchemeChoice scheme, int c, int g) {
  ExperimentConfig cfg;
  cfg.frame = FrameParams(4, 2, 15e3, 4e9);
  cfg.bs_antennas = c;
  cfg.user_antennas = g;
  cfg.scheme = scheme;
  cfg.snr_db = {10.0};
  cfg.frames_per_snr = 4;
  cfg.seed = 7;
  cfg.profile = two_tap_profile();
  cfg.threads = 1;
  return cfg;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

bool records_equal(const std::vector<BerRecord>& a,
                   const std::vector<BerRecord>& b) {
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].scheme != b[i].scheme || a[i].user != b[i].user ||
        a[i].stream_class != b[i].stream_class ||
        a[i].stream_idx != b[i].stream_idx || a[i].snr_db != b[i].snr_db ||
        a[i].bits != b[i].bits || a[i].errors != b[i].errors) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("wilson interval") {
  Interval iv = wilson_interval(0, 1000);
  CHECK(iv.low == 0.0);
  CHECK(iv.high > 0.0);
  CHECK(iv.high < 0.01);

  iv = wilson_interval(500, 1000);
  CHECK(iv.low < 0.5);
  CHECK(iv.high > 0.5);
  CHECK(iv.high - iv.low < 0.07);

  iv = wilson_interval(1000, 1000);
  CHECK(iv.high == 1.0);
  CHECK(iv.low > 0.99);

  CHECK_THROWS_AS(wilson_interval(2, 1), ArgumentError);
}

TEST_CASE("structural stream layout") {
  SUBCASE("gsvd regime I") {
    StreamLayout l = stream_layout(SchemeChoice::gsvd, 4, 3, 8);
    REQUIRE(l.total() == 32);
    Index p1 = 0, co = 0, p2 = 0;
    for (Index i = 0; i < l.total(); ++i) {
      switch (l.cls[i]) {
        case StreamClass::private1:
          ++p1;
          CHECK(l.reach1[i]);
          CHECK(!l.reach2[i]);
          break;
        case StreamClass::common:
          ++co;
          CHECK(l.reach1[i]);
          CHECK(l.reach2[i]);
          break;
        case StreamClass::private2:
          ++p2;
          CHECK(!l.reach1[i]);
          CHECK(l.reach2[i]);
          break;
      }
    }
    CHECK(p1 == 8);
    CHECK(co == 16);
    CHECK(p2 == 8);
  }

  SUBCASE("mmse_eq is all common") {
    StreamLayout l = stream_layout(SchemeChoice::mmse_eq, 2, 3, 8);
    CHECK(l.total() == 16);
    for (Index i = 0; i < l.total(); ++i) {
      CHECK(l.cls[i] == StreamClass::common);
    }
  }

  SUBCASE("bd_mmse splits evenly") {
    StreamLayout l = stream_layout(SchemeChoice::bd_mmse, 3, 2, 8);
    CHECK(l.total() == 16);
    CHECK(std::count(l.cls.begin(), l.cls.end(), StreamClass::private1) == 8);
    CHECK(std::count(l.cls.begin(), l.cls.end(), StreamClass::private2) == 8);
  }
}

TEST_CASE("substream seeds are distinct and stable") {
  CHECK(derive_substream_seed(1, 0, 0) == derive_substream_seed(1, 0, 0));
  CHECK(derive_substream_seed(1, 0, 0) != derive_substream_seed(1, 0, 1));
  CHECK(derive_substream_seed(1, 0, 0) != derive_substream_seed(1, 1, 0));
  CHECK(derive_substream_seed(1, 0, 0) != derive_substream_seed(2, 0, 0));
}

TEST_CASE("ber sweep determinism") {
  ExperimentConfig cfg = small_config(SchemeChoice::gsvd, 3, 2);
  cfg.snr_db = {5.0, 10.0};
  cfg.frames_per_snr = 6;

  auto base = run_ber_sweep(cfg);

  SUBCASE("identical rerun") {
    CHECK(records_equal(base, run_ber_sweep(cfg)));
  }

  SUBCASE("independent of thread count") {
    ExperimentConfig threaded = cfg;
    threaded.threads = 4;
    CHECK(records_equal(base, run_ber_sweep(threaded)));
  }

  SUBCASE("seed changes the counts") {
    ExperimentConfig other = cfg;
    other.seed = 8;
    CHECK(!records_equal(base, run_ber_sweep(other)));
  }
}

TEST_CASE("ber sweep bookkeeping") {
  ExperimentConfig cfg = small_config(SchemeChoice::gsvd, 4, 3);
  cfg.frames_per_snr = 3;
  auto records = run_ber_sweep(cfg);

  // per-bin collapsed records: one per (user, class-visible stream) per SNR
  const Index mn = cfg.frame.grid_size();
  for (const BerRecord& r : records) {
    CHECK(r.scheme == "gsvd");
    CHECK(r.snr_db == 10.0);
    // every stream carries 2 bits per DD bin per frame
    CHECK(r.bits == std::uint64_t(2 * mn * cfg.frames_per_snr));
    CHECK(r.errors <= r.bits);
    CHECK(r.ber == doctest::Approx(double(r.errors) / double(r.bits)));
    Interval iv = wilson_interval(r.errors, r.bits);
    CHECK(r.ci_low == iv.low);
    CHECK(r.ci_high == iv.high);
  }
  // user 1 sees private-1 + common streams = 1 + 2 per bin; same for user 2
  Index user1 = 0, user2 = 0;
  for (const BerRecord& r : records) {
    (r.user == 1 ? user1 : user2)++;
  }
  CHECK(user1 == 3);
  CHECK(user2 == 3);
}

TEST_CASE("high snr drives errors to zero") {
  ExperimentConfig cfg = small_config(SchemeChoice::gsvd, 3, 2);
  cfg.snr_db = {80.0};
  cfg.frames_per_snr = 4;
  for (const BerRecord& r : run_ber_sweep(cfg)) {
    CHECK(r.errors == 0);
  }
}

TEST_CASE("transmit power contract holds on average") {
  FrameParams p(4, 2, 15e3, 4e9);
  const Index mn = p.grid_size();
  std::mt19937_64 rng(99);
  // E||x||^2 = MN * C by the rho normalization, for any precoder.
  MatrixXc h1 = random_matrix(mn * 3, mn * 4, rng);
  MatrixXc h2 = random_matrix(mn * 3, mn * 4, rng);
  TransceiverPlan plan = build_gsvd_plan(h1, h2, 4, 3, p);

  std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(2.0));
  double sum = 0;
  const int draws = 2000;
  for (int i = 0; i < draws; ++i) {
    VectorXc s(plan.total_streams());
    for (Index k = 0; k < s.size(); ++k) {
      s(k) = Complex(gauss(rng), gauss(rng));  // unit-energy symbols
    }
    sum += ((1.0 / plan.rho) * (plan.precoder * s)).squaredNorm();
  }
  const double mean = sum / draws;
  CHECK(std::abs(mean / double(mn * 4) - 1.0) < 0.1);
}

TEST_CASE("awgn diagnostic matches the closed form") {
  ExperimentConfig cfg;
  cfg.frame = FrameParams(4, 4, 15e3, 4e9);
  cfg.scheme = SchemeChoice::awgn;
  cfg.bs_antennas = 1;
  cfg.user_antennas = 1;
  cfg.snr_db = {4.0};
  // ~1e5 bits per record at 2 bits/bin/frame
  cfg.frames_per_snr = 3200;
  cfg.seed = 3;
  cfg.threads = 2;
  cfg.profile = two_tap_profile();

  auto records = run_ber_sweep(cfg);
  const double snr = std::pow(10.0, 0.4);
  const double expect = q_function(std::sqrt(snr));
  for (const BerRecord& r : records) {
    Interval iv = wilson_interval(r.errors, r.bits);
    const double half = (iv.high - iv.low) / 2.0;
    CHECK(std::abs(r.ber - expect) < 3.0 * half);
  }
}

TEST_CASE("config validation") {
  ExperimentConfig cfg = small_config(SchemeChoice::gsvd, 3, 2);
  CHECK_NOTHROW(cfg.validate());

  SUBCASE("csi_rho bounds") {
    cfg.csi_rho = 1.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("scheme/antenna compatibility") {
    cfg.scheme = SchemeChoice::mmse_eq;  // needs C <= G
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("empty snr list") {
    cfg.snr_db.clear();
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("nonpositive frames") {
    cfg.frames_per_snr = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
}
