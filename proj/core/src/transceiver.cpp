#include "gsvdlink/transceiver.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace gsvdlink {

namespace {

double power_norm(const MatrixXc& precoder, int bs_antennas,
                  const FrameParams& params) {
  // rho^2 = ||P||_F^2 / (MN C) keeps E{||x||^2} = MN C with unit symbols.
  return std::sqrt(precoder.squaredNorm() /
                   (static_cast<double>(params.grid_size()) * bs_antennas));
}

void check_channel_shapes(const MatrixXc& h1, const MatrixXc& h2,
                          int bs_antennas, int user_antennas,
                          const FrameParams& params) {
  const Index rows = static_cast<Index>(params.grid_size()) * user_antennas;
  const Index cols = static_cast<Index>(params.grid_size()) * bs_antennas;
  if (h1.rows() != rows || h1.cols() != cols || h2.rows() != rows ||
      h2.cols() != cols) {
    throw ShapeError("channel matrices must be MNG x MNC");
  }
}

}  // namespace

Regime classify_regime(int bs_antennas, int user_antennas) {
  if (bs_antennas < 1 || user_antennas < 1) {
    throw ArgumentError("classify_regime: antenna counts must be >= 1");
  }
  if (bs_antennas <= user_antennas) {
    return Regime::two;
  }
  if (bs_antennas >= 2 * user_antennas) {
    return Regime::three;
  }
  return Regime::one;
}

MatrixXc regime3_factored_precoder(const MatrixXc& v) {
  // V (n x q, n > q) = Q [Rv; 0]; then V^H = [W^H R, 0] Q^H with
  // W^H R = Rv^H. The SVD Rv^H = A S B^H gives W = A^H and R = S B^H, so R
  // carries the singular values of the stacked channel.
  const Index n = v.rows();
  const Index q = v.cols();
  Eigen::HouseholderQR<MatrixXc> qr(v);
  MatrixXc q_thin = qr.householderQ() * MatrixXc::Identity(n, q);
  MatrixXc rv = qr.matrixQR()
                    .topLeftCorner(q, q)
                    .template triangularView<Eigen::Upper>();
  Eigen::BDCSVD<MatrixXc> svd(rv.adjoint().eval(),
                              Eigen::ComputeFullU | Eigen::ComputeFullV);
  const MatrixXc& a = svd.matrixU();
  const MatrixXc& b = svd.matrixV();
  const VectorXd& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-12 * sv(0)) {
    throw DegenerateChannelError("regime3_factored_precoder: V is singular");
  }
  // P = Q_{:,1:q} R^-1 W with R^-1 = B S^-1 and W = A^H.
  return q_thin * b * sv.cwiseInverse().asDiagonal() * a.adjoint();
}

MatrixXc regime3_zf_precoder(const MatrixXc& v) {
  const MatrixXc gram = v.adjoint() * v;
  return v * gram.partialPivLu().solve(MatrixXc::Identity(v.cols(), v.cols()));
}

TransceiverPlan build_gsvd_plan(const MatrixXc& h1, const MatrixXc& h2,
                                int bs_antennas, int user_antennas,
                                const FrameParams& params) {
  check_channel_shapes(h1, h2, bs_antennas, user_antennas, params);
  const Index mn = params.grid_size();

  TransceiverPlan plan;
  plan.scheme = Scheme::gsvd;
  plan.regime = classify_regime(bs_antennas, user_antennas);

  GsvdFactors f = gsvd(h1, h2);
  const Index q = f.rank();
  if (q % mn != 0) {
    throw DegenerateChannelError("build_gsvd_plan: rank is not a multiple "
                                 "of the grid size");
  }
  plan.streams_per_bin = q / mn;

  if (plan.regime == Regime::three) {
    plan.precoder = regime3_factored_precoder(f.v);
  } else {
    // V is square in regimes I and II: P = (V^H)^-1.
    plan.precoder = f.v.adjoint().partialPivLu().solve(
        MatrixXc::Identity(q, q));
  }
  plan.d1 = f.u1.adjoint();
  plan.d2 = f.u2.adjoint();
  plan.rho = power_norm(plan.precoder, bs_antennas, params);

  plan.stream_map.resize(static_cast<std::size_t>(q));
  for (Index i = 0; i < q; ++i) {
    StreamInfo& info = plan.stream_map[static_cast<std::size_t>(i)];
    if (i < f.num_private1) {
      info.cls = StreamClass::private1;
    } else if (i >= q - f.num_private2) {
      info.cls = StreamClass::private2;
    } else {
      info.cls = StreamClass::common;
    }
    if (f.c1(i) > 0) {
      info.gain1 = f.c1(i);
      info.row1 = i;  // Sigma1 diagonal is top-aligned
    }
    if (f.c2(i) > 0) {
      info.gain2 = f.c2(i);
      info.row2 = i - f.num_private1;  // Sigma2 diagonal is bottom-aligned
    }
  }
  return plan;
}

TransceiverPlan bd_mmse_plan(const MatrixXc& h1, const MatrixXc& h2,
                             int bs_antennas, int user_antennas,
                             const FrameParams& params, double noise_var) {
  check_channel_shapes(h1, h2, bs_antennas, user_antennas, params);
  if (bs_antennas <= user_antennas) {
    throw UnsupportedConfigError(
        "bd_mmse_plan: requires C > G so per-user null spaces exist");
  }
  const Index mn = params.grid_size();
  const Index k = mn * (bs_antennas - user_antennas);

  MatrixXc p1 = null_space_basis(h2);
  MatrixXc p2 = null_space_basis(h1);
  if (p1.cols() != k || p2.cols() != k) {
    throw DegenerateChannelError("bd_mmse_plan: unexpected null-space size");
  }

  TransceiverPlan plan;
  plan.scheme = Scheme::bd_mmse;
  plan.regime = Regime::one;
  plan.streams_per_bin = 2 * (bs_antennas - user_antennas);
  plan.precoder = MatrixXc(h1.cols(), 2 * k);
  plan.precoder.leftCols(k) = p1;
  plan.precoder.rightCols(k) = p2;
  plan.rho = power_norm(plan.precoder, bs_antennas, params);

  // Per-user MMSE equalizer on the effective channel A_u = (1/rho) H_u P_u.
  const MatrixXc a1 = (1.0 / plan.rho) * (h1 * p1);
  const MatrixXc a2 = (1.0 / plan.rho) * (h2 * p2);
  auto mmse_weights = [&](const MatrixXc& a) {
    MatrixXc gram = a.adjoint() * a;
    gram += noise_var * MatrixXc::Identity(gram.rows(), gram.cols());
    return MatrixXc(gram.ldlt().solve(a.adjoint()));
  };
  plan.d1 = mmse_weights(a1);
  plan.d2 = mmse_weights(a2);

  plan.stream_map.resize(static_cast<std::size_t>(2 * k));
  for (Index i = 0; i < 2 * k; ++i) {
    StreamInfo& info = plan.stream_map[static_cast<std::size_t>(i)];
    if (i < k) {
      info.cls = StreamClass::private1;
      info.gain1 = Complex(1, 0);
      info.row1 = i;
    } else {
      info.cls = StreamClass::private2;
      info.gain2 = Complex(1, 0);
      info.row2 = i - k;
    }
  }
  return plan;
}

TransceiverPlan mmse_precoder_plan(const MatrixXc& h1, const MatrixXc& h2,
                                   int bs_antennas, int user_antennas,
                                   const FrameParams& params,
                                   double noise_var) {
  check_channel_shapes(h1, h2, bs_antennas, user_antennas, params);
  if (bs_antennas < 2 * user_antennas) {
    throw UnsupportedConfigError("mmse_precoder_plan: requires C >= 2G");
  }
  const Index mn = params.grid_size();
  const Index m = 2 * mn * user_antennas;

  MatrixXc h(m, h1.cols());
  h.topRows(h1.rows()) = h1;
  h.bottomRows(h2.rows()) = h2;

  const double alpha =
      noise_var * (2.0 * user_antennas) / static_cast<double>(bs_antennas);
  MatrixXc gram = h * h.adjoint();
  gram += alpha * MatrixXc::Identity(m, m);
  MatrixXc p = h.adjoint() * gram.ldlt().solve(MatrixXc::Identity(m, m));

  TransceiverPlan plan;
  plan.scheme = Scheme::mmse_prec;
  plan.regime = Regime::three;
  plan.streams_per_bin = 2 * user_antennas;
  plan.precoder = std::move(p);
  plan.rho = power_norm(plan.precoder, bs_antennas, params);

  // Diagonal of the effective channel, used as the single-tap gain; residual
  // interference is left to the noise term.
  const MatrixXc eff = (1.0 / plan.rho) * (h * plan.precoder);
  const Index half = m / 2;
  plan.stream_map.resize(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) {
    StreamInfo& info = plan.stream_map[static_cast<std::size_t>(i)];
    if (i < half) {
      info.cls = StreamClass::private1;
      info.gain1 = eff(i, i);
      info.row1 = i;
    } else {
      info.cls = StreamClass::private2;
      info.gain2 = eff(i, i);
      info.row2 = i - half;
    }
  }
  return plan;
}

TransceiverPlan mmse_eq_plan(const MatrixXc& h1, const MatrixXc& h2,
                             int bs_antennas, int user_antennas,
                             const FrameParams& params, double noise_var) {
  check_channel_shapes(h1, h2, bs_antennas, user_antennas, params);
  if (bs_antennas > user_antennas) {
    throw UnsupportedConfigError(
        "mmse_eq_plan: requires C <= G for well-posed stream recovery");
  }
  const Index n = h1.cols();

  TransceiverPlan plan;
  plan.scheme = Scheme::mmse_eq;
  plan.regime = Regime::two;
  plan.streams_per_bin = bs_antennas;
  plan.precoder = MatrixXc::Identity(n, n);
  plan.rho = 1.0;

  auto mmse_weights = [&](const MatrixXc& h) {
    MatrixXc gram = h.adjoint() * h;
    gram += noise_var * MatrixXc::Identity(n, n);
    return MatrixXc(gram.ldlt().solve(h.adjoint()));
  };
  plan.d1 = mmse_weights(h1);
  plan.d2 = mmse_weights(h2);

  plan.stream_map.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    StreamInfo& info = plan.stream_map[static_cast<std::size_t>(i)];
    info.cls = StreamClass::common;
    info.gain1 = Complex(1, 0);
    info.gain2 = Complex(1, 0);
    info.row1 = i;
    info.row2 = i;
  }
  return plan;
}

VectorXc single_tap_mmse_detect(const VectorXc& r, const VectorXc& gains,
                                double noise_var) {
  if (r.size() != gains.size()) {
    throw ShapeError("single_tap_mmse_detect: gains and input must conform");
  }
  if (noise_var < 0) {
    throw ArgumentError("single_tap_mmse_detect: noise_var must be >= 0");
  }
  VectorXc out(r.size());
  for (Index i = 0; i < r.size(); ++i) {
    const Complex g = gains(i);
    const double g2 = std::norm(g);
    out(i) = g2 > 0 ? std::conj(g) * r(i) / (g2 + noise_var) : Complex(0, 0);
  }
  return out;
}

VectorXc mmse_equalize(const MatrixXc& h, const VectorXc& y,
                       double noise_var) {
  if (h.rows() != y.size()) {
    throw ShapeError("mmse_equalize: channel and observation must conform");
  }
  MatrixXc gram = h.adjoint() * h;
  gram += noise_var * MatrixXc::Identity(h.cols(), h.cols());
  return gram.ldlt().solve(h.adjoint() * y);
}

VectorXc detect_symbols(const TransceiverPlan& plan, int user,
                        const VectorXc& y, double noise_var) {
  if (user != 1 && user != 2) {
    throw ArgumentError("detect_symbols: user must be 1 or 2");
  }
  const MatrixXc& d = user == 1 ? plan.d1 : plan.d2;
  const Index q = plan.total_streams();
  VectorXc out = VectorXc::Zero(q);

  switch (plan.scheme) {
    case Scheme::gsvd: {
      if (d.cols() != y.size()) {
        throw ShapeError("detect_symbols: observation length mismatch");
      }
      const VectorXc r = plan.rho * (d * y);
      const double eff_noise = plan.rho * plan.rho * noise_var;
      for (Index i = 0; i < q; ++i) {
        const StreamInfo& info = plan.stream_map[static_cast<std::size_t>(i)];
        const Complex g = user == 1 ? info.gain1 : info.gain2;
        const Index row = user == 1 ? info.row1 : info.row2;
        if (row >= 0) {
          const double g2 = std::norm(g);
          out(i) = std::conj(g) * r(row) / (g2 + eff_noise);
        }
      }
      return out;
    }
    case Scheme::bd_mmse:
    case Scheme::mmse_eq: {
      if (d.cols() != y.size()) {
        throw ShapeError("detect_symbols: observation length mismatch");
      }
      const VectorXc z = d * y;
      for (Index i = 0; i < q; ++i) {
        const StreamInfo& info = plan.stream_map[static_cast<std::size_t>(i)];
        const Index row = user == 1 ? info.row1 : info.row2;
        if (row >= 0) {
          out(i) = z(row);
        }
      }
      return out;
    }
    case Scheme::mmse_prec: {
      for (Index i = 0; i < q; ++i) {
        const StreamInfo& info = plan.stream_map[static_cast<std::size_t>(i)];
        const Complex g = user == 1 ? info.gain1 : info.gain2;
        const Index row = user == 1 ? info.row1 : info.row2;
        if (row >= 0) {
          if (row >= y.size()) {
            throw ShapeError("detect_symbols: observation length mismatch");
          }
          const double g2 = std::norm(g);
          out(i) = std::conj(g) * y(row) / (g2 + noise_var);
        }
      }
      return out;
    }
  }
  return out;
}

}  // namespace gsvdlink
