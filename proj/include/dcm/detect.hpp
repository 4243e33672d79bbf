#pragma once

// Inverse problem for the decomposability condition: search (alpha, beta)
// such that S(alpha,beta) = alpha G + beta (Mg+Mg^T) + gamma Mg^T G Mg has
// rank <= 2, then factor the symmetric remainder into A B^T + B A^T.
//
// Search strategy (gamma = 1): a rank-2 S(alpha,beta) forces the pencil
// eigenvalues of -G (K + beta H) to contain alpha with multiplicity >= 4,
// so the coarse stage scans beta for the tightest 4-cluster among those
// eigenvalues, takes alpha from the cluster centroid, refines beta by
// golden-section inside the best grid basins, and polishes (alpha, beta)
// with a Gauss-Newton iteration on the tail-subspace residual. The gamma = 0
// branch needs no scan: alpha is the 4-cluster of -G (Mg+Mg^T) directly.

#include "dcm/media.hpp"

#include <algorithm>

namespace dcm {

struct DetectOptions {
  int grid = 161;          // coarse beta samples over [-span, span] * ||Mg||_2
  double span = 3.0;
  int refine_basins = 3;   // best grid basins refined by golden section
  int golden_iters = 60;
  int polish_iters = 30;
  double accept = 1e-8;    // on sqrt(sum sigma_{3..6}^2) / ||S||_F
};

namespace detail {

inline double spectral_norm(const Mat6& m) {
  return Eigen::JacobiSVD<Mat6>(m).singularValues()[0];
}

// Tightest 4-subset of 6 eigenvalues: (max spread, centroid).
inline std::pair<double, Scalar> cluster4(const Eigen::VectorXcd& evs) {
  double best = std::numeric_limits<double>::infinity();
  Scalar centroid{0.0};
  std::array<int, 6> idx{0, 1, 2, 3, 4, 5};
  // all C(6,4)=15 subsets, enumerated by the excluded pair
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b) {
      Scalar sum{0.0};
      for (int k : idx)
        if (k != a && k != b) sum += evs[k];
      const Scalar c = sum / 4.0;
      double spread = 0.0;
      for (int k : idx)
        if (k != a && k != b) spread = std::max(spread, std::abs(evs[k] - c));
      if (spread < best) {
        best = spread;
        centroid = c;
      }
    }
  return {best, centroid};
}

inline double tail_sq(const Mat6& s) {
  const auto sv = Eigen::JacobiSVD<Mat6>(s).singularValues();
  double out = 0.0;
  for (int i = 2; i < 6; ++i) out += sv[i] * sv[i];
  return out;
}

// Factor a (numerically) rank <= 2 complex-symmetric T into A B^T + B A^T.
// T = U2 N U2^T with N = U2^H T conj(U2) 2x2 symmetric; diagonalize N with
// bilinear-orthonormal eigenvectors and recombine. Non-uniqueness
// (A,B) -> (cA, B/c) is inherent; callers compare subspaces.
inline std::pair<Vec6, Vec6> factor_rank2_sym(const Mat6& t) {
  Eigen::JacobiSVD<Mat6> svd(t, Eigen::ComputeFullU);
  const Eigen::Matrix<Scalar, 6, 2> u2 = svd.matrixU().leftCols<2>();
  const Eigen::Matrix2cd n = u2.adjoint() * t * u2.conjugate();
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(n);
  Eigen::Matrix2cd w = es.eigenvectors();
  const Eigen::Vector2cd d = es.eigenvalues();
  for (int k = 0; k < 2; ++k) {
    const Scalar q = std::sqrt(Scalar(w.col(k).transpose() * w.col(k)));
    if (std::abs(q) < 1e-10)
      throw NumericError("factor_rank2_sym: isotropic eigenvector, cannot normalize");
    w.col(k) /= q;
  }
  const Vec6 v1 = u2 * w.col(0);
  const Vec6 v2 = u2 * w.col(1);
  const Scalar s1 = std::sqrt(d[0]);
  const Scalar s2 = Scalar(0.0, 1.0) * std::sqrt(d[1]);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return {Vec6((s1 * v1 + s2 * v2) * inv_sqrt2), Vec6((s1 * v1 - s2 * v2) * inv_sqrt2)};
}

}  // namespace detail

inline std::vector<Dc1Witness> detect_dcm(const Mat6& mg, const DetectOptions& opt = {}) {
  const Mat6& g = detail::lift_matrix();
  const Mat6 h = mg + mg.transpose();
  const Mat6 k = mg.transpose() * g * mg;
  const double scale = std::max(detail::spectral_norm(mg), 1e-30);
  std::vector<Dc1Witness> found;

  auto try_accept = [&](Scalar alpha, Scalar beta, Scalar gamma) {
    const Mat6 s = dc1_lhs(mg, alpha, beta, gamma);
    const double snorm = std::max(s.norm(), 1e-30);
    if (std::sqrt(detail::tail_sq(s)) > opt.accept * snorm) return;
    Dc1Witness w;
    w.alpha = alpha;
    w.beta = beta;
    w.gamma = gamma;
    try {
      std::tie(w.a, w.b) = detail::factor_rank2_sym(s);
    } catch (const NumericError&) {
      return;
    }
    w.residual = dc1_residual(mg, w);
    // gate against the medium's own quadratic scale, not ||S||: a diverged
    // (alpha, beta) inflates S and would otherwise self-justify
    if (w.residual <= opt.accept * std::max(1.0, scale * scale)) found.push_back(w);
  };

  // gamma = 0 branch: one linear eigenvalue problem.
  {
    const auto [spread, centroid] = detail::cluster4(Eigen::VectorXcd((-g * h).eigenvalues()));
    (void)spread;
    try_accept(centroid.real(), 1.0, 0.0);
  }

  // gamma = 1 branch: scan beta, cluster alpha, refine, polish.
  auto cluster_at = [&](double beta) {
    const Mat6 w = -g * (k + beta * h);
    return detail::cluster4(Eigen::VectorXcd(w.eigenvalues()));
  };
  std::vector<std::pair<double, double>> grid_vals;  // (spread, beta)
  const double lo0 = -opt.span * scale, hi0 = opt.span * scale;
  for (int i = 0; i < opt.grid; ++i) {
    const double b = lo0 + (hi0 - lo0) * i / (opt.grid - 1);
    grid_vals.emplace_back(cluster_at(b).first, b);
  }
  std::sort(grid_vals.begin(), grid_vals.end());
  const double step = (hi0 - lo0) / (opt.grid - 1);
  for (int basin = 0; basin < std::min<int>(opt.refine_basins, static_cast<int>(grid_vals.size()));
       ++basin) {
    double lo = grid_vals[static_cast<std::size_t>(basin)].second - step;
    double hi = grid_vals[static_cast<std::size_t>(basin)].second + step;
    for (int it = 0; it < opt.golden_iters; ++it) {
      const double m1 = lo + 0.382 * (hi - lo);
      const double m2 = lo + 0.618 * (hi - lo);
      if (cluster_at(m1).first < cluster_at(m2).first)
        hi = m2;
      else
        lo = m1;
    }
    double beta = 0.5 * (lo + hi);
    double alpha = cluster_at(beta).second.real();
    // Gauss-Newton on the tail subspace: minimize ||U2^H S V2|| over
    // corrections (d alpha, d beta).
    for (int it = 0; it < opt.polish_iters; ++it) {
      const Mat6 s = k + alpha * g + beta * h;
      Eigen::JacobiSVD<Mat6> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const Eigen::Matrix<Scalar, 6, 4> u2 = svd.matrixU().rightCols<4>();
      const Eigen::Matrix<Scalar, 6, 4> v2 = svd.matrixV().rightCols<4>();
      const Eigen::Matrix4cd r = u2.adjoint() * s * v2;
      const Eigen::Matrix4cd jg = u2.adjoint() * g * v2;
      const Eigen::Matrix4cd jh = u2.adjoint() * h * v2;
      Eigen::Matrix<Scalar, 16, 2> jac;
      Eigen::Matrix<Scalar, 16, 1> rhs;
      for (int idx = 0; idx < 16; ++idx) {
        jac(idx, 0) = jg(idx / 4, idx % 4);
        jac(idx, 1) = jh(idx / 4, idx % 4);
        rhs[idx] = -r(idx / 4, idx % 4);
      }
      const Eigen::Vector2cd dd = jac.colPivHouseholderQr().solve(rhs);
      alpha += dd[0].real();
      beta += dd[1].real();
      if (dd.norm() <= 1e-15 * std::max(1.0, std::abs(alpha) + std::abs(beta))) break;
    }
    try_accept(alpha, beta, 1.0);
  }

  // Deduplicate near-identical witnesses, best residual first.
  std::sort(found.begin(), found.end(),
            [](const Dc1Witness& a, const Dc1Witness& b) { return a.residual < b.residual; });
  std::vector<Dc1Witness> out;
  for (const auto& w : found) {
    bool dup = false;
    for (const auto& u : out)
      if (std::abs(w.gamma - u.gamma) < 0.5 && std::abs(w.alpha - u.alpha) < 1e-6 * scale * scale &&
          std::abs(w.beta - u.beta) < 1e-6 * scale)
        dup = true;
    if (!dup) out.push_back(w);
  }
  return out;
}

inline std::vector<Dc1Witness> detect_dcm(const Medium& med, const DetectOptions& opt = {}) {
  return detect_dcm(med.mg(), opt);
}

// Largest principal angle (radians) between span{a1,b1} and span{a2,b2}.
inline double bivector_span_angle(const Vec6& a1, const Vec6& b1, const Vec6& a2, const Vec6& b2) {
  Eigen::Matrix<Scalar, 6, 2> m1, m2;
  m1.col(0) = a1;
  m1.col(1) = b1;
  m2.col(0) = a2;
  m2.col(1) = b2;
  const Eigen::Matrix<Scalar, 6, 2> q1 = Eigen::HouseholderQR<Eigen::Matrix<Scalar, 6, 2>>(m1)
                                             .householderQ() *
                                         Eigen::Matrix<Scalar, 6, 2>::Identity();
  const Eigen::Matrix<Scalar, 6, 2> q2 = Eigen::HouseholderQR<Eigen::Matrix<Scalar, 6, 2>>(m2)
                                             .householderQ() *
                                         Eigen::Matrix<Scalar, 6, 2>::Identity();
  const auto sv = Eigen::JacobiSVD<Eigen::Matrix2cd>(q1.adjoint() * q2).singularValues();
  const double c = std::clamp(sv[1], 0.0, 1.0);
  return std::acos(c);
}

}  // namespace dcm
