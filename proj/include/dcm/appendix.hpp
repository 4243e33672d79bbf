#pragma once

// Classifier for media satisfying the quadratic dyadic equation
// Mg^T G Mg = alpha G: decides P-medium vs Q-medium from the 3D block
// invertibility pattern and recovers the generating grade-1 dyadic by
// factoring the second compound.

#include "dcm/convert3d.hpp"

namespace dcm {

enum class QuadraticKind { PMedium, QMedium };

struct QuadraticClassification {
  QuadraticKind kind = QuadraticKind::PMedium;
  Mat4 recovered = Mat4::Zero();  // P or Q, first large entry normalized to 1
  Scalar scale{0.0};              // factor M in M P^(2) / M Q^(2)
  Scalar alpha{0.0};              // right-hand scalar of the quadratic equation
  // invertibility of (alpha_d, eps_prime, mu_inv, beta_d)
  std::array<bool, 4> invertible{false, false, false, false};
  double equation_residual = 0.0;
  double reconstruction_residual = 0.0;
  Scalar x_double_eigenvalue{0.0};
  Scalar x_alpha{0.0};  // det(X)/A^2, equals alpha for consistent instances
  bool ill_conditioned = false;
};

namespace detail {

inline Mat4 bivec_rep(const Vec6& a) {
  const auto& pairs = basis_tuples(2);
  Mat4 m = Mat4::Zero();
  for (int s = 0; s < 6; ++s) {
    const int i = pairs[static_cast<std::size_t>(s)][0] - 1,
              j = pairs[static_cast<std::size_t>(s)][1] - 1;
    m(i, j) = a[s];
    m(j, i) = -a[s];
  }
  return m;
}

// Intersection direction of the column spaces of two rank-2 antisymmetric
// 4x4 matrices (smallest eigenvector of the summed orthogonal-complement
// projectors).
inline Vec4 line_intersect(const Mat4& b1, const Mat4& b2) {
  auto proj_perp = [](const Mat4& b) {
    Eigen::JacobiSVD<Mat4> svd(b, Eigen::ComputeFullU);
    const Eigen::Matrix<Scalar, 4, 2> ur = svd.matrixU().leftCols<2>();
    return Mat4(Mat4::Identity() - ur * ur.adjoint());
  };
  const Mat4 p = proj_perp(b1) + proj_perp(b2);
  Eigen::SelfAdjointEigenSolver<Mat4> es(p);
  return es.eigenvectors().col(0);
}

}  // namespace detail

// Factor W ~ M C2(q): recovers q (normalized) and M. Returns the relative
// reconstruction residual.
inline std::tuple<Mat4, Scalar, double> recover_from_c2(const Mat6& w) {
  const auto& pairs = detail::basis_tuples(2);
  auto slot = [&](int i, int j) {
    return detail::tuple_slot(2, std::vector<int>{i, j});
  };
  std::array<Vec4, 5> dirs;  // 1-based
  auto rep = [&](int i, int j) { return detail::bivec_rep(Vec6(w.col(slot(i, j)))); };
  dirs[1] = detail::line_intersect(rep(1, 2), rep(1, 3));
  dirs[2] = detail::line_intersect(rep(1, 2), rep(2, 3));
  dirs[3] = detail::line_intersect(rep(1, 3), rep(2, 3));
  dirs[4] = detail::line_intersect(rep(1, 4), rep(2, 4));
  auto rho = [&](int i, int j) {
    const Vec6 wij = w.col(slot(i, j));
    const Vec6 basis = wedge(KVector(1, Eigen::VectorXcd(dirs[static_cast<std::size_t>(i)])),
                             KVector(1, Eigen::VectorXcd(dirs[static_cast<std::size_t>(j)])))
                           .coords();
    int k = 0;
    basis.cwiseAbs().maxCoeff(&k);
    if (std::abs(basis[k]) < 1e-300)
      throw NumericError("recover_from_c2: degenerate direction pair");
    return Scalar(wij[k] / basis[k]);
  };
  const Scalar r12 = rho(1, 2), r13 = rho(1, 3), r23 = rho(2, 3), r14 = rho(1, 4);
  if (std::abs(r23) < 1e-300) throw NumericError("recover_from_c2: vanishing column scale");
  const Scalar s1 = std::sqrt(r12 * r13 / r23);
  const std::array<Scalar, 5> s{0.0, s1, r12 / s1, r13 / s1, r14 / s1};
  Mat4 q;
  for (int i = 1; i <= 4; ++i)
    q.col(i - 1) = s[static_cast<std::size_t>(i)] * dirs[static_cast<std::size_t>(i)];
  // normalize: first entry above cutoff (column-major) becomes +1
  const double qmax = q.cwiseAbs().maxCoeff();
  Scalar pivot{0.0};
  for (int c = 0; c < 4 && pivot == Scalar(0.0); ++c)
    for (int r = 0; r < 4; ++r)
      if (std::abs(q(r, c)) > 1e-8 * qmax) {
        pivot = q(r, c);
        break;
      }
  q /= pivot;
  const Mat6 c2q = compound2(q);
  int ri = 0, ci = 0;
  c2q.cwiseAbs().maxCoeff(&ri, &ci);
  const Scalar m = w(ri, ci) / c2q(ri, ci);
  const double res = (w - m * c2q).norm() / std::max(w.norm(), 1e-300);
  (void)pairs;
  return {q, m, res};
}

inline QuadraticClassification classify_quadratic_medium(const Mat6& m, double tol = 1e-8) {
  const Mat6& g = detail::lift_matrix();
  QuadraticClassification out;
  const Mat6 s = g * m;
  const Mat6 e = s.transpose() * g * s;
  out.alpha = (g * e).trace() / 6.0;
  const double scale2 = std::max(s.norm() * s.norm(), 1e-300);
  out.equation_residual = (e - out.alpha * g).norm() / scale2;
  if (out.equation_residual > tol)
    throw NumericError("classify_quadratic_medium: input fails the quadratic equation, residual " +
                       std::to_string(out.equation_residual));
  const Scalar axion = m.trace() / 6.0;
  if ((m - axion * Mat6::Identity()).norm() <= tol * std::max(1.0, m.norm()))
    throw NumericError(
        "classify_quadratic_medium: degenerate axion medium, both reconstructions trivial");
  if (std::abs(out.alpha) <= tol * scale2)
    throw NumericError("classify_quadratic_medium: alpha = 0 not handled by the case analysis");

  const ThreeDSplit blk = split_3d(m);
  out.invertible = {is_invertible(blk.alpha_d), is_invertible(blk.eps_prime),
                    is_invertible(blk.mu_inv), is_invertible(blk.beta_d)};
  const bool pair1_a = out.invertible[0], pair1_mu = out.invertible[2];
  const bool pair2_e = out.invertible[1], pair2_b = out.invertible[3];
  if (pair1_a == pair1_mu || pair2_e == pair2_b)
    throw NumericError(
        "classify_quadratic_medium: invertibility pattern inconsistent (each of the pairs "
        "(alpha,mu_inv) and (eps',beta) must contain exactly one invertible member)");
  // borderline conditioning warning
  for (const Mat3& blkm : {blk.alpha_d, blk.eps_prime, blk.mu_inv, blk.beta_d}) {
    const double c = condition_estimate(blkm);
    if (c > 1e9 && c < kInvertibilityCutoff * 1e3) out.ill_conditioned = true;
  }

  const Mat3& l = detail::relabel_matrix();
  Mat3 x;
  if (pair1_a && pair2_b) {
    out.kind = QuadraticKind::PMedium;
    x = -l * blk.alpha_d.transpose() * l * blk.beta_d;
    std::tie(out.recovered, out.scale, out.reconstruction_residual) = recover_from_c2(m);
  } else if (pair1_mu && pair2_e) {
    out.kind = QuadraticKind::QMedium;
    x = -l * blk.mu_inv.transpose() * l * blk.eps_prime;
    std::tie(out.recovered, out.scale, out.reconstruction_residual) = recover_from_c2(s);
  } else {
    throw NumericError(
        "classify_quadratic_medium: invertibility pattern matches neither case "
        "(this condition leads to an impasse in the case analysis)");
  }
  // X is uniaxial: spectrum {A, A, A + c}; the double eigenvalue fixes A and
  // alpha = det(X)/A^2.
  const Eigen::Vector3cd ev = x.eigenvalues();
  const std::array<std::pair<int, int>, 3> prs{{{0, 1}, {1, 2}, {0, 2}}};
  double bestd = std::numeric_limits<double>::infinity();
  for (const auto& [i, j] : prs) {
    const double d = std::abs(ev[i] - ev[j]);
    if (d < bestd) {
      bestd = d;
      out.x_double_eigenvalue = 0.5 * (ev[i] + ev[j]);
    }
  }
  out.x_alpha = x.determinant() / (out.x_double_eigenvalue * out.x_double_eigenvalue);
  return out;
}

inline QuadraticClassification classify_quadratic_medium(const Medium& med, double tol = 1e-8) {
  return classify_quadratic_medium(med.m(), tol);
}

}  // namespace dcm
