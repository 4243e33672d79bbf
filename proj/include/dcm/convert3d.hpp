#pragma once

// 3D expansion of the 4D constitutive map and the Gibbsian translation.
//
// Field splits: Phi = B + E ^ eps4, Psi = D - H ^ eps4. Spatial two-form
// slots are (1,2),(1,3),(2,3); temporal slots (i,4) carry E_i (resp. -H_i).
// The relabel matrix L carries spatial two-form coordinates to axial-vector
// components: slot(2,3) -> axis 1, slot(1,3) -> -axis 2, slot(1,2) -> axis 3.
// L is symmetric and involutive.

#include "dcm/media.hpp"

namespace dcm {

inline constexpr std::array<int, 3> kSpatialSlot{0, 1, 3};   // (12),(13),(23)
inline constexpr std::array<int, 3> kTemporalSlot{2, 4, 5};  // (14),(24),(34)

namespace detail {

inline const Mat3& relabel_matrix() {
  static const Mat3 l = [] {
    Mat3 m = Mat3::Zero();
    m(0, 2) = 1.0;
    m(1, 1) = -1.0;
    m(2, 0) = 1.0;
    return m;
  }();
  return l;
}

template <typename M, typename A>
Mat3 pick_block(const M& m, const A& rows, const A& cols) {
  Mat3 out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out(r, c) = m(rows[static_cast<std::size_t>(r)],
                                              cols[static_cast<std::size_t>(c)]);
  return out;
}

template <typename M, typename A>
void put_block(M& m, const A& rows, const A& cols, const Mat3& blk) {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      m(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]) = blk(r, c);
}

}  // namespace detail

// The four 3D dyadic components of the medium map:
//   D_form = alpha_d B_form + eps_prime E,  -H = mu_inv' ... concretely
//   m[ss] = alpha_d, m[st] = eps_prime, m[ts] = -mu_inv, m[tt] = -beta_d.
struct ThreeDSplit {
  Mat3 alpha_d = Mat3::Zero();   // spatial two-forms -> spatial two-forms
  Mat3 eps_prime = Mat3::Zero(); // E axes -> spatial two-form slots
  Mat3 mu_inv = Mat3::Zero();    // spatial two-form slots -> H axes
  Mat3 beta_d = Mat3::Zero();    // E axes -> H axes
};

inline ThreeDSplit split_3d(const Mat6& m) {
  ThreeDSplit s;
  s.alpha_d = detail::pick_block(m, kSpatialSlot, kSpatialSlot);
  s.eps_prime = detail::pick_block(m, kSpatialSlot, kTemporalSlot);
  s.mu_inv = -detail::pick_block(m, kTemporalSlot, kSpatialSlot);
  s.beta_d = -detail::pick_block(m, kTemporalSlot, kTemporalSlot);
  return s;
}

inline ThreeDSplit split_3d(const Medium& med) { return split_3d(med.m()); }

inline Mat6 join_3d_mat(const ThreeDSplit& s) {
  Mat6 m = Mat6::Zero();
  detail::put_block(m, kSpatialSlot, kSpatialSlot, s.alpha_d);
  detail::put_block(m, kSpatialSlot, kTemporalSlot, s.eps_prime);
  detail::put_block(m, kTemporalSlot, kSpatialSlot, Mat3(-s.mu_inv));
  detail::put_block(m, kTemporalSlot, kTemporalSlot, Mat3(-s.beta_d));
  return m;
}

inline Medium join_3d(const ThreeDSplit& s) { return Medium(join_3d_mat(s)); }

// Gibbsian constitutive matrices: D = eps_g E + xi_g H, B = zeta_g E + mu_g H.
struct GibbsianMedium {
  Mat3 eps_g = Mat3::Zero();
  Mat3 xi_g = Mat3::Zero();
  Mat3 zeta_g = Mat3::Zero();
  Mat3 mu_g = Mat3::Zero();
};

inline Medium fourd_from_gibbsian(const GibbsianMedium& g) {
  if (!is_invertible(g.mu_g)) throw NumericError("fourd_from_gibbsian: mu_g is singular");
  const Mat3& l = detail::relabel_matrix();
  const Mat3 mu_inv_g = g.mu_g.inverse();
  ThreeDSplit s;
  // Eliminate H = mu_g^{-1}(B_vec - zeta_g E) from the D relation.
  const Mat3 alpha_gibbs = g.xi_g * mu_inv_g;
  const Mat3 eps_p = g.eps_g - g.xi_g * mu_inv_g * g.zeta_g;
  const Mat3 beta_gibbs = -mu_inv_g * g.zeta_g;
  s.alpha_d = l * alpha_gibbs * l;  // L^{-1} = L
  s.eps_prime = l * eps_p;
  s.mu_inv = mu_inv_g * l;
  s.beta_d = -beta_gibbs;
  return Medium(join_3d_mat(s));
}

inline GibbsianMedium gibbsian_from_4d(const Mat6& m) {
  const ThreeDSplit s = split_3d(m);
  if (!is_invertible(s.mu_inv))
    throw NumericError("gibbsian_from_4d: the mu_inv block is singular (mu bar not invertible)");
  const Mat3& l = detail::relabel_matrix();
  const Mat3 alpha_gibbs = l * s.alpha_d * l;
  const Mat3 eps_p = l * s.eps_prime;
  const Mat3 mu_inv_g = s.mu_inv * l;
  const Mat3 beta_gibbs = -s.beta_d;
  GibbsianMedium g;
  g.mu_g = mu_inv_g.inverse();
  g.zeta_g = -g.mu_g * beta_gibbs;
  g.xi_g = alpha_gibbs * g.mu_g;
  g.eps_g = eps_p + g.xi_g * mu_inv_g * g.zeta_g;
  return g;
}

inline GibbsianMedium gibbsian_from_4d(const Medium& med) { return gibbsian_from_4d(med.m()); }

struct UniaxialGibbsian {
  GibbsianMedium medium;
  bool degenerate = false;  // eps_t mu_z - mu_t eps_z = 0: TE/TM split not unique
};

inline UniaxialGibbsian uniaxial_gibbsian(Scalar eps_t, Scalar eps_z, Scalar mu_t, Scalar mu_z) {
  UniaxialGibbsian out;
  out.medium.eps_g = Vec3(eps_t, eps_t, eps_z).asDiagonal();
  out.medium.mu_g = Vec3(mu_t, mu_t, mu_z).asDiagonal();
  const Scalar det = eps_t * mu_z - mu_t * eps_z;
  out.degenerate = std::abs(det) <= kAbsTol + kRelTol * std::max(std::abs(eps_t * mu_z),
                                                                 std::abs(mu_t * eps_z));
  return out;
}

// ---- SDCM three-dimensional parametrization ----
//
// Bo = Cs + e4 gamma_s + c_s eps4 - tr(Cs) e4 eps4 (trace free by design);
// bivectors A = e123 _| alpha_s + a_s ^ e4 and likewise B from (beta_s, b_s).

inline Mat4 sdcm_bo_from_spatial(const Mat3& cs, const Vec3& gamma_s, const Vec3& c_s) {
  Mat4 bo = Mat4::Zero();
  bo.topLeftCorner<3, 3>() = cs;
  bo.row(3).head<3>() = gamma_s.transpose();
  bo.col(3).head<3>() = c_s;
  bo(3, 3) = -cs.trace();
  return bo;
}

inline Vec6 bivector_from_spatial(const Vec3& alpha_s, const Vec3& a_s) {
  const Mat3& l = detail::relabel_matrix();
  const Vec3 sform = l * alpha_s;  // L^T = L
  Vec6 out = Vec6::Zero();
  for (int i = 0; i < 3; ++i) {
    out[kSpatialSlot[static_cast<std::size_t>(i)]] = sform[i];
    out[kTemporalSlot[static_cast<std::size_t>(i)]] = a_s[i];
  }
  return out;
}

inline std::pair<Vec3, Vec3> spatial_from_bivector(const Vec6& biv) {
  const Mat3& l = detail::relabel_matrix();
  Vec3 sform, t;
  for (int i = 0; i < 3; ++i) {
    sform[i] = biv[kSpatialSlot[static_cast<std::size_t>(i)]];
    t[i] = biv[kTemporalSlot[static_cast<std::size_t>(i)]];
  }
  return {Vec3(l * sform), t};
}

namespace detail {

// (Cs ^^ Is) acting on spatial bivectors, in spatial two-form slots.
inline Mat3 wedge_dyads3(const Mat3& cs) {
  Mat3 w;
  const std::array<std::pair<int, int>, 3> basis{{{1, 2}, {1, 3}, {2, 3}}};
  for (int col = 0; col < 3; ++col) {
    const auto [i, j] = basis[static_cast<std::size_t>(col)];
    Vec4 ei = Vec4::Zero(), ej = Vec4::Zero(), cei = Vec4::Zero(), cej = Vec4::Zero();
    ei[i - 1] = 1.0;
    ej[j - 1] = 1.0;
    cei.head<3>() = cs * ei.head<3>();
    cej.head<3>() = cs * ej.head<3>();
    const Vec6 wv = (wedge(KVector(1, Eigen::VectorXcd(cei)), KVector(1, Eigen::VectorXcd(ej))) +
                     wedge(KVector(1, Eigen::VectorXcd(ei)), KVector(1, Eigen::VectorXcd(cej))))
                        .coords();
    for (int r = 0; r < 3; ++r) w(r, col) = wv[kSpatialSlot[static_cast<std::size_t>(r)]];
  }
  return w;
}

inline Vec3 spatial_slots_of_wedge(const Vec3& a, const Vec3& b) {
  Vec4 a4 = Vec4::Zero(), b4 = Vec4::Zero();
  a4.head<3>() = a;
  b4.head<3>() = b;
  const Vec6 w =
      wedge(KVector(1, Eigen::VectorXcd(a4)), KVector(1, Eigen::VectorXcd(b4))).coords();
  Vec3 out;
  for (int r = 0; r < 3; ++r) out[r] = w[kSpatialSlot[static_cast<std::size_t>(r)]];
  return out;
}

}  // namespace detail

// Direct 3D component formulas for the SDCM; agrees with
// split_3d(construct_sdcm(...)) on the embedded Bo, A, B.
inline ThreeDSplit sdcm_3d_components(Scalar alpha, const Mat3& cs, const Vec3& gamma_s,
                                      const Vec3& c_s, const Vec3& a_s, const Vec3& b_s,
                                      const Vec3& alpha_s, const Vec3& beta_s) {
  const Mat3& l = detail::relabel_matrix();
  const Mat3 i3 = Mat3::Identity();
  ThreeDSplit out;
  out.alpha_d = alpha * i3 + detail::wedge_dyads3(cs).transpose() +
                l * (a_s * beta_s.transpose() + b_s * alpha_s.transpose()) * l;
  Mat3 gwedge;
  for (int j = 0; j < 3; ++j) gwedge.col(j) = detail::spatial_slots_of_wedge(gamma_s, i3.col(j));
  out.eps_prime = -gwedge + l * (a_s * b_s.transpose() + b_s * a_s.transpose());
  Mat3 cwedge;
  for (int i = 0; i < 3; ++i)
    cwedge.row(i) = detail::spatial_slots_of_wedge(i3.col(i), c_s).transpose();
  out.mu_inv = -cwedge -
               (alpha_s * (l * beta_s).transpose() + beta_s * (l * alpha_s).transpose());
  out.beta_d = -alpha * i3 - (cs - cs.trace() * i3).transpose() -
               (alpha_s * b_s.transpose() + beta_s * a_s.transpose());
  return out;
}

// Gyrotropic special case: alpha = 0, Cs = 0, b_s = lambda a_s,
// beta_s = -lambda alpha_s; the magnetoelectric blocks vanish and
//   eps_g = 2 lambda a_s a_s - gamma_s x I
//   mu_g  = (c_s c_s + 2 lambda (c_s|alpha_s) alpha_s x I) / (2 lambda (c_s|alpha_s)^2).
inline GibbsianMedium sdcm_gyrotropic_example(Scalar lambda, const Vec3& a_s, const Vec3& alpha_s,
                                              const Vec3& gamma_s, const Vec3& c_s) {
  const Scalar ca = c_s.transpose() * alpha_s;
  if (std::abs(lambda) <= kAbsTol)
    throw std::invalid_argument("sdcm_gyrotropic_example: lambda must be nonzero");
  const double mag = std::max(1.0, c_s.norm() * alpha_s.norm());
  if (std::abs(ca) <= kAbsTol + kRelTol * mag)
    throw NumericError("sdcm_gyrotropic_example: c_s|alpha_s = 0, mu_g formula singular");
  auto cross = [](const Vec3& v) {
    Mat3 m;
    m << 0.0, -v[2], v[1], v[2], 0.0, -v[0], -v[1], v[0], 0.0;
    return m;
  };
  GibbsianMedium g;
  g.eps_g = 2.0 * lambda * (a_s * a_s.transpose()) - cross(gamma_s);
  g.mu_g = (c_s * c_s.transpose() + 2.0 * lambda * ca * cross(alpha_s)) /
           (2.0 * lambda * ca * ca);
  return g;
}

// The corresponding 4D SDCM for the gyrotropic parameters.
inline Medium sdcm_gyrotropic_medium(Scalar lambda, const Vec3& a_s, const Vec3& alpha_s,
                                     const Vec3& gamma_s, const Vec3& c_s) {
  const Mat4 bo = sdcm_bo_from_spatial(Mat3::Zero(), gamma_s, c_s);
  const Vec6 a = bivector_from_spatial(alpha_s, a_s);
  const Vec6 b = bivector_from_spatial(Vec3(-lambda * alpha_s), Vec3(lambda * a_s));
  return construct_sdcm(0.0, bo, a, b);
}

}  // namespace dcm
