#pragma once

// Medium representation and the decomposable-medium constructors (QDCM,
// PDCM, SDCM), together with the first-order decomposability condition
//   alpha G + beta (Mg + Mg^T) + gamma Mg^T G Mg = A B^T + B A^T
// its closed-form witnesses, and the D <-> (A,B) bivector relations.

#include "dcm/dyadics.hpp"
#include "dcm/errors.hpp"

#include <variant>
#include <vector>

namespace dcm {

struct QdcmParams {
  Scalar alpha{0.0};
  Scalar scale{0.0};  // the factor M in alpha G + M Q^(2) + D C^T
  Mat4 q = Mat4::Zero();
  Vec6 d = Vec6::Zero();
  Vec6 c = Vec6::Zero();
};

struct PdcmParams {
  Scalar alpha{0.0};
  Scalar scale{0.0};
  Mat4 p = Mat4::Zero();
  Vec6 d = Vec6::Zero();
  Vec6 c = Vec6::Zero();
};

struct SdcmParams {
  Scalar alpha{0.0};
  Mat4 bo = Mat4::Zero();  // trace free
  Vec6 a = Vec6::Zero();
  Vec6 b = Vec6::Zero();
};

struct QMediumParams {
  Scalar scale{0.0};
  Mat4 q = Mat4::Zero();
};

struct PMediumParams {
  Scalar scale{0.0};
  Mat4 p = Mat4::Zero();
};

struct AxionParams {
  Scalar alpha{0.0};
};

using Provenance = std::variant<std::monostate, QdcmParams, PdcmParams, SdcmParams,
                                QMediumParams, PMediumParams, AxionParams>;

// Constitutive map. m acts on field two-forms (Psi = m Phi); mg = G m is the
// modified dyadic on which every symmetry statement is literal.
class Medium {
 public:
  Medium() : m_(Mat6::Zero()), mg_(Mat6::Zero()) {}
  explicit Medium(const Mat6& m, Provenance prov = {})
      : m_(m), mg_(detail::lift_matrix() * m), prov_(std::move(prov)) {
    detail::check_finite(Eigen::VectorXcd(Eigen::Map<const Eigen::VectorXcd>(m_.data(), 36)));
  }

  static Medium from_mg(const Mat6& mg, Provenance prov = {}) {
    return Medium(Mat6(detail::lift_matrix() * mg), std::move(prov));
  }

  const Mat6& m() const { return m_; }
  const Mat6& mg() const { return mg_; }
  const Provenance& provenance() const { return prov_; }

  Dyadic dyadic() const { return Dyadic(forms(2), forms(2), m_); }
  Dyadic modified_dyadic() const { return Dyadic(forms(2), vectors(2), mg_); }

 private:
  Mat6 m_;
  Mat6 mg_;
  Provenance prov_;
};

inline Medium construct_qdcm(Scalar alpha, Scalar scale, const Mat4& q, const Vec6& d,
                             const Vec6& c) {
  const Mat6& g = detail::lift_matrix();
  const Mat6 mg = alpha * g + scale * compound2(q) + d * c.transpose();
  return Medium::from_mg(mg, QdcmParams{alpha, scale, q, d, c});
}

inline Medium construct_pdcm(Scalar alpha, Scalar scale, const Mat4& p, const Vec6& d,
                             const Vec6& c) {
  const Mat6& g = detail::lift_matrix();
  const Mat6 mg = alpha * g + scale * (g * compound2(p)) + d * c.transpose();
  return Medium::from_mg(mg, PdcmParams{alpha, scale, p, d, c});
}

inline Medium construct_sdcm(Scalar alpha, const Mat4& bo, const Vec6& a, const Vec6& b) {
  const Mat6& g = detail::lift_matrix();
  const Mat6 mg = alpha * g + antisym_from_traceless_mat(bo) + a * b.transpose() +
                  b * a.transpose();
  return Medium::from_mg(mg, SdcmParams{alpha, bo, a, b});
}

inline Medium construct_q_medium(Scalar scale, const Mat4& q) {
  return Medium::from_mg(Mat6(scale * compound2(q)), QMediumParams{scale, q});
}

inline Medium construct_p_medium(Scalar scale, const Mat4& p) {
  return Medium(Mat6(scale * compound2(p)), PMediumParams{scale, p});
}

inline Medium construct_axion(Scalar alpha) {
  return Medium::from_mg(Mat6(alpha * detail::lift_matrix()), AxionParams{alpha});
}

// Witness for the decomposability condition; gamma is 0 or 1 after
// normalization and residual is the Frobenius defect of the condition.
struct Dc1Witness {
  Scalar alpha{0.0};
  Scalar beta{0.0};
  Scalar gamma{0.0};
  Vec6 a = Vec6::Zero();
  Vec6 b = Vec6::Zero();
  double residual = 0.0;
};

inline Mat6 dc1_lhs(const Mat6& mg, Scalar alpha, Scalar beta, Scalar gamma) {
  const Mat6& g = detail::lift_matrix();
  return alpha * g + beta * (mg + mg.transpose()) + gamma * (mg.transpose() * g * mg);
}

inline double dc1_residual(const Mat6& mg, const Dc1Witness& w) {
  const Mat6 defect = dc1_lhs(mg, w.alpha, w.beta, w.gamma) - w.a * w.b.transpose() -
                      w.b * w.a.transpose();
  return defect.norm();
}

inline double dc1_residual(const Medium& med, const Dc1Witness& w) {
  return dc1_residual(med.mg(), w);
}

// Closed-form bivectors for a constructed QDCM/PDCM: A = C and
//   QDCM: B = M Q^(2)T G D + (D.D)/2 C
//   PDCM: B = M P^(2)T D   + (D.D)/2 C
inline std::pair<Vec6, Vec6> bivectors_ab(const QdcmParams& p) {
  const Mat6& g = detail::lift_matrix();
  const Scalar half_dd = 0.5 * dot6(p.d, p.d);
  const Vec6 b = p.scale * (compound2(p.q).transpose() * (g * p.d)) + half_dd * p.c;
  return {p.c, b};
}
inline std::pair<Vec6, Vec6> bivectors_ab(const PdcmParams& p) {
  const Scalar half_dd = 0.5 * dot6(p.d, p.d);
  const Vec6 b = p.scale * (compound2(p.p).transpose() * p.d) + half_dd * p.c;
  return {p.c, b};
}

// Full witness induced by construction parameters.
inline Dc1Witness witness_from_provenance(const Medium& med) {
  Dc1Witness w;
  if (const auto* q = std::get_if<QdcmParams>(&med.provenance())) {
    auto [a, b] = bivectors_ab(*q);
    w.gamma = 1.0;
    w.beta = -q->alpha;
    w.alpha = q->alpha * q->alpha - q->scale * q->scale * q->q.determinant();
    w.a = a;
    w.b = b;
  } else if (const auto* p = std::get_if<PdcmParams>(&med.provenance())) {
    auto [a, b] = bivectors_ab(*p);
    w.gamma = 1.0;
    w.beta = -p->alpha;
    w.alpha = p->alpha * p->alpha - p->scale * p->scale * p->p.determinant();
    w.a = a;
    w.b = b;
  } else if (const auto* s = std::get_if<SdcmParams>(&med.provenance())) {
    w.gamma = 0.0;
    w.beta = 1.0;
    w.alpha = -2.0 * s->alpha;
    w.a = std::sqrt(2.0) * s->a;
    w.b = std::sqrt(2.0) * s->b;
  } else {
    throw std::invalid_argument("witness_from_provenance: no construction parameters recorded");
  }
  w.residual = dc1_residual(med, w);
  return w;
}

enum class DcmClass { Qdcm, Pdcm };

// Invert the B formula for D. With Lmap the linear part (D -> Lmap D) and
// t = (D.D)/2, D = Lmap^{-1}(B - t A) and t solves
//   (A'.A')/2 t^2 - ((B'.A') + 1) t + (B'.B')/2 = 0,  X' = Lmap^{-1} X.
inline std::vector<Vec6> solve_d_from_ab(DcmClass cls, Scalar scale, const Mat4& qp,
                                         const Vec6& a, const Vec6& b) {
  const Mat6& g = detail::lift_matrix();
  Mat6 lmap;
  if (cls == DcmClass::Qdcm)
    lmap = scale * (compound2(qp).transpose() * g);
  else
    lmap = scale * compound2(qp).transpose();
  if (!is_invertible(lmap))
    throw NumericError("solve_d_from_ab: the linear map from D to B is singular");
  const Mat6 linv = lmap.inverse();
  const Vec6 ap = linv * a;
  const Vec6 bp = linv * b;
  const Scalar c2 = 0.5 * dot6(ap, ap);
  const Scalar c1 = -(dot6(bp, ap) + 1.0);
  const Scalar c0 = 0.5 * dot6(bp, bp);
  const double mag = std::max({std::abs(c2), std::abs(c1), std::abs(c0), 1e-300});
  std::vector<Scalar> ts;
  if (std::abs(c2) <= 1e-14 * mag) {
    if (std::abs(c1) <= 1e-14 * mag)
      throw NumericError("solve_d_from_ab: degenerate scalar equation for t");
    ts.push_back(-c0 / c1);
  } else {
    const Scalar disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
    ts.push_back((-c1 + disc) / (2.0 * c2));
    ts.push_back((-c1 - disc) / (2.0 * c2));
  }
  std::vector<Vec6> out;
  for (Scalar t : ts) out.push_back(bp - t * ap);
  return out;
}

// Forward B formula shared with solve_d_from_ab round-trip checks.
inline Vec6 b_from_d(DcmClass cls, Scalar scale, const Mat4& qp, const Vec6& a, const Vec6& d) {
  const Mat6& g = detail::lift_matrix();
  const Scalar t = 0.5 * dot6(d, d);
  if (cls == DcmClass::Qdcm) return scale * (compound2(qp).transpose() * (g * d)) + t * a;
  return scale * (compound2(qp).transpose() * d) + t * a;
}

}  // namespace dcm
