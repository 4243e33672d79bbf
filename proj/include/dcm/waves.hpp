#pragma once

// Dispersion analysis: the scalar quartic extracted from the third compound
// of the dispersion dyadic, its interpolated coefficient form, the per-class
// predicted quadratic factors, root sampling along lines, plane-wave field
// solving and A/B-wave classification.

#include "dcm/appendix.hpp"
#include "dcm/media.hpp"

#include <functional>
#include <random>

namespace dcm {

// Symmetric quadratic form on one-forms: q(nu) = nu^T S nu.
struct QuadraticForm {
  Mat4 s = Mat4::Zero();

  QuadraticForm() = default;
  explicit QuadraticForm(const Mat4& m) : s(0.5 * (m + m.transpose())) {}

  Scalar eval(const Vec4& nu) const { return nu.transpose() * s * nu; }
  double norm() const { return s.norm(); }
};

namespace detail {

inline const std::vector<std::array<int, 4>>& quartic_monomials() {
  static const std::vector<std::array<int, 4>> mono = [] {
    std::vector<std::array<int, 4>> out;
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; b <= 4; ++b)
        for (int c = 0; c <= 4; ++c)
          for (int d = 0; d <= 4; ++d)
            if (a + b + c + d == 4) out.push_back({a, b, c, d});
    return out;
  }();
  return mono;
}

inline Scalar monomial_eval(const std::array<int, 4>& m, const Vec4& nu) {
  Scalar out{1.0};
  for (int i = 0; i < 4; ++i)
    for (int p = 0; p < m[static_cast<std::size_t>(i)]; ++p) out *= nu[i];
  return out;
}

inline Vec4 lift3_form(const Vec4& nu) {
  return Vec4(lift_complement(1, Eigen::VectorXcd(nu)));
}

}  // namespace detail

// Homogeneous quartic in nu as 35 monomial coefficients.
struct QuarticForm {
  std::array<Scalar, 35> coeffs{};
  double fit_residual = 0.0;

  Scalar eval(const Vec4& nu) const {
    const auto& mono = detail::quartic_monomials();
    Scalar out{0.0};
    for (std::size_t i = 0; i < 35; ++i) out += coeffs[i] * detail::monomial_eval(mono[i], nu);
    return out;
  }
  double max_abs() const {
    double m = 0.0;
    for (const Scalar& c : coeffs) m = std::max(m, std::abs(c));
    return m;
  }
};

inline Mat4 dispersion_dyadic_mat(const Mat6& mg, const Vec4& nu) {
  const Mat6& g = detail::lift_matrix();
  const Mat6 s0 = mg - ((g * mg).trace() / 6.0) * g;  // axion does not contribute
  return double_contract_nu_mat(s0, nu);
}

inline Dyadic dispersion_dyadic(const Medium& med, const KForm& nu) {
  if (nu.grade() != 1) throw std::invalid_argument("dispersion_dyadic: nu must be a one-form");
  return Dyadic(forms(1), vectors(1), dispersion_dyadic_mat(med.mg(), Vec4(nu.coords())));
}

// Delta(nu): the scalar of the rank-1 identity C3(D(nu)) = Delta(nu) k k^T
// with k = e_N |_ nu, read off at the largest-denominator entry and verified
// against the full minor matrix.
inline Scalar dispersion_scalar(const Mat6& mg, const Vec4& nu, double check_tol = 1e-6) {
  if (nu.norm() <= 0.0) throw std::invalid_argument("dispersion_scalar: nu must be nonzero");
  const Mat4 d = dispersion_dyadic_mat(mg, nu);
  const Mat4 c3 = compound3(d);
  const Vec4 k = detail::lift3_form(nu);
  const Mat4 kk = k * k.transpose();
  int ri = 0, ci = 0;
  const double kmax = kk.cwiseAbs().maxCoeff(&ri, &ci);
  if (kmax <= 1e-300) {
    if (c3.norm() <= 1e-300) return Scalar(0.0);
    throw NumericError("dispersion_scalar: vanishing denominator with nonzero third compound");
  }
  const Scalar ratio = c3(ri, ci) / kk(ri, ci);
  // on shell C3(D) is numerically zero; the proportionality check would
  // compare noise against noise, so accept directly
  const double dn3 = std::pow(d.norm(), 3);
  if (c3.norm() <= 1e-10 * std::max(dn3, 1e-300)) return ratio;
  const double defect = (c3 - ratio * kk).norm();
  if (defect > check_tol * std::max(c3.norm(), std::abs(ratio) * kk.norm()))
    throw NumericError("dispersion_scalar: third compound is not proportional to the lift dyad");
  return ratio;
}

inline Scalar dispersion_scalar(const Medium& med, const Vec4& nu, double check_tol = 1e-6) {
  return dispersion_scalar(med.mg(), nu, check_tol);
}

// Interpolate the 35 quartic coefficients from seeded integer-lattice
// samples of dispersion_scalar.
inline QuarticForm quartic_coefficients(const Mat6& mg, std::uint64_t seed = 42,
                                        int nsamp = 140) {
  const auto& mono = detail::quartic_monomials();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> lattice(-3, 3);
  Eigen::MatrixXcd x(nsamp, 35);
  Eigen::VectorXcd y(nsamp);
  int k = 0;
  while (k < nsamp) {
    Vec4 nu;
    bool zero = true;
    for (int i = 0; i < 4; ++i) {
      nu[i] = static_cast<double>(lattice(rng));
      if (nu[i] != Scalar(0.0)) zero = false;
    }
    if (zero) continue;
    y[k] = dispersion_scalar(mg, nu);
    for (std::size_t j = 0; j < 35; ++j) x(k, static_cast<Eigen::Index>(j)) =
        detail::monomial_eval(mono[j], nu);
    ++k;
  }
  const Eigen::VectorXcd coef = x.colPivHouseholderQr().solve(y);
  QuarticForm out;
  for (std::size_t j = 0; j < 35; ++j) out.coeffs[j] = coef[static_cast<Eigen::Index>(j)];
  out.fit_residual = (x * coef - y).norm();
  const double ymax = y.cwiseAbs().maxCoeff();
  if (out.fit_residual > 1e-8 * std::max(ymax, 1e-300) && ymax > 1e-300)
    throw NumericError("quartic_coefficients: fit residual " +
                       std::to_string(out.fit_residual) + " exceeds tolerance");
  return out;
}

inline QuarticForm quartic_coefficients(const Medium& med, std::uint64_t seed = 42,
                                        int nsamp = 140) {
  return quartic_coefficients(med.mg(), seed, nsamp);
}

// Product of two quadratic forms as a quartic coefficient vector.
inline QuarticForm quadratic_product(const QuadraticForm& q1, const QuadraticForm& q2) {
  const auto& mono = detail::quartic_monomials();
  std::array<int, 625> slot_of{};
  slot_of.fill(-1);
  auto key = [](const std::array<int, 4>& m) {
    return ((m[0] * 5 + m[1]) * 5 + m[2]) * 5 + m[3];
  };
  for (std::size_t i = 0; i < 35; ++i) slot_of[static_cast<std::size_t>(key(mono[i]))] =
      static_cast<int>(i);
  QuarticForm out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          std::array<int, 4> m{0, 0, 0, 0};
          ++m[static_cast<std::size_t>(i)];
          ++m[static_cast<std::size_t>(j)];
          ++m[static_cast<std::size_t>(k)];
          ++m[static_cast<std::size_t>(l)];
          out.coeffs[static_cast<std::size_t>(slot_of[static_cast<std::size_t>(key(m))])] +=
              q1.s(i, j) * q2.s(k, l);
        }
  return out;
}

// Predicted quadratic factors per decomposable class.
inline std::pair<QuadraticForm, QuadraticForm> predicted_factors(const Medium& med) {
  const Provenance& prov = med.provenance();
  if (const auto* q = std::get_if<QdcmParams>(&prov)) {
    if (!is_invertible(q->q))
      throw NumericError("predicted_factors: Q is singular, second factor undefined");
    const Mat4 crep = detail::bivec_rep(q->c);
    const Mat4 drep = detail::bivec_rep(q->d);
    return {QuadraticForm(q->q),
            QuadraticForm(Mat4(q->scale * q->q - crep * q->q.inverse() * drep))};
  }
  if (const auto* p = std::get_if<PdcmParams>(&prov)) {
    if (!is_invertible(p->p))
      throw NumericError("predicted_factors: P is singular, second factor undefined");
    const Mat4 crep = detail::bivec_rep(p->c);
    const Mat4 drep = detail::bivec_rep(p->d);
    return {QuadraticForm(Mat4(drep * p->p)), QuadraticForm(Mat4(crep * p->p.inverse()))};
  }
  if (const auto* s = std::get_if<SdcmParams>(&prov)) {
    return {QuadraticForm(Mat4(s->bo * detail::bivec_rep(s->a))),
            QuadraticForm(Mat4(s->bo * detail::bivec_rep(s->b)))};
  }
  if (const auto* q = std::get_if<QMediumParams>(&prov)) {
    return {QuadraticForm(q->q), QuadraticForm(q->q)};
  }
  throw std::invalid_argument("predicted_factors: medium has no decomposable-class provenance");
}

struct FactorCheck {
  Scalar scale{0.0};
  double max_rel_err = 0.0;
};

inline FactorCheck factor_check(const QuarticForm& quartic, const QuadraticForm& q1,
                                const QuadraticForm& q2) {
  const QuarticForm prod = quadratic_product(q1, q2);
  const double pmax = prod.max_abs();
  const double cmax = quartic.max_abs();
  if (pmax <= 1e-300) {
    if (cmax <= 1e-300) return {Scalar(0.0), 0.0};
    throw NumericError("factor_check: identically-zero product against a nonzero quartic");
  }
  std::size_t imax = 0;
  for (std::size_t i = 0; i < 35; ++i)
    if (std::abs(prod.coeffs[i]) > std::abs(prod.coeffs[imax])) imax = i;
  FactorCheck out;
  out.scale = quartic.coeffs[imax] / prod.coeffs[imax];
  for (std::size_t i = 0; i < 35; ++i)
    out.max_rel_err = std::max(out.max_rel_err,
                               std::abs(quartic.coeffs[i] - out.scale * prod.coeffs[i]) /
                                   std::max(cmax, 1e-300));
  return out;
}

// Roots of a quadratic form along a line: three components fixed (in index
// order), the remaining one solved. Free-component fallback order 4, 3, 2.
inline std::vector<Vec4> roots_along_direction(const QuadraticForm& q, const Vec3& spatial,
                                               double tol = 1e-12) {
  const double qn = std::max(q.norm(), 1e-300);
  for (int free : {3, 2, 1}) {
    Vec4 base = Vec4::Zero();
    int s = 0;
    for (int i = 0; i < 4; ++i)
      if (i != free) base[i] = spatial[s++];
    const Scalar a = q.s(free, free);
    Scalar b{0.0}, c{0.0};
    for (int i = 0; i < 4; ++i) {
      if (i == free) continue;
      b += 2.0 * q.s(i, free) * base[i];
      for (int j = 0; j < 4; ++j)
        if (j != free) c += base[i] * q.s(i, j) * base[j];
    }
    const double mag = qn * std::max(1.0, base.squaredNorm());
    std::vector<Scalar> roots;
    if (std::abs(a) > tol * mag) {
      const Scalar disc = std::sqrt(b * b - 4.0 * a * c);
      roots = {(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)};
    } else if (std::abs(b) > tol * mag) {
      roots = {-c / b};
    } else {
      continue;  // degenerate along this component, fall back
    }
    std::vector<Vec4> out;
    for (Scalar r : roots) {
      Vec4 nu = base;
      nu[free] = r;
      out.push_back(nu);
    }
    return out;
  }
  throw NumericError("roots_along_direction: quadratic is degenerate along this direction");
}

// Dispersion roots along a line, from the exact univariate quartic obtained
// by 5-point interpolation of dispersion_scalar, with Newton polish.
inline std::vector<Vec4> dispersion_roots(const Mat6& mg, const Vec3& spatial, int free = 3) {
  auto at = [&](Scalar x) {
    Vec4 nu = Vec4::Zero();
    int s = 0;
    for (int i = 0; i < 4; ++i)
      if (i != free) nu[i] = spatial[s++];
    nu[free] = x;
    return nu;
  };
  // Vandermonde interpolation at 5 nodes gives the exact degree-4 polynomial.
  Eigen::Matrix<Scalar, 5, 5> vm;
  Eigen::Matrix<Scalar, 5, 1> ys;
  for (int i = 0; i < 5; ++i) {
    const Scalar xi(0.5 + i, 0.0);
    Scalar p{1.0};
    for (int j = 0; j <= 4; ++j) {
      vm(i, j) = p;
      p *= xi;
    }
    ys[i] = dispersion_scalar(mg, at(xi));
  }
  Eigen::Matrix<Scalar, 5, 1> poly = vm.colPivHouseholderQr().solve(ys);  // poly[0] x^0 .. poly[4] x^4
  // trim leading zeros
  int deg = 4;
  const double pmax = ys.cwiseAbs().maxCoeff() + poly.cwiseAbs().maxCoeff();
  while (deg > 0 && std::abs(poly[deg]) <= 1e-12 * std::max(pmax, 1e-300)) --deg;
  if (deg == 0)
    throw NumericError("dispersion_roots: dispersion polynomial is degenerate along this line");
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = Scalar(1.0);
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -poly[i] / poly[deg];
  const Eigen::VectorXcd raw = comp.eigenvalues();
  std::vector<Vec4> out;
  for (Eigen::Index r = 0; r < raw.size(); ++r) {
    Scalar x = raw[r];
    for (int it = 0; it < 8; ++it) {  // Newton polish on the interpolated polynomial
      Scalar f{0.0}, df{0.0};
      for (int p = deg; p >= 0; --p) f = f * x + poly[p];
      for (int p = deg; p >= 1; --p) df = df * x + static_cast<double>(p) * poly[p];
      if (std::abs(df) <= 1e-300) break;
      const Scalar step = f / df;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    out.push_back(at(x));
  }
  return out;
}

struct PlaneWave {
  Vec4 nu = Vec4::Zero();
  Vec4 phi = Vec4::Zero();  // potential one-form, gauge: coordinate-orthogonal to nu
  Vec6 two_form = Vec6::Zero();   // Phi = nu ^ phi
  Vec6 excitation = Vec6::Zero(); // Psi = m Phi
};

inline PlaneWave solve_plane_wave(const Mat6& m, const Vec4& nu, double dispersion_tol = 1e-6) {
  const Mat6& g = detail::lift_matrix();
  const Mat6 mg = g * m;
  const Mat4 d = dispersion_dyadic_mat(mg, nu);
  Eigen::JacobiSVD<Mat4> svd(d, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv[0] <= 1e-300)
    throw DegenerateWaveError(
        "solve_plane_wave: dispersion dyadic vanishes, every potential solves");
  // nu is always a null direction, so rank <= 3; a dispersion root drops it to <= 2.
  if (sv[2] > dispersion_tol * sv[0])
    throw NumericError("solve_plane_wave: dispersion relation not satisfied at this nu");
  const double nn = nu.squaredNorm();
  for (int c = 3; c >= 0; --c) {  // ascending singular values
    Vec4 phi = svd.matrixV().col(c);
    phi -= (nu.dot(phi) / nn) * nu;
    const Vec6 two =
        wedge(KForm(1, Eigen::VectorXcd(nu)), KForm(1, Eigen::VectorXcd(phi))).coords();
    if (two.norm() > 1e-8 * std::max(1.0, nu.norm()) * std::max(phi.norm(), 1e-300) &&
        phi.norm() > 1e-10) {
      PlaneWave w;
      w.nu = nu;
      w.phi = phi;
      w.two_form = two;
      w.excitation = m * two;
      return w;
    }
  }
  throw DegenerateWaveError(
      "solve_plane_wave: null space lies along nu only, the field two-form vanishes");
}

inline PlaneWave solve_plane_wave(const Medium& med, const Vec4& nu,
                                  double dispersion_tol = 1e-6) {
  return solve_plane_wave(med.m(), nu, dispersion_tol);
}

// 3D field content of a wave: E, B, D, H vectors via the two-form split.
struct WaveFields {
  Vec3 e, b, d, h;
};

inline WaveFields wave_fields(const PlaneWave& w) {
  const Mat3& l = detail::relabel_matrix();
  WaveFields f;
  Vec3 phis, psis;
  for (int i = 0; i < 3; ++i) {
    phis[i] = w.two_form[kSpatialSlot[static_cast<std::size_t>(i)]];
    psis[i] = w.excitation[kSpatialSlot[static_cast<std::size_t>(i)]];
    f.e[i] = w.two_form[kTemporalSlot[static_cast<std::size_t>(i)]];
    f.h[i] = -w.excitation[kTemporalSlot[static_cast<std::size_t>(i)]];
  }
  f.b = l * phis;
  f.d = l * psis;
  return f;
}

enum class WaveTag { AWave, BWave, Both, Neither };

struct WaveClass {
  WaveTag tag = WaveTag::Neither;
  double residual_a = 0.0;
  double residual_b = 0.0;
};

inline WaveClass classify_wave(const PlaneWave& w, const Vec6& a, const Vec6& b,
                               double tol = 1e-8) {
  const double phin = w.two_form.norm();
  if (phin <= 0.0) throw std::invalid_argument("classify_wave: zero field two-form");
  WaveClass out;
  out.residual_a = std::abs(Scalar(a.transpose() * w.two_form)) /
                   std::max(a.norm() * phin, 1e-300);
  out.residual_b = std::abs(Scalar(b.transpose() * w.two_form)) /
                   std::max(b.norm() * phin, 1e-300);
  const bool isa = out.residual_a < tol, isb = out.residual_b < tol;
  out.tag = isa ? (isb ? WaveTag::Both : WaveTag::AWave)
                : (isb ? WaveTag::BWave : WaveTag::Neither);
  return out;
}

}  // namespace dcm
