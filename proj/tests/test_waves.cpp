#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace dcm;
using testutil::rnd;
using testutil::rvec3;
using testutil::rvec4;

namespace {

Medium random_decomposable(int which) {
  switch (which % 3) {
    case 0: return testutil::random_qdcm();
    case 1: return testutil::random_pdcm();
    default: return testutil::random_sdcm();
  }
}

double onshell_scale(const Mat6& mg, const Vec3& spatial) {
  // typical magnitude of the dispersion scalar along the sampling line
  double s = 0.0;
  for (double x : {0.25, 1.75, 3.25}) {
    Vec4 nu;
    nu << spatial[0], spatial[1], spatial[2], Scalar(x);
    s = std::max(s, std::abs(dispersion_scalar(mg, nu)));
  }
  return std::max(s, 1e-300);
}

}  // namespace

TEST_CASE("axion media carry no dispersion constraint") {
  const Medium ax = construct_axion(1.3);
  const Vec4 nu = rvec4();
  CHECK(dispersion_dyadic_mat(ax.mg(), nu).norm() == doctest::Approx(0.0));
  CHECK(std::abs(dispersion_scalar(ax.mg(), nu)) == doctest::Approx(0.0));
  CHECK(quartic_coefficients(ax.mg()).max_abs() == doctest::Approx(0.0));
  CHECK_THROWS_AS(solve_plane_wave(ax.m(), nu), DegenerateWaveError);
}

TEST_CASE("axion admixture leaves the dispersion scalar unchanged") {
  for (int trial = 0; trial < 20; ++trial) {
    const Mat6 mg = testutil::rmat6();
    const Vec4 nu = rvec4();
    const Scalar base = dispersion_scalar(mg, nu, 1e300);
    const Mat6 shifted = mg + Scalar(rnd()) * detail::lift_matrix();
    CHECK(approx(dispersion_scalar(shifted, nu, 1e300), base,
                 1e-9));
  }
}

TEST_CASE("third compound of the dispersion dyadic is rank one") {
  for (int trial = 0; trial < 50; ++trial) {
    const Mat6 mg = testutil::rmat6();
    const Vec4 nu = rvec4();
    // no throw means the proportionality check passed
    CHECK_NOTHROW(dispersion_scalar(mg, nu, 1e-6));
    const Mat4 c3 = compound3(dispersion_dyadic_mat(mg, nu));
    CHECK(Eigen::JacobiSVD<Mat4>(c3).singularValues()[1] <
          1e-9 * std::max(1.0, c3.norm()));
  }
  CHECK_THROWS_AS(dispersion_scalar(testutil::rmat6(), Vec4::Zero()), std::invalid_argument);
}

TEST_CASE("vacuum-like medium: light-cone squared") {
  Mat4 q = Mat4::Identity();
  q(3, 3) = -1.0;
  const Medium med = construct_q_medium(-1.0, q);
  const QuarticForm quartic = quartic_coefficients(med);
  const auto [f1, f2] = predicted_factors(med);
  const FactorCheck fc = factor_check(quartic, f1, f2);
  CHECK(fc.max_rel_err < 1e-10);
  Vec4 nul;
  nul << 1.0, 2.0, 2.0, 3.0;  // 1+4+4-9 = 0
  CHECK(std::abs(dispersion_scalar(med.mg(), nul)) < 1e-10);
}

TEST_CASE("quartic factors into the predicted quadratics for every class") {
  for (int trial = 0; trial < 60; ++trial) {
    const Medium med = random_decomposable(trial);
    const QuarticForm quartic = quartic_coefficients(med);
    const auto [f1, f2] = predicted_factors(med);
    const FactorCheck fc = factor_check(quartic, f1, f2);
    CHECK(fc.max_rel_err < 1e-8);
    if (std::holds_alternative<SdcmParams>(med.provenance()))
      CHECK(approx(fc.scale, Scalar(2.0), 1e-6));
    if (const auto* qp = std::get_if<QdcmParams>(&med.provenance()))
      CHECK(approx(fc.scale, qp->scale * qp->scale * qp->q.determinant(), 1e-6));
  }
}

TEST_CASE("factor check is sensitive to perturbations") {
  const Medium med = testutil::random_qdcm();
  const QuarticForm quartic = quartic_coefficients(med);
  auto [f1, f2] = predicted_factors(med);
  f1.s(0, 0) += 1e-3 * f1.norm();
  const FactorCheck fc = factor_check(quartic, f1, f2);
  CHECK(fc.max_rel_err > 1e-5);
}

TEST_CASE("non-birefringent families give perfect squares") {
  // single-generator media
  const Medium qmed = construct_q_medium(1.2, testutil::rmat4());
  const auto [g1, g2] = predicted_factors(qmed);
  CHECK((g1.s - g2.s).norm() == doctest::Approx(0.0));
  CHECK(factor_check(quartic_coefficients(qmed), g1, g1).max_rel_err < 1e-8);
  // coincident-bivector third-class media
  const Vec6 a = testutil::rvec6();
  const Medium smed = construct_sdcm(rnd(), testutil::rtraceless4(), a, a);
  const auto [h1, h2] = predicted_factors(smed);
  CHECK((h1.s - h2.s).norm() == doctest::Approx(0.0));
  CHECK(factor_check(quartic_coefficients(smed), h1, h1).max_rel_err < 1e-8);
}

TEST_CASE("roots_along_direction") {
  for (int trial = 0; trial < 100; ++trial) {
    const QuadraticForm q(testutil::rmat4());
    const Vec3 sp = rvec3();
    const auto roots = roots_along_direction(q, sp);
    CHECK(roots.size() == 2);
    for (const Vec4& nu : roots)
      CHECK(std::abs(q.eval(nu)) < 1e-9 * q.norm() * std::max(1.0, nu.squaredNorm()));
  }
  // degenerate fourth component falls back to the third
  Mat4 m = testutil::rmat4();
  m.row(3).setZero();
  m.col(3).setZero();
  const QuadraticForm qdeg(m);
  const auto roots = roots_along_direction(qdeg, Vec3(0.3, -0.7, 1.1));
  for (const Vec4& nu : roots) {
    CHECK(std::abs(nu[3] - Scalar(1.1)) < 1e-14);  // last fixed component shifted
    CHECK(std::abs(qdeg.eval(nu)) < 1e-9 * qdeg.norm() * std::max(1.0, nu.squaredNorm()));
  }
  Mat4 only0 = Mat4::Zero();
  only0(0, 0) = 1.0;
  CHECK_THROWS_AS(roots_along_direction(QuadraticForm(only0), Vec3(1.0, 0.0, 0.0)),
                  NumericError);
}

TEST_CASE("dispersion_roots satisfy the quartic and admit waves") {
  for (int trial = 0; trial < 20; ++trial) {
    const Medium med = random_decomposable(trial);
    const Vec3 sp = rvec3();
    const double scale = onshell_scale(med.mg(), sp);
    const auto roots = dispersion_roots(med.mg(), sp);
    CHECK(roots.size() >= 2);
    for (const Vec4& nu : roots) {
      // the quartic grows like |nu|^4 away from the sampling window
      CHECK(std::abs(dispersion_scalar(med.mg(), nu)) <
            1e-8 * scale * std::max(1.0, std::pow(nu.norm() / 3.0, 4.0)));
      const PlaneWave w = solve_plane_wave(med.m(), nu);
      // the closure identities: Phi.Phi = Phi.Psi = Psi.Psi = 0 on shell
      const double fn = std::max(w.two_form.norm(), 1e-300);
      const double en = std::max(w.excitation.norm(), 1e-300);
      CHECK(std::abs(dot6(w.two_form, w.two_form)) < 1e-8 * fn * fn);
      CHECK(std::abs(dot6(w.two_form, w.excitation)) < 1e-7 * fn * en);
      CHECK(std::abs(dot6(w.excitation, w.excitation)) < 1e-7 * en * en);
      // reconstruction: two_form really is nu ^ phi
      const Vec6 rebuilt = wedge(KForm(1, Eigen::VectorXcd(w.nu)),
                                 KForm(1, Eigen::VectorXcd(w.phi)))
                               .coords();
      CHECK((rebuilt - w.two_form).norm() < 1e-12 * fn);
    }
  }
}

TEST_CASE("waves on the two factor sheets classify as the two types") {
  for (int trial = 0; trial < 30; ++trial) {
    const Medium med = random_decomposable(trial);
    const Dc1Witness wit = witness_from_provenance(med);
    const auto [f1, f2] = predicted_factors(med);
    const Vec3 sp = rvec3();
    std::array<WaveTag, 2> sheet_tag{WaveTag::Neither, WaveTag::Neither};
    int sheet = 0;
    for (const QuadraticForm* f : {&f1, &f2}) {
      const QuadraticForm* other = (f == &f1) ? &f2 : &f1;
      for (const Vec4& nu : roots_along_direction(*f, sp)) {
        // near a sheet intersection the wave legitimately satisfies both
        // factors; the generic dichotomy only applies away from it
        const double sep = std::abs(other->eval(nu)) /
                           (other->norm() * std::max(1.0, nu.squaredNorm()));
        if (sep < 1e-2) continue;
        const PlaneWave w = solve_plane_wave(med.m(), nu);
        const WaveClass c = classify_wave(w, wit.a, wit.b, 1e-6);
        CHECK((c.tag == WaveTag::AWave || c.tag == WaveTag::BWave));
        CHECK(std::min(c.residual_a, c.residual_b) < 1e-7);
        CHECK(std::max(c.residual_a, c.residual_b) > 1e-3);
        if (sheet_tag[static_cast<std::size_t>(sheet)] == WaveTag::Neither)
          sheet_tag[static_cast<std::size_t>(sheet)] = c.tag;
        else
          CHECK(sheet_tag[static_cast<std::size_t>(sheet)] == c.tag);
      }
      ++sheet;
    }
    if (sheet_tag[0] != WaveTag::Neither && sheet_tag[1] != WaveTag::Neither)
      CHECK(sheet_tag[0] != sheet_tag[1]);
  }
}

TEST_CASE("solve_plane_wave rejects off-shell covectors") {
  const Medium med = testutil::random_qdcm();
  Vec4 nu = rvec4();
  // a generic nu is almost surely off shell
  if (std::abs(dispersion_scalar(med.mg(), nu)) > 1e-3)
    CHECK_THROWS_AS(solve_plane_wave(med.m(), nu), NumericError);
}

TEST_CASE("wave_fields split matches the slot layout") {
  const Medium med = testutil::random_pdcm();
  const auto roots = dispersion_roots(med.mg(), Vec3(0.2, 0.4, -0.3));
  const PlaneWave w = solve_plane_wave(med.m(), roots.front());
  const WaveFields f = wave_fields(w);
  const Mat3& l = detail::relabel_matrix();
  for (int i = 0; i < 3; ++i) {
    CHECK(f.e[i] == w.two_form[kTemporalSlot[static_cast<std::size_t>(i)]]);
    CHECK(f.h[i] == -w.excitation[kTemporalSlot[static_cast<std::size_t>(i)]]);
  }
  Vec3 phis;
  for (int i = 0; i < 3; ++i) phis[i] = w.two_form[kSpatialSlot[static_cast<std::size_t>(i)]];
  CHECK((f.b - l * phis).norm() == doctest::Approx(0.0));
}
