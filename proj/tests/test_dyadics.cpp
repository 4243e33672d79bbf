#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace dcm;
using testutil::rkform;
using testutil::rkvector;
using testutil::rmat4;
using testutil::rmat6;
using testutil::rtraceless4;
using testutil::rvec4;

namespace {

// Direct minor enumeration, independent of compound()'s loops.
Mat4 brute_compound3(const Mat4& m) {
  Mat4 out;
  const auto& triples = detail::basis_tuples(3);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      Eigen::Matrix3cd sub;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          sub(i, j) = m(triples[r][static_cast<std::size_t>(i)] - 1,
                        triples[c][static_cast<std::size_t>(j)] - 1);
      // cofactor-free 3x3 determinant
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          sub(0, 0) * (sub(1, 1) * sub(2, 2) - sub(1, 2) * sub(2, 1)) -
          sub(0, 1) * (sub(1, 0) * sub(2, 2) - sub(1, 2) * sub(2, 0)) +
          sub(0, 2) * (sub(1, 0) * sub(2, 1) - sub(1, 1) * sub(2, 0));
    }
  return out;
}

}  // namespace

TEST_CASE("dyadic algebra plumbing") {
  const Dyadic id2 = Dyadic::identity(forms(2));
  const KForm phi = rkform(2);
  CHECK((apply(id2, phi) - phi).norm() == doctest::Approx(0.0));

  const Dyadic mg(forms(2), vectors(2), rmat6());
  const Dyadic back = transpose(transpose(mg));
  CHECK(back.domain == mg.domain);
  CHECK((back.m - mg.m).norm() == doctest::Approx(0.0));

  // compose(lift-as-dyadic, M) is the sign-table matrix times M's matrix
  const Dyadic lift(forms(2), vectors(2), detail::lift_matrix());
  const Dyadic m(forms(2), forms(2), rmat6());
  const Dyadic c = compose(lift, m);
  CHECK((Mat6(c.m) - detail::lift_matrix() * Mat6(m.m)).norm() < 1e-12);

  CHECK_THROWS_AS(apply(mg, rkform(1)), std::invalid_argument);
  CHECK_THROWS_AS(compose(m, mg), std::invalid_argument);
  CHECK_THROWS_AS(add(m, mg), std::invalid_argument);
  CHECK_THROWS_AS(Dyadic(forms(2), forms(1), Eigen::MatrixXcd::Zero(6, 6)),
                  std::invalid_argument);
}

TEST_CASE("transpose respects the duality pairing") {
  for (int trial = 0; trial < 100; ++trial) {
    const Dyadic d(vectors(2), vectors(1), Eigen::MatrixXcd::Random(4, 6));
    const KVector x = rkvector(2);
    const KForm a = rkform(1);
    const Scalar lhs = pair(a, apply(d, x));
    const Dyadic dt = transpose(d);
    const Scalar rhs = pair(apply(dt, a), x);
    CHECK(approx(lhs, rhs, 1e-12));
  }
}

TEST_CASE("compound: diagonal, oracle, multiplicativity") {
  const Dyadic ident = Dyadic::identity(vectors(1));
  CHECK((Mat6(compound(ident, 2).m) - Mat6::Identity()).norm() == doctest::Approx(0.0));

  Mat4 diag = Mat4::Zero();
  diag.diagonal() << 2.0, 3.0, 5.0, 7.0;
  const Mat6 c2d = compound2(diag);
  Vec6 expect;
  expect << 6.0, 10.0, 14.0, 15.0, 21.0, 35.0;
  CHECK((c2d - Mat6(expect.asDiagonal())).norm() == doctest::Approx(0.0));

  for (int trial = 0; trial < 100; ++trial) {
    const Mat4 a = rmat4(), b = rmat4();
    CHECK((compound3(a) - brute_compound3(a)).norm() < 1e-10);
    CHECK((compound2(a * b) - compound2(a) * compound2(b)).norm() <
          1e-9 * (1.0 + compound2(a * b).norm()));
    CHECK((compound3(a * b) - compound3(a) * compound3(b)).norm() <
          1e-9 * (1.0 + compound3(a * b).norm()));
    // the compound-lift identity: C2(p)^T G C2(p) = det(p) G
    const Mat6& g = detail::lift_matrix();
    CHECK((compound2(a).transpose() * g * compound2(a) - a.determinant() * g).norm() <
          1e-9 * (1.0 + std::abs(a.determinant())));
  }
  CHECK_THROWS_AS(compound(ident, 5), std::invalid_argument);
  CHECK_THROWS_AS(compound(Dyadic::identity(vectors(2)), 2), std::invalid_argument);
}

TEST_CASE("antisym_from_traceless") {
  CHECK(antisym_from_traceless_mat(Mat4::Zero()).norm() == doctest::Approx(0.0));

  // single traceless dyad e1 eps2
  Mat4 dyad = Mat4::Zero();
  dyad(0, 1) = 1.0;
  const Mat6 a1 = antisym_from_traceless_mat(dyad);
  CHECK((a1 + a1.transpose()).norm() < 1e-14);

  for (int trial = 0; trial < 100; ++trial) {
    const Mat4 bo = rtraceless4();
    const Mat6 a = antisym_from_traceless_mat(bo);
    CHECK((a + a.transpose()).norm() < 1e-12 * (1.0 + a.norm()));
  }
  CHECK_THROWS_AS(antisym_from_traceless_mat(Mat4::Identity()), std::invalid_argument);
}

TEST_CASE("ho_decompose contracts") {
  const Scalar alpha(0.7, 0.0);
  const HOParts pure_axion = ho_decompose_mat(Mat6(alpha * Mat6::Identity()));
  CHECK(approx(pure_axion.axion_scalar, alpha, 1e-15));
  CHECK(pure_axion.principal.m.norm() == doctest::Approx(0.0));
  CHECK(pure_axion.skewon.m.norm() == doctest::Approx(0.0));

  // pure skewon by construction
  const Mat6 skew_m = detail::lift_matrix() * antisym_from_traceless_mat(rtraceless4());
  const HOParts ps = ho_decompose_mat(skew_m);
  CHECK(std::abs(ps.axion_scalar) < 1e-12);
  CHECK(ps.principal.m.norm() < 1e-10 * (1.0 + skew_m.norm()));

  const Mat6& g = detail::lift_matrix();
  for (int trial = 0; trial < 100; ++trial) {
    const Mat6 m = rmat6();
    const HOParts parts = ho_decompose_mat(m);
    CHECK((parts.reconstruct() - m).norm() < 1e-12 * (1.0 + m.norm()));
    CHECK(std::abs(parts.principal.m.trace()) < 1e-10 * (1.0 + m.norm()));
    CHECK(std::abs(parts.skewon.m.trace()) < 1e-10 * (1.0 + m.norm()));
    const Mat6 lp = g * parts.principal.m;
    const Mat6 ls = g * parts.skewon.m;
    CHECK((lp - lp.transpose()).norm() < 1e-12 * (1.0 + m.norm()));
    CHECK((ls + ls.transpose()).norm() < 1e-12 * (1.0 + m.norm()));
  }
}

TEST_CASE("double_contract_nu: axion kernel, bilinearity, null directions") {
  const Mat6& g = detail::lift_matrix();
  for (int trial = 0; trial < 50; ++trial) {
    const Vec4 nu = rvec4();
    CHECK(double_contract_nu_mat(g, nu).norm() < 1e-13);

    const Mat6 mg = rmat6();
    const Mat4 d = double_contract_nu_mat(mg, nu);
    // nu in the left null space
    CHECK((nu.transpose() * d).norm() < 1e-12 * (1.0 + d.norm()));
    // gauge direction: D(nu) phi only depends on nu ^ phi
    const Vec4 shift = Vec4(d * nu);
    CHECK(shift.norm() < 1e-12 * (1.0 + d.norm()));
    // bilinear in nu twice
    const Mat4 d2 = double_contract_nu_mat(mg, Vec4(2.0 * nu));
    CHECK((d2 - 4.0 * d).norm() < 1e-11 * (1.0 + d.norm()));
  }
  CHECK(double_contract_nu_mat(rmat6(), Vec4::Zero()).norm() == doctest::Approx(0.0));
}
