#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace dcm;
using testutil::rkform;
using testutil::rkvector;

namespace {

// Brute-force wedge on full antisymmetric index expansions: coefficient of
// the sorted tuple accumulates permutation-signed products.
Scalar brute_wedge_coord(const KVector& x, const KVector& y, const std::vector<int>& target) {
  const auto& bx = detail::basis_tuples(x.grade());
  const auto& by = detail::basis_tuples(y.grade());
  Scalar acc{0.0};
  std::vector<int> merged;
  for (std::size_t i = 0; i < bx.size(); ++i)
    for (std::size_t j = 0; j < by.size(); ++j) {
      const int s = detail::merge_sign(bx[i], by[j], merged);
      if (s == 0 || merged != target) continue;
      acc += static_cast<double>(s) * x.coords()[static_cast<Eigen::Index>(i)] *
             y.coords()[static_cast<Eigen::Index>(j)];
    }
  return acc;
}

}  // namespace

TEST_CASE("wedge basis examples") {
  const KVector e1 = KVector::unit(1), e2 = KVector::unit(2);
  const KVector b = wedge(e1, e2);
  CHECK(b.grade() == 2);
  CHECK(b[0] == Scalar(1.0));
  for (int s = 1; s < 6; ++s) CHECK(b[s] == Scalar(0.0));

  const KForm nu = rkform(1);
  CHECK(wedge(nu, nu).norm() == doctest::Approx(0.0));

  KForm a(1), c(1);
  a = KForm::basis(1, 0) + KForm::basis(1, 1);
  c = KForm::basis(1, 2) + KForm::basis(1, 3);
  const KForm w = wedge(a, c);
  CHECK(w[detail::tuple_slot(2, {1, 3})] == Scalar(1.0));
  CHECK(w[detail::tuple_slot(2, {1, 4})] == Scalar(1.0));
  CHECK(w[detail::tuple_slot(2, {2, 3})] == Scalar(1.0));
  CHECK(w[detail::tuple_slot(2, {2, 4})] == Scalar(1.0));
  CHECK(w[detail::tuple_slot(2, {1, 2})] == Scalar(0.0));
  CHECK(w[detail::tuple_slot(2, {3, 4})] == Scalar(0.0));
}

TEST_CASE("wedge anticommutativity and overflow") {
  for (int trial = 0; trial < 200; ++trial) {
    for (int j = 0; j <= 2; ++j)
      for (int k = 0; j + k <= 4 && k <= 2; ++k) {
        const KVector x = rkvector(j), y = rkvector(k);
        const KVector lhs = wedge(x, y);
        const KVector rhs = wedge(y, x) * Scalar((j * k) % 2 == 0 ? 1.0 : -1.0);
        CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
      }
  }
  CHECK_THROWS_AS(wedge(rkvector(3), rkvector(2)), std::invalid_argument);
}

TEST_CASE("wedge matches brute-force antisymmetrization") {
  for (int trial = 0; trial < 50; ++trial) {
    const KVector x = rkvector(1), y = rkvector(2);
    const KVector w = wedge(x, y);
    const auto& triples = detail::basis_tuples(3);
    for (std::size_t t = 0; t < triples.size(); ++t)
      CHECK(std::abs(w[static_cast<int>(t)] - brute_wedge_coord(x, y, triples[t])) < 1e-12);
  }
}

TEST_CASE("pair determinant identity") {
  const KForm e12 = wedge(KForm::basis(1, 0), KForm::basis(1, 1));
  CHECK(pair(e12, wedge(KVector::unit(1), KVector::unit(2))) == Scalar(1.0));
  CHECK(pair(e12, wedge(KVector::unit(3), KVector::unit(4))) == Scalar(0.0));
  for (int trial = 0; trial < 200; ++trial) {
    const KForm nu = rkform(1), ph = rkform(1);
    const KVector a = rkvector(1), b = rkvector(1);
    const Scalar lhs = pair(wedge(nu, ph), wedge(a, b));
    const Scalar rhs = pair(nu, a) * pair(ph, b) - pair(nu, b) * pair(ph, a);
    CHECK(approx(lhs, rhs, 1e-12));
  }
  CHECK_THROWS_AS(pair(rkform(1), rkvector(2)), std::invalid_argument);
}

TEST_CASE("contraction convention anchor") {
  CHECK((contract(KForm::basis(1, 0), wedge(KVector::unit(1), KVector::unit(2))) -
         KVector::unit(2))
            .norm() == doctest::Approx(0.0));
  CHECK(contract(KForm::basis(1, 2), wedge(KVector::unit(1), KVector::unit(2))).norm() ==
        doctest::Approx(0.0));
  for (int trial = 0; trial < 200; ++trial) {
    const KForm nu = rkform(1);
    const KVector a = rkvector(1), b = rkvector(1);
    const KVector lhs = contract(nu, wedge(a, b));
    const KVector rhs = a * pair(nu, b) * Scalar(-1.0) + b * pair(nu, a);
    CHECK((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()));
    const KVector x = rkvector(2);
    CHECK(contract(nu, contract(nu, x)).norm() < 1e-12 * (1.0 + x.norm()));
  }
}

TEST_CASE("left and right contractions differ by the grade parity sign") {
  for (int trial = 0; trial < 100; ++trial) {
    const KForm nu = rkform(1);
    // into grade 2: output grade 1, sign (-1)^{1*1}
    const KVector x2 = rkvector(2);
    CHECK((contract(nu, x2, Side::Left) + contract(nu, x2, Side::Right)).norm() < 1e-12);
    // into grade 3: output grade 2, sign (-1)^{1*2} = +1
    const KVector x3 = rkvector(3);
    CHECK((contract(nu, x3, Side::Left) - contract(nu, x3, Side::Right)).norm() < 1e-12);
  }
  CHECK_THROWS_AS(contract(rkform(3), rkvector(2)), std::invalid_argument);
}

TEST_CASE("contraction duality chain") {
  // (nu _| X) | phi = X | (nu ^ phi), the identity behind the dispersion dyadic
  for (int trial = 0; trial < 200; ++trial) {
    const KForm nu = rkform(1), phi = rkform(1);
    const KVector x = rkvector(2);
    const Scalar lhs = pair(phi, contract(nu, x));
    const Scalar rhs = pair(wedge(nu, phi), x);
    CHECK(approx(lhs, rhs, 1e-12));
  }
}

TEST_CASE("lift sign table") {
  const auto slot = [](int i, int j) { return detail::tuple_slot(2, {i, j}); };
  const Mat6& g = detail::lift_matrix();
  CHECK(g(slot(3, 4), slot(1, 2)) == Scalar(1.0));
  CHECK(g(slot(2, 4), slot(1, 3)) == Scalar(-1.0));
  CHECK(g(slot(2, 3), slot(1, 4)) == Scalar(1.0));
  CHECK(g(slot(1, 4), slot(2, 3)) == Scalar(1.0));
  CHECK(g(slot(1, 3), slot(2, 4)) == Scalar(-1.0));
  CHECK(g(slot(1, 2), slot(3, 4)) == Scalar(1.0));
  CHECK((g - g.transpose()).norm() == doctest::Approx(0.0));
  CHECK((g * g - Mat6::Identity()).norm() == doctest::Approx(0.0));

  const KForm e12 = KForm::basis(2, 0);
  const KVector lifted = lift_eN(e12);
  CHECK((lifted - KVector::basis(2, 5)).norm() == doctest::Approx(0.0));
  const KForm e13 = KForm::basis(2, 1);
  CHECK((lift_eN(e13) + KVector::basis(2, 4)).norm() == doctest::Approx(0.0));
  for (int trial = 0; trial < 50; ++trial) {
    const KForm phi = rkform(2);
    CHECK((unlift_eN(lift_eN(phi)) - phi).norm() < 1e-14 * (1.0 + phi.norm()));
  }
}

TEST_CASE("dot product: values, symmetry, signature") {
  const KForm e12 = KForm::basis(2, 0), e34 = KForm::basis(2, 5);
  CHECK(dot(e12, e34) == Scalar(1.0));
  for (int trial = 0; trial < 100; ++trial) {
    const KForm nu = rkform(1), phi = rkform(1);
    const KForm simple = wedge(nu, phi);
    CHECK(std::abs(dot(simple, simple)) < 1e-12 * (1.0 + simple.norm() * simple.norm()));
    const KForm a = rkform(2), b = rkform(2);
    CHECK(approx(dot(a, b), dot(b, a), 1e-13));
    const Scalar expanded =
        2.0 * (a[0] * a[5] - a[1] * a[4] + a[2] * a[3]);
    CHECK(approx(dot(a, a), expanded, 1e-12));
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(detail::lift_matrix().real());
  for (int i = 0; i < 3; ++i) CHECK(es.eigenvalues()[i] == doctest::Approx(-1.0));
  for (int i = 3; i < 6; ++i) CHECK(es.eigenvalues()[i] == doctest::Approx(1.0));
}

TEST_CASE("simple two-form reconstruction") {
  for (int trial = 0; trial < 100; ++trial) {
    const KForm nu = rkform(1), phi = rkform(1);
    const KForm target = wedge(nu, phi);
    if (target.norm() < 1e-6) continue;
    const auto [n2, p2] = simple_decompose(target);
    CHECK((wedge(n2, p2) - target).norm() < 1e-10 * target.norm());
  }
  const KForm not_simple = KForm::basis(2, 0) + KForm::basis(2, 5);
  CHECK_THROWS_AS(simple_decompose(not_simple), std::invalid_argument);
  CHECK_THROWS_AS(simple_decompose(KForm(2)), std::invalid_argument);
}

TEST_CASE("constructors reject non-finite and inconsistent input") {
  Eigen::VectorXcd bad(6);
  bad.setZero();
  bad[0] = Scalar(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_THROWS_AS(KForm(2, bad), std::invalid_argument);
  CHECK_THROWS_AS(KForm(2, Eigen::VectorXcd::Zero(4)), std::invalid_argument);
  CHECK_THROWS_AS(KForm(5), std::invalid_argument);
}
