#pragma once

// Linear maps between graded spaces as dense matrices with space tags:
// compound powers, the antisymmetric-dyadic construction, the Hehl-Obukhov
// split, and the dispersion-dyadic double contraction.

#include "dcm/exterior.hpp"

#include <optional>
#include <utility>

namespace dcm {

struct SpaceTag {
  Family family = Family::Form;
  int grade = 0;

  bool operator==(const SpaceTag&) const = default;
};

inline SpaceTag forms(int grade) { return SpaceTag{Family::Form, grade}; }
inline SpaceTag vectors(int grade) { return SpaceTag{Family::Vector, grade}; }

inline SpaceTag dual(SpaceTag t) {
  t.family = (t.family == Family::Form) ? Family::Vector : Family::Form;
  return t;
}

// Dense linear map from `domain` coordinates to `codomain` coordinates.
struct Dyadic {
  SpaceTag domain;
  SpaceTag codomain;
  Eigen::MatrixXcd m;

  Dyadic() = default;
  Dyadic(SpaceTag dom, SpaceTag cod, Eigen::MatrixXcd mat)
      : domain(dom), codomain(cod), m(std::move(mat)) {
    const int rows = kGradeDim[static_cast<std::size_t>(codomain.grade)];
    const int cols = kGradeDim[static_cast<std::size_t>(domain.grade)];
    if (m.rows() != rows || m.cols() != cols)
      throw std::invalid_argument("dyadic matrix shape inconsistent with space tags");
  }

  static Dyadic identity(SpaceTag t) {
    const int n = kGradeDim[static_cast<std::size_t>(t.grade)];
    return Dyadic(t, t, Eigen::MatrixXcd::Identity(n, n));
  }
  static Dyadic zero(SpaceTag dom, SpaceTag cod) {
    return Dyadic(dom, cod,
                  Eigen::MatrixXcd::Zero(kGradeDim[static_cast<std::size_t>(cod.grade)],
                                         kGradeDim[static_cast<std::size_t>(dom.grade)]));
  }

  Scalar trace() const {
    if (!(domain == codomain) && !(domain == dual(codomain)))
      throw std::invalid_argument("trace: domain and codomain incompatible");
    return m.trace();
  }
};

inline KVector apply(const Dyadic& d, const KVector& x) {
  if (!(d.domain == SpaceTag{Family::Vector, x.grade()}))
    throw std::invalid_argument("apply: operand space does not match dyadic domain");
  if (d.codomain.family != Family::Vector)
    throw std::invalid_argument("apply: codomain is not a vector space");
  return KVector(d.codomain.grade, d.m * x.coords());
}
inline KForm apply(const Dyadic& d, const KForm& a) {
  if (!(d.domain == SpaceTag{Family::Form, a.grade()}))
    throw std::invalid_argument("apply: operand space does not match dyadic domain");
  if (d.codomain.family != Family::Form)
    throw std::invalid_argument("apply: codomain is not a form space");
  return KForm(d.codomain.grade, d.m * a.coords());
}

inline Dyadic compose(const Dyadic& a, const Dyadic& b) {
  if (!(a.domain == b.codomain)) throw std::invalid_argument("compose: space tag mismatch");
  return Dyadic(b.domain, a.codomain, a.m * b.m);
}

// Transpose swaps domain/codomain through the duality pairing; in dual bases
// the pairing matrix is the identity, so this is the raw matrix transpose.
inline Dyadic transpose(const Dyadic& d) {
  return Dyadic(dual(d.codomain), dual(d.domain), d.m.transpose());
}

inline Dyadic add(const Dyadic& a, const Dyadic& b) {
  if (!(a.domain == b.domain) || !(a.codomain == b.codomain))
    throw std::invalid_argument("add: space tag mismatch");
  return Dyadic(a.domain, a.codomain, a.m + b.m);
}

inline Dyadic scale(const Dyadic& d, Scalar s) { return Dyadic(d.domain, d.codomain, d.m * s); }

namespace detail {

inline double det_small(const Eigen::MatrixXcd& m, std::complex<double>& out) {
  out = m.determinant();
  return std::abs(out);
}

}  // namespace detail

// k-th compound: the matrix of k x k minors in the fixed tuple ordering.
// Requires grade-1 domain and codomain; compound(d,2) is the double-wedge
// square d^(2).
inline Dyadic compound(const Dyadic& d, int k) {
  if (d.domain.grade != 1 || d.codomain.grade != 1)
    throw std::invalid_argument("compound: expects a grade-1 dyadic");
  if (k < 2 || k > 4) throw std::invalid_argument("compound: k must be 2, 3 or 4");
  const auto& rows = detail::basis_tuples(k);
  const auto& cols = detail::basis_tuples(k);
  const int n = kGradeDim[static_cast<std::size_t>(k)];
  Eigen::MatrixXcd out(n, n);
  Eigen::MatrixXcd sub(k, k);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          sub(i, j) = d.m(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] - 1,
                          cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] - 1);
      out(r, c) = sub.determinant();
    }
  return Dyadic(SpaceTag{d.domain.family, k}, SpaceTag{d.codomain.family, k}, std::move(out));
}

// Second compound of a plain 4x4 matrix (basis-coordinate form).
inline Mat6 compound2(const Mat4& m) {
  const auto& pairs = detail::basis_tuples(2);
  Mat6 out;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) {
      const int i = pairs[static_cast<std::size_t>(r)][0] - 1,
                j = pairs[static_cast<std::size_t>(r)][1] - 1;
      const int k = pairs[static_cast<std::size_t>(c)][0] - 1,
                l = pairs[static_cast<std::size_t>(c)][1] - 1;
      out(r, c) = m(i, k) * m(j, l) - m(i, l) * m(j, k);
    }
  return out;
}

// Third compound of a plain 4x4 matrix.
inline Mat4 compound3(const Mat4& m) {
  const auto& triples = detail::basis_tuples(3);
  Mat4 out;
  Eigen::Matrix3cd sub;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          sub(i, j) = m(triples[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] - 1,
                        triples[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] - 1);
      out(r, c) = sub.determinant();
    }
  return out;
}

// Antisymmetric E2E2 dyadic built from a trace-free Bo in E1F1:
// A = e_N |_ (I ^^ Bo)^T, with (I ^^ Bo)|(x ^ y) = x ^ Bo(y) + Bo(x) ^ y.
inline Mat6 antisym_from_traceless_mat(const Mat4& bo, double tol = kRelTol) {
  const double scale = std::max(1.0, bo.norm());
  if (std::abs(bo.trace()) > tol * scale)
    throw std::invalid_argument("antisym_from_traceless: nonzero trace " +
                                std::to_string(std::abs(bo.trace())));
  const auto& pairs = detail::basis_tuples(2);
  Mat6 w;
  for (int c = 0; c < 6; ++c) {
    const int i = pairs[static_cast<std::size_t>(c)][0],
              j = pairs[static_cast<std::size_t>(c)][1];
    KVector ei = KVector::unit(i), ej = KVector::unit(j);
    KVector bei(1, Eigen::VectorXcd(bo * ei.coords()));
    KVector bej(1, Eigen::VectorXcd(bo * ej.coords()));
    w.col(c) = (wedge(ei, bej) + wedge(bei, ej)).coords();
  }
  return detail::lift_matrix() * w.transpose();
}

inline Dyadic antisym_from_traceless(const Dyadic& bo, double tol = kRelTol) {
  if (bo.domain.grade != 1 || bo.codomain.grade != 1 ||
      bo.domain.family != Family::Vector || bo.codomain.family != Family::Vector)
    throw std::invalid_argument("antisym_from_traceless: Bo must map vectors to vectors");
  return Dyadic(forms(2), vectors(2), antisym_from_traceless_mat(Mat4(bo.m), tol));
}

// Hehl-Obukhov split of a medium dyadic M in F2F2 (matrix on two-forms).
struct HOParts {
  Dyadic principal;  // trace free, lift symmetric
  Dyadic skewon;     // trace free, lift antisymmetric
  Scalar axion_scalar;

  Mat6 reconstruct() const {
    return Eigen::MatrixXcd(principal.m) + Eigen::MatrixXcd(skewon.m) +
           axion_scalar * Mat6::Identity();
  }
};

inline HOParts ho_decompose_mat(const Mat6& m) {
  const Mat6& g = detail::lift_matrix();
  const Mat6 s = g * m;
  const Mat6 ssym = 0.5 * (s + s.transpose());
  const Mat6 sskew = 0.5 * (s - s.transpose());
  const Scalar axion = m.trace() / 6.0;
  HOParts out;
  out.axion_scalar = axion;
  out.skewon = Dyadic(forms(2), forms(2), g * sskew);
  out.principal = Dyadic(forms(2), forms(2), g * ssym - axion * Mat6::Identity());
  return out;
}

inline HOParts ho_decompose(const Dyadic& med) {
  if (!(med.domain == forms(2)) || !(med.codomain == forms(2)))
    throw std::invalid_argument("ho_decompose: expects an F2F2 medium dyadic");
  return ho_decompose_mat(Mat6(med.m));
}

// Dispersion dyadic D(nu) in E1E1: D(nu)|phi = nu _| (Mg | (nu ^ phi)).
inline Mat4 double_contract_nu_mat(const Mat6& mg, const Vec4& nu) {
  Mat4 out;
  KForm nu_form(1, Eigen::VectorXcd(nu));
  for (int j = 0; j < 4; ++j) {
    KForm phi = KForm::basis(1, j);
    const KForm two = wedge(nu_form, phi);
    const KVector img(2, Eigen::VectorXcd(mg * two.coords()));
    out.col(j) = contract(nu_form, img).coords();
  }
  return out;
}

inline Dyadic double_contract_nu(const Dyadic& mg, const KForm& nu) {
  if (!(mg.domain == forms(2)) || !(mg.codomain == vectors(2)))
    throw std::invalid_argument("double_contract_nu: expects an E2E2 modified medium dyadic");
  if (nu.grade() != 1) throw std::invalid_argument("double_contract_nu: nu must be a one-form");
  return Dyadic(forms(1), vectors(1), double_contract_nu_mat(Mat6(mg.m), Vec4(nu.coords())));
}

// Condition estimate used by the invertibility cutoff (singular value ratio).
inline double condition_estimate(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[sv.size() - 1] <= 0.0) return std::numeric_limits<double>::infinity();
  return sv[0] / sv[sv.size() - 1];
}

inline constexpr double kInvertibilityCutoff = 1e12;

inline bool is_invertible(const Eigen::MatrixXcd& m, double cutoff = kInvertibilityCutoff) {
  return condition_estimate(m) < cutoff;
}

}  // namespace dcm
