#pragma once

// Fixed-basis numeric exterior algebra over a 4-dimensional complex space:
// k-vectors and k-forms, wedge, duality pairing, interior products, the
// quadrivector lift between two-forms and bivectors, and the induced
// signature-(3,3) dot product.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcm {

using Scalar = std::complex<double>;
using Vec4 = Eigen::Vector4cd;
using Mat4 = Eigen::Matrix4cd;
using Vec6 = Eigen::Matrix<Scalar, 6, 1>;
using Mat6 = Eigen::Matrix<Scalar, 6, 6>;
using Mat3 = Eigen::Matrix3cd;
using Vec3 = Eigen::Vector3cd;

inline constexpr int kDim = 4;
inline constexpr std::array<int, 5> kGradeDim{1, 4, 6, 4, 1};

// Default comparison tolerances: relative against the largest participating
// magnitude, with an absolute floor.
inline constexpr double kRelTol = 1e-10;
inline constexpr double kAbsTol = 1e-12;

enum class Family { Vector, Form };
enum class Side { Left, Right };

namespace detail {

// Basis index tuples per grade, strictly increasing, lexicographic.
// Grade 2 order is exactly (1,2),(1,3),(1,4),(2,3),(2,4),(3,4).
inline const std::vector<std::vector<int>>& basis_tuples(int grade) {
  static const std::array<std::vector<std::vector<int>>, 5> tables = [] {
    std::array<std::vector<std::vector<int>>, 5> t;
    t[0] = {{}};
    t[1] = {{1}, {2}, {3}, {4}};
    t[2] = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
    t[3] = {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}};
    t[4] = {{1, 2, 3, 4}};
    return t;
  }();
  return tables[static_cast<std::size_t>(grade)];
}

inline int tuple_slot(int grade, const std::vector<int>& tup) {
  const auto& table = basis_tuples(grade);
  for (std::size_t s = 0; s < table.size(); ++s)
    if (table[s] == tup) return static_cast<int>(s);
  return -1;
}

// Sign of sorting the concatenation (a, b); 0 when an index repeats.
// out receives the sorted union.
inline int merge_sign(const std::vector<int>& a, const std::vector<int>& b,
                      std::vector<int>& out) {
  out = a;
  out.insert(out.end(), b.begin(), b.end());
  int sign = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if (out[i] == out[j]) return 0;
      if (out[i] > out[j]) sign = -sign;
    }
  std::sort(out.begin(), out.end());
  return sign;
}

inline void check_finite(const Eigen::VectorXcd& c) {
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (!std::isfinite(c[i].real()) || !std::isfinite(c[i].imag()))
      throw std::invalid_argument("non-finite coordinate");
}

}  // namespace detail

// Graded antisymmetric tensor in the fixed basis. Family distinguishes the
// vector side (e_i) from the dual form side (eps_i) at the type level.
template <Family F>
class Graded {
 public:
  explicit Graded(int grade)
      : grade_(check_grade(grade)),
        c_(Eigen::VectorXcd::Zero(kGradeDim[static_cast<std::size_t>(grade)])) {}

  Graded(int grade, Eigen::VectorXcd coords) : grade_(check_grade(grade)), c_(std::move(coords)) {
    if (c_.size() != kGradeDim[static_cast<std::size_t>(grade_)])
      throw std::invalid_argument("coordinate length does not match grade");
    detail::check_finite(c_);
  }

  static Graded basis(int grade, int slot) {
    Graded g(grade);
    g.c_[slot] = Scalar(1.0);
    return g;
  }

  // Grade-1 basis element with 1-based index.
  static Graded unit(int i) { return basis(1, i - 1); }

  int grade() const { return grade_; }
  const Eigen::VectorXcd& coords() const { return c_; }
  Scalar operator[](int slot) const { return c_[slot]; }

  double norm() const { return c_.norm(); }
  bool is_zero(double tol = kAbsTol) const { return c_.norm() <= tol; }

  Graded operator+(const Graded& o) const {
    require_same_grade(o);
    return Graded(grade_, c_ + o.c_);
  }
  Graded operator-(const Graded& o) const {
    require_same_grade(o);
    return Graded(grade_, c_ - o.c_);
  }
  Graded operator*(Scalar s) const { return Graded(grade_, c_ * s); }
  friend Graded operator*(Scalar s, const Graded& g) { return g * s; }
  Graded operator-() const { return Graded(grade_, -c_); }

 private:
  static int check_grade(int g) {
    if (g < 0 || g > kDim) throw std::invalid_argument("grade out of range");
    return g;
  }
  void require_same_grade(const Graded& o) const {
    if (grade_ != o.grade_) throw std::invalid_argument("grade mismatch");
  }

  int grade_;
  Eigen::VectorXcd c_;
};

using KVector = Graded<Family::Vector>;
using KForm = Graded<Family::Form>;

// Antisymmetrized product; grade adds, same family only (enforced by type).
template <Family F>
Graded<F> wedge(const Graded<F>& x, const Graded<F>& y) {
  const int g = x.grade() + y.grade();
  if (g > kDim) throw std::invalid_argument("wedge: grade overflow");
  Graded<F> out(g);
  const auto& bx = detail::basis_tuples(x.grade());
  const auto& by = detail::basis_tuples(y.grade());
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(kGradeDim[static_cast<std::size_t>(g)]);
  std::vector<int> merged;
  for (std::size_t i = 0; i < bx.size(); ++i) {
    if (x.coords()[static_cast<Eigen::Index>(i)] == Scalar(0)) continue;
    for (std::size_t j = 0; j < by.size(); ++j) {
      const int sign = detail::merge_sign(bx[i], by[j], merged);
      if (sign == 0) continue;
      const int slot = detail::tuple_slot(g, merged);
      c[slot] += static_cast<double>(sign) * x.coords()[static_cast<Eigen::Index>(i)] *
                 y.coords()[static_cast<Eigen::Index>(j)];
    }
  }
  return Graded<F>(g, std::move(c));
}

// Duality pairing of equal grades: sum over index tuples a_I x_I.
inline Scalar pair(const KForm& a, const KVector& x) {
  if (a.grade() != x.grade()) throw std::invalid_argument("pair: grade mismatch");
  return a.coords().transpose() * x.coords();
}

// Interior product of a grade-j form into a grade-k vector (j <= k), result
// grade k-j. Left convention anchor: nu _| (a ^ b) = (nu|a) b - (nu|b) a.
inline KVector contract(const KForm& a, const KVector& x, Side side = Side::Left) {
  const int j = a.grade(), k = x.grade();
  if (j > k) throw std::invalid_argument("contract: form grade exceeds vector grade");
  const int g = k - j;
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(kGradeDim[static_cast<std::size_t>(g)]);
  const auto& ba = detail::basis_tuples(j);
  const auto& bo = detail::basis_tuples(g);
  std::vector<int> merged;
  for (std::size_t J = 0; J < bo.size(); ++J) {
    Scalar acc(0);
    for (std::size_t I = 0; I < ba.size(); ++I) {
      const int sign = (side == Side::Left) ? detail::merge_sign(ba[I], bo[J], merged)
                                            : detail::merge_sign(bo[J], ba[I], merged);
      if (sign == 0) continue;
      const int ks = detail::tuple_slot(k, merged);
      acc += static_cast<double>(sign) * a.coords()[static_cast<Eigen::Index>(I)] *
             x.coords()[ks];
    }
    c[static_cast<Eigen::Index>(J)] = acc;
  }
  return KVector(g, std::move(c));
}

// Mirrored form-side interior product: a grade-j vector into a grade-k form.
inline KForm contract(const KVector& x, const KForm& a, Side side = Side::Left) {
  const int j = x.grade(), k = a.grade();
  if (j > k) throw std::invalid_argument("contract: vector grade exceeds form grade");
  const int g = k - j;
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(kGradeDim[static_cast<std::size_t>(g)]);
  const auto& bx = detail::basis_tuples(j);
  const auto& bo = detail::basis_tuples(g);
  std::vector<int> merged;
  for (std::size_t J = 0; J < bo.size(); ++J) {
    Scalar acc(0);
    for (std::size_t I = 0; I < bx.size(); ++I) {
      const int sign = (side == Side::Left) ? detail::merge_sign(bx[I], bo[J], merged)
                                            : detail::merge_sign(bo[J], bx[I], merged);
      if (sign == 0) continue;
      const int ks = detail::tuple_slot(k, merged);
      acc += static_cast<double>(sign) * x.coords()[static_cast<Eigen::Index>(I)] *
             a.coords()[ks];
    }
    c[static_cast<Eigen::Index>(J)] = acc;
  }
  return KForm(g, std::move(c));
}

namespace detail {

// Complement-sign table of the quadrivector lift on two-forms, as a 6x6
// matrix: (e_N |_ Phi)_J = sign(J, J^c) Phi_{J^c}. Symmetric, involutive,
// signature (3,3).
inline const Mat6& lift_matrix() {
  static const Mat6 g = [] {
    Mat6 m = Mat6::Zero();
    const auto& pairs = basis_tuples(2);
    for (int i = 0; i < 6; ++i) {
      std::vector<int> comp;
      for (int v = 1; v <= 4; ++v)
        if (pairs[static_cast<std::size_t>(i)][0] != v &&
            pairs[static_cast<std::size_t>(i)][1] != v)
          comp.push_back(v);
      std::vector<int> merged;
      const int sign = merge_sign(comp, pairs[static_cast<std::size_t>(i)], merged);
      m(tuple_slot(2, comp), i) = static_cast<double>(sign);
    }
    return m;
  }();
  return g;
}

// e_N |_ on a grade-k form, generic complement map (used for k=1 and k=2).
inline Eigen::VectorXcd lift_complement(int grade, const Eigen::VectorXcd& c) {
  const int g = kDim - grade;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(kGradeDim[static_cast<std::size_t>(g)]);
  const auto& bin = basis_tuples(grade);
  const auto& bout = basis_tuples(g);
  for (std::size_t J = 0; J < bout.size(); ++J) {
    std::vector<int> comp;
    for (int v = 1; v <= 4; ++v)
      if (std::find(bout[J].begin(), bout[J].end(), v) == bout[J].end()) comp.push_back(v);
    std::vector<int> merged;
    const int sign = merge_sign(bout[J], comp, merged);
    out[static_cast<Eigen::Index>(J)] =
        static_cast<double>(sign) * c[tuple_slot(grade, comp)];
    (void)bin;
  }
  return out;
}

}  // namespace detail

// Quadrivector lift e_N |_ : two-forms -> bivectors.
inline KVector lift_eN(const KForm& phi) {
  if (phi.grade() != 2) throw std::invalid_argument("lift_eN: expects a two-form");
  return KVector(2, detail::lift_matrix() * phi.coords());
}

// Inverse of lift_eN (the lift matrix is involutive).
inline KForm unlift_eN(const KVector& x) {
  if (x.grade() != 2) throw std::invalid_argument("unlift_eN: expects a bivector");
  return KForm(2, detail::lift_matrix() * x.coords());
}

// Generic complement lift e_N |_ on forms of any grade (eps_N |_ on vectors
// has the same coordinate table).
inline KVector lift_eN_general(const KForm& a) {
  return KVector(kDim - a.grade(), detail::lift_complement(a.grade(), a.coords()));
}
inline KForm lift_epsN_general(const KVector& x) {
  return KForm(kDim - x.grade(), detail::lift_complement(x.grade(), x.coords()));
}

// Dot product between two-forms (or bivectors): Phi . Psi = Phi | (e_N |_ Psi).
// Symmetric bilinear, signature (3,3).
inline Scalar dot(const KForm& a, const KForm& b) {
  if (a.grade() != 2 || b.grade() != 2) throw std::invalid_argument("dot: expects two-forms");
  return a.coords().transpose() * (detail::lift_matrix() * b.coords());
}
inline Scalar dot(const KVector& a, const KVector& b) {
  if (a.grade() != 2 || b.grade() != 2) throw std::invalid_argument("dot: expects bivectors");
  return a.coords().transpose() * (detail::lift_matrix() * b.coords());
}

inline Scalar dot6(const Vec6& a, const Vec6& b) {
  return a.transpose() * (detail::lift_matrix() * b);
}

// A two-form is simple (a single wedge of one-forms) iff its self-dot
// vanishes. Constructs such a factorization: the antisymmetric matrix
// representation of a simple two-form has a 2-plane image spanned by any two
// independent columns, and their wedge reproduces the form up to one scale.
inline std::pair<KForm, KForm> simple_decompose(const KForm& phi, double tol = kRelTol) {
  if (phi.grade() != 2) throw std::invalid_argument("simple_decompose: expects a two-form");
  const double n = phi.norm();
  if (n <= kAbsTol) throw std::invalid_argument("simple_decompose: zero two-form");
  if (std::abs(dot(phi, phi)) > tol * n * n)
    throw std::invalid_argument("simple_decompose: two-form is not simple (Phi.Phi != 0)");
  Eigen::Matrix4cd f = Eigen::Matrix4cd::Zero();
  const auto& pairs = detail::basis_tuples(2);
  for (int s = 0; s < 6; ++s) {
    const int i = pairs[static_cast<std::size_t>(s)][0] - 1,
              j = pairs[static_cast<std::size_t>(s)][1] - 1;
    f(i, j) = phi[s];
    f(j, i) = -phi[s];
  }
  // two independent columns of the rank-2 matrix
  int c1 = 0;
  f.colwise().norm().maxCoeff(&c1);
  const Eigen::Vector4cd x1 = f.col(c1);
  int c2 = -1;
  double best = 0.0;
  for (int c = 0; c < 4; ++c) {
    if (c == c1) continue;
    const Eigen::Vector4cd resid =
        f.col(c) - (x1.dot(f.col(c)) / x1.squaredNorm()) * x1;
    if (resid.norm() > best) {
      best = resid.norm();
      c2 = c;
    }
  }
  if (c2 < 0 || best <= tol * n)
    throw std::invalid_argument("simple_decompose: degenerate column span");
  KForm nu(1, Eigen::VectorXcd(x1));
  KForm ph(1, Eigen::VectorXcd(f.col(c2)));
  const KForm w = wedge(nu, ph);
  int k = 0;
  w.coords().cwiseAbs().maxCoeff(&k);
  const Scalar scale = phi[k] / w[k];
  return {nu * scale, ph};
}

inline bool approx(Scalar a, Scalar b, double rel = kRelTol, double abs = kAbsTol) {
  const double m = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= std::max(abs, rel * m);
}

}  // namespace dcm
