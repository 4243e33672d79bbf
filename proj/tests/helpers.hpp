#pragma once

#include "dcm/dcm.hpp"

#include <random>

namespace testutil {

inline std::mt19937_64& rng() {
  static std::mt19937_64 r(12345);
  return r;
}

inline double rnd() {
  static std::normal_distribution<double> n;
  return n(rng());
}

inline dcm::Vec3 rvec3() { return dcm::Vec3(rnd(), rnd(), rnd()); }
inline dcm::Vec4 rvec4() { return dcm::Vec4(rnd(), rnd(), rnd(), rnd()); }

inline dcm::Vec6 rvec6() {
  dcm::Vec6 v;
  for (int i = 0; i < 6; ++i) v[i] = rnd();
  return v;
}

inline dcm::Mat3 rmat3() {
  dcm::Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = rnd();
  return m;
}

inline dcm::Mat4 rmat4() {
  dcm::Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = rnd();
  return m;
}

inline dcm::Mat6 rmat6() {
  dcm::Mat6 m;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) m(r, c) = rnd();
  return m;
}

inline dcm::Mat4 rtraceless4() {
  dcm::Mat4 m = rmat4();
  m -= (m.trace() / 4.0) * dcm::Mat4::Identity();
  return m;
}

inline dcm::KVector rkvector(int grade) {
  Eigen::VectorXcd c(dcm::kGradeDim[static_cast<std::size_t>(grade)]);
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = rnd();
  return dcm::KVector(grade, c);
}

inline dcm::KForm rkform(int grade) {
  Eigen::VectorXcd c(dcm::kGradeDim[static_cast<std::size_t>(grade)]);
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = rnd();
  return dcm::KForm(grade, c);
}

inline dcm::Medium random_qdcm() {
  return dcm::construct_qdcm(rnd(), rnd() + 2.0, rmat4(), rvec6(), rvec6());
}
inline dcm::Medium random_pdcm() {
  return dcm::construct_pdcm(rnd(), rnd() + 2.0, rmat4(), rvec6(), rvec6());
}
inline dcm::Medium random_sdcm() {
  return dcm::construct_sdcm(rnd(), rtraceless4(), rvec6(), rvec6());
}

}  // namespace testutil
