#pragma once

#include <algorithm>
#include <cmath>

#include "slopecert/errors.hpp"

namespace slopecert {

/// 2x2 real matrix. Images of group elements carry det = 1 up to roundoff;
/// the inverse is the adjugate divided by the determinant, which is exact up
/// to a single division for unimodular input.
template <typename Real>
struct Mat2 {
  Real a{}, b{};  // (1,1) (1,2)
  Real c{}, d{};  // (2,1) (2,2)

  static Mat2 identity() { return {Real(1), Real(0), Real(0), Real(1)}; }

  Real det() const { return a * d - b * c; }

  Real trace() const { return a + d; }

  Real max_norm() const {
    using std::abs;
    return std::max(std::max(abs(a), abs(b)), std::max(abs(c), abs(d)));
  }

  friend Mat2 operator*(const Mat2& l, const Mat2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }

  Mat2 inverse() const {
    using std::abs;
    const Real det_v = det();
    if (abs(det_v) < Real(1e-300) * std::max(Real(1), max_norm() * max_norm())) {
      throw regime_error("Mat2::inverse: matrix is numerically singular");
    }
    return {d / det_v, -b / det_v, -c / det_v, a / det_v};
  }
};

template <typename Real>
Real max_abs_diff(const Mat2<Real>& l, const Mat2<Real>& r) {
  using std::abs;
  return std::max(std::max(abs(l.a - r.a), abs(l.b - r.b)),
                  std::max(abs(l.c - r.c), abs(l.d - r.d)));
}

/// Entrywise difference relative to the larger of the two matrix norms.
template <typename Real>
Real rel_diff(const Mat2<Real>& l, const Mat2<Real>& r) {
  const Real scale = std::max(std::max(l.max_norm(), r.max_norm()), Real(1e-300));
  return max_abs_diff(l, r) / scale;
}

/// M^e by binary powering; negative exponents go through the inverse.
template <typename Real>
Mat2<Real> mat_pow(Mat2<Real> base, long long e) {
  if (e < 0) {
    base = base.inverse();
    e = -e;
  }
  Mat2<Real> acc = Mat2<Real>::identity();
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

}  // namespace slopecert
