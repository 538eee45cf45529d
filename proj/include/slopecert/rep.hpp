#pragma once

#include <cmath>
#include <utility>

#include "slopecert/errors.hpp"
#include "slopecert/int_poly.hpp"
#include "slopecert/mat2.hpp"
#include "slopecert/precision.hpp"
#include "slopecert/word.hpp"

namespace slopecert {

/// Parameters (s, t) of the representation, with T = t + 1/t and sqrt(t)
/// computed once at construction. from_st admits any s > 0, t > 1 (enough
/// for the matrix algebra); solved points additionally satisfy T > s + 2,
/// which from_solved enforces.
template <typename Real>
struct RepParams {
  Real s{}, t{}, T{}, sqrt_t{};

  static RepParams from_st(const Real& s, const Real& t) {
    using std::sqrt;
    if (!(s > 0)) throw std::invalid_argument("RepParams: s must be positive");
    if (!(t > 1)) throw std::invalid_argument("RepParams: t must exceed 1");
    return {s, t, t + 1 / t, sqrt(t)};
  }

  static RepParams from_solved(const Real& s, const Real& T) {
    using std::sqrt;
    if (!(s > 0)) throw std::invalid_argument("RepParams: s must be positive");
    if (!(T > s + 2)) throw regime_error("RepParams: T <= s + 2, outside representation regime");
    const Real t = (T + sqrt(T * T - 4)) / 2;
    return {s, t, T, sqrt(t)};
  }
};

/// The pair (rho(x), rho(y)): upper and lower triangular with diagonal
/// (sqrt(t), 1/sqrt(t)).
template <typename Real>
std::pair<Mat2<Real>, Mat2<Real>> rho_matrices(const RepParams<Real>& p) {
  const Real rt = p.sqrt_t;
  const Real irt = 1 / rt;
  return {Mat2<Real>{rt, irt, Real(0), irt},
          Mat2<Real>{rt, Real(0), -p.s * rt, irt}};
}

/// The conjugate pair (rho_s(x), rho_s(y)) with rho_s(x) diagonal.
template <typename Real>
std::pair<Mat2<Real>, Mat2<Real>> rho_s_matrices(const RepParams<Real>& p) {
  const Real rt = p.sqrt_t;
  const Real irt = 1 / rt;
  const Real u = rt - irt;        // sqrt(t) - 1/sqrt(t)
  const Real u2 = p.T - 2;        // u^2, without squaring error
  return {Mat2<Real>{rt, Real(0), Real(0), irt},
          Mat2<Real>{(p.t - p.s - 1) / u, p.s / u2 - 1, -p.s, (p.s + 1 - 1 / p.t) / u}};
}

/// Closed form of W = rho(w) in terms of f_m, f_{m-1}, g_{m-1}. Valid for
/// every integer m; m = 0 gives the identity.
template <typename Real>
Mat2<Real> W_closed(long long m, const RepParams<Real>& p) {
  const Real fm = eval_f(m, p.s);
  const Real fm1 = eval_f(m - 1, p.s);
  const Real gm1 = eval_g(m - 1, p.s);
  const Real st = p.s * p.t;
  return {fm * fm - st * gm1 * gm1,
          fm1 * gm1 - fm * gm1 / p.t,
          p.s * fm * gm1 - st * fm1 * gm1,
          fm1 * fm1 - (p.s / p.t) * gm1 * gm1};
}

/// tr W = s (s + 2 - T) g_{m-1}(s)^2 + 2.
template <typename Real>
Real trace_W(long long m, const Real& s, const Real& T) {
  const Real g = eval_g(m - 1, s);
  return s * (s + 2 - T) * g * g + 2;
}

/// k-th term of the trace sequence: tau_0 = 0, tau_1 = 1,
/// tau_{k+1} = tau tau_k - tau_{k-1}, tau_{-k} = -tau_k.
///
/// Inside the oscillatory regime the closed form sin(k theta)/sin(theta)
/// with cos(theta) = tau/2 is used; the recursion drifts there for |tau|
/// just under 2 at large k, while the closed form fails at |tau| = 2.
template <typename Real>
Real tau_seq(const Real& tau, long long k) {
  using std::abs;
  using std::acos;
  using std::sin;
  if (k == 0) return Real(0);
  const bool negate = k < 0;
  const long long steps = negate ? -k : k;
  Real value;
  if (abs(tau) < 2 - Real(1e-8)) {
    const Real theta = acos(tau / 2);
    value = sin(Real(steps) * theta) / sin(theta);
  } else {
    Real t0(0), t1(1);
    for (long long i = 1; i < steps; ++i) {
      const Real next = tau * t1 - t0;
      t0 = t1;
      t1 = next;
    }
    value = t1;
  }
  return negate ? -value : value;
}

/// Closed form of W^n from the entries of W and the trace sequence at
/// tau = tr W.
template <typename Real>
Mat2<Real> Wn_closed(long long m, long long n, const RepParams<Real>& p) {
  const Mat2<Real> W = W_closed(m, p);
  const Real tau = W.trace();
  const Real tn = tau_seq(tau, n);
  const Real tn_prev = tau_seq(tau, n - 1);
  const Real tn_next = tau_seq(tau, n + 1);
  return {W.a * tn - tn_prev, W.b * tn, W.c * tn, tn_next - W.a * tn};
}

}  // namespace slopecert
