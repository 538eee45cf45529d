#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "slopecert/errors.hpp"
#include "slopecert/riley.hpp"

namespace slopecert {

/// sigma = s (sqrt(t) - 1/sqrt(t))^2 / ((sqrt(t) - 1/sqrt(t))^2 - s),
/// evaluated as s (T - 2) / (T - s - 2). At solved points the denominator
/// T - s - 2 is positive.
template <typename Real>
Real sigma_of(const RepParams<Real>& p) {
  const Real den = p.T - p.s - 2;
  if (!(den > 0)) throw regime_error("sigma_of: T - s - 2 <= 0, outside representation regime");
  return p.s * (p.T - 2) / den;
}

/// Longitude eigenvalue B_s = (-f_m + t f_{m-1}) / (-f_{m-1} + t f_m).
/// Both numerator and denominator cancel catastrophically at large s (one of
/// them tends to t^{1-|m|}); when more than half the mantissa is lost the
/// evaluation signals for escalation instead of returning garbage.
template <typename Real>
Real B_closed(long long m, const RepParams<Real>& p) {
  using std::abs;
  using std::sqrt;
  if (m == 0) throw std::invalid_argument("B_closed: m must be nonzero");
  const Real fm = eval_f(m, p.s);
  const Real fm1 = eval_f(m - 1, p.s);
  const Real num = -fm + p.t * fm1;
  const Real den = -fm1 + p.t * fm;
  const Real num_scale = std::max(abs(fm), abs(p.t * fm1));
  const Real den_scale = std::max(abs(fm1), abs(p.t * fm));
  const Real guard = sqrt(std::numeric_limits<Real>::epsilon());
  if (abs(num) < guard * num_scale || abs(den) < guard * den_scale) {
    throw precision_escalation("B_closed(m=" + std::to_string(m) +
                               "): more than half the mantissa cancelled");
  }
  if (den == 0) throw regime_error("B_closed: vanishing denominator");
  return num / den;
}

template <typename Real>
struct BProduct {
  Real B{};                 // (1,1)-entry of rho_s(L)
  Real offdiag_residual{};  // max off-diagonal magnitude / matrix norm
};

/// rho_s(L) by full word product: the independent oracle for B_closed. The
/// matrix is diagonal at solved points, so the off-diagonal residual doubles
/// as a representation check.
template <typename Real>
BProduct<Real> B_product(long long m, long long n, const RepParams<Real>& p) {
  using std::abs;
  const auto [X, Y] = rho_s_matrices(p);
  const Mat2<Real> L = eval_word(word_longitude(m, n), X, Y);
  const Real norm = std::max(L.max_norm(), Real(1e-300));
  return {L.a, std::max(abs(L.b), abs(L.c)) / norm};
}

/// Diagnostic F_k = t^{k-1} (-f_k + t f_{k-1}); tends to 1 as s grows, for
/// 0 < k <= |m| of the solved knot.
template <typename Real>
Real F_diag(long long k, const RepParams<Real>& p) {
  using std::pow;
  if (k <= 0) throw std::invalid_argument("F_diag: k must be positive");
  const Real fk = eval_f(k, p.s);
  const Real fk1 = eval_f(k - 1, p.s);
  return pow(p.t, static_cast<unsigned>(k - 1)) * (-fk + p.t * fk1);
}

template <typename Real>
struct SlopeFnPoint {
  RepParams<Real> rep;
  Real A{};               // sqrt(t)
  Real B{};               // longitude eigenvalue, positive
  Real g_value{};         // -log B / log A
  Real sigma{};
  Real riley_residual{};  // |phi| at the solved T
};

/// Solves Riley's equation at the given s and assembles the slope-function
/// data A, B, g, sigma. solve_tol is the residual tolerance handed down to
/// solve_T.
template <typename Real>
SlopeFnPoint<Real> g_of(long long m, long long n, const Real& s,
                        const Real& solve_tol = Real(1e-12)) {
  using std::log;
  const SolvedPoint<Real> solved = solve_T(m, n, s, solve_tol);
  const Real B = B_closed(m, solved.rep);
  if (!(B > 0)) throw regime_error("g_of: longitude eigenvalue is not positive");
  // log A = log t / 2, one rounding fewer than log(sqrt(t))
  const Real g = -2 * log(B) / log(solved.rep.t);
  return {solved.rep, solved.rep.sqrt_t, B, g, sigma_of(solved.rep), solved.residual};
}

/// The certified slope interval of K(m, n): integral endpoints plus closure
/// flags. Matches the four sign cases of the main theorem, except that in
/// the mixed-sign cases a side whose representation does not exist (n = 1
/// with m < 0 or n = -1 with m > 0 on that side's parameters) contributes
/// nothing.
struct SlopeInterval {
  long long lower = 0;
  long long upper = 0;
  bool lower_closed = false;
  bool upper_closed = false;

  /// Exact test for p/q (q > 0) against the integral bounds.
  bool contains(long long p, long long q) const {
    if (q <= 0) throw std::invalid_argument("SlopeInterval::contains: q must be positive");
    const bool above = lower_closed ? p >= lower * q : p > lower * q;
    const bool below = upper_closed ? p <= upper * q : p < upper * q;
    return above && below;
  }

  std::string str() const {
    return (lower_closed ? "[" : "(") + std::to_string(lower) + ", " + std::to_string(upper) +
           (upper_closed ? "]" : ")");
  }
};

/// Whether (m, n) admits the direct representation branch.
inline bool direct_branch_valid(long long m, long long n) {
  if (n == 1) return m > 0;
  if (n == -1) return m < 0;
  return true;
}

inline SlopeInterval interval_I(long long m, long long n) {
  if (m == 0 || n == 0) throw std::invalid_argument("interval_I: not a genus-one two-bridge knot in this family");
  if ((m == 1 && n == -1) || (m == -1 && n == 1)) {
    throw std::invalid_argument("interval_I: not hyperbolic (trefoil)");
  }
  if (m > 0 && n > 0) return {-4 * n, 4 * m, false, false};
  if (m < 0 && n < 0) return {4 * m, -4 * n, false, false};
  // Mixed signs: the direct side spans 4m, the mirror side -4n, each only
  // when its branch exists.
  const long long direct_span = direct_branch_valid(m, n) ? 4 * m : 0;
  const long long mirror_span = direct_branch_valid(n, m) ? -4 * n : 0;
  if (m > 0) return {0, std::max(direct_span, mirror_span), true, false};
  return {std::min(direct_span, mirror_span), 0, false, true};
}

/// Finds s with g(s) = r_target by a logarithmic scan over [1e-8, 1e8]
/// followed by bisection; every midpoint re-solves Riley's equation. One
/// solution suffices, no attempt to enumerate branches.
template <typename Real>
SlopeFnPoint<Real> solve_s(long long m, long long n, const Real& r_target,
                           const Real& tol = Real(1e-9)) {
  using std::abs;
  using std::pow;
  using std::sqrt;
  if (r_target == 0) throw std::invalid_argument("solve_s: r = 0 has no representation point");
  if (m > 0 ? !(r_target > 0 && r_target < 4 * m) : !(r_target > 4 * m && r_target < 0)) {
    throw std::invalid_argument("solve_s: target outside the open direct-branch interval");
  }

  constexpr int grid_points = 400;
  const Real lo_exp(-8), hi_exp(8);

  const auto grid_s = [&](int i) {
    return pow(Real(10), lo_exp + (hi_exp - lo_exp) * Real(i) / Real(grid_points - 1));
  };

  Real g_min(0), g_max(0);
  Real s_prev = grid_s(0);
  SlopeFnPoint<Real> prev = g_of<Real>(m, n, s_prev);
  if (abs(prev.g_value - r_target) <= tol) return prev;
  g_min = g_max = prev.g_value;

  Real s_lo(0), s_hi(0);
  Real d_lo(0);
  bool bracketed = false;
  for (int i = 1; i < grid_points && !bracketed; ++i) {
    const Real s_cur = grid_s(i);
    const SlopeFnPoint<Real> cur = g_of<Real>(m, n, s_cur);
    if (abs(cur.g_value - r_target) <= tol) return cur;
    g_min = std::min(g_min, cur.g_value);
    g_max = std::max(g_max, cur.g_value);
    const Real d_prev = prev.g_value - r_target;
    const Real d_cur = cur.g_value - r_target;
    if ((d_prev > 0) != (d_cur > 0)) {
      s_lo = s_prev;
      s_hi = s_cur;
      d_lo = d_prev;
      bracketed = true;
    }
    s_prev = s_cur;
    prev = cur;
  }
  if (!bracketed) {
    throw solver_error("solve_s: target-not-bracketed (target " + decimal_string(r_target) +
                       ", scanned g range [" + decimal_string(g_min) + ", " +
                       decimal_string(g_max) + "])");
  }

  const Real eps = std::numeric_limits<Real>::epsilon();
  for (int iter = 0; iter < 400; ++iter) {
    const Real s_mid = sqrt(s_lo * s_hi);
    if (s_mid <= s_lo || s_mid >= s_hi) break;
    const SlopeFnPoint<Real> mid = g_of<Real>(m, n, s_mid);
    const Real d_mid = mid.g_value - r_target;
    if (abs(d_mid) <= tol) return mid;
    if ((d_lo > 0) != (d_mid > 0)) {
      s_hi = s_mid;
    } else {
      s_lo = s_mid;
      d_lo = d_mid;
    }
    if (s_hi - s_lo <= 4 * eps * s_hi) break;
  }
  throw precision_escalation("solve_s: |g - r| target " + decimal_string(tol) +
                             " unreachable at this precision");
}

}  // namespace slopecert
