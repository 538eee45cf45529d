#pragma once

#include <cmath>
#include <string>

#include "slopecert/errors.hpp"
#include "slopecert/int_poly.hpp"
#include "slopecert/precision.hpp"
#include "slopecert/rep.hpp"

namespace slopecert {

enum class BracketKind {
  closed_form_n1,
  closed_form_n_neg1,
  generic_n_pos,
  generic_n_neg,
  special_abs_n2_m_pos,
  special_abs_n2_m_neg,
};

/// Bracket for the Riley root in the T variable. Closed-form kinds are
/// degenerate (T_lo = T_hi); for the others the Riley function changes sign
/// across [T_lo, T_hi]. Both endpoints exceed s + 2.
template <typename Real>
struct RileyBracket {
  Real T_lo{}, T_hi{};
  BracketKind kind{};

  bool degenerate() const {
    return kind == BracketKind::closed_form_n1 || kind == BracketKind::closed_form_n_neg1;
  }
};

/// Riley function phi(s, T) = (tau_{n+1} - tau_n) + (s+2-T) f_{m-1} g_{m-1} tau_n
/// at tau = tr W. For T in the bracket (tau in [-2, 2]) this coincides with
/// the unit-circle form used to place the bracket endpoints.
template <typename Real>
Real riley_eval(long long m, long long n, const Real& s, const Real& T) {
  if (!(s > 0)) throw std::invalid_argument("riley_eval: s must be positive");
  const Real tau = trace_W(m, s, T);
  const Real tn = tau_seq(tau, n);
  const Real tn_next = tau_seq(tau, n + 1);
  return (tn_next - tn) + (s + 2 - T) * eval_f(m - 1, s) * eval_g(m - 1, s) * tn;
}

/// Word-product route: z_{1,1} + (1 - t) z_{1,2} with z the entries of
/// rho(w)^n. Independent oracle for riley_eval.
template <typename Real>
Real riley_direct(long long m, long long n, const RepParams<Real>& p) {
  Mat2<Real> Wn;
  if (m == 0) {
    Wn = Mat2<Real>::identity();
  } else {
    const auto [X, Y] = rho_matrices(p);
    Wn = eval_word(word_w(m).pow(n), X, Y);
  }
  return Wn.a + (1 - p.t) * Wn.b;
}

/// Bracket (or closed-form solution) for the Riley root at the given s.
/// Combinations n = 1 with m < 0 and n = -1 with m > 0 are rejected: there
/// the unique root satisfies T <= s + 2 and no certificate exists.
template <typename Real>
RileyBracket<Real> riley_bracket(long long m, long long n, const Real& s) {
  using std::acos;
  using std::cos;
  if (m == 0 || n == 0) throw std::invalid_argument("riley_bracket: m, n must be nonzero");
  if (!(s > 0)) throw std::invalid_argument("riley_bracket: s must be positive");
  const Real pi_v = acos(Real(-1));
  const Real g = eval_g(m - 1, s);
  const Real sg2 = s * g * g;

  if (n == 1) {
    if (m < 0) {
      throw std::invalid_argument(
          "riley_bracket: n = 1 requires m > 0 (root lies outside the representation regime)");
    }
    const Real T = s + 2 + 1 / (eval_f(m, s) * g);
    return {T, T, BracketKind::closed_form_n1};
  }
  if (n == -1) {
    if (m > 0) {
      throw std::invalid_argument(
          "riley_bracket: n = -1 requires m < 0 (root lies outside the representation regime)");
    }
    const Real T = s + 2 - 1 / (eval_f(m - 1, s) * g);
    return {T, T, BracketKind::closed_form_n_neg1};
  }
  if (n > 1) {
    const Real c = 2 - 2 * cos(pi_v / Real(2 * n + 1));
    const Real cp = 2 - 2 * cos(3 * pi_v / Real(2 * n + 1));
    return {s + 2 + c / sg2, s + 2 + cp / sg2, BracketKind::generic_n_pos};
  }
  const long long l = -n;
  if (l == 2) {
    if (m > 0) {
      return {s + 2 + 1 / sg2, s + 2 + 2 / sg2, BracketKind::special_abs_n2_m_pos};
    }
    return {s + 2 + 2 / sg2, s + 2 + 3 / sg2, BracketKind::special_abs_n2_m_neg};
  }
  const Real d = 2 - 2 * cos(pi_v / Real(2 * l - 1));
  const Real dp = 2 - 2 * cos(3 * pi_v / Real(2 * l - 1));
  return {s + 2 + d / sg2, s + 2 + dp / sg2, BracketKind::generic_n_neg};
}

template <typename Real>
struct SolvedPoint {
  RepParams<Real> rep;
  Real residual{};  // |phi(s, T)| at the returned T
};

/// Certified root of phi(s, .) = 0 inside the bracket, by bisection from the
/// bracket endpoints. The returned residual satisfies |phi| <= tol * scale
/// with scale = max(1, s |f_{m-1} g_{m-1}|, |phi at the bracket endpoints|);
/// if the working precision cannot reach that, a precision_escalation is
/// signalled.
template <typename Real>
SolvedPoint<Real> solve_T(long long m, long long n, const Real& s, const Real& tol = Real(1e-12)) {
  using std::abs;
  const RileyBracket<Real> bracket = riley_bracket(m, n, s);
  // Residual scale: s |f_{m-1} g_{m-1}| covers the large-s growth of phi;
  // the bracket endpoint values cover its swing at small s, where the
  // endpoint magnitudes behave like f/(s g).
  Real scale = std::max(Real(1), s * abs(eval_f(m - 1, s) * eval_g(m - 1, s)));
  if (!bracket.degenerate()) {
    scale = std::max(scale, abs(riley_eval(m, n, s, bracket.T_lo)));
    scale = std::max(scale, abs(riley_eval(m, n, s, bracket.T_hi)));
  }
  const Real target = tol * scale;
  const Real eps = std::numeric_limits<Real>::epsilon();

  const auto finish = [&](const Real& T) -> SolvedPoint<Real> {
    const Real residual = abs(riley_eval(m, n, s, T));
    if (!(residual <= target)) {
      throw precision_escalation("solve_T(m=" + std::to_string(m) + ", n=" + std::to_string(n) +
                                 "): residual " + decimal_string(residual) + " above target " +
                                 decimal_string(target));
    }
    if (!(T > s + 2)) {
      throw precision_escalation("solve_T: root collapsed onto s + 2 at this precision");
    }
    return {RepParams<Real>::from_solved(s, T), residual};
  };

  if (bracket.degenerate()) return finish(bracket.T_lo);

  Real lo = bracket.T_lo;
  Real hi = bracket.T_hi;
  Real f_lo = riley_eval(m, n, s, lo);
  Real f_hi = riley_eval(m, n, s, hi);
  if (f_lo == 0) return finish(lo);
  if (f_hi == 0) return finish(hi);

  if ((f_lo > 0) == (f_hi > 0)) {
    // Endpoints agree in sign: either the bracket collapsed at this
    // precision, or (never expected) the root is not isolated. Rescan on a
    // fine grid before deciding which.
    bool found = false;
    const int fine = 64;
    Real prev = lo, f_prev = f_lo;
    for (int i = 1; i <= fine && !found; ++i) {
      const Real x = lo + (hi - lo) * Real(i) / Real(fine);
      const Real fx = riley_eval(m, n, s, x);
      if ((f_prev > 0) != (fx > 0)) {
        lo = prev;
        f_lo = f_prev;
        hi = x;
        f_hi = fx;
        found = true;
      }
      prev = x;
      f_prev = fx;
    }
    if (!found) {
      // One ulp of T moves tau by about s g^2 eps T, while the bracket spans
      // an O(1) stretch of tau. If that resolution is too coarse the endpoint
      // signs are noise, not evidence about the root.
      const Real g_val = eval_g(m - 1, s);
      const Real tau_resolution = s * g_val * g_val * eps * hi;
      if (hi - lo <= 8 * eps * hi || tau_resolution > Real(1e-3)) {
        throw precision_escalation("solve_T: bracket signs below the noise floor at this precision");
      }
      throw solver_error("solve_T: root-not-isolated (no sign change across the bracket)");
    }
  }

  for (int iter = 0; iter < 200; ++iter) {
    const Real mid = (lo + hi) / 2;
    if (mid <= lo || mid >= hi) break;  // interval no longer splittable
    const Real f_mid = riley_eval(m, n, s, mid);
    if (f_mid == 0) return finish(mid);
    if ((f_lo > 0) != (f_mid > 0)) {
      hi = mid;
      f_hi = f_mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  return finish(abs(f_lo) <= abs(f_hi) ? lo : hi);
}

}  // namespace slopecert
