#pragma once

#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "slopecert/errors.hpp"
#include "slopecert/precision.hpp"
#include "slopecert/slope.hpp"

namespace slopecert {

/// Surgery slope p/q in lowest terms with q >= 1. The meridian 1/0 is not
/// representable by construction.
struct Slope {
  long long p = 0;
  long long q = 1;

  static Slope make(long long p, long long q) {
    if (q == 0) throw std::invalid_argument("Slope: q = 0 is the meridian, excluded");
    if (q < 0) {
      p = -p;
      q = -q;
    }
    const long long g = std::gcd(p < 0 ? -p : p, q);
    if (g > 1) {
      p /= g;
      q /= g;
    }
    return {p, q};
  }

  /// Parses "p/q" or a bare integer "p". Decimal input is rejected: q enters
  /// the surgery equation as an exact exponent.
  static Slope parse(const std::string& text) {
    const auto parse_int = [](const std::string& part) -> long long {
      if (part.empty()) throw std::invalid_argument("Slope: empty component in '" + part + "'");
      std::size_t pos = 0;
      long long v = 0;
      try {
        v = std::stoll(part, &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("Slope: not an integer: '" + part + "'");
      }
      if (pos != part.size()) {
        throw std::invalid_argument("Slope: slopes are exact fractions p/q, got '" + part + "'");
      }
      return v;
    };
    const std::size_t slash = text.find('/');
    if (slash == std::string::npos) return make(parse_int(text), 1);
    return make(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }

  bool operator==(const Slope&) const = default;

  std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }
};

enum class Branch { direct, mirror, betti_zero };

inline std::string branch_name(Branch b) {
  switch (b) {
    case Branch::direct: return "direct";
    case Branch::mirror: return "mirror";
    default: return "betti_zero";
  }
}

inline Branch branch_from_name(const std::string& name) {
  if (name == "direct") return Branch::direct;
  if (name == "mirror") return Branch::mirror;
  if (name == "betti_zero") return Branch::betti_zero;
  throw std::invalid_argument("unknown branch: " + name);
}

inline bool is_trefoil(long long m, long long n) {
  return (m == 1 && n == -1) || (m == -1 && n == 1);
}

inline void validate_knot(long long m, long long n) {
  if (m == 0 || n == 0) {
    throw std::invalid_argument("not a genus-one two-bridge knot in this family (m, n must be nonzero)");
  }
  if (is_trefoil(m, n)) throw std::invalid_argument("not hyperbolic (trefoil)");
}

struct Reduction {
  long long m2 = 0;
  long long n2 = 0;
  Slope slope2;
  Branch branch = Branch::direct;
};

namespace detail {

// Exact test for 0 < p/q < 4m (m > 0) resp. 4m < p/q < 0 (m < 0).
inline bool inside_direct_interval(long long m, long long p, long long q) {
  if (m > 0) return p > 0 && p < 4 * m * q;
  return p < 0 && p > 4 * m * q;
}

}  // namespace detail

/// Reduces (m, n, r) to the branch that carries a representation: the knot
/// itself when its direct branch covers r, otherwise the mirror K(n, m) at
/// slope -r. r = 0 needs no numerics at all (positive-betti-number case).
inline Reduction mirror_reduce(long long m, long long n, Slope slope) {
  validate_knot(m, n);
  if (slope.p == 0) return {m, n, slope, Branch::betti_zero};
  if (direct_branch_valid(m, n) && detail::inside_direct_interval(m, slope.p, slope.q)) {
    return {m, n, slope, Branch::direct};
  }
  if (direct_branch_valid(n, m) && detail::inside_direct_interval(n, -slope.p, slope.q)) {
    return {n, m, Slope::make(-slope.p, slope.q), Branch::mirror};
  }
  throw slope_range_error("slope " + slope.str() + " outside certified interval " +
                          interval_I(m, n).str() + " of K(" + std::to_string(m) + ", " +
                          std::to_string(n) + ")");
}

struct CertificateResiduals {
  std::string riley;
  std::string relator;
  std::string longitude_offdiag;
  std::string surgery_eq;
  std::string det;
};

/// Full surgery-slope certificate. All numbers are decimal strings carrying
/// the full working precision, so re-verification does not depend on binary
/// float serialization. betti_zero certificates carry no numerics.
struct Certificate {
  long long m = 0;
  long long n = 0;
  Slope slope;
  Branch branch = Branch::direct;
  std::string s, t, T, A, B, sigma;  // empty for betti_zero
  std::optional<CertificateResiduals> residuals;
  int precision_bits = default_precision_bits;
  std::string tolerance;
  std::string spec_version = "1";

  bool is_betti() const { return branch == Branch::betti_zero; }

  /// Parameters the stored representation actually solves: the mirror branch
  /// stores data for K(n, m) at slope -p/q.
  Reduction reduced() const {
    if (branch == Branch::mirror) return {n, m, Slope::make(-slope.p, slope.q), branch};
    return {m, n, slope, branch};
  }
};

namespace detail {

template <typename Real>
Certificate certify_at(long long m, long long n, Slope slope, const Reduction& red, double tol,
                       Real /*tag*/) {
  using std::abs;
  using std::log;
  const Real tol_r(tol);
  const Real r_target = Real(red.slope2.p) / Real(red.slope2.q);
  // |p log A + q log B| = q log A |g - r|, and log A stays below 10 on the
  // scan range, so this keeps the surgery residual safely under tol.
  const Real tol_g = std::min(Real(1e-9), tol_r / Real(80 * red.slope2.q));

  const SlopeFnPoint<Real> point = solve_s(red.m2, red.n2, r_target, tol_g);
  const RepParams<Real>& rep = point.rep;

  const Real trace = trace_W(red.m2, rep.s, rep.T);
  if (!(trace > -2 && trace < 2)) {
    throw regime_error("certify: tr W outside (-2, 2) at the solved point");
  }

  const auto [Xs, Ys] = rho_s_matrices(rep);
  const Word wn = word_w(red.m2).pow(red.n2);
  const Mat2<Real> Wn_s = eval_word(wn, Xs, Ys);
  const Real relator_res =
      max_abs_diff(Wn_s * Xs, Ys * Wn_s) / std::max(Wn_s.max_norm(), Real(1e-300));

  const BProduct<Real> bp = B_product(red.m2, red.n2, rep);
  const Real b_cross = abs(bp.B - point.B) / abs(point.B);

  const Real log_A = log(rep.t) / 2;
  const Real log_B = log(point.B);
  const Real surgery_res = abs(Real(red.slope2.p) * log_A + Real(red.slope2.q) * log_B);
  const Real det_res = abs(Xs.det() * Ys.det() - 1);

  const auto require = [&](const Real& value, const char* name) {
    if (!(value <= tol_r)) {
      throw precision_escalation(std::string("certify: ") + name + " residual " +
                                 decimal_string(value) + " above tolerance");
    }
  };
  require(point.riley_residual, "riley");
  require(relator_res, "relator");
  require(bp.offdiag_residual, "longitude_offdiag");
  // q multiplies any error of log B in the surgery equation, so the two
  // routes to B must agree q times tighter than the tolerance itself
  require(2 * Real(red.slope2.q) * b_cross, "longitude eigenvalue cross-check");
  require(surgery_res, "surgery_eq");
  require(det_res, "det");

  Certificate cert;
  cert.m = m;
  cert.n = n;
  cert.slope = slope;
  cert.branch = red.branch;
  cert.s = decimal_string(rep.s);
  cert.t = decimal_string(rep.t);
  cert.T = decimal_string(rep.T);
  cert.A = decimal_string(point.A);
  cert.B = decimal_string(point.B);
  cert.sigma = decimal_string(point.sigma);
  cert.residuals = CertificateResiduals{
      decimal_string(point.riley_residual), decimal_string(relator_res),
      decimal_string(bp.offdiag_residual), decimal_string(surgery_res), decimal_string(det_res)};
  cert.precision_bits = mantissa_bits<Real>;
  cert.tolerance = decimal_string(tol);
  return cert;
}

}  // namespace detail

/// End-to-end certification of slope p/q on K(m, n): interval check, branch
/// reduction, slope-equation solve, residual verification. Escalates the
/// working precision as needed, starting from start_bits.
inline Certificate certify(long long m, long long n, Slope slope, double tol = 1e-8,
                           int start_bits = default_precision_bits) {
  validate_knot(m, n);
  if (!(tol > 0)) throw std::invalid_argument("certify: tolerance must be positive");
  const SlopeInterval interval = interval_I(m, n);
  if (!interval.contains(slope.p, slope.q)) {
    throw slope_range_error("slope " + slope.str() + " outside certified interval " +
                            interval.str() + " of K(" + std::to_string(m) + ", " +
                            std::to_string(n) + ")");
  }
  const Reduction red = mirror_reduce(m, n, slope);
  if (red.branch == Branch::betti_zero) {
    Certificate cert;
    cert.m = m;
    cert.n = n;
    cert.slope = slope;
    cert.branch = Branch::betti_zero;
    cert.precision_bits = start_bits;
    cert.tolerance = decimal_string(tol);
    return cert;
  }
  return with_precision(start_bits, [&](auto tag) {
    return detail::certify_at(m, n, slope, red, tol, tag);
  });
}

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  bool all_pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
};

namespace detail {

template <typename Real>
void verify_numeric(const Certificate& cert, double tol, VerifyReport& report, Real /*tag*/) {
  using std::abs;
  using std::log;
  using std::sqrt;
  const Real tol_r(tol);
  const auto check = [&](const std::string& name, bool pass, std::string detail = "") {
    report.checks.push_back({name, pass, std::move(detail)});
  };

  const Real s = parse_real<Real>(cert.s);
  const Real t = parse_real<Real>(cert.t);
  const Real T = parse_real<Real>(cert.T);
  const Real A_stored = parse_real<Real>(cert.A);
  const Real B_stored = parse_real<Real>(cert.B);
  const Real sigma_stored = parse_real<Real>(cert.sigma);

  check("s_positive", s > 0);
  check("t_above_one", t > 1);
  const Real t_consistency = abs(T - (t + 1 / t)) / std::max(Real(1), abs(T));
  check("T_matches_t", t_consistency <= Real(1e-12), decimal_string(t_consistency));
  check("T_above_s_plus_2", T > s + 2);
  if (!report.all_pass()) return;

  const Reduction red = cert.reduced();
  const RepParams<Real> rep{s, t, T, sqrt(t)};

  // Everything below is word-product evaluation only; the closed forms used
  // by the producer never enter.
  const auto [X, Y] = rho_matrices(rep);
  const Mat2<Real> W = eval_word(word_w(red.m2), X, Y);
  const Real trace = W.trace();
  check("trace_window", trace > -2 && trace < 2, decimal_string(trace));

  const Word wn_word = word_w(red.m2).pow(red.n2);
  const Mat2<Real> Wn = eval_word(wn_word, X, Y);
  const Real riley_res = abs(Wn.a + (1 - t) * Wn.b);
  check("riley_residual", riley_res <= tol_r, decimal_string(riley_res));

  const auto [Xs, Ys] = rho_s_matrices(rep);
  const Mat2<Real> Wn_s = eval_word(wn_word, Xs, Ys);
  const Real relator_res =
      max_abs_diff(Wn_s * Xs, Ys * Wn_s) / std::max(Wn_s.max_norm(), Real(1e-300));
  check("relator_residual", relator_res <= tol_r, decimal_string(relator_res));

  const Mat2<Real> L = eval_word(word_longitude(red.m2, red.n2), Xs, Ys);
  const Real offdiag = std::max(abs(L.b), abs(L.c)) / std::max(L.max_norm(), Real(1e-300));
  check("longitude_offdiag", offdiag <= tol_r, decimal_string(offdiag));
  const Real B_rec = L.a;
  check("B_positive", B_rec > 0);
  if (!(B_rec > 0)) return;
  check("B_matches", abs(B_rec - B_stored) <= 10 * tol_r * B_rec,
        decimal_string(abs(B_rec - B_stored) / B_rec));
  check("A_matches", abs(A_stored - rep.sqrt_t) <= 10 * tol_r * rep.sqrt_t);

  const Real surgery_res =
      abs(Real(red.slope2.p) * (log(t) / 2) + Real(red.slope2.q) * log(B_rec));
  check("surgery_eq", surgery_res <= tol_r, decimal_string(surgery_res));

  const Real det_res = abs(Xs.det() * Ys.det() - 1);
  check("det", det_res <= tol_r, decimal_string(det_res));

  const Real sigma_rec = s * (T - 2) / (T - s - 2);
  check("sigma_matches", abs(sigma_rec - sigma_stored) <= 10 * tol_r * abs(sigma_rec));
}

}  // namespace detail

/// Re-validates a certificate from its stored (s, t) alone, using only
/// word-product evaluation. Computationally independent of the closed forms
/// the producer used.
inline VerifyReport verify_certificate(const Certificate& cert, double tol = 1e-8) {
  VerifyReport report;
  const auto check = [&](const std::string& name, bool pass, std::string detail = "") {
    report.checks.push_back({name, pass, std::move(detail)});
  };

  check("spec_version", cert.spec_version == "1", cert.spec_version);
  check("knot_valid", cert.m != 0 && cert.n != 0 && !is_trefoil(cert.m, cert.n));
  check("slope_reduced",
        cert.slope.q >= 1 && std::gcd(cert.slope.p < 0 ? -cert.slope.p : cert.slope.p,
                                      cert.slope.q) == 1);
  check("branch_matches_slope", (cert.branch == Branch::betti_zero) == (cert.slope.p == 0));
  if (!report.all_pass()) return report;

  if (cert.is_betti()) {
    check("betti_structural", cert.s.empty() && cert.t.empty() && !cert.residuals.has_value());
    return report;
  }
  check("numeric_fields_present", !cert.s.empty() && !cert.t.empty() && !cert.T.empty() &&
                                      !cert.A.empty() && !cert.B.empty() && !cert.sigma.empty() &&
                                      cert.residuals.has_value());
  if (!report.all_pass()) return report;

  try {
    // The stored numbers are exact decimal values; re-deriving the residuals
    // one rung above the producer's width keeps the checker's own word-product
    // roundoff (amplified by q in the surgery equation) out of the verdict.
    with_precision(2 * cert.precision_bits, [&](auto tag) {
      detail::verify_numeric(cert, tol, report, tag);
      return 0;
    });
  } catch (const std::exception& e) {
    check("numeric_evaluation", false, e.what());
  }
  return report;
}

}  // namespace slopecert
