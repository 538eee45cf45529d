#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace slopecert {

using BigInt = boost::multiprecision::cpp_int;

/// Univariate polynomial in s with exact integer coefficients, stored in
/// ascending order. The zero polynomial has an empty coefficient list; the
/// leading coefficient of a nonzero polynomial is never zero.
class IntPoly {
 public:
  IntPoly() = default;

  explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

  static IntPoly constant(BigInt v) {
    if (v == 0) return IntPoly{};
    return IntPoly{{std::move(v)}};
  }

  /// The monomial s.
  static IntPoly variable() { return IntPoly{{0, 1}}; }

  bool is_zero() const { return c_.empty(); }

  /// Degree, -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }

  const std::vector<BigInt>& coeffs() const { return c_; }

  BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }

  BigInt leading() const { return c_.empty() ? BigInt(0) : c_.back(); }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return IntPoly{std::move(r)};
  }

  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return IntPoly{std::move(r)};
  }

  IntPoly operator-() const {
    std::vector<BigInt> r(c_);
    for (auto& v : r) v = -v;
    return IntPoly{std::move(r)};
  }

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly{};
    std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return IntPoly{std::move(r)};
  }

  friend IntPoly operator*(const BigInt& k, const IntPoly& p) {
    std::vector<BigInt> r(p.c_);
    for (auto& v : r) v *= k;
    return IntPoly{std::move(r)};
  }

  bool operator==(const IntPoly& other) const { return c_ == other.c_; }

  /// Horner evaluation at a scalar of the caller's precision.
  template <typename Real>
  Real eval(const Real& s) const {
    Real acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * s + static_cast<Real>(c_[i]);
    return acc;
  }

  std::string str(const std::string& var = "s") const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      if (!out.empty()) out += c_[i] > 0 ? " + " : " - ";
      else if (c_[i] < 0) out += "-";
      BigInt mag = abs(c_[i]);
      if (mag != 1 || i == 0) out += mag.str();
      if (i >= 1) out += var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<BigInt> c_;
};

inline BigInt binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

namespace detail {

// Shared three-term recursion p_{k+2} = (s+2) p_{k+1} - p_k from the two
// given seeds, for k >= 0.
inline IntPoly recurrence(long long m, IntPoly p0, IntPoly p1) {
  if (m == 0) return p0;
  const IntPoly shift = IntPoly{{2, 1}};  // s + 2
  for (long long k = 1; k < m; ++k) {
    IntPoly next = shift * p1 - p0;
    p0 = std::move(p1);
    p1 = std::move(next);
  }
  return p1;
}

}  // namespace detail

/// f_m for any integer m: f_0 = 1, f_1 = s+1, extended by f_{-m} = f_{m-1}.
inline IntPoly poly_f(long long m) {
  if (m < 0) m = -m - 1;
  return detail::recurrence(m, IntPoly::constant(1), IntPoly{{1, 1}});
}

/// g_m for any integer m: g_0 = 1, g_1 = s+2, with g_{-1} = 0 and
/// g_{-m} = -g_{m-2}.
inline IntPoly poly_g(long long m) {
  if (m == -1) return IntPoly{};
  if (m < -1) return -poly_g(-m - 2);
  return detail::recurrence(m, IntPoly::constant(1), IntPoly{{2, 1}});
}

/// Binomial closed form of f_m, defined for m >= 0 only.
inline IntPoly closed_form_f(long long m) {
  if (m < 0) throw std::invalid_argument("closed_form_f: index must be nonnegative");
  std::vector<BigInt> c(static_cast<std::size_t>(m) + 1);
  for (long long i = 0; i <= m; ++i) c[static_cast<std::size_t>(i)] = binomial(m + i, m - i);
  return IntPoly{std::move(c)};
}

/// Binomial closed form of g_m, defined for m >= 0 only.
inline IntPoly closed_form_g(long long m) {
  if (m < 0) throw std::invalid_argument("closed_form_g: index must be nonnegative");
  std::vector<BigInt> c(static_cast<std::size_t>(m) + 1);
  for (long long i = 0; i <= m; ++i) c[static_cast<std::size_t>(i)] = binomial(m + 1 + i, m - i);
  return IntPoly{std::move(c)};
}

/// Scalar-level evaluation of f_m(s) by the recursion, without building the
/// polynomial. Used on the hot paths; eval(poly_f(m), s) is the cross-check.
template <typename Real>
Real eval_f(long long m, const Real& s) {
  if (m < 0) m = -m - 1;
  Real p0(1), p1 = s + 1;
  if (m == 0) return p0;
  for (long long k = 1; k < m; ++k) {
    Real next = (s + 2) * p1 - p0;
    p0 = p1;
    p1 = next;
  }
  return p1;
}

template <typename Real>
Real eval_g(long long m, const Real& s) {
  if (m == -1) return Real(0);
  if (m < -1) return -eval_g(-m - 2, s);
  Real p0(1), p1 = s + 2;
  if (m == 0) return p0;
  for (long long k = 1; k < m; ++k) {
    Real next = (s + 2) * p1 - p0;
    p0 = p1;
    p1 = next;
  }
  return p1;
}

struct IdentityFailure {
  long long m;
  int identity;  // 1, 2 or 3
  std::string detail;
};

/// Result of the exact identity suite over an index range.
struct IdentityReport {
  long long m_lo = 0;
  long long m_hi = 0;
  std::array<long long, 3> pass{};
  std::array<long long, 3> fail{};
  std::vector<IdentityFailure> failures;

  bool all_pass() const { return fail[0] == 0 && fail[1] == 0 && fail[2] == 0; }
};

/// Verifies, as exact polynomial identities for every m in [m_lo, m_hi]:
///   (1) f_m + g_{m-1} = g_m
///   (2) f_m + s g_m = f_{m+1}
///   (3) f_m^2 = s g_m g_{m-1} + 1
inline IdentityReport check_identities(long long m_lo, long long m_hi) {
  if (m_lo > m_hi) throw std::invalid_argument("check_identities: empty range");
  IdentityReport report;
  report.m_lo = m_lo;
  report.m_hi = m_hi;
  const IntPoly s = IntPoly::variable();
  const IntPoly one = IntPoly::constant(1);
  for (long long m = m_lo; m <= m_hi; ++m) {
    const IntPoly fm = poly_f(m);
    const IntPoly fm1 = poly_f(m + 1);
    const IntPoly gm = poly_g(m);
    const IntPoly gm_1 = poly_g(m - 1);
    const std::array<bool, 3> ok = {
        fm + gm_1 == gm,
        fm + s * gm == fm1,
        fm * fm == s * gm * gm_1 + one,
    };
    for (int i = 0; i < 3; ++i) {
      if (ok[static_cast<std::size_t>(i)]) {
        ++report.pass[static_cast<std::size_t>(i)];
      } else {
        ++report.fail[static_cast<std::size_t>(i)];
        report.failures.push_back({m, i + 1, "identity (" + std::to_string(i + 1) +
                                                 ") fails at m = " + std::to_string(m)});
      }
    }
  }
  return report;
}

}  // namespace slopecert
