#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdlib>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include "slopecert/errors.hpp"

namespace slopecert {

namespace bmp = boost::multiprecision;

// Binary-precision ladder used for residual-driven escalation. Each rung
// doubles the mantissa of the previous one, starting from IEEE double.
using float106 = bmp::number<bmp::cpp_bin_float<106, bmp::digit_base_2>, bmp::et_off>;
using float212 = bmp::number<bmp::cpp_bin_float<212, bmp::digit_base_2>, bmp::et_off>;
using float424 = bmp::number<bmp::cpp_bin_float<424, bmp::digit_base_2>, bmp::et_off>;
using float848 = bmp::number<bmp::cpp_bin_float<848, bmp::digit_base_2>, bmp::et_off>;

inline constexpr int precision_ladder[] = {53, 106, 212, 424, 848};
inline constexpr int precision_rungs = 5;
inline constexpr int default_precision_bits = 53;

template <typename Real>
inline constexpr int mantissa_bits = std::numeric_limits<Real>::digits;

/// Decimal string that round-trips the value exactly at its own precision.
template <typename Real>
std::string decimal_string(const Real& value) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<Real>::max_digits10) << value;
  return os.str();
}

template <typename Real>
Real parse_real(const std::string& text) {
  if constexpr (std::is_same_v<Real, double>) {
    std::size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("malformed number: " + text);
    return v;
  } else {
    return Real(text);
  }
}

/// Smallest ladder rung with at least `bits` mantissa bits (clamped to the
/// widest rung).
inline int ladder_rung(int bits) {
  for (int i = 0; i < precision_rungs; ++i) {
    if (precision_ladder[i] >= bits) return i;
  }
  return precision_rungs - 1;
}

/// Runs `fn(tag)` with successively wider scalar types until it stops
/// signalling precision_escalation. At most four escalations from the
/// starting rung.
template <typename Fn>
auto with_precision(int start_bits, Fn&& fn) {
  std::string last_context;
  for (int rung = ladder_rung(start_bits); rung < precision_rungs; ++rung) {
    try {
      switch (precision_ladder[rung]) {
        case 53:  return fn(double{});
        case 106: return fn(float106{});
        case 212: return fn(float212{});
        case 424: return fn(float424{});
        default:  return fn(float848{});
      }
    } catch (const precision_escalation& esc) {
      last_context = esc.context();
    }
  }
  throw precision_exhausted("precision ladder exhausted (last failure: " + last_context + ")");
}

/// Working precision requested through the environment, if any.
inline int env_precision_bits() {
  const char* env = std::getenv("RILEY_PRECISION_BITS");
  if (env == nullptr || *env == '\0') return default_precision_bits;
  char* end = nullptr;
  long bits = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || bits <= 0) return default_precision_bits;
  return static_cast<int>(bits);
}

}  // namespace slopecert
