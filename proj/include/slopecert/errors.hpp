#pragma once

#include <stdexcept>
#include <string>

namespace slopecert {

/// Base class for failures of the certification pipeline (as opposed to
/// malformed input, which is reported via std::invalid_argument).
class certification_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation left the regime where the construction is defined
/// (e.g. T <= s+2, or a longitude eigenvalue that is not positive).
class regime_error : public certification_error {
 public:
  using certification_error::certification_error;
};

/// Root finding failed: bracket without sign change, scan without target, ...
class solver_error : public certification_error {
 public:
  using certification_error::certification_error;
};

/// Requested slope lies outside the certified interval.
class slope_range_error : public certification_error {
 public:
  using certification_error::certification_error;
};

/// Internal signal: the current working precision cannot reach the residual
/// target; the caller should retry with a wider mantissa. The precision
/// ladder catches this; it only surfaces as an error when a caller runs a
/// single fixed-precision computation directly.
class precision_escalation : public certification_error {
 public:
  explicit precision_escalation(std::string context)
      : certification_error("precision escalation requested: " + context),
        context_(std::move(context)) {}
  const std::string& context() const noexcept { return context_; }

 private:
  std::string context_;
};

/// The precision ladder was exhausted without meeting the residual target.
class precision_exhausted : public certification_error {
 public:
  using certification_error::certification_error;
};

}  // namespace slopecert
