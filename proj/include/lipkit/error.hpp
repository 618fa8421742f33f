#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lipkit {

using PointId = std::size_t;

/// Numerical tolerance shared by every metric-axiom and inequality check.
inline constexpr double kTolerance = 1e-9;

enum class ErrorCode {
  invalid_argument,
  out_of_range,
  domain,        // a transport was applied outside its domain
  precondition,  // input data violates a documented hypothesis
  io,
  internal,
};

/// Library exception. Precondition failures carry the sample points that
/// witness the violation (a pair for Lipschitz checks, a single point for
/// range or cover checks).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::vector<PointId> witness = {})
      : std::runtime_error(what), code_(code), witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<PointId>& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::vector<PointId> witness_;
};

}  // namespace lipkit
