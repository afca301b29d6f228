// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef COMMAX_ERRORS_HPP
#define COMMAX_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace commax {

// Thrown when an enumeration or series would exceed its configured size cap.
// `size` is the offending count (number of compositions, series terms, ...).
class CapExceededError : public std::runtime_error {
 public:
  CapExceededError(const std::string &what, std::uint64_t size)
      : std::runtime_error(what), size(size) {}
  std::uint64_t size;
};

// Thrown when an iterative optimizer fails to converge.  `trace` holds a
// per-iteration log suitable for diagnostics.
class OptimizationError : public std::runtime_error {
 public:
  OptimizationError(const std::string &what, std::string trace)
      : std::runtime_error(what), trace(std::move(trace)) {}
  std::string trace;
};

// Thrown when an evaluation produces a non-finite intermediate where a finite
// value is required; the message names the offending location.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace commax

#endif  // COMMAX_ERRORS_HPP
