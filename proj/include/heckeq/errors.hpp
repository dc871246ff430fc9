#ifndef HECKEQ_ERRORS_HPP
#define HECKEQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace heckeq {

// Error taxonomy mirrored by the CLI exit codes:
//   DomainError    -> 1  (bad mathematical input: f does not divide N, k < 2, ...)
//   DataError      -> 2  (corrupted or inconsistent dataset contents)
//   TransportError -> 3  (remote fetch failed and no cache entry exists)
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct TransportError : std::runtime_error {
  explicit TransportError(const std::string& msg) : std::runtime_error(msg) {}
};

// Quadrature ran out of refinement levels; carries the last estimate so a
// caller can still inspect how far it got.
struct NumericError : std::runtime_error {
  double last_estimate;
  NumericError(const std::string& msg, double last)
      : std::runtime_error(msg), last_estimate(last) {}
};

}  // namespace heckeq

#endif
