#include "heckeq/chebyshev.hpp"

#include <string>

#include "heckeq/errors.hpp"

namespace heckeq::cheb {

double cheb_eval(unsigned n, double x) {
  double prev = 1.0;  // X_0
  if (n == 0) return prev;
  double cur = x;  // X_1
  for (unsigned k = 1; k < n; ++k) {
    double next = x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

ChebyshevX cheb_coeffs(unsigned n) {
  if (n > 64)
    throw DomainError("cheb_coeffs: n = " + std::to_string(n) +
                      " exceeds the 64-bit coefficient guard (n <= 64)");
  std::vector<std::int64_t> prev{1};     // X_0
  if (n == 0) return {0, prev};
  std::vector<std::int64_t> cur{0, 1};   // X_1
  for (unsigned k = 1; k < n; ++k) {
    std::vector<std::int64_t> next(k + 2, 0);
    for (unsigned j = 0; j <= k; ++j) next[j + 1] = cur[j];
    for (unsigned j = 0; j < prev.size(); ++j) next[j] -= prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {n, cur};
}

}  // namespace heckeq::cheb
