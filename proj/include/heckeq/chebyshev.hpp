#ifndef HECKEQ_CHEBYSHEV_HPP
#define HECKEQ_CHEBYSHEV_HPP

#include <cstdint>
#include <vector>

namespace heckeq::cheb {

// X_n(x) = U_n(x/2) in the monomial basis; coeffs[j] multiplies x^j.
// Satisfies X_0 = 1, X_1 = x, X_{n+1} = x X_n - X_{n-1}.
struct ChebyshevX {
  unsigned degree = 0;
  std::vector<std::int64_t> coeffs;
};

// Three-term recurrence evaluation (stable on [-2, 2]; never expands the
// monomial form).
double cheb_eval(unsigned n, double x);

// Exact integer coefficients. Guarded at n <= 64 where the coefficients
// still fit comfortably in 64 bits.
ChebyshevX cheb_coeffs(unsigned n);

}  // namespace heckeq::cheb

#endif
