#ifndef HECKEQ_NUMTHEORY_HPP
#define HECKEQ_NUMTHEORY_HPP

#include <cstdint>

#include "heckeq/factorization.hpp"
#include "heckeq/rational.hpp"

namespace heckeq::nt {

// Multiplicative extension of psi(p^r) = p^r (1 + 1/p); psi(1) = 1.
// Integer-valued but returned as Rat so later (k-1)/12 scaling stays exact.
Rat psi(const Factorization& n);

// Multiplicative extension of the two prime-power formulas
//   p | f:   p^r (1 - 2/p + [1/p^2]_{r>=2})
//   p !| f:  p^r (1 - 1/p - [1/p^2]_{r>=2} + [1/p^3]_{r>=3})
Rat beta_psi_f(const Factorization& n, const Factorization& f);

// psi_f^new(N) = psi(f) * beta_psi_f(N/f). Pre: f | N.
Rat psi_new(const Factorization& N, const Factorization& f);

// True iff 2 | f and 2 exactly divides N/f; the newspace dimension vanishes
// in exactly this case. Pre: f | N.
bool is_exceptional(const Factorization& N, const Factorization& f);

// Main term of Tr T_m^new: [m is a square]/sqrt(m) * (k-1)/12 * psi_f^new(N).
// Pre: f | N, k >= 2, m >= 1.
Rat main_term_trace(const Factorization& m, const Factorization& N,
                    const Factorization& f, std::int64_t k);

// Same main term at m = p^n, without materialising p^n (which can exceed the
// 63-bit Factorization cap for large n).
Rat main_term_trace_prime_power(std::uint64_t p, unsigned n,
                                const Factorization& N, const Factorization& f,
                                std::int64_t k);

// Limit value of the normalized trace ratio: [2 | n] p^{-n/2}.
Rat predicted_moment(unsigned n, std::uint64_t p);

}  // namespace heckeq::nt

#endif
