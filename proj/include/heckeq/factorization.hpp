#ifndef HECKEQ_FACTORIZATION_HPP
#define HECKEQ_FACTORIZATION_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace heckeq::nt {

// Prime-power decomposition of a positive integer n <= 2^63 - 1.
// Invariants: primes strictly increasing, exponents >= 1, and
// n == product of prime^exponent (empty list for n = 1).
struct Factorization {
  std::uint64_t n = 1;
  std::vector<std::pair<std::uint64_t, int>> factors;

  int exponent_of(std::uint64_t p) const;
  bool operator==(const Factorization&) const = default;
};

// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime(std::uint64_t n);

// Trial division for small factors, Miller-Rabin plus Brent's rho for the
// remaining cofactor. Throws DomainError for n = 0 or n > 2^63 - 1.
Factorization factorize(std::uint64_t n);

// Number of distinct prime divisors.
int omega(const Factorization& f);

bool divides(const Factorization& f, const Factorization& n);

// n/f computed by exponent subtraction (pre: divides(f, n)).
Factorization quotient(const Factorization& n, const Factorization& f);

// All divisors of n, ascending.
std::vector<std::uint64_t> divisors(const Factorization& n);

std::uint64_t isqrt(std::uint64_t n);
bool is_square(std::uint64_t n, std::uint64_t* root = nullptr);

std::uint64_t euler_phi(const Factorization& n);

}  // namespace heckeq::nt

#endif
