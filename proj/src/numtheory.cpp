#include "heckeq/numtheory.hpp"

#include <string>

#include "heckeq/errors.hpp"

namespace heckeq::nt {

Rat psi(const Factorization& n) {
  BigInt v = 1;
  for (const auto& [p, e] : n.factors) {
    // p^r (1 + 1/p) = p^(r-1) (p + 1)
    v *= pow_big(p, static_cast<unsigned>(e - 1)) * (p + 1);
  }
  return Rat(v);
}

Rat beta_psi_f(const Factorization& n, const Factorization& f) {
  BigInt v = 1;
  for (const auto& [p, e] : n.factors) {
    unsigned r = static_cast<unsigned>(e);
    BigInt term;
    if (f.exponent_of(p) > 0) {
      // p^r - 2 p^(r-1) + [p^(r-2)]_{r>=2}
      term = pow_big(p, r) - 2 * pow_big(p, r - 1);
      if (r >= 2) term += pow_big(p, r - 2);
    } else {
      // p^r - p^(r-1) - [p^(r-2)]_{r>=2} + [p^(r-3)]_{r>=3}
      term = pow_big(p, r) - pow_big(p, r - 1);
      if (r >= 2) term -= pow_big(p, r - 2);
      if (r >= 3) term += pow_big(p, r - 3);
    }
    v *= term;
  }
  return Rat(v);
}

Rat psi_new(const Factorization& N, const Factorization& f) {
  if (!divides(f, N))
    throw DomainError("psi_new: f = " + std::to_string(f.n) +
                      " does not divide N = " + std::to_string(N.n));
  return psi(f) * beta_psi_f(quotient(N, f), f);
}

bool is_exceptional(const Factorization& N, const Factorization& f) {
  if (!divides(f, N))
    throw DomainError("is_exceptional: f = " + std::to_string(f.n) +
                      " does not divide N = " + std::to_string(N.n));
  return f.exponent_of(2) >= 1 && N.exponent_of(2) - f.exponent_of(2) == 1;
}

namespace {

Rat scaled_main_term(const BigInt& sqrt_m_or_zero, const Factorization& N,
                     const Factorization& f, std::int64_t k) {
  if (k < 2) throw DomainError("main_term_trace: k must be >= 2");
  if (sqrt_m_or_zero == 0) return Rat(0);
  Rat out = psi_new(N, f);
  out *= Rat(BigInt(k - 1), BigInt(12) * sqrt_m_or_zero);
  return out;
}

}  // namespace

Rat main_term_trace(const Factorization& m, const Factorization& N,
                    const Factorization& f, std::int64_t k) {
  BigInt root = 1;
  for (const auto& [p, e] : m.factors) {
    if (e % 2 != 0) {
      root = 0;
      break;
    }
    root *= pow_big(p, static_cast<unsigned>(e / 2));
  }
  return scaled_main_term(root, N, f, k);
}

Rat main_term_trace_prime_power(std::uint64_t p, unsigned n,
                                const Factorization& N, const Factorization& f,
                                std::int64_t k) {
  BigInt root = (n % 2 == 0) ? pow_big(p, n / 2) : BigInt(0);
  return scaled_main_term(root, N, f, k);
}

Rat predicted_moment(unsigned n, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("predicted_moment: p must be prime");
  if (n % 2 != 0) return Rat(0);
  return Rat(BigInt(1), pow_big(p, n / 2));
}

}  // namespace heckeq::nt
