#include "heckeq/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "heckeq/errors.hpp"

namespace heckeq::nt {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = m > 1 ? 1 : 0;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Brent's cycle-finding variant of Pollard's rho. Returns a nontrivial
// factor of composite odd n.
u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    u64 q = 1;
    int lam = 1;
    while (d == 1) {
      x = y;
      for (int i = 0; i < lam; ++i) y = (mulmod(y, y, n) + c) % n;
      int k = 0;
      while (k < lam && d == 1) {
        u64 ys = y;
        int lim = std::min(128, lam - k);
        for (int i = 0; i < lim; ++i) {
          y = (mulmod(y, y, n) + c) % n;
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
        k += lim;
        if (d == n) {
          // backtrack one step at a time
          d = 1;
          y = ys;
          do {
            y = (mulmod(y, y, n) + c) % n;
            d = std::gcd(x > y ? x - y : y - x, n);
          } while (d == 1);
          break;
        }
      }
      lam *= 2;
    }
    if (d != n) return d;
  }
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // Sufficient witness set for all n < 3.3e24.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int Factorization::exponent_of(u64 p) const {
  for (const auto& [q, e] : factors)
    if (q == p) return e;
  return 0;
}

Factorization factorize(u64 n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  if (n > (u64(1) << 63) - 1)
    throw DomainError("factorize: n exceeds 2^63 - 1");
  Factorization out;
  out.n = n;
  if (n == 1) return out;

  auto push = [&](u64 p, int e) { out.factors.emplace_back(p, e); };

  u64 m = n;
  for (u64 p = 2; p <= 100000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      push(p, e);
    }
  }

  // Cofactor has no prime factor <= 1e5; split recursively with rho.
  std::vector<u64> pending;
  if (m > 1) pending.push_back(m);
  std::vector<u64> large;
  while (!pending.empty()) {
    u64 v = pending.back();
    pending.pop_back();
    if (v == 1) continue;
    if (is_prime(v)) {
      large.push_back(v);
      continue;
    }
    u64 d = pollard_brent(v);
    pending.push_back(d);
    pending.push_back(v / d);
  }
  std::sort(large.begin(), large.end());
  for (std::size_t i = 0; i < large.size();) {
    std::size_t j = i;
    while (j < large.size() && large[j] == large[i]) ++j;
    push(large[i], static_cast<int>(j - i));
    i = j;
  }
  std::sort(out.factors.begin(), out.factors.end());
  return out;
}

int omega(const Factorization& f) { return static_cast<int>(f.factors.size()); }

bool divides(const Factorization& f, const Factorization& n) {
  for (const auto& [p, e] : f.factors)
    if (n.exponent_of(p) < e) return false;
  return true;
}

Factorization quotient(const Factorization& n, const Factorization& f) {
  if (!divides(f, n))
    throw DomainError("quotient: " + std::to_string(f.n) +
                      " does not divide " + std::to_string(n.n));
  Factorization out;
  out.n = n.n / f.n;
  for (const auto& [p, e] : n.factors) {
    int r = e - f.exponent_of(p);
    if (r > 0) out.factors.emplace_back(p, r);
  }
  return out;
}

std::vector<u64> divisors(const Factorization& n) {
  std::vector<u64> out{1};
  for (const auto& [p, e] : n.factors) {
    std::size_t sz = out.size();
    u64 pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= p;
      for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(u64 n, u64* root) {
  u64 r = isqrt(n);
  if (root) *root = r;
  return r * r == n;
}

u64 euler_phi(const Factorization& n) {
  u64 phi = 1;
  for (const auto& [p, e] : n.factors) {
    u64 pe = 1;
    for (int i = 1; i < e; ++i) pe *= p;
    phi *= pe * (p - 1);
  }
  return phi;
}

}  // namespace heckeq::nt
