#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "heckeq/errors.hpp"
#include "heckeq/numtheory.hpp"
#include "oracles.hpp"

using namespace heckeq;
using nt::factorize;

TEST_CASE("factorize basic shapes") {
  CHECK(factorize(1).factors.empty());
  CHECK(factorize(1).n == 1);

  auto f12 = factorize(12);
  REQUIRE(f12.factors.size() == 2);
  CHECK(f12.factors[0] == std::pair<std::uint64_t, int>{2, 2});
  CHECK(f12.factors[1] == std::pair<std::uint64_t, int>{3, 1});

  auto f9991 = factorize(9991);
  REQUIRE(f9991.factors.size() == 2);
  CHECK(f9991.factors[0] == std::pair<std::uint64_t, int>{97, 1});
  CHECK(f9991.factors[1] == std::pair<std::uint64_t, int>{103, 1});

  CHECK_THROWS_AS(factorize(0), DomainError);
}

TEST_CASE("factorize agrees with naive trial division") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    std::uint64_t n = rng() % 1000000 + 1;
    auto fac = factorize(n);
    auto ref = oracles::naive_factorize(n);
    CHECK(fac.factors == ref);
    std::uint64_t prod = 1;
    for (auto [p, e] : fac.factors) {
      CHECK(nt::is_prime(p));
      for (int i = 0; i < e; ++i) prod *= p;
    }
    CHECK(prod == n);
  }
}

TEST_CASE("factorize handles large cofactors") {
  // products of two ~31-bit primes survive trial division and exercise rho
  std::uint64_t p = 2147483647ull;  // 2^31 - 1
  std::uint64_t q = 2147483629ull;
  auto fac = factorize(p * q);
  REQUIRE(fac.factors.size() == 2);
  CHECK(fac.factors[0].first == q);
  CHECK(fac.factors[1].first == p);

  auto cap = factorize((std::uint64_t(1) << 63) - 1);
  std::uint64_t prod = 1;
  for (auto [pp, e] : cap.factors)
    for (int i = 0; i < e; ++i) prod *= pp;
  CHECK(prod == (std::uint64_t(1) << 63) - 1);
  CHECK_THROWS_AS(factorize(std::uint64_t(1) << 63), DomainError);
}

TEST_CASE("omega") {
  CHECK(nt::omega(factorize(1)) == 0);
  CHECK(nt::omega(factorize(12)) == 2);
  CHECK(nt::omega(factorize(30)) == 3);
}

TEST_CASE("psi examples") {
  CHECK(nt::psi(factorize(2)) == Rat(3));
  CHECK(nt::psi(factorize(4)) == Rat(6));
  CHECK(nt::psi(factorize(6)) == Rat(12));
  CHECK(nt::psi(factorize(1)) == Rat(1));
}

TEST_CASE("psi matches the divisor-sum oracle up to 1e4") {
  for (std::uint64_t n = 1; n <= 10000; ++n)
    CHECK(nt::psi(factorize(n)) == Rat(oracles::psi_by_divisors(n)));
}

TEST_CASE("beta_psi_f prime-power cases") {
  auto beta = [](std::uint64_t n, std::uint64_t f) {
    return nt::beta_psi_f(factorize(n), factorize(f));
  };
  CHECK(beta(2, 1) == Rat(1));
  CHECK(beta(8, 1) == Rat(3));
  CHECK(beta(2, 2) == Rat(0));  // the exceptional vanishing
  CHECK(beta(4, 2) == Rat(1));
  CHECK(beta(1, 7) == Rat(1));
}

TEST_CASE("beta_psi_f matches the by-definition oracle up to 1e4") {
  for (std::uint64_t f : {1ull, 2ull, 6ull, 30ull, 210ull}) {
    auto facF = factorize(f);
    for (std::uint64_t n = 1; n <= 10000; n += 7)
      CHECK(nt::beta_psi_f(factorize(n), facF) ==
            Rat(oracles::beta_psi_by_definition(n, f)));
  }
}

TEST_CASE("psi and beta_psi_f are multiplicative on coprime pairs") {
  std::mt19937_64 rng(11);
  auto facF = factorize(12);
  int done = 0;
  while (done < 200) {
    std::uint64_t a = rng() % 1000000 + 1;
    std::uint64_t b = rng() % 1000000 + 1;
    if (std::gcd(a, b) != 1) continue;
    ++done;
    auto fa = factorize(a), fb = factorize(b), fab = factorize(a * b);
    CHECK(nt::psi(fab) == nt::psi(fa) * nt::psi(fb));
    CHECK(nt::beta_psi_f(fab, facF) ==
          nt::beta_psi_f(fa, facF) * nt::beta_psi_f(fb, facF));
  }
}

TEST_CASE("psi_new") {
  auto pn = [](std::uint64_t N, std::uint64_t f) {
    return nt::psi_new(factorize(N), factorize(f));
  };
  CHECK(pn(1, 1) == Rat(1));
  CHECK(pn(12, 3) == Rat(4));
  CHECK(pn(8, 4) == Rat(0));
  CHECK_THROWS_AS(pn(12, 5), DomainError);
}

TEST_CASE("is_exceptional") {
  auto exc = [](std::uint64_t N, std::uint64_t f) {
    return nt::is_exceptional(factorize(N), factorize(f));
  };
  CHECK(exc(8, 4));
  CHECK_FALSE(exc(16, 4));
  CHECK_FALSE(exc(12, 3));
  CHECK_THROWS_AS(exc(12, 5), DomainError);
}

TEST_CASE("psi_new vanishing and lower bound, N <= 1200") {
  for (std::uint64_t N = 1; N <= 1200; ++N) {
    auto facN = factorize(N);
    Rat bound = Rat(BigInt(N), pow_big(4, nt::omega(facN)));
    for (std::uint64_t f : nt::divisors(facN)) {
      auto facF = factorize(f);
      Rat v = nt::psi_new(facN, facF);
      CHECK((v == 0) == nt::is_exceptional(facN, facF));
      if (!nt::is_exceptional(facN, facF)) CHECK(v >= bound);
    }
  }
}

TEST_CASE("main_term_trace") {
  auto mt = [](std::uint64_t m, std::uint64_t N, std::uint64_t f,
               std::int64_t k) {
    return nt::main_term_trace(factorize(m), factorize(N), factorize(f), k);
  };
  CHECK(mt(2, 12, 3, 2) == Rat(0));  // m not a square
  CHECK(mt(1, 12, 3, 2) == Rat(1, 3));
  CHECK(mt(4, 12, 3, 13) == Rat(2));
  CHECK(mt(1, 1, 1, 12) == Rat(11, 12));
  CHECK_THROWS_AS(mt(1, 12, 3, 1), DomainError);
  CHECK_THROWS_AS(mt(1, 12, 5, 4), DomainError);

  // prime-power route agrees where both are defined
  std::uint64_t pn = 1;
  for (unsigned n = 0; n <= 8; ++n) {
    CHECK(nt::main_term_trace_prime_power(3, n, factorize(20), factorize(5),
                                          7) == mt(pn, 20, 5, 7));
    pn *= 3;
  }
}

TEST_CASE("predicted_moment") {
  CHECK(nt::predicted_moment(0, 5) == Rat(1));
  CHECK(nt::predicted_moment(3, 2) == Rat(0));
  CHECK(nt::predicted_moment(4, 2) == Rat(1, 4));
  CHECK(nt::predicted_moment(6, 3) == Rat(1, 27));
  CHECK_THROWS_AS(nt::predicted_moment(2, 6), DomainError);
}
