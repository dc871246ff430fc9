#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "heckeq/chebyshev.hpp"
#include "heckeq/errors.hpp"
#include "heckeq/measures.hpp"

using namespace heckeq;
using cheb::Measure;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("density values") {
  auto inf = Measure::mu_infinity();
  CHECK(inf.density(0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-15));

  auto mu2 = Measure::mu_p(2);
  CHECK(mu2.density(0.0) == doctest::Approx(2.0 / (3.0 * kPi)).epsilon(1e-15));

  for (std::uint64_t p : {2, 3, 5, 7}) {
    auto mu = Measure::mu_p(p);
    CHECK(mu.density(2.0) == 0.0);
    CHECK(mu.density(-2.0) == 0.0);
    double pd = static_cast<double>(p);
    CHECK(mu.density(0.0) ==
          doctest::Approx(pd / (kPi * (pd + 1.0))).epsilon(1e-14));
  }

  CHECK_THROWS_AS(mu2.density(2.5), DomainError);
  CHECK_THROWS_AS(Measure::mu_p(4), DomainError);
}

TEST_CASE("integrate: total mass and first moments") {
  for (std::uint64_t p : {2, 5, 11}) {
    auto mu = Measure::mu_p(p);
    CHECK(std::abs(cheb::integrate([](double) { return 1.0; }, mu, 1e-12) -
                   1.0) <= 1e-12);
    CHECK(std::abs(cheb::integrate([](double x) { return x; }, mu, 1e-12)) <=
          1e-12);
  }
  auto mu3 = Measure::mu_p(3);
  double m2 = cheb::integrate([](double x) { return cheb::cheb_eval(2, x); },
                              mu3, 1e-12);
  CHECK(std::abs(m2 - 1.0 / 3.0) <= 1e-12);

  auto inf = Measure::mu_infinity();
  CHECK(std::abs(cheb::integrate([](double) { return 1.0; }, inf, 1e-12) -
                 1.0) <= 1e-12);
}

TEST_CASE("moment closed form") {
  CHECK(cheb::moment_closed_form(0, 7) == Rat(1));
  CHECK(cheb::moment_closed_form(5, 2) == Rat(0));
  CHECK(cheb::moment_closed_form(2, 2) == Rat(1, 2));
  CHECK_THROWS_AS(cheb::moment_closed_form(2, 9), DomainError);
}

TEST_CASE("moment identity for n <= 14, p in {2, 3, 5}") {
  for (std::uint64_t p : {2, 3, 5}) {
    auto mu = Measure::mu_p(p);
    for (unsigned n = 0; n <= 14; ++n) {
      double q = cheb::integrate(
          [n](double x) { return cheb::cheb_eval(n, x); }, mu, 1e-12);
      CHECK(std::abs(q - rat_double(cheb::moment_closed_form(n, p))) <=
            1e-10);
    }
  }
}

TEST_CASE("mu_inf orthonormality sample") {
  auto inf = Measure::mu_infinity();
  for (unsigned n = 0; n <= 10; ++n)
    for (unsigned k = n; k <= 10; k += 2) {
      double q = cheb::integrate(
          [n, k](double x) {
            return cheb::cheb_eval(n, x) * cheb::cheb_eval(k, x);
          },
          inf, 1e-12);
      CHECK(std::abs(q - (n == k ? 1.0 : 0.0)) <= 1e-10);
    }
}

TEST_CASE("cdf endpoints, symmetry, monotonicity") {
  for (std::uint64_t p : {2, 7}) {
    auto mu = Measure::mu_p(p);
    CHECK(mu.cdf(-2.0) == 0.0);
    CHECK(std::abs(mu.cdf(2.0) - 1.0) <= 1e-10);
    CHECK(std::abs(mu.cdf(0.0) - 0.5) <= 1e-10);
  }

  auto mu2 = Measure::mu_p(2);
  double prev = -1.0;
  for (int i = 0; i <= 10000; ++i) {
    double x = -2.0 + 4.0 * i / 10000.0;
    double c = mu2.cdf(x, 1e-10);
    CHECK(c >= prev - 1e-10);
    prev = c;
  }
  CHECK_THROWS_AS(mu2.cdf(-2.0001), DomainError);
}

TEST_CASE("CdfTable matches the quadrature cdf") {
  for (std::uint64_t p : {2, 7}) {
    auto mu = Measure::mu_p(p);
    cheb::CdfTable table(mu);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
      double x = -2.0 + 4.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
      CHECK(std::abs(table.cdf(x) - mu.cdf(x, 1e-12)) <= 1e-9);
    }
    CHECK(table.cdf(-2.0) == 0.0);
    CHECK(table.cdf(2.0) == 1.0);
    // quantile inverts the cdf
    for (double u : {0.01, 0.25, 0.5, 0.75, 0.99}) {
      double x = table.quantile(u);
      CHECK(std::abs(table.cdf(x) - u) <= 1e-6);
    }
  }
}

TEST_CASE("sampler: determinism and moment sanity at 1e4 draws") {
  auto mu2 = Measure::mu_p(2);
  CHECK(cheb::sample(mu2, 0, 99).empty());

  auto a = cheb::sample(mu2, 64, 42);
  auto b = cheb::sample(mu2, 64, 42);
  CHECK(a == b);  // bit-identical under a fixed seed
  auto c = cheb::sample(mu2, 64, 43);
  CHECK(a != c);

  auto xs = cheb::sample(mu2, 10000, 42);
  double mean = 0.0, x2 = 0.0;
  for (double x : xs) {
    CHECK(std::abs(x) <= 2.0);
    mean += x;
    x2 += cheb::cheb_eval(2, x);
  }
  mean /= 10000.0;
  x2 /= 10000.0;
  CHECK(std::abs(mean) <= 0.05);
  CHECK(std::abs(x2 - 0.5) <= 0.05);
}

TEST_CASE("even-part identity truncation defect") {
  CHECK(cheb::even_part_identity_check(2, 0.0, 60) <= 1e-8);
  CHECK(cheb::even_part_identity_check(5, 1.5, 60) <= 1e-8);

  // single-term partial sum: |2 - 2 mu_p(0)/mu_inf(0)|
  for (std::uint64_t p : {2, 3}) {
    auto mu = Measure::mu_p(p);
    auto inf = Measure::mu_infinity();
    double expect = std::abs(2.0 - 2.0 * mu.density(0.0) / inf.density(0.0));
    CHECK(cheb::even_part_identity_check(p, 0.0, 0) ==
          doctest::Approx(expect).epsilon(1e-13));
  }

  CHECK_THROWS_AS(cheb::even_part_identity_check(2, 2.0, 10), DomainError);
}
